import json
import numbers

import numpy as np
import six


def frozen(array, dtype=float):
    """Return a read-only float copy of `array`."""
    out = np.array(array, dtype=dtype)
    out.flags.writeable = False
    return out


def to_builtin(value):
    """Convert numpy containers and scalars to plain Python for JSON."""
    if isinstance(value, BaseRecord):
        return value.dict
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    return value


def json_text(data):
    """Key-sorted JSON text, shortest round-trip floats, trailing newline."""
    return json.dumps(to_builtin(data), sort_keys=True, indent=2, ensure_ascii=False) + u"\n"


class BaseRecord(object):
    """ Grids, states, realisations etc all inherit this class.
    Records are immutable once built, and are typically stored
    in a RecordList.
    """

    _FIELDS = ()  # Exported by dict / iteration, in this order
    id = None
    label = None

    def get(self, key):
        """Provide alias for attribute access by name."""
        return getattr(self, key)

    def __setattr__(self, key, value):
        if getattr(self, "_sealed", False):
            raise AttributeError("%s is immutable" % type(self).__name__)
        super(BaseRecord, self).__setattr__(key, value)

    def _seal(self):
        """Forbid further attribute assignment."""
        object.__setattr__(self, "_sealed", True)

    @property
    def value(self):
        """ This is the value used for testing membership and
        comparison. Overloaded for records whose identity is
        something else than their id.
        """
        return self.id

    def __iter__(self):
        """ dict representation is like:
         {field_1: 1.0, field_2: [0, 1]}
        """
        for field in self._FIELDS:
            yield (field, to_builtin(getattr(self, field)))

    @property
    def dict(self):
        return dict(self)

    def __eq__(self, other):
        """ Enable equality check by id """
        if self is other:
            return True
        elif isinstance(other, (six.string_types, numbers.Integral)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return id(self)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        if self.label is None or str(self.label) == str(self):
            return '<%s: %s>' % (type(self).__name__, str(self))
        return '<%s: %s (%s)>' % (type(self).__name__,
                                  str(self),
                                  self.label)
