import pandas as pd
import six

from .exceptions import NoSuchItem

FLOAT_FORMAT = "%.17g"


class RecordList(list):
    """ Lists of realisations, events, etc all inherit this class
    for some common convenience methods, such as get_by_label()
    and export to pandas.
    """

    _CONTAINS = object

    def get(self, key):
        """Provide alias for bracket notation."""
        return self[key]

    def get_by_label(self, label):
        """ Return the first item with a specific label,
        or None.
        """
        return next((x for x in self if x.label == label), None)

    def __getitem__(self, key):
        """ Make it possible to get item by id or identity."""
        if isinstance(key, six.string_types):
            def f(x):
                return str(x.id) == key
        elif isinstance(key, self._CONTAINS) and self._CONTAINS is not object:
            def f(x):
                return x is key
        else:
            return list.__getitem__(self, key)

        try:
            return next(iter(filter(f, self)))
        except StopIteration:
            # No such item
            raise NoSuchItem("No such %s: %s" % (self._CONTAINS.__name__, key))

    def __contains__(self, item):
        """ Make the 'in' keyword check for id """
        if isinstance(item, six.string_types):
            return any(str(x.id) == item for x in self)
        return super(RecordList, self).__contains__(item)

    @property
    def list_of_dicts(self):
        """Return a list of dictionaries, one per record."""
        return [dict(x) for x in self]

    @property
    def pandas(self):
        """Return a Pandas dataframe, one row per record."""
        return pd.DataFrame.from_records(self.list_of_dicts)


def csv_text(frame):
    """CSV text of a DataFrame: no index, %.17g floats, LF line ends."""
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
