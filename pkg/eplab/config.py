# encoding: utf-8
""" Contains code for reading and validating configuration documents
    against the key ontology in schema/config_keys.csv
"""
import json
import numbers
import os
from copy import deepcopy
from hashlib import md5

import six
from csvkit import DictReader

from .exceptions import ConfigError

DIR_PATH = os.path.dirname(os.path.realpath(__file__))
SCHEMA_FILE = os.path.join(DIR_PATH, "schema", "config_keys.csv")
SECTIONS = ("grid", "modes", "coupling", "hg", "run")
VALUE_DELIMITOR = ','

_schema = None


class ConfigKey(object):
    """Represent one admissible configuration key, as a row in config_keys.csv."""

    def __init__(self, row):
        self.path = row["path"]
        self.section, self.name = self.path.split(".", 1)
        self.value_type = row["value_type"]
        self.default = json.loads(row["default"])
        self.description = row["description"]
        allowed = row["allowed_values"]
        if allowed:
            self.allowed_values = [self._parse_allowed(x.strip())
                                   for x in allowed.split(VALUE_DELIMITOR)]
        else:
            self.allowed_values = None
        self.bounds = self._parse_bounds(row["bounds"])

    def _parse_allowed(self, text):
        if self.value_type == "int":
            return int(text)
        return text

    @staticmethod
    def _parse_bounds(text):
        """Parse "[2,)" style intervals into (lo, lo_closed, hi, hi_closed)."""
        if not text:
            return None
        lo, hi = text[1:-1].split(",")
        return (float(lo) if lo else None, text[0] == "[",
                float(hi) if hi else None, text[-1] == "]")

    def check(self, value):
        """Return value if admissible for this key, raise ConfigError otherwise."""
        if value is None:
            if self.default is None:
                return None
            raise ConfigError(self.path, "must not be null")
        if self.value_type == "int":
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                raise ConfigError(self.path, "expected an integer, got %r" % (value,))
            value = int(value)
        elif self.value_type == "float":
            if isinstance(value, bool) or not isinstance(value, numbers.Real):
                raise ConfigError(self.path, "expected a number, got %r" % (value,))
            value = float(value)
        elif self.value_type == "str":
            if not isinstance(value, six.string_types):
                raise ConfigError(self.path, "expected a string, got %r" % (value,))
        elif self.value_type == "bool":
            if not isinstance(value, bool):
                raise ConfigError(self.path, "expected true or false, got %r" % (value,))
        elif self.value_type == "list":
            if not isinstance(value, list):
                raise ConfigError(self.path, "expected a list, got %r" % (value,))

        if self.allowed_values is not None and value not in self.allowed_values:
            raise ConfigError(self.path, "%r is not one of %s" % (
                value, ", ".join(str(x) for x in self.allowed_values)))

        if self.bounds is not None:
            lo, lo_closed, hi, hi_closed = self.bounds
            if lo is not None and (value < lo or (value == lo and not lo_closed)):
                raise ConfigError(self.path, "%r is below the allowed range" % (value,))
            if hi is not None and (value > hi or (value == hi and not hi_closed)):
                raise ConfigError(self.path, "%r is above the allowed range" % (value,))
        return value

    def __repr__(self):
        return '<ConfigKey: %s (%s)>' % (self.path, self.value_type)


def load_schema():
    """Return all configuration keys, by dotted path."""
    global _schema
    if _schema is None:
        schema = {}
        with open(SCHEMA_FILE, 'r') as csvfile:
            reader = DictReader(csvfile)
            for row in reader:
                key = ConfigKey(row)
                schema[key.path] = key
        _schema = schema
    return _schema


def default_config():
    """A complete configuration holding only default values."""
    config = {section: {} for section in SECTIONS}
    for key in load_schema().values():
        config[key.section][key.name] = deepcopy(key.default)
    return config


def validate_config(document):
    """Merge `document` over the defaults and check every key.

    Unknown sections or keys, wrong types and out of range values raise
    ConfigError naming the dotted field path.
    """
    if not isinstance(document, dict):
        raise ConfigError("<root>", "the configuration must be a JSON object")
    schema = load_schema()
    config = default_config()
    for section, values in document.items():
        if section not in SECTIONS:
            raise ConfigError(section, "unknown section")
        if not isinstance(values, dict):
            raise ConfigError(section, "expected an object")
        for name, value in values.items():
            path = "%s.%s" % (section, name)
            if path not in schema:
                raise ConfigError(path, "unknown key")
            config[section][name] = schema[path].check(value)
    _check_consistency(config)
    return config


def _check_consistency(config):
    """Checks that involve more than one key."""
    for path in ("grid.span", "modes.q_span"):
        section, name = path.split(".")
        span = config[section][name]
        if span is None:
            continue
        if (len(span) != 2 or not all(isinstance(x, numbers.Real) for x in span)
                or not span[0] < span[1]):
            raise ConfigError(path, "expected [lo, hi] with lo < hi")

    modes = config["modes"]
    if modes["kind"] == "given":
        if modes["eps"] is None or modes["phi"] is None:
            raise ConfigError("modes.eps", "given modes need both eps and phi")
        if len(modes["eps"]) != modes["N_tot"]:
            raise ConfigError("modes.eps", "expected %d energies" % modes["N_tot"])
        if len(modes["phi"]) != modes["N_tot"]:
            raise ConfigError("modes.phi", "expected %d sample lists" % modes["N_tot"])
        for n, samples in enumerate(modes["phi"]):
            if not isinstance(samples, list) or len(samples) != modes["N_q"]:
                raise ConfigError("modes.phi", "mode %d needs %d samples" % (n, modes["N_q"]))

    coupling = config["coupling"]
    if coupling["kind"] == "custom_sampled":
        samples = coupling["samples"]
        if samples is None:
            raise ConfigError("coupling.samples", "custom_sampled needs samples")
        if (len(samples) != modes["N_q"]
                or any(not isinstance(r, list) or len(r) != config["grid"]["N_g"]
                       for r in samples)):
            raise ConfigError("coupling.samples", "expected a %d x %d nested list"
                              % (modes["N_q"], config["grid"]["N_g"]))

    hg = config["hg"]
    if hg["potential"] is not None and len(hg["potential"]) != config["grid"]["N_g"]:
        raise ConfigError("hg.potential", "expected %d samples" % config["grid"]["N_g"])
    for i, well in enumerate(hg["wells"]):
        if not isinstance(well, dict) or sorted(well) != ["center", "depth", "width"]:
            raise ConfigError("hg.wells", "well %d must have center, depth and width" % i)
        if not well["width"] > 0:
            raise ConfigError("hg.wells", "well %d needs a positive width" % i)


def load_config(path):
    """Read and validate a JSON configuration file."""
    with open(path, "r") as f:
        try:
            document = json.load(f)
        except ValueError as e:
            raise ConfigError("<root>", "not valid JSON (%s)" % e)
    return validate_config(document)


def set_value(config, path, value):
    """Return a copy of `config` with one key replaced and checked."""
    schema = load_schema()
    if path not in schema:
        raise ConfigError(path, "unknown key")
    config = deepcopy(config)
    key = schema[path]
    config[key.section][key.name] = key.check(value)
    return config


def config_hash(config):
    """Return a hash for a configuration.

    Equal configurations, regardless of key order, hash equally.
    """
    dump = json.dumps(config, sort_keys=True)
    if isinstance(dump, str):
        dump = dump.encode('utf-8')
    return md5(dump).hexdigest()
