# encoding: utf-8

import json
import os
import tempfile
from unittest import TestCase

from eplab.config import (config_hash, default_config, load_config, load_schema,
                          set_value, validate_config)
from eplab.exceptions import ConfigError


class TestConfig(TestCase):

    def test_schema(self):
        schema = load_schema()
        self.assertIn("grid.N_g", schema)
        self.assertEqual(schema["grid.N_g"].default, 16)
        self.assertEqual(schema["run.depth"].allowed_values, [1, 2])

    def test_defaults_validate(self):
        config = validate_config({})
        self.assertEqual(config["run"]["prob_mode"], "uniform")
        self.assertEqual(config["run"]["cycles"], 10000)
        self.assertIsNone(config["run"]["pr_threshold"])

    def test_zero_grid_names_field(self):
        """N_g = 0 is refused with the field path."""
        with self.assertRaises(ConfigError) as cm:
            validate_config({"grid": {"N_g": 0}})
        self.assertEqual(cm.exception.path, "grid.N_g")
        self.assertIn("N_g", str(cm.exception))

    def test_unknown_key(self):
        with self.assertRaises(ConfigError) as cm:
            validate_config({"grid": {"points": 8}})
        self.assertEqual(cm.exception.path, "grid.points")

        with self.assertRaises(ConfigError):
            validate_config({"mesh": {}})

    def test_types_and_allowed_values(self):
        with self.assertRaises(ConfigError):
            validate_config({"grid": {"N_g": 8.5}})
        with self.assertRaises(ConfigError):
            validate_config({"grid": {"N_g": True}})
        with self.assertRaises(ConfigError) as cm:
            validate_config({"coupling": {"kind": "yukawa"}})
        self.assertEqual(cm.exception.path, "coupling.kind")
        with self.assertRaises(ConfigError):
            validate_config({"run": {"depth": 3}})

    def test_given_modes_need_samples(self):
        with self.assertRaises(ConfigError):
            validate_config({"modes": {"kind": "given", "N_tot": 2, "eps": [0, 1]}})

    def test_custom_kernel_shape(self):
        with self.assertRaises(ConfigError) as cm:
            validate_config({"grid": {"N_g": 3}, "modes": {"N_q": 2},
                             "coupling": {"kind": "custom_sampled",
                                          "samples": [[0, 0, 0]]}})
        self.assertEqual(cm.exception.path, "coupling.samples")

    def test_wells(self):
        with self.assertRaises(ConfigError):
            validate_config({"hg": {"wells": [{"center": 0.5, "depth": 1.0}]}})

    def test_set_value(self):
        config = default_config()
        changed = set_value(config, "run.seed", 7)
        self.assertEqual(changed["run"]["seed"], 7)
        self.assertEqual(config["run"]["seed"], 0)
        with self.assertRaises(ConfigError):
            set_value(config, "run.prob_mode", "fair")

    def test_hash(self):
        """Key order does not change the hash, values do."""
        a = validate_config({"grid": {"N_g": 8, "boundary": "periodic"}})
        b = validate_config({"grid": {"boundary": "periodic", "N_g": 8}})
        self.assertEqual(config_hash(a), config_hash(b))
        self.assertNotEqual(config_hash(a), config_hash(default_config()))

    def test_load_config(self):
        handle, path = tempfile.mkstemp(suffix=".json")
        os.close(handle)
        try:
            with open(path, "w") as f:
                json.dump({"grid": {"N_g": 8}}, f)
            self.assertEqual(load_config(path)["grid"]["N_g"], 8)
            with open(path, "w") as f:
                f.write("{not json")
            with self.assertRaises(ConfigError):
                load_config(path)
        finally:
            os.remove(path)
