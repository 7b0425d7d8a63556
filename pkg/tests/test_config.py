import json
import os
import tempfile
import unittest

from dwd.config import DEFAULT_MEMORY_BUDGET, MEM_BUDGET_ENV, Neighbor, config_from_dict, load_config
from dwd.errors import ConfigError

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "configs")


class TestConfig(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, data) -> str:
        path = os.path.join(self.tmp.name, "config.json")
        with open(path, "w") as f:
            f.write(data if isinstance(data, str) else json.dumps(data))
        return path

    def test_defaults(self):
        config = load_config(env={})
        self.assertEqual(config.threads, 1)
        self.assertEqual(config.memory_budget_bytes, DEFAULT_MEMORY_BUDGET)
        self.assertEqual(config.neighbors, [])

    def test_shipped_configs_load(self):
        coordinator = load_config(os.path.join(CONFIG_DIR, "coordinator.json"), env={})
        self.assertEqual(coordinator.identity, "C")
        self.assertEqual([n.process_id for n in coordinator.neighbors], ["W1", "W2"])
        self.assertEqual(coordinator.neighbors[0].address, "localhost:50061")
        worker = load_config(os.path.join(CONFIG_DIR, "worker_w2.json"), env={})
        self.assertEqual((worker.role, worker.port), ("worker", 50062))
        load_config(os.path.join(CONFIG_DIR, "local.json"), env={})

    def test_file_values_and_unknown_keys(self):
        path = self.write({"identity": "W9", "threads": 3, "seed": 7, "comment": "ignored",
                           "neighbors": [{"process_id": "W1", "hostname": "h", "port": 1}]})
        config = load_config(path, env={})
        self.assertEqual((config.identity, config.threads, config.seed), ("W9", 3, 7))
        self.assertEqual(config.neighbors, [Neighbor("W1", "h", 1)])

    def test_precedence(self):
        path = self.write({"memory_budget_bytes": 1000, "threads": 2})
        config = load_config(path, env={MEM_BUDGET_ENV: "5000"})
        self.assertEqual(config.memory_budget_bytes, 5000)
        config = config.with_overrides(threads=6, seed=None)
        self.assertEqual(config.threads, 6)
        self.assertEqual(config.seed, 0)

    def test_errors(self):
        with self.assertRaises(ConfigError):
            load_config(os.path.join(self.tmp.name, "missing.json"), env={})
        with self.assertRaises(ConfigError):
            load_config(self.write("{not json"), env={})
        with self.assertRaises(ConfigError):
            load_config(env={MEM_BUDGET_ENV: "lots"})
        with self.assertRaises(ConfigError):
            config_from_dict({"neighbors": [{"process_id": "W1"}]})
        with self.assertRaises(ConfigError):
            config_from_dict({"threads": 0})
        with self.assertRaises(ConfigError):
            config_from_dict({"port": 70000})
        with self.assertRaises(ConfigError):
            load_config(env={}).with_overrides(seed=-1)


if __name__ == "__main__":
    unittest.main()
