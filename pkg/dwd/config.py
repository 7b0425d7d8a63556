"""
Process configuration.

Configs are JSON files shaped like:

    {
      "identity": "W1",
      "role": "worker",
      "hostname": "localhost",
      "port": 50061,
      "neighbors": [{"process_id": "W2", "hostname": "localhost", "port": 50062}],
      "description": "...",
      "threads": 4,
      ...
    }

Precedence: defaults < JSON file < environment (DWD_MEM_BUDGET) < command-line flags.
"""

import json
import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, List, Optional

from .errors import ConfigError

MEM_BUDGET_ENV = "DWD_MEM_BUDGET"
DEFAULT_MEMORY_BUDGET = 4 << 30


@dataclass(frozen=True)
class Neighbor:
    process_id: str
    hostname: str
    port: int

    @property
    def address(self) -> str:
        return f"{self.hostname}:{self.port}"


@dataclass(frozen=True)
class Config:
    identity: str = "local"
    role: str = "coordinator"
    hostname: str = "localhost"
    port: int = 50061
    neighbors: List[Neighbor] = field(default_factory=list)
    description: str = ""
    threads: int = 1
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET
    fingerprint_mode: bool = False
    checkpoint_path: Optional[str] = None
    output_dir: str = "results"
    seed: int = 0
    hamiltonian_node_budget: int = 2_000_000

    def validate(self) -> "Config":
        if self.threads < 1:
            raise ConfigError(f"threads must be at least 1, got {self.threads}")
        if self.memory_budget_bytes < 0:
            raise ConfigError(f"memory budget must not be negative, got {self.memory_budget_bytes}")
        if self.hamiltonian_node_budget < 1:
            raise ConfigError("hamiltonian node budget must be positive")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError(f"seed must fit in 64 bits, got {self.seed}")
        if not 0 <= self.port < 65536:
            raise ConfigError(f"port {self.port} is out of range")
        return self

    def with_overrides(self, **overrides: Any) -> "Config":
        """Apply the values that were actually given (None means not given)."""
        given = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **given).validate()


def _neighbor(raw: Any) -> Neighbor:
    try:
        return Neighbor(str(raw["process_id"]), str(raw["hostname"]), int(raw["port"]))
    except (KeyError, TypeError, ValueError):
        raise ConfigError(f"malformed neighbor entry {raw!r}; need process_id, hostname and port") from None


def config_from_dict(data: Dict[str, Any]) -> Config:
    known = {f.name for f in fields(Config)}
    values = {k: v for k, v in data.items() if k in known}
    values["neighbors"] = [_neighbor(raw) for raw in data.get("neighbors", [])]
    try:
        return Config(**values).validate()
    except TypeError as e:
        raise ConfigError(str(e)) from None


def load_config(config_path: Optional[str] = None, env: Optional[Dict[str, str]] = None) -> Config:
    """Load configuration from a JSON file and the environment."""
    data: Dict[str, Any] = {}
    if config_path:
        try:
            with open(config_path, "r") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {config_path}") from None
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file {config_path} is not valid JSON: {e}") from None
    config = config_from_dict(data)

    env = os.environ if env is None else env
    budget = env.get(MEM_BUDGET_ENV)
    if budget:
        try:
            config = config.with_overrides(memory_budget_bytes=int(budget))
        except ValueError:
            raise ConfigError(f"{MEM_BUDGET_ENV} must be a byte count, got {budget!r}") from None
    return config
