"""Provider configuration: endpoints, per-module models, sampling, limits."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from intentflow.errors import ValidationError


class ModuleKind(str, Enum):
    """The six pipeline modules; each has exactly one template and one schema."""

    ENTRYPOINT = "entrypoint"
    GOAL = "goal"
    INTENT = "intent"
    DIMENSION = "dimension"
    OUTPUT = "output"
    LINKING = "linking"


SMALL_MODEL = "gpt-4o-mini-2024-07-18"
LARGE_MODEL = "gpt-4o-2024-08-06"


def default_models() -> dict[ModuleKind, str]:
    return {
        ModuleKind.ENTRYPOINT: LARGE_MODEL,
        ModuleKind.GOAL: SMALL_MODEL,
        ModuleKind.INTENT: SMALL_MODEL,
        ModuleKind.DIMENSION: SMALL_MODEL,
        ModuleKind.OUTPUT: LARGE_MODEL,
        ModuleKind.LINKING: LARGE_MODEL,
    }


@dataclass
class ProviderConfig:
    endpoint: str = "https://api.openai.com/v1"
    credential_env: str = "INTENTFLOW_API_KEY"
    model_by_module: dict[ModuleKind, str] = field(default_factory=default_models)
    timeout: float = 60.0
    max_retries: int = 2
    concurrency: int = 8
    # Sampling is unspecified upstream; extraction and linking run greedy.
    temperature_extract: float = 0.0
    temperature_output: float = 0.7

    def __post_init__(self) -> None:
        if self.max_retries < 1:
            raise ValidationError("max_retries must be >= 1")
        if self.concurrency < 1:
            raise ValidationError("concurrency must be >= 1")

    def model_for(self, kind: ModuleKind) -> str:
        return self.model_by_module.get(kind, LARGE_MODEL)

    def temperature_for(self, kind: ModuleKind) -> float:
        return self.temperature_output if kind is ModuleKind.OUTPUT else self.temperature_extract

    @classmethod
    def from_file(cls, path: str | Path) -> "ProviderConfig":
        """Read a [provider]/[models] key-value config file."""
        parser = configparser.ConfigParser()
        read = parser.read(path)
        if not read:
            raise ValidationError(f"config file {path} not found or unreadable")
        config = cls()
        if parser.has_section("provider"):
            section = parser["provider"]
            config.endpoint = section.get("endpoint", config.endpoint)
            config.credential_env = section.get("credential_env", config.credential_env)
            config.timeout = section.getfloat("timeout", config.timeout)
            config.max_retries = section.getint("max_retries", config.max_retries)
            config.concurrency = section.getint("concurrency", config.concurrency)
            config.temperature_extract = section.getfloat("temperature_extract", config.temperature_extract)
            config.temperature_output = section.getfloat("temperature_output", config.temperature_output)
        if parser.has_section("models"):
            for name, model in parser["models"].items():
                try:
                    config.model_by_module[ModuleKind(name)] = model
                except ValueError as exc:
                    raise ValidationError(f"unknown module {name!r} in [models]") from exc
        config.__post_init__()
        return config
