"""
Validation of run configuration files and model strings.

A run configuration is a flat INI text with [model], [run] and [output]
sections. Unknown sections and keys are rejected.
"""

import configparser
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .exceptions import ConfigError

SUPPORTED_PRIMES = (2, 3, 5)
MODEL_KINDS = ("fp", "charp", "mixed")
OUTPUT_FORMATS = ("json", "markdown")
MAX_DEGREE_CAP = 64


class ModelSection(BaseModel):
    """Ring model kind and caps."""

    model_config = ConfigDict(extra="forbid")

    kind: str = Field("fp", description="fp, charp or mixed")
    p: int = Field(2, description="Residue characteristic")
    N: Optional[int] = Field(None, description="p-adic precision (Witt length of A_inf)")
    K: Optional[int] = Field(None, description="Frobenius inverse budget / root depth")
    M: Optional[int] = Field(None, description="Tilt exponent cap")
    D: Optional[int] = Field(None, description="Monomial degree cap for complexes")

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v):
        """Validate the model kind."""
        v = v.strip().lower()
        if v not in MODEL_KINDS:
            raise ValueError(f"kind must be one of {', '.join(MODEL_KINDS)}")
        return v

    @field_validator("p")
    @classmethod
    def validate_prime(cls, v):
        """Only the primes with Witt tables are supported."""
        if v not in SUPPORTED_PRIMES:
            raise ValueError(f"p must be one of {SUPPORTED_PRIMES}")
        return v

    @field_validator("N", "K", "M")
    @classmethod
    def validate_caps(cls, v):
        if v is not None and v < 0:
            raise ValueError("caps must be non-negative")
        return v

    @field_validator("D")
    @classmethod
    def validate_degree_cap(cls, v):
        if v is not None and not 0 <= v <= MAX_DEGREE_CAP:
            raise ValueError(f"D must lie in [0, {MAX_DEGREE_CAP}]")
        return v

    @model_validator(mode="after")
    def validate_positive_precision(self):
        if self.N is not None and self.N < 1:
            raise ValueError("N must be at least 1")
        if self.M is not None and self.M < 1:
            raise ValueError("M must be at least 1")
        return self


class RunSection(BaseModel):
    """Command selection and sampling controls."""

    model_config = ConfigDict(extra="forbid")

    command: Optional[str] = None
    subcommand: Optional[str] = None
    seed: Optional[int] = None
    samples: Optional[int] = Field(None, ge=0)


class OutputSection(BaseModel):
    """Result document format and destination."""

    model_config = ConfigDict(extra="forbid")

    format: str = "json"
    path: Optional[str] = None

    @field_validator("format")
    @classmethod
    def validate_format(cls, v):
        v = v.strip().lower()
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {', '.join(OUTPUT_FORMATS)}")
        return v


class RunConfig(BaseModel):
    """Complete run configuration."""

    model_config = ConfigDict(extra="forbid")

    model: ModelSection = Field(default_factory=ModelSection)
    run: RunSection = Field(default_factory=RunSection)
    output: OutputSection = Field(default_factory=OutputSection)


def parse_config_text(text: str) -> RunConfig:
    """Parse INI text into a validated RunConfig."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"Malformed configuration: {exc}") from exc

    sections: Dict[str, Dict[str, Any]] = {}
    for name in parser.sections():
        if name not in RunConfig.model_fields:
            raise ConfigError(f"Unknown configuration section [{name}]", key=name)
        sections[name] = {key: value.strip() for key, value in parser.items(name)}

    try:
        return RunConfig(**sections)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = ".".join(str(part) for part in first["loc"])
        raise ConfigError(f"Invalid configuration value for '{key}': {first['msg']}", key=key) from exc


def load_config(path: Optional[str]) -> RunConfig:
    """Load a configuration file, or the defaults when no path is given."""
    if path is None:
        return RunConfig()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_config_text(handle.read())
    except OSError as exc:
        raise ConfigError(f"Cannot read configuration file {path}: {exc}", key="config") from exc


def parse_model_string(text: str) -> ModelSection:
    """Parse `fp`, `charp:p=3` or `mixed:p=2,N=4,K=2` into a ModelSection."""
    kind, _, rest = text.strip().partition(":")
    values: Dict[str, Any] = {"kind": kind}
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or not key:
                raise ConfigError(f"Malformed model parameter '{item}' in '{text}'", key="model")
            if key not in ModelSection.model_fields or key == "kind":
                raise ConfigError(f"Unknown model parameter '{key}'", key=f"model.{key}")
            try:
                values[key] = int(value)
            except ValueError as exc:
                raise ConfigError(f"Model parameter '{key}' must be an integer", key=f"model.{key}") from exc
    try:
        return ModelSection(**values)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = ".".join(str(part) for part in first["loc"])
        raise ConfigError(f"Invalid model parameter '{key}': {first['msg']}", key=f"model.{key}") from exc
