"""
Shared state and argument helpers for the command modules.
"""

import argparse
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..config import settings
from ..core.exceptions import ConfigError
from ..core.logging import logger
from ..core.validators import ModelSection, RunConfig, parse_model_string
from ..models.ainf import PerfectoidModel
from ..models.rings import RingModel
from ..services.sampling import make_rng


@dataclass
class CommandResult:
    """What a handler hands back to the runner."""

    result: Any
    table: Optional[str] = None


@dataclass
class CommandContext:
    """Resolved configuration for one invocation."""

    config: RunConfig
    seed: int
    format: str
    samples: int
    warnings: List[str] = field(default_factory=list)
    _rng: Optional[np.random.Generator] = None

    @classmethod
    def create(cls, args: argparse.Namespace, config: RunConfig) -> "CommandContext":
        seed = args.seed if args.seed is not None else config.run.seed
        samples = config.run.samples if config.run.samples is not None else settings.sample_count
        fmt = args.format or (config.output.format if config.output.format else settings.default_format)
        return cls(config, settings.default_seed if seed is None else seed, fmt, samples)

    @property
    def rng(self) -> np.random.Generator:
        if self._rng is None:
            self._rng = make_rng(self.seed)
        return self._rng

    def warn(self, message: str) -> None:
        logger.warning(message)
        self.warnings.append(message)

    def model_section(self, text: Optional[str]) -> ModelSection:
        return parse_model_string(text) if text else self.config.model

    def perfectoid(self, text: Optional[str] = None) -> PerfectoidModel:
        """Model from a --model string, else from the [model] section."""
        return perfectoid_model(self.model_section(text))

    def describe(self, args: argparse.Namespace) -> Dict[str, Any]:
        """The configuration embedded in the result document."""
        params = {k: v for k, v in sorted(vars(args).items()) if k not in ("handler", "config", "format", "seed")}
        return {
            "seed": self.seed,
            "samples": self.samples,
            "model": self.config.model.model_dump(),
            "parameters": params,
        }


def perfectoid_model(section: ModelSection) -> PerfectoidModel:
    p = section.p
    if section.kind == "fp":
        return PerfectoidModel.fp(p, section.N or 24)
    if section.kind == "charp":
        return PerfectoidModel.char_p(
            p,
            section.N or settings.default_precision,
            section.K if section.K is not None else settings.default_frobenius_budget,
            section.M or settings.default_exponent_cap,
        )
    return PerfectoidModel.mixed(
        p,
        section.N or settings.default_precision,
        section.K if section.K is not None else 2,
        section.M or settings.default_exponent_cap,
    )


def base_ring(text: str, p: int) -> RingModel:
    """Z, Fp or Z/m."""
    text = text.strip()
    if text == "Z":
        return RingModel.integers()
    if text == "Fp":
        return RingModel.prime_field(p)
    if text.startswith("Z/"):
        try:
            return RingModel.integers_mod(int(text[2:]))
        except ValueError as exc:
            raise ConfigError(f"Bad modulus in base '{text}'", key="base") from exc
    raise ConfigError(f"Unknown base ring '{text}'; use Z, Fp or Z/m", key="base")


def int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got '{text}'") from exc


def int_range(text: str) -> Tuple[int, int]:
    """'a..b' inclusive, or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        start = int(lo)
        end = int(hi) if sep else start
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a range like -2..6, got '{text}'") from exc
    if end < start:
        raise argparse.ArgumentTypeError(f"empty range '{text}'")
    return start, end


RANGE_FLAGS = ("--degrees", "--levels")


def join_range_flags(argv: List[str]) -> List[str]:
    """Glue `--degrees -2..6` into `--degrees=-2..6` so argparse does not read -2..6 as a flag."""
    out: List[str] = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if token in RANGE_FLAGS and index + 1 < len(argv):
            out.append(f"{token}={argv[index + 1]}")
            index += 2
            continue
        out.append(token)
        index += 1
    return out


def add_model_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", help="fp[:p=P,N=N], charp:p=P[,N,K,M] or mixed:p=P[,N,K,M]")
