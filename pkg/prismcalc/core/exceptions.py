"""
Exception hierarchy for prismcalc.

Every failure a computation can report has its own class and a stable
error code so the CLI can emit a machine-readable error object.
"""

from typing import Any, Dict, Optional


class PrismError(Exception):
    """Base exception for every prismcalc failure."""

    error_code = "PRISM_ERROR"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


# Ring and precision errors

class ModelMismatch(PrismError):
    """Operands live in different ring models."""

    error_code = "MODEL_MISMATCH"

    def __init__(self, left: Any, right: Any):
        super().__init__(
            f"Operands belong to different models: {left} vs {right}",
            {"left": str(left), "right": str(right)},
        )


class PrecisionExhausted(PrismError):
    """An operation needs more precision than the ledger holds."""

    error_code = "PRECISION_EXHAUSTED"

    def __init__(self, budget: str, needed: Any, available: Any):
        super().__init__(
            f"Precision budget '{budget}' exhausted: needed {needed}, available {available}",
            {"budget": budget, "needed": str(needed), "available": str(available)},
        )


class NotDivisible(PrismError):
    """Exact division has a nonzero remainder."""

    error_code = "NOT_DIVISIBLE"

    def __init__(self, dividend: Any, divisor: Any):
        super().__init__(
            f"{dividend} is not divisible by {divisor}",
            {"dividend": str(dividend), "divisor": str(divisor)},
        )


class NotNonZeroDivisor(PrismError):
    """The divisor is a zero divisor of the model (or zero)."""

    error_code = "NOT_NON_ZERO_DIVISOR"

    def __init__(self, divisor: Any, reason: str = "zero divisor"):
        super().__init__(
            f"{divisor} cannot be used as a divisor: {reason}",
            {"divisor": str(divisor), "reason": reason},
        )


class CapExceeded(PrismError):
    """A term exceeds a configured degree or size cap."""

    error_code = "CAP_EXCEEDED"

    def __init__(self, what: str, value: Any, cap: Any):
        super().__init__(
            f"{what} = {value} exceeds cap {cap}",
            {"what": what, "value": str(value), "cap": str(cap)},
        )


# Witt vector errors

class InvalidPrime(PrismError):
    """A prime parameter is not prime."""

    error_code = "INVALID_PRIME"

    def __init__(self, p: Any):
        super().__init__(f"{p} is not a prime", {"p": str(p)})


class SizeCapExceeded(PrismError):
    """Requested (p, r) is outside the supported Witt table sizes."""

    error_code = "SIZE_CAP_EXCEEDED"

    def __init__(self, p: int, r: int):
        super().__init__(
            f"Witt polynomial tables are capped: (p={p}, r={r}) is not supported",
            {"p": p, "r": r},
        )


class IntegralityViolation(PrismError):
    """A universal polynomial recursion produced a non-integral coefficient."""

    error_code = "INTEGRALITY_VIOLATION"

    def __init__(self, family: str, index: int):
        super().__init__(
            f"Non-integral coefficient while building {family} polynomial {index}",
            {"family": family, "index": index},
        )


class LengthUnderflow(PrismError):
    """An operator would produce a Witt vector of non-positive length."""

    error_code = "LENGTH_UNDERFLOW"

    def __init__(self, operator: str, length: int):
        super().__init__(
            f"{operator} needs length >= 2, got {length}",
            {"operator": operator, "length": length},
        )


class NonWittGhost(PrismError):
    """Ghost components do not come from a Witt vector at this precision."""

    error_code = "NON_WITT_GHOST"

    def __init__(self, index: int):
        super().__init__(
            f"Ghost back-solve failed at component {index}: inexact division by p",
            {"component": index},
        )


# Filtration errors

class NotInFiltration(PrismError):
    """Element is not in the requested filtration step."""

    error_code = "NOT_IN_FILTRATION"

    def __init__(self, weight: int, level: int, element: Any = None):
        super().__init__(
            f"Element is not in N_{level}^(>={weight})",
            {"weight": weight, "level": level, "element": str(element)},
        )


class UnsupportedWeight(PrismError):
    """Operator only defined for weight zero."""

    error_code = "UNSUPPORTED_WEIGHT"

    def __init__(self, operator: str, weight: int):
        super().__init__(
            f"{operator} is only defined in weight 0, got weight {weight}",
            {"operator": operator, "weight": weight},
        )


class NotPerfectBase(PrismError):
    """gr0 comparison needs a perfect characteristic p base."""

    error_code = "NOT_PERFECT_BASE"

    def __init__(self, model: Any):
        super().__init__(
            f"Model {model} is not a perfect characteristic p base",
            {"model": str(model)},
        )


class UnsupportedModel(PrismError):
    """Operation needs a finitely generated coefficient model."""

    error_code = "UNSUPPORTED_MODEL"

    def __init__(self, operation: str, model: Any):
        super().__init__(
            f"{operation} is not available for model {model}",
            {"operation": operation, "model": str(model)},
        )


# Graded ring errors

class NonStabilized(PrismError):
    """Tower did not stabilize inside the computed window."""

    error_code = "NON_STABILIZED"

    def __init__(self, level: int, window: Any):
        super().__init__(
            f"Tower image chain at level {level} did not stabilize within window {window}",
            {"level": level, "window": str(window)},
        )


class InvalidMapSpec(PrismError):
    """A structure map failed validation and no override was given."""

    error_code = "INVALID_MAP_SPEC"

    def __init__(self, name: str, residues: Any):
        super().__init__(
            f"Structure map '{name}' does not preserve relations",
            {"map": name, "residues": residues},
        )


# Complex errors

class UnsupportedBase(PrismError):
    """Complex base ring not supported by this operation."""

    error_code = "UNSUPPORTED_BASE"

    def __init__(self, operation: str, base: Any):
        super().__init__(
            f"{operation} does not support base {base}",
            {"operation": operation, "base": str(base)},
        )


class TorsionPresent(PrismError):
    """Décalage needs a torsion-free complex."""

    error_code = "TORSION_PRESENT"

    def __init__(self, base: Any):
        super().__init__(
            f"Complex over {base} has torsion; décalage needs free modules over Z",
            {"base": str(base)},
        )


class WindowTooSmall(PrismError):
    """Degree window cannot witness the requested comparison."""

    error_code = "WINDOW_TOO_SMALL"

    def __init__(self, window: Any, needed: Any):
        super().__init__(
            f"Window {window} is too small, need at least {needed}",
            {"window": str(window), "needed": str(needed)},
        )


# Input errors

class ConfigError(PrismError):
    """Run configuration is invalid."""

    error_code = "CONFIG_ERROR"

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message, {"key": key} if key else {})


class ExpressionSyntaxError(PrismError):
    """Element expression could not be parsed."""

    error_code = "EXPRESSION_SYNTAX_ERROR"

    def __init__(self, text: str, position: int, reason: str):
        super().__init__(
            f"Cannot parse '{text}' at position {position}: {reason}",
            {"text": text, "position": position, "reason": reason},
        )


def precision_exhausted(budget: str, needed: Any, available: Any) -> PrecisionExhausted:
    """Create precision error."""
    return PrecisionExhausted(budget, needed, available)


def not_in_filtration(weight: int, level: int, element: Any = None) -> NotInFiltration:
    """Create filtration membership error."""
    return NotInFiltration(weight, level, element)
