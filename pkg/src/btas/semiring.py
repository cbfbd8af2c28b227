"""Scalar tropical algebra.

Weights are extended reals: either a finite double or the single symbolic
Infinity that stands for "no path".  Under min-plus, ⊕ is min and Infinity
sits above every finite weight; under max-plus, ⊕ is max and Infinity sits
below.  ⊗ is ordinary addition in both, with Infinity absorbing.  The
additive identity is Infinity, the multiplicative identity is 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class SemiringKind(Enum):
    """Selects the min-plus or max-plus reading of ⊕, and with it the
    ordering and the orientation of Infinity."""

    MIN_PLUS = "minplus"
    MAX_PLUS = "maxplus"

    @classmethod
    def from_token(cls, token: str) -> "SemiringKind":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"unknown semiring kind {token!r} (expected 'minplus' or 'maxplus')") from None


@dataclass(frozen=True, slots=True)
class TropicalWeight:
    """An edge weight or distance: a finite real, or the symbolic Infinity.

    Infinity is written `math.inf` regardless of kind; whether it means +∞
    (min-plus) or -∞ (max-plus) is decided by the SemiringKind of whatever
    operation consumes it.  NaN and -inf are rejected outright: NaN would
    make min/max order-dependent, and a signed -inf would let callers smuggle
    a wrongly oriented infinity into a matrix.
    """

    value: float

    def __post_init__(self) -> None:
        v = float(self.value)
        if math.isnan(v):
            raise ValueError("tropical weights cannot be NaN")
        if v == -math.inf:
            raise ValueError("use math.inf (or INFINITY) for the symbolic no-path weight")
        if v == 0.0:
            v = 0.0  # normalize -0.0 so equal weights are bit-identical
        object.__setattr__(self, "value", v)

    @property
    def is_infinite(self) -> bool:
        return self.value == math.inf

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return format_weight(self)


INFINITY = TropicalWeight(math.inf)
ZERO = TropicalWeight(0.0)

#: Integer-mode magnitudes must stay strictly below 2^53 for double storage
#: to be exact; sums that reach this limit saturate to Infinity.
INT_EXACT_LIMIT = float(2**53)

_saturated = False


def saturation_seen() -> bool:
    """True if any ⊗ since the last reset overflowed and saturated to Infinity."""
    return _saturated


def reset_saturation() -> None:
    global _saturated
    _saturated = False


def _note_saturation() -> None:
    global _saturated
    _saturated = True


def as_weight(x: "TropicalWeight | float | int") -> TropicalWeight:
    """Coerce a bare number to a TropicalWeight (math.inf means Infinity)."""
    if isinstance(x, TropicalWeight):
        return x
    return TropicalWeight(float(x))


def tadd(kind: SemiringKind, x: "TropicalWeight | float | int", y: "TropicalWeight | float | int") -> TropicalWeight:
    """Tropical sum: min under min-plus, max under max-plus.

    Infinity is the identity for both kinds, so it never wins the selection
    against a finite weight.
    """
    xw, yw = as_weight(x), as_weight(y)
    if xw.is_infinite:
        return yw
    if yw.is_infinite:
        return xw
    if kind is SemiringKind.MIN_PLUS:
        return xw if xw.value <= yw.value else yw
    return xw if xw.value >= yw.value else yw


def tmul(kind: SemiringKind, x: "TropicalWeight | float | int", y: "TropicalWeight | float | int") -> TropicalWeight:
    """Tropical product: ordinary addition, with Infinity absorbing.

    A finite sum that overflows the double range saturates to Infinity and
    raises the module saturation flag instead of producing ±inf silently.
    """
    xw, yw = as_weight(x), as_weight(y)
    if xw.is_infinite or yw.is_infinite:
        return INFINITY
    s = xw.value + yw.value
    if math.isinf(s):
        _note_saturation()
        return INFINITY
    return TropicalWeight(s)


def additive_identity(kind: SemiringKind) -> TropicalWeight:
    """The ⊕ identity: Infinity (read as +∞ for min-plus, -∞ for max-plus)."""
    return INFINITY


def multiplicative_identity(kind: SemiringKind) -> TropicalWeight:
    """The ⊗ identity: the finite weight 0."""
    return ZERO


def format_weight(w: "TropicalWeight | float | int", integer: bool = False) -> str:
    """Render a weight as text: `inf` for Infinity, a decimal literal otherwise.

    With integer=True the finite value is printed without a decimal point,
    which round-trips bit-exactly through parse_weight.
    """
    ww = as_weight(w)
    if ww.is_infinite:
        return "inf"
    if integer:
        return str(int(ww.value))
    return repr(ww.value)


def parse_weight(token: str) -> TropicalWeight:
    """Parse a weight token; `inf` (any case) is Infinity, NaN is rejected."""
    text = token.strip()
    if text.lower() == "inf":
        return INFINITY
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"not a weight: {token!r}") from None
    return TropicalWeight(value)
