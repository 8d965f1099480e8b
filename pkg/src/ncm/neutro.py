"""Neutrosophic numbers ``b + c*I`` with the idempotent symbol ``I*I = I``.

Only the single indeterminacy symbol used by cognitive maps is modelled;
there are no truth/falsity subsets.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

DEFAULT_THRESHOLD = 0.5

# Absolute tolerance for "is zero" and "equals k" decisions in ``threshold``.
# Edge weights carry at most 9 fractional digits, so sums of them never need
# finer resolution than this.
ATOL = 1e-9


def format_real(x: float) -> str:
    """Shortest decimal rendering with at most 9 fractional digits.

    >>> format_real(0.8), format_real(1.0), format_real(-0.30000000000000004)
    ('0.8', '1', '-0.3')
    """
    s = f"{x:.9f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass(frozen=True)
class NeutroValue:
    """A value ``det + ind*I``."""

    det: float = 0.0
    ind: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.det) and math.isfinite(self.ind)):
            raise ValueError(f"NeutroValue parts must be finite, got ({self.det}, {self.ind})")
        # canonical zero: drop negative zeros
        object.__setattr__(self, "det", float(self.det) + 0.0)
        object.__setattr__(self, "ind", float(self.ind) + 0.0)

    def __add__(self, other: NeutroValue) -> NeutroValue:
        return nv_add(self, other)

    def __mul__(self, other: NeutroValue) -> NeutroValue:
        return nv_mul(self, other)

    @property
    def is_zero(self) -> bool:
        return self.det == 0.0 and self.ind == 0.0

    @property
    def is_pure_indeterminate(self) -> bool:
        return self.det == 0.0 and self.ind != 0.0

    def isclose(self, other: NeutroValue, atol: float = ATOL) -> bool:
        return abs(self.det - other.det) <= atol and abs(self.ind - other.ind) <= atol

    def __str__(self) -> str:
        return render_value(self)


ZERO = NeutroValue(0.0, 0.0)
ONE = NeutroValue(1.0, 0.0)
INDET = NeutroValue(0.0, 1.0)


def nv_add(a: NeutroValue, b: NeutroValue) -> NeutroValue:
    return NeutroValue(a.det + b.det, a.ind + b.ind)


def nv_mul(a: NeutroValue, b: NeutroValue) -> NeutroValue:
    # (b1 + c1 I)(b2 + c2 I) = b1 b2 + (b1 c2 + c1 b2 + c1 c2) I, using I*I = I
    return NeutroValue(a.det * b.det, a.det * b.ind + a.ind * b.det + a.ind * b.ind)


class TriState(enum.Enum):
    """Thresholded node state."""

    OFF = "0"
    ON = "1"
    IND = "I"

    def __str__(self) -> str:
        return self.value

    @property
    def rank(self) -> int:
        """Total order OFF < ON < IND, used for canonical sorting."""
        return _RANK[self]

    @classmethod
    def parse(cls, text: str) -> TriState:
        return cls(text.strip())


_RANK = {TriState.OFF: 0, TriState.ON: 1, TriState.IND: 2}
_EMBED = {TriState.OFF: ZERO, TriState.ON: ONE, TriState.IND: INDET}


def embed(state: TriState) -> NeutroValue:
    """Embed a node state as a value: OFF -> 0, ON -> 1, IND -> I."""
    return _EMBED[state]


def threshold(a: NeutroValue, k: float = DEFAULT_THRESHOLD, atol: float = ATOL) -> TriState:
    """Map a raw activation to a node state.

    A pure indeterminate value ``c*I`` becomes ``IND`` whatever the size of
    ``c``. A mixed value ``b + c*I`` is reduced to ``b`` before comparing.
    The comparison with ``k`` is strict: ``det == k`` gives ``OFF``.
    """
    if not math.isfinite(k):
        raise ValueError(f"threshold k must be finite, got {k}")
    det_zero = abs(a.det) <= atol
    if det_zero and abs(a.ind) > atol:
        return TriState.IND
    return TriState.ON if a.det > k + atol else TriState.OFF


def render_value(a: NeutroValue) -> str:
    """Render as ``b``, ``c*I`` or ``b + c*I``.

    The sign stays on the coefficient (``0.1 + -0.3*I``) and a unit
    coefficient is dropped (``I``, ``-I``).
    """
    det = format_real(a.det)
    ind = format_real(a.ind)
    if ind == "0":
        return det
    term = {"1": "I", "-1": "-I"}.get(ind, ind + "*I")
    if det == "0":
        return term
    return f"{det} + {term}"
