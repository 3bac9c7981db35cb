"""Physical parameters and the coupling-to-alpha maps.

The two spins being correlated sit either on the same row (separation N
along a row) or on the lattice diagonal.  Both cases reduce to the same
pair of numbers (alpha1, alpha2) that parameterize the Toeplitz symbol;
temperature regime is read off alpha2 alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import CriticalPoint, InvalidAlphas, InvalidCoupling

#: alpha2 values closer to 1 than this are rejected as critical.
CRITICAL_TOL = 1e-12


class Kind(Enum):
    DIAGONAL = "diagonal"
    ROW = "row"
    DIRECT = "direct"


class Regime(Enum):
    BELOW = "below"   # alpha2 < 1, ordered phase
    ABOVE = "above"   # alpha2 > 1, disordered phase


@dataclass(frozen=True)
class ModelParams:
    """Immutable parameter set; freely shareable."""

    kind: Kind
    alpha1: float
    alpha2: float
    K1: float | None = None
    K2: float | None = None

    @property
    def regime(self) -> Regime:
        return Regime.BELOW if self.alpha2 < 1.0 else Regime.ABOVE

    @property
    def t(self) -> float | None:
        """Squared modulus alpha2**2, reported for diagonal correlations only."""
        return self.alpha2 ** 2 if self.kind is Kind.DIAGONAL else None

    def describe(self) -> str:
        bits = [f"kind={self.kind.value}", f"alpha1={self.alpha1:.12g}",
                f"alpha2={self.alpha2:.12g}", f"regime={self.regime.value}"]
        if self.K1 is not None:
            bits.append(f"K1={self.K1:.12g}")
        if self.K2 is not None:
            bits.append(f"K2={self.K2:.12g}")
        return " ".join(bits)


def _reject_critical(alpha2: float) -> None:
    if abs(alpha2 - 1.0) < CRITICAL_TOL:
        raise CriticalPoint(f"alpha2={alpha2!r} is at the critical point")


def from_couplings(kind: Kind, K1: float, K2: float) -> ModelParams:
    """Build parameters from dimensionless couplings K_j = E_j/kT.

    Diagonal: alpha1 = 0, alpha2 = 1/(sinh 2K1 sinh 2K2).
    Row:      alpha1 = exp(-2 K2) tanh K1, alpha2 = exp(-2 K2) coth K1,
              so alpha1*alpha2 = exp(-4 K2) and alpha1/alpha2 = tanh^2 K1.
    """
    for name, K in (("K1", K1), ("K2", K2)):
        if not math.isfinite(K) or K <= 0.0:
            raise InvalidCoupling(f"{name}={K!r} must be finite and positive")
    if kind is Kind.DIAGONAL:
        alpha1 = 0.0
        alpha2 = 1.0 / (math.sinh(2.0 * K1) * math.sinh(2.0 * K2))
    elif kind is Kind.ROW:
        th = math.tanh(K1)
        damp = math.exp(-2.0 * K2)
        alpha1 = damp * th
        alpha2 = damp / th
    else:
        raise InvalidCoupling("coupling maps exist for Diagonal and Row kinds only")
    _reject_critical(alpha2)
    return ModelParams(kind=kind, alpha1=alpha1, alpha2=alpha2, K1=K1, K2=K2)


def direct(alpha1: float, alpha2: float, kind: Kind = Kind.DIRECT) -> ModelParams:
    """Build parameters from the alphas themselves.

    Requires 0 <= alpha1 < 1 and alpha1 <= alpha2 with alpha2 != 1.
    The degenerate case alpha1 == alpha2 (symbol identically 1) is allowed
    here, and only here, because it makes a convenient exactness check.
    """
    if not (math.isfinite(alpha1) and math.isfinite(alpha2)):
        raise InvalidAlphas("alphas must be finite")
    if alpha1 < 0.0 or alpha2 <= 0.0:
        raise InvalidAlphas(f"need alpha1 >= 0 and alpha2 > 0, got ({alpha1}, {alpha2})")
    if alpha1 > alpha2:
        raise InvalidAlphas(f"need alpha1 <= alpha2, got ({alpha1}, {alpha2})")
    if alpha1 >= 1.0:
        raise InvalidAlphas(f"alpha1={alpha1} must stay below 1 in both regimes")
    _reject_critical(alpha2)
    return ModelParams(kind=kind, alpha1=alpha1, alpha2=alpha2)


def diagonal_from_alpha2(alpha2: float) -> ModelParams:
    """Diagonal-kind parameters specified by alpha2 directly (alpha1 is 0)."""
    p = direct(0.0, alpha2)
    return ModelParams(kind=Kind.DIAGONAL, alpha1=0.0, alpha2=p.alpha2)
