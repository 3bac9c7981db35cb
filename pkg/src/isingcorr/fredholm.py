"""Spectral form of the chain expansions.

Discretizing the two-step chain kernel on the quadrature grid gives one
M x M matrix K whose traces reproduce the closed-chain integrals
(order-2n coefficient = -tr(K^n)/n) and whose spectrum carries the whole
family at once: log det(I - K) sums the exponential series, and the
signed elementary symmetric functions of the eigenvalues are the
form factor terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonFinite, RegimeMismatch, SpectralRadiusExceeded
from .kernels import KernelSet
from .params import ModelParams, Regime
from .quadrature import ContourGrid

#: eigenvector condition number beyond which traces replace eigenvalues
EIG_COND_LIMIT = 1e8


@dataclass
class KernelMatrix:
    """Discretized chain kernel, immutable after build."""

    matrix: np.ndarray
    N: int
    hat: bool
    M: int
    _eigs: np.ndarray | None = field(default=None, repr=False, compare=False)
    _eig_cond: float | None = field(default=None, repr=False, compare=False)

    def eigenvalues(self) -> np.ndarray:
        if self._eigs is None:
            eigs, vecs = np.linalg.eig(self.matrix)
            self._eigs = eigs
            self._eig_cond = float(np.linalg.cond(vecs))
        return self._eigs

    def eig_condition(self) -> float:
        self.eigenvalues()
        return self._eig_cond

    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues())))

    def trace_power(self, n: int) -> complex:
        """tr(K^n) by repeated multiplication (no spectral decomposition)."""
        if n < 1:
            raise ValueError("power must be at least 1")
        power = self.matrix
        for _ in range(n - 1):
            power = power @ self.matrix
        return complex(np.trace(power))


def build_kernel(params: ModelParams, grid: ContourGrid, N: int, hat: bool = False) -> KernelMatrix:
    """Assemble K = A B for the closed chains at separation N.

    A[j, k] = u_j W_odd(z_j) z_j^N / (1 - z_j z_k) and
    B[k, j] = u_k W_even(z_k) z_k^N / (1 - z_k z_j); keeping all weights
    on the left index avoids square roots of complex weights and any
    branch ambiguity they would bring.
    """
    if hat and params.regime is not Regime.ABOVE:
        raise RegimeMismatch("hat kernels require the above regime")
    if not hat and params.regime is not Regime.BELOW:
        raise RegimeMismatch("plain kernels require the below regime")
    ks = KernelSet(params)
    z = grid.nodes
    w_odd = (ks.qq_hat if hat else ks.qq)(z)
    w_even = (ks.pp_hat if hat else ks.pp)(z)
    if not (np.all(np.isfinite(w_odd)) and np.all(np.isfinite(w_even))):
        raise NonFinite("chain weights evaluated to non-finite values")
    zn = z ** N
    C = grid.cauchy_matrix()
    A = (grid.weights * w_odd * zn)[:, None] * C
    B = (grid.weights * w_even * zn)[:, None] * C
    return KernelMatrix(matrix=A @ B, N=N, hat=hat, M=grid.M)


def log_det_expansion(K: KernelMatrix) -> float:
    """log det(I - K) = sum_i log(1 - lambda_i); the summed exponential series."""
    lam = K.eigenvalues()
    if np.max(np.abs(lam)) >= 1.0:
        raise SpectralRadiusExceeded(
            f"spectral radius {np.max(np.abs(lam)):.6g} >= 1, log det diverges"
        )
    return float(np.sum(np.log(1.0 - lam)).real)


def _newton_elementary(power_sums: np.ndarray, n_max: int) -> np.ndarray:
    """e_0..e_n from power sums p_1..p_n via Newton's identities."""
    e = np.zeros(n_max + 1, dtype=complex)
    e[0] = 1.0
    for n in range(1, n_max + 1):
        acc = 0.0 + 0.0j
        for k in range(1, n + 1):
            acc += (-1) ** (k - 1) * e[n - k] * power_sums[k - 1]
        e[n] = acc / n
    return e


def ff_coeffs_complex(K: KernelMatrix, n_max: int, method: str = "auto") -> list[complex]:
    """Signed elementary symmetric functions (-1)^n e_n of the spectrum.

    Returned with their (rounding-level) imaginary residues so callers
    can report them; see ff_coeffs for the real-valued convenience form.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if n_max > K.M:
        raise ValueError(f"n_max={n_max} exceeds the matrix size {K.M}")
    if method not in ("auto", "eigen", "trace"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "eigen" if K.eig_condition() <= EIG_COND_LIMIT else "trace"
    if method == "eigen":
        lam = K.eigenvalues()
        p = np.array([np.sum(lam ** k) for k in range(1, n_max + 1)])
    else:
        p = np.array([K.trace_power(k) for k in range(1, n_max + 1)])
    e = _newton_elementary(p, n_max)
    return [complex((-1) ** n * e[n]) for n in range(n_max + 1)]


def ff_coeffs(K: KernelMatrix, n_max: int, method: str = "auto") -> list[float]:
    """Form factor candidates f(2n) for n = 0..n_max, as reals.

    method "eigen" takes power sums from the eigenvalues, "trace" from
    tr(K^n) directly; "auto" prefers eigenvalues and falls back to traces
    when the eigenvector basis is ill-conditioned.  Traces cost one extra
    matrix product per order but are unconditionally stable.
    """
    return [c.real for c in ff_coeffs_complex(K, n_max, method)]
