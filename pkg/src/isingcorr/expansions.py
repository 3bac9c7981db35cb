"""Expansion terms, combinatorial identities and the three-route correlations.

Conventions.  Every multiple contour integral is evaluated on one shared
grid with the (1/2 pi i)-per-contour normalization built into the node
weights, so the printed prefactors here differ from naive readings of
the defining integrals only by the power of i that conversion absorbs.
The bookkeeping is centralized (see docs/measure_conversion.md):

* order-2n closed chain coefficient      = -(1/n) * chain(sites=2n, closed)
* order-2n open "ratio" term             = -chain(sites=2n, power N+1, 1/z ends)
* order-(2n+1) open term (above regime)  = -chain(sites=2n+1, power N+1, 1/z ends)
* order-2n form factor                   = (-1)^n/(n!)^2 * grid-product sum
* order-(2n+1) form factor               = (-1)^(n+1)/(n!(n+1)!) * grid-product sum

The odd-order signs are anchored end to end against the determinant
route (both routes must produce the same signed number), which also
fixes the branch of the symbol above the critical point.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import DegeneratePoints, MethodUnavailable, RegimeMismatch
from .fredholm import build_kernel, ff_coeffs_complex
from .kernels import KernelSet, s_hat_infinity, s_infinity
from .params import ModelParams, Regime
from .quadrature import ContourGrid, chain_integral, make_grid
from .toeplitz import det_DN


class Method(Enum):
    CHAIN_QUADRATURE = "ChainQuadrature"
    EIGEN_SYMMETRIC = "EigenSymmetric"
    COMBINATION = "Combination"


@dataclass(frozen=True)
class ExpansionTerm:
    """One expansion coefficient at fixed separation.

    est_error records the imaginary residue discarded when taking the
    real part; on the conjugate-symmetric grid it sits at rounding level
    and is the one error signal a fixed-grid evaluation provides.
    """

    order: int
    N: int
    value: float
    est_error: float
    method: Method


def _term(order: int, N: int, raw: complex, method: Method) -> ExpansionTerm:
    return ExpansionTerm(order=order, N=N, value=float(raw.real),
                         est_error=abs(raw.imag), method=method)


def _require_regime(params: ModelParams, regime: Regime, what: str) -> None:
    if params.regime is not regime:
        raise RegimeMismatch(f"{what} needs the {regime.value} regime")


def _chain_weights(params: ModelParams, hat: bool):
    ks = KernelSet(params)
    if hat:
        return ks.qq_hat, ks.pp_hat
    return ks.qq, ks.pp


# ----------------------------------------------------------------------
# chain-quadrature terms
# ----------------------------------------------------------------------

def F_2n(params: ModelParams, grid: ContourGrid, N: int, n: int, hat: bool = False) -> ExpansionTerm:
    """Order-2n coefficient of the exponential expansion (closed chain)."""
    if n < 1:
        raise ValueError("closed chains start at n=1")
    _require_regime(params, Regime.ABOVE if hat else Regime.BELOW, "F_2n")
    w_odd, w_even = _chain_weights(params, hat)
    raw = -chain_integral(grid, N, w_odd, w_even, sites=2 * n, closed=True) / n
    return _term(2 * n, N, raw, Method.CHAIN_QUADRATURE)


def Ftilde_2n(params: ModelParams, grid: ContourGrid, N: int, n: int) -> ExpansionTerm:
    """Telescoping increment: the closed chain carrying an extra (1 - prod z_k).

    Realized as the difference of the plain chain at site powers N and
    N+1, which telescopes back to the order-2n coefficient when summed
    over separations.
    """
    if n < 1:
        raise ValueError("closed chains start at n=1")
    _require_regime(params, Regime.BELOW, "Ftilde_2n")
    w_odd, w_even = _chain_weights(params, hat=False)
    here = chain_integral(grid, N, w_odd, w_even, sites=2 * n, closed=True)
    next_sep = chain_integral(grid, N + 1, w_odd, w_even, sites=2 * n, closed=True)
    raw = -(here - next_sep) / n
    return _term(2 * n, N, raw, Method.CHAIN_QUADRATURE)


def phi_2n(params: ModelParams, grid: ContourGrid, N: int, n: int) -> ExpansionTerm:
    """Order-2n term of the determinant-ratio series (open chain, 1/z ends)."""
    if n < 1:
        raise ValueError("open ratio chains start at n=1")
    _require_regime(params, Regime.BELOW, "phi_2n")
    w_odd, w_even = _chain_weights(params, hat=False)
    raw = -chain_integral(grid, N + 1, w_odd, w_even, sites=2 * n, closed=False,
                          endpoint_factor=lambda z: 1.0 / z)
    return _term(2 * n, N, raw, Method.CHAIN_QUADRATURE)


def G_2n1(params: ModelParams, grid: ContourGrid, N: int, n: int) -> ExpansionTerm:
    """Order-(2n+1) open-chain term of the above-regime ratio series.

    The overall sign follows the physical branch of the shifted symbol
    (see KernelSet.phi): these terms sum to the last component of the
    shifted-system solve, and with that anchoring the open chain enters
    with a minus sign.  The choice is locked against the determinant
    oracle by the test suite.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    _require_regime(params, Regime.ABOVE, "G_2n1")
    ks = KernelSet(params)
    raw = -chain_integral(grid, N + 1, ks.pp_hat, ks.qq_hat, sites=2 * n + 1, closed=False,
                          endpoint_factor=lambda z: 1.0 / z)
    return _term(2 * n + 1, N, raw, Method.CHAIN_QUADRATURE)


# ----------------------------------------------------------------------
# form factors
# ----------------------------------------------------------------------

def _f_2n_direct(params: ModelParams, grid: ContourGrid, N: int, n: int, hat: bool) -> complex:
    """Plain grid-product evaluation of the squared-determinant integrand."""
    w_odd, w_even = _chain_weights(params, hat)
    z = grid.nodes
    zn = z ** N
    qo = grid.weights * w_odd(z) * zn
    pe = grid.weights * w_even(z) * zn
    C2 = grid.cauchy_matrix() ** 2
    if n == 1:
        return -complex(qo @ C2 @ pe)
    # n == 2: sum over odd pair (a, c) and even pair (b, d) of
    # qo_a qo_c pe_b pe_d C2_ab C2_ad C2_cb C2_cd (z_a - z_c)^2 (z_b - z_d)^2
    vde = (z[:, None] - z[None, :]) ** 2
    total = 0.0 + 0.0j
    for a in range(grid.M):
        X = C2 * (pe * C2[a])[None, :]       # X[c, b] = C2[c,b] pe[b] C2[a,b]
        inner = np.einsum("cd,cd->c", X @ vde, X)
        total += qo[a] * np.sum(qo * (z[a] - z) ** 2 * inner)
    return total / 4.0


def f_2n(params: ModelParams, grid: ContourGrid, N: int, n: int, hat: bool = False,
         method: str | None = None) -> ExpansionTerm:
    """Order-2n form factor.

    method "direct" evaluates the 2n-fold grid product (n <= 2 only);
    "eigen" reads the term off the kernel-matrix spectrum; None picks
    direct for n <= 2 and eigen beyond.  f at order 0 is 1 by definition.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    _require_regime(params, Regime.ABOVE if hat else Regime.BELOW, "f_2n")
    if n == 0:
        return ExpansionTerm(order=0, N=N, value=1.0, est_error=0.0,
                             method=Method.EIGEN_SYMMETRIC if method == "eigen" else Method.CHAIN_QUADRATURE)
    if method is None:
        method = "direct" if n <= 2 else "eigen"
    if method == "direct":
        if n > 2:
            raise MethodUnavailable("direct grid products are limited to n <= 2")
        raw = _f_2n_direct(params, grid, N, n, hat)
        return _term(2 * n, N, raw, Method.CHAIN_QUADRATURE)
    if method == "eigen":
        K = build_kernel(params, grid, N, hat=hat)
        raw = ff_coeffs_complex(K, n)[n]
        return _term(2 * n, N, raw, Method.EIGEN_SYMMETRIC)
    raise ValueError(f"unknown method {method!r}")


def _f_2n1_direct(params: ModelParams, grid: ContourGrid, N: int, n: int) -> complex:
    """Grid-product evaluation for the first odd orders (n <= 1).

    Signs follow the same determinant-anchored convention as G_2n1.
    """
    ks = KernelSet(params)
    z = grid.nodes
    po = grid.weights * ks.pp_hat(z) * z ** (N - 1)
    if n == 0:
        return -complex(np.sum(po))
    qe = grid.weights * ks.qq_hat(z) * z ** (N + 1)
    C2 = grid.cauchy_matrix() ** 2
    vdo = (z[:, None] - z[None, :]) ** 2
    total = np.einsum("a,b,c,ab,cb,ac->", po, qe, po, C2, C2, vdo, optimize=True)
    return complex(total) / 2.0


def f_2n1(params: ModelParams, grid: ContourGrid, N: int, n: int,
          method: str = "combination") -> ExpansionTerm:
    """Order-(2n+1) form factor, above the critical point.

    The default assembles it from the open-chain terms and the hat form
    factors at separation N+1; "direct" evaluates the (2n+1)-fold grid
    product and exists for n <= 1 as an independent cross-check.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    _require_regime(params, Regime.ABOVE, "f_2n1")
    if method == "direct":
        if n > 1:
            raise MethodUnavailable("direct grid products are limited to n <= 1")
        raw = _f_2n1_direct(params, grid, N, n)
        return _term(2 * n + 1, N, raw, Method.CHAIN_QUADRATURE)
    if method != "combination":
        raise ValueError(f"unknown method {method!r}")
    gs = [G_2n1(params, grid, N, k) for k in range(n + 1)]
    if n == 0:
        hat_ff = [1.0]
        resid = 0.0
    else:
        K = build_kernel(params, grid, N + 1, hat=True)
        hat_complex = ff_coeffs_complex(K, n)
        hat_ff = [c.real for c in hat_complex]
        resid = max(abs(c.imag) for c in hat_complex)
    value = sum(g.value * hat_ff[n - k] for k, g in enumerate(gs))
    est = max([resid] + [g.est_error for g in gs])
    return ExpansionTerm(order=2 * n + 1, N=N, value=float(value),
                         est_error=float(est), method=Method.COMBINATION)


# ----------------------------------------------------------------------
# partition combinatorics
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Multiset of (part, multiplicity) pairs with distinct parts."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def nu(self) -> int:
        return len(self.pairs)

    @property
    def n(self) -> int:
        return sum(part * mult for part, mult in self.pairs)


def partitions(n: int) -> list[Partition]:
    """All partitions of n, as (part, multiplicity) pair sets."""
    if not 1 <= n <= 8:
        raise ValueError("partitions are enumerated for 1 <= n <= 8")
    found: list[list[int]] = []

    def descend(remaining: int, cap: int, acc: list[int]) -> None:
        if remaining == 0:
            found.append(acc)
            return
        for part in range(min(remaining, cap), 0, -1):
            descend(remaining - part, part, acc + [part])

    descend(n, n, [])
    return [Partition(tuple(sorted(Counter(parts).items()))) for parts in found]


def multiplicity(p: Partition) -> Fraction:
    """Number of permutations with this cycle type: n! / prod(n_i^m_i m_i!)."""
    denom = 1
    for part, mult in p.pairs:
        denom *= part ** mult * math.factorial(mult)
    return Fraction(math.factorial(p.n), denom)


def f_from_F(params: ModelParams, grid: ContourGrid, N: int, n: int,
             hat: bool = False) -> ExpansionTerm:
    """Form factor assembled from closed-chain coefficients over partitions.

    Exponentiating the chain series and collecting equal total orders
    gives f(2n) = sum over partitions of n of prod (1/m_i!) F(2n_i)^m_i.
    """
    if n == 0:
        return ExpansionTerm(order=0, N=N, value=1.0, est_error=0.0, method=Method.COMBINATION)
    fvals = {k: F_2n(params, grid, N, k, hat=hat) for k in range(1, n + 1)}
    total = 0.0
    for p in partitions(n):
        piece = 1.0
        for part, mult in p.pairs:
            piece *= fvals[part].value ** mult / math.factorial(mult)
        total += piece
    est = max(t.est_error for t in fvals.values())
    return ExpansionTerm(order=2 * n, N=N, value=float(total), est_error=est,
                         method=Method.COMBINATION)


# ----------------------------------------------------------------------
# algebraic identity checks
# ----------------------------------------------------------------------

def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _check_points(odd: np.ndarray, even: np.ndarray) -> None:
    for name, pts in (("odd", odd), ("even", even)):
        for i, j in itertools.combinations(range(len(pts)), 2):
            if abs(pts[i] - pts[j]) < 1e-13:
                raise DegeneratePoints(f"coincident {name} points at indices {i}, {j}")
    for o in odd:
        for e in even:
            if abs(1.0 - o * e) < 1e-13:
                raise DegeneratePoints("product z_odd * z_even too close to 1")


def cauchy_identity_residual(odd_points, even_points, variant: str = "below") -> float:
    """Relative gap between the signed permutation sum and its product form.

    variant "below" compares the n x n alternating sum of
    1/(1 - e_k o_sigma(k)) with the Cauchy-determinant product; variant
    "above" takes n+1 odd points, weights each permutation with the
    reciprocal of the odd point placed last, and compares against the
    corresponding product form.  Exact identities, so the residual is
    rounding noise for well-separated points.
    """
    odd = np.asarray(odd_points, dtype=complex)
    even = np.asarray(even_points, dtype=complex)
    _check_points(odd, even)
    if variant == "below":
        if len(odd) != len(even):
            raise ValueError("below variant needs equally many odd and even points")
        n = len(odd)
        perm_sum = 0.0 + 0.0j
        for perm in itertools.permutations(range(n)):
            prod = 1.0 + 0.0j
            for k in range(n):
                prod /= 1.0 - even[k] * odd[perm[k]]
            perm_sum += _perm_sign(perm) * prod
        closed = 1.0 + 0.0j
        for o in odd:
            for e in even:
                closed /= 1.0 - o * e
        for p, q in itertools.combinations(range(n), 2):
            closed *= (odd[p] - odd[q]) * (even[p] - even[q])
    elif variant == "above":
        if len(odd) != len(even) + 1:
            raise ValueError("above variant needs one more odd point than even points")
        n = len(even)
        if np.any(np.abs(odd) < 1e-13):
            raise DegeneratePoints("odd points must stay away from the origin")
        perm_sum = 0.0 + 0.0j
        for perm in itertools.permutations(range(n + 1)):
            prod = 1.0 / odd[perm[n]]
            for k in range(n):
                prod /= 1.0 - odd[perm[k]] * even[k]
            perm_sum += _perm_sign(perm) * prod
        closed = 1.0 + 0.0j
        for o in odd:
            closed /= o
            for e in even:
                closed /= 1.0 - o * e
        for p, q in itertools.combinations(range(n + 1), 2):
            closed *= odd[p] - odd[q]
        for p, q in itertools.combinations(range(n), 2):
            closed *= even[p] - even[q]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return float(abs(perm_sum - closed) / abs(closed))


# ----------------------------------------------------------------------
# three-route correlations
# ----------------------------------------------------------------------

class Route(Enum):
    DETERMINANT = "det"
    EXPONENTIAL = "exp"
    FORM_FACTOR = "ff"


@dataclass
class ComparisonEntry:
    N: int
    route: str
    value: float
    est_error: float
    terms: list[ExpansionTerm]
    M: int
    n_max: int


def correlation(params: ModelParams, N: int, route: Route | str, n_max: int = 3,
                grid: ContourGrid | None = None) -> ComparisonEntry:
    """Correlation at separation N by the requested route.

    Expansion routes truncate at n_max (closed-chain orders 2..2*n_max
    below, odd orders 1..2*n_max+1 above); est_error is the magnitude of
    the last included term scaled by its prefactor, a heuristic justified
    by the observed geometric decay of the terms.
    """
    route = Route(route)
    if not 0 <= n_max <= 3:
        raise ValueError("n_max is limited to 0..3")
    if grid is None:
        grid = make_grid(params)
    below = params.regime is Regime.BELOW

    if route is Route.DETERMINANT:
        value = det_DN(params, N, grid)
        return ComparisonEntry(N=N, route=route.value, value=value, est_error=0.0,
                               terms=[], M=grid.M, n_max=n_max)

    if below:
        prefactor = s_infinity(params)
        if route is Route.EXPONENTIAL:
            terms = [F_2n(params, grid, N, n) for n in range(1, n_max + 1)]
            value = prefactor * math.exp(sum(t.value for t in terms))
            est = abs(value) * abs(terms[-1].value) if terms else 0.0
        else:
            K = build_kernel(params, grid, N, hat=False)
            coeffs = ff_coeffs_complex(K, n_max)
            terms = [_term(2 * n, N, coeffs[n], Method.EIGEN_SYMMETRIC)
                     for n in range(n_max + 1)]
            value = prefactor * sum(t.value for t in terms)
            est = prefactor * abs(terms[-1].value) if n_max >= 1 else 0.0
        return ComparisonEntry(N=N, route=route.value, value=float(value),
                               est_error=float(est), terms=terms, M=grid.M, n_max=n_max)

    prefactor = s_hat_infinity(params)
    if route is Route.EXPONENTIAL:
        g_terms = [G_2n1(params, grid, N, m) for m in range(n_max + 1)]
        f_terms = [F_2n(params, grid, N + 1, n, hat=True) for n in range(1, n_max + 1)]
        exp_part = math.exp(sum(t.value for t in f_terms))
        g_sum = sum(t.value for t in g_terms)
        value = -prefactor * g_sum * exp_part
        est = prefactor * exp_part * abs(g_terms[-1].value)
        if f_terms:
            est += abs(value) * abs(f_terms[-1].value)
        return ComparisonEntry(N=N, route=route.value, value=float(value),
                               est_error=float(est), terms=g_terms + f_terms,
                               M=grid.M, n_max=n_max)
    terms = [f_2n1(params, grid, N, n) for n in range(n_max + 1)]
    value = -prefactor * sum(t.value for t in terms)
    est = prefactor * abs(terms[-1].value)
    return ComparisonEntry(N=N, route=route.value, value=float(value),
                           est_error=float(est), terms=terms, M=grid.M, n_max=n_max)
