"""The algebra holding the expansions together, checked numerically.

Four families of identities are exercised: the partition combinatorics
that regroup an exponential into form factors, the Cauchy determinant
identity that collapses permutation sums into products, the recursion
tying the open-chain ratio terms to the closed-chain coefficients, and
the ratio series against a straight linear solve.
"""

import numpy as np

import isingcorr as ic

print("partitions and their permutation-class sizes:")
for n in (3, 4):
    parts = ic.partitions(n)
    total = sum(ic.multiplicity(p) for p in parts)
    listing = ", ".join(f"{dict(p.pairs)}x{ic.multiplicity(p)}" for p in parts)
    print(f"  n={n}: {len(parts)} partitions, multiplicities sum to {total} = {n}!")
    print(f"        {listing}")

print("\nCauchy determinant identity on random points (relative residuals):")
rng = np.random.default_rng(5)
for n in (1, 2, 3):
    odd = 0.4 * np.exp(2j * np.pi * rng.random(n)) * (0.5 + rng.random(n))
    even = 0.4 * np.exp(2j * np.pi * rng.random(n)) * (0.5 + rng.random(n))
    res = ic.cauchy_identity_residual(odd, even, "below")
    print(f"  n={n}: residual = {res:.2e}")

print("\nendpoint-weighted variant (one extra odd point):")
for n in (1, 2):
    odd = 0.3 + 0.4 * rng.random(n + 1) + 0.3j * rng.random(n + 1)
    even = 0.4 * rng.random(n) + 0.3j * rng.random(n)
    res = ic.cauchy_identity_residual(odd, even, "above")
    print(f"  n={n}: residual = {res:.2e}")

params = ic.diagonal_from_alpha2(0.5)
grid = ic.make_grid(params, 64)

print("\nchain recursion n*phi(2n) = sum_l l*Ftilde(2l)*phi(2n-2l):")
for n in (2, 3):
    for N in (1, 3):
        phis = {0: 1.0}
        for k in range(1, n + 1):
            phis[k] = ic.phi_2n(params, grid, N, k).value
        rhs = sum(l * ic.Ftilde_2n(params, grid, N, l).value * phis[n - l]
                  for l in range(1, n + 1))
        print(f"  n={n} N={N}: residual = {abs(n * phis[n] - rhs):.2e}")

print("\ndeterminant ratios vs the open-chain series:")
for N in (1, 2, 3):
    ratio = ic.det_DN(params, N, grid) / ic.det_DN(params, N + 1, grid)
    series = 1.0 + sum(ic.phi_2n(params, grid, N, n).value for n in (1, 2, 3))
    print(f"  N={N}: D_N/D_N+1 = {ratio:.15f}   1 + chain series = {series:.15f}")
