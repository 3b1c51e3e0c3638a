"""Symmetric-polynomial machinery: power sums, weighted complete homogeneous
polynomials, their fractional-degree extension via a simplex integral, and
the B-spline measure realizing the symmetric means as moments.

The weighted polynomial h_n(alpha, gamma) is built from the power sums
p_d(alpha, gamma) = sum_j alpha_j gamma_j^d by the same recursion that the
classical Newton identities give for alpha = (1, ..., 1).  A direct sum over
partitions of n is kept as a slow reference implementation.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

import numpy as np

from .errors import BranchAmbiguityError, DomainError, NonIntegrableError
from .quadrature import QuadratureSpec, integrate_simplex


def _as_vector(v, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(f"{name} must be a non-empty 1-D vector")
    return arr


def _check_pair(alpha, gamma) -> tuple[np.ndarray, np.ndarray]:
    a = _as_vector(alpha, "alpha")
    g = _as_vector(gamma, "gamma")
    if a.shape != g.shape:
        raise DomainError("alpha and gamma must have equal length")
    if np.any(a <= 0):
        raise DomainError("deformation weights alpha must be strictly positive")
    return a, g


def power_sum(alpha, gamma, d: int) -> float:
    """Weighted power sum sum_j alpha_j gamma_j^d."""
    a, g = _check_pair(alpha, gamma)
    if d < 1 or d != int(d):
        raise DomainError(f"d must be a positive integer, got {d!r}")
    return float(np.sum(a * g ** int(d)))


def _h_sequence(alpha, gamma, n: int) -> list[float]:
    """h_0 .. h_n via the Newton-style recursion h_m = (1/m) sum p_k h_{m-k}."""
    a, g = _check_pair(alpha, gamma)
    p = [float(np.sum(a * g ** d)) for d in range(1, n + 1)]
    h = [1.0]
    for m in range(1, n + 1):
        h.append(sum(p[k - 1] * h[m - k] for k in range(1, m + 1)) / m)
    return h


def deformed_h(alpha, gamma, n: int) -> float:
    """Weighted complete homogeneous polynomial h_n(alpha, gamma); h_0 = 1."""
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    return _h_sequence(alpha, gamma, int(n))[int(n)]


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Multiplicity tuples (m_1, ..., m_n) with sum d*m_d = n, lexicographic."""

    def rec(d: int, remaining: int, prefix: list[int]):
        if d == n:
            if remaining % n == 0:
                yield tuple(prefix + [remaining // n])
            return
        for m in range(remaining // d + 1):
            yield from rec(d + 1, remaining - d * m, prefix + [m])

    if n == 0:
        yield ()
        return
    yield from rec(1, n, [])


def deformed_h_by_partitions(alpha, gamma, n: int) -> float:
    """Reference evaluation of h_n as an explicit sum over partitions of n.

    Exponentially slower than :func:`deformed_h`; intended for cross-checks
    with n <= 10.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    if n == 0:
        _check_pair(alpha, gamma)
        return 1.0
    a, g = _check_pair(alpha, gamma)
    p = [float(np.sum(a * g ** d)) for d in range(1, n + 1)]
    total = 0.0
    for mult in partitions(n):
        term = 1.0
        for d, m in enumerate(mult, start=1):
            if m:
                term *= p[d - 1] ** m / (math.factorial(m) * d ** m)
        total += term
    return total


def standard_h(gamma, n: int) -> float:
    """Complete homogeneous symmetric polynomial h_n(gamma)."""
    g = _as_vector(gamma, "gamma")
    return deformed_h(np.ones_like(g), g, n)


def symmetric_mean_q(gamma, n: int) -> float:
    """h_n(gamma) divided by its monomial count, so q_n(1, ..., 1) = 1."""
    g = _as_vector(gamma, "gamma")
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    return standard_h(g, n) / math.comb(int(n) + g.size - 1, int(n))


def _simplex_power_integral(x_vec: np.ndarray, z: float, rel_tol: float) -> float:
    """int_{S_K} (sum_j X_j x_j)^z d^{K-1}x for the already-validated cases."""

    def integrand(pts: np.ndarray) -> np.ndarray:
        return (pts @ x_vec) ** z

    spec = QuadratureSpec(dimension=x_vec.size, integrand=integrand, rel_tol=rel_tol)
    return integrate_simplex(spec).value


def _validate_fractional_args(x_vec: np.ndarray, z: float) -> None:
    k = x_vec.size
    z_is_int = float(z) == int(z)
    lo, hi = float(x_vec.min()), float(x_vec.max())
    one_signed = lo > 0.0 or hi < 0.0
    if not z_is_int:
        if lo < 0.0:
            raise BranchAmbiguityError(
                "non-integer degree with sign-changing arguments has no canonical branch"
            )
        if z < 0.0 and not one_signed:
            raise NonIntegrableError("negative degree requires strictly positive arguments")
    elif z < 0.0 and not one_signed and not (-(k - 1) <= z <= -1):
        raise NonIntegrableError(
            "the linear form vanishes on the simplex; the negative-degree integral diverges"
        )


def fractional_h(x, z: float, rel_tol: float = 1e-9) -> float:
    """Degree-z extension of h via the simplex integral representation.

    h_z(X) = (prod_{i=1}^{K-1} (z + i)) * int_{S_K} (sum_j X_j x_j)^z, which
    reduces to h_n for non-negative integer z, vanishes identically for
    z in {-1, ..., -(K-1)}, and equals X_1^z for K = 1.
    """
    x_vec = _as_vector(x, "x")
    k = x_vec.size
    if k == 1:
        if x_vec[0] <= 0 and float(z) != int(z):
            raise BranchAmbiguityError("non-integer power of a non-positive argument")
        return float(x_vec[0] ** z)
    _validate_fractional_args(x_vec, z)
    if float(z) == int(z) and -(k - 1) <= int(z) <= -1:
        return 0.0
    if float(z) == int(z) and x_vec.max() < 0.0:
        # Pull the overall sign out so the integrand stays positive.
        sign = -1.0 if int(z) % 2 else 1.0
        return sign * fractional_h(-x_vec, z, rel_tol)
    prefactor = 1.0
    for i in range(1, k):
        prefactor *= z + i
    return prefactor * _simplex_power_integral(x_vec, z, rel_tol)


def fractional_q(x, z: float, rel_tol: float = 1e-9) -> float:
    """Symmetric mean of degree z: (K-1)! * int_{S_K} (sum_j X_j x_j)^z."""
    x_vec = _as_vector(x, "x")
    k = x_vec.size
    if k == 1:
        return fractional_h(x, z, rel_tol)
    _validate_fractional_args(x_vec, z)
    if float(z) == int(z) and x_vec.max() < 0.0:
        sign = -1.0 if int(z) % 2 else 1.0
        return sign * fractional_q(-x_vec, z, rel_tol)
    return math.factorial(k - 1) * _simplex_power_integral(x_vec, z, rel_tol)


def _check_knots(knots) -> np.ndarray:
    z = _as_vector(knots, "knots")
    if z.size < 2:
        raise DomainError("at least two knots are required")
    zs = np.sort(z)
    if np.any(np.diff(zs) == 0.0):
        raise DomainError("knots must be pairwise distinct")
    return z


def bspline_density(x, knots) -> np.ndarray:
    """Univariate B-spline with simple knots, normalized as a density.

    F(x) = (K-1) sum_i (z_i - x)_+^{K-2} / prod_{j != i} (z_i - z_j), zero
    outside (min z, max z).  For K = 2 the convention 0^0 = [z_i > x] keeps
    the plus-part well defined.
    """
    z = _check_knots(knots)
    k = z.size
    x_arr = np.asarray(x, dtype=float)
    diffs = z[:, None] - z[None, :]
    np.fill_diagonal(diffs, 1.0)
    denom = diffs.prod(axis=1)
    t = z[:, None] - np.atleast_1d(x_arr)[None, :]
    if k == 2:
        plus_pow = (t > 0.0).astype(float)
    else:
        plus_pow = np.where(t > 0.0, t, 0.0) ** (k - 2)
    vals = (k - 1) * (plus_pow / denom[:, None]).sum(axis=0)
    if np.isscalar(x) or x_arr.ndim == 0:
        return float(vals[0])
    return vals


def bspline_moment(knots, n: int) -> float:
    """n-th moment of the B-spline density, int x^n F(x; z) dx.

    Piecewise Gauss-Legendre between consecutive knots; the integrand is a
    polynomial on each piece, so the rule is exact.  Equals q_n(z).
    """
    z = np.sort(_check_knots(knots))
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    k = z.size
    order = (int(n) + k - 2) // 2 + 2
    nodes, weights = np.polynomial.legendre.leggauss(order)
    total = 0.0
    for lo, hi in zip(z[:-1], z[1:]):
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        x = mid + half * nodes
        total += half * float(np.sum(weights * x ** int(n) * bspline_density(x, z)))
    return total
