"""Scalar special functions used by every closed form in the package.

Gamma-family functions are evaluated through scipy.special, which meets the
accuracy contracts here with ample margin; everything downstream combines
them in log-space and exponentiates last.  The Gauss hypergeometric function
is provided through two independent routes: adaptive quadrature of the Euler
integral, and a finite rising-factorial sum valid when the second parameter
exceeds the third by a non-negative integer.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as sps

from .errors import DomainError, UnsupportedRegimeError
from .quadrature import integrate_01


def _require_positive(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return x


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for x > 0."""
    return float(sps.gammaln(_require_positive(x, "x")))


def digamma(x: float) -> float:
    """Logarithmic derivative of Gamma, psi(x), for x > 0."""
    return float(sps.psi(_require_positive(x, "x")))


def trigamma(x: float) -> float:
    """Derivative of digamma, psi'(x), for x > 0."""
    return float(sps.polygamma(1, _require_positive(x, "x")))


def pochhammer(x: float, n: int) -> float:
    """Rising factorial x (x+1) ... (x+n-1); the empty product is 1."""
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    result = 1.0
    for k in range(int(n)):
        result *= x + k
    return result


def log_pochhammer(x: float, n: int) -> float:
    """log of the rising factorial, for x > 0."""
    _require_positive(x, "x")
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    return float(sps.gammaln(x + int(n)) - sps.gammaln(x))


def log_multinomial(n: int, m) -> float:
    """log of n! / prod(m_i!) for a composition m of n."""
    m = np.asarray(m)
    if np.any(m < 0) or not np.issubdtype(m.dtype, np.integer):
        raise DomainError("composition entries must be non-negative integers")
    if int(m.sum()) != int(n):
        raise DomainError(f"composition sums to {int(m.sum())}, expected {n}")
    return float(sps.gammaln(n + 1.0) - sps.gammaln(m + 1.0).sum())


def gauss_2f1(a: float, b: float, c: float, x: float, rel_tol: float = 1e-10) -> float:
    """2F1(a, b; c; x) by adaptive quadrature of the Euler integral.

    Requires x < 1 and, up to the a <-> b symmetry, c > b > 0.  Outside that
    regime an UnsupportedRegimeError is raised; callers with integral
    parameter differences can use :func:`gauss_2f1_finite` instead.
    """
    if not x < 1.0:
        raise DomainError(f"argument must satisfy x < 1, got {x}")
    if not (c > b > 0.0):
        if c > a > 0.0:
            a, b = b, a
        else:
            raise UnsupportedRegimeError(
                f"Euler integral needs c > b > 0 (or c > a > 0); got a={a}, b={b}, c={c}"
            )
    if x == 0.0:
        return 1.0

    def kernel(t):
        return (1.0 - x * t) ** (-a)

    integral = integrate_01(kernel, b - 1.0, c - b - 1.0, rel_tol=rel_tol)
    log_norm = sps.gammaln(c) - sps.gammaln(b) - sps.gammaln(c - b)
    return float(np.exp(log_norm) * integral.value)


def gauss_2f1_finite(alpha1: float, alpha2: float, n: int, lam: float) -> float:
    """2F1(a1, a1+a2+n; a1+a2; 1-lam) as a finite sum over k = 0..n.

    Each term is binom(n, k) (a1)_k (a2)_{n-k} / ((a1+a2)_n lam^{a1+k}),
    accumulated in log-space; all terms are positive for lam > 0.
    """
    _require_positive(alpha1, "alpha1")
    _require_positive(alpha2, "alpha2")
    _require_positive(lam, "lam")
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    a_plus = alpha1 + alpha2
    k = np.arange(n + 1)
    log_terms = (
        sps.gammaln(n + 1.0) - sps.gammaln(k + 1.0) - sps.gammaln(n - k + 1.0)
        + sps.gammaln(alpha1 + k) - sps.gammaln(alpha1)
        + sps.gammaln(alpha2 + n - k) - sps.gammaln(alpha2)
        - (sps.gammaln(a_plus + n) - sps.gammaln(a_plus))
        - (alpha1 + k) * np.log(lam)
    )
    return float(np.exp(sps.logsumexp(log_terms)))
