"""The normalization constant shared by all the mixture families.

For positive weights alpha, positive coefficients gamma, a non-negative
integer order n and exponent sigma > 0, the quantity computed here is

    I_n^sigma(alpha, gamma)
        = int_{S_K} (sum_k gamma_k y_k^sigma)^n  prod_i y_i^{alpha_i - 1} d^{K-1}y.

Three independent evaluation routes are provided (finite multinomial sum,
a closed form through weighted symmetric polynomials at sigma = 1, and
direct simplex quadrature), together with a duality relation, recurrence
residuals, log-derivatives in alpha, and the related permutation-symmetric
hypergeometric mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from scipy import special as sps

from .errors import BudgetExceededError, DomainError
from .quadrature import QuadratureResult, QuadratureSpec, integrate_simplex
from .sympoly import deformed_h

COMPOSITION_BUDGET = 10_000_000

_FD_CHUNK = 1 << 17


@dataclass(frozen=True)
class NormalizationQuery:
    alpha: tuple[float, ...]
    gamma: tuple[float, ...]
    n: int
    sigma: float

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=float)
        g = np.asarray(self.gamma, dtype=float)
        if a.ndim != 1 or a.shape != g.shape:
            raise DomainError("alpha and gamma must be 1-D vectors of equal length")
        if np.any(a <= 0) or np.any(g <= 0):
            raise DomainError("alpha and gamma entries must be strictly positive")
        if self.n < 0 or self.n != int(self.n):
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")


def _validated(alpha, gamma, n, sigma) -> tuple[np.ndarray, np.ndarray, int, float]:
    q = NormalizationQuery(tuple(np.asarray(alpha, dtype=float)),
                           tuple(np.asarray(gamma, dtype=float)), int(n), float(sigma))
    return (np.asarray(q.alpha), np.asarray(q.gamma), q.n, q.sigma)


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of non-negative integers summing to n.

    Iterative successor function; memory stays O(k) regardless of the number
    of compositions.  Starts at (n, 0, ..., 0) and ends at (0, ..., 0, n).
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if n < 0:
        raise DomainError("n must be non-negative")
    current = [n] + [0] * (k - 1)
    while True:
        yield tuple(current)
        if current[-1] == n:
            return
        j = k - 2
        while current[j] == 0:
            j -= 1
        tail = current[-1]
        current[-1] = 0
        current[j] -= 1
        current[j + 1] = tail + 1


def composition_count(n: int, k: int) -> int:
    return math.comb(n + k - 1, n)


def _check_budget(n: int, k: int) -> int:
    count = composition_count(n, k)
    if count > COMPOSITION_BUDGET:
        raise BudgetExceededError(
            f"{count} compositions exceed the enumeration budget of {COMPOSITION_BUDGET}; "
            "use the sigma=1 closed form or quadrature instead"
        )
    return count


def _composition_blocks(n: int, k: int, block: int = _FD_CHUNK) -> Iterator[np.ndarray]:
    buf = []
    for comp in compositions(n, k):
        buf.append(comp)
        if len(buf) == block:
            yield np.asarray(buf, dtype=np.int64)
            buf = []
    if buf:
        yield np.asarray(buf, dtype=np.int64)


def log_i_multinomial(alpha, gamma, n: int, sigma: float = 1.0) -> float:
    """log I_n^sigma by the finite sum over compositions of n.

    The alpha-only gamma-function prefactor is factored out and the remaining
    positive terms are combined with log-sum-exp, which keeps the result
    well conditioned and overflow-free for large parameter sums.
    """
    a, g, n, sigma = _validated(alpha, gamma, n, sigma)
    k = a.size
    _check_budget(n, k)
    base = float(sps.gammaln(a).sum() - sps.gammaln(a.sum() + sigma * n))
    if n == 0:
        return base
    log_g = np.log(g)
    lgamma_a = sps.gammaln(a)
    running = -np.inf
    for comps in _composition_blocks(n, k):
        log_terms = (
            sps.gammaln(n + 1.0) - sps.gammaln(comps + 1.0).sum(axis=1)
            + (sps.gammaln(a + sigma * comps) - lgamma_a).sum(axis=1)
            + comps @ log_g
        )
        running = np.logaddexp(running, sps.logsumexp(log_terms))
    return base + float(running)


def i_multinomial(alpha, gamma, n: int, sigma: float = 1.0) -> float:
    return float(np.exp(log_i_multinomial(alpha, gamma, n, sigma)))


def log_i_closed_sigma1(alpha, gamma, n: int) -> float:
    """log I_n^1 through the weighted symmetric polynomial h_n(alpha, gamma)."""
    a, g, n, _ = _validated(alpha, gamma, n, 1.0)
    h = deformed_h(a, g, n)
    return float(
        sps.gammaln(a).sum() - sps.gammaln(a.sum() + n)
        + sps.gammaln(n + 1.0) + np.log(h)
    )


def i_closed_sigma1(alpha, gamma, n: int) -> float:
    return float(np.exp(log_i_closed_sigma1(alpha, gamma, n)))


def i_quadrature(alpha, gamma, n: int, sigma: float = 1.0, rel_tol: float = 1e-8,
                 method: str = "auto") -> QuadratureResult:
    """Direct simplex quadrature of the defining integral.

    Serves as the independent oracle for the other evaluation routes.
    """
    a, g, n, sigma = _validated(alpha, gamma, n, sigma)

    def integrand(pts: np.ndarray) -> np.ndarray:
        base = (pts ** sigma) @ g
        return base ** n * np.exp(np.log(pts) @ (a - 1.0))

    spec = QuadratureSpec(dimension=a.size, integrand=integrand,
                          jacobi_exponents=tuple(a - 1.0), rel_tol=rel_tol, method=method)
    return integrate_simplex(spec)


def i_dual(alpha, gamma, n: int, sigma: float = 1.0, rel_tol: float = 1e-8) -> float:
    """Evaluate I_n^sigma through its dual integral representation.

    The dual representation trades the polynomial factor for a negative
    power of a different linear form:

        I_n^sigma(alpha, gamma)
          = sigma^{1-K} prod_l gamma_l^{-alpha_l/sigma}
            * int_{S_K} prod_i x_i^{alpha_i/sigma - 1}
              (sum_j (x_j/gamma_j)^{1/sigma})^{-(alpha_+ + sigma n)} d^{K-1}x,

    computed here by quadrature of the right-hand side.
    """
    a, g, n, sigma = _validated(alpha, gamma, n, sigma)
    k = a.size
    power = -(a.sum() + sigma * n)
    coeff = g ** (-1.0 / sigma)

    if sigma <= 1.0:
        a_dual = a / sigma
        inv_tau = 1.0 / sigma

        def integrand(pts: np.ndarray) -> np.ndarray:
            base = (pts ** inv_tau) @ coeff
            return base ** power * np.exp(np.log(pts) @ (a_dual - 1.0))

        exps = a_dual - 1.0
        log_pref = -(k - 1) * np.log(sigma) - float((a / sigma) @ np.log(g))
    else:
        # For sigma > 1 the direct integrand carries x^{1/sigma} endpoint
        # kinks; re-expressing the same integral through the power map
        # u -> u^sigma / sum u^sigma (whose measure picks up sigma^{K-1})
        # leaves only x^sigma factors, which quadrature handles well:
        #   I = prod gamma^{-alpha/sigma} *
        #       int prod u^{alpha-1} (sum u^sigma)^n (sum u_j gamma_j^{-1/sigma})^power
        def integrand(pts: np.ndarray) -> np.ndarray:
            return ((pts ** sigma).sum(axis=1) ** n * (pts @ coeff) ** power
                    * np.exp(np.log(pts) @ (a - 1.0)))

        exps = a - 1.0
        log_pref = -float((a / sigma) @ np.log(g))

    spec = QuadratureSpec(dimension=k, integrand=integrand,
                          jacobi_exponents=tuple(exps), rel_tol=rel_tol)
    integral = integrate_simplex(spec).value
    return float(np.exp(log_pref) * integral)


def algebraic_recurrence_residual(alpha, gamma, n: int, sigma: float = 1.0) -> float:
    """Residual of I_{n+1}^s(a, g) = sum_i g_i I_n^s(a + s e_i, g).

    Both sides are evaluated with the multinomial sum; the contract is a
    relative residual at round-off level.
    """
    a, g, n, sigma = _validated(alpha, gamma, n, sigma)
    lhs = i_multinomial(a, g, n + 1, sigma)
    rhs = 0.0
    for i in range(a.size):
        shifted = a.copy()
        shifted[i] += sigma
        rhs += g[i] * i_multinomial(shifted, g, n, sigma)
    return float(lhs - rhs)


def _grad_hess_closed(a: np.ndarray, g: np.ndarray, n: int, sigma: float):
    k = a.size
    a_plus = a.sum()
    if n == 0:
        grad = sps.psi(a) - sps.psi(a_plus)
        hess = np.diag(sps.polygamma(1, a)) - sps.polygamma(1, a_plus)
        return grad, hess
    if n == 1:
        # Mixture weights p_i and their digamma increments drive both orders.
        log_s = np.log(g) + sps.gammaln(a + sigma) - sps.gammaln(a)
        p = np.exp(log_s - sps.logsumexp(log_s))
        delta = sps.psi(a + sigma) - sps.psi(a)
        c = p * delta
        grad = -sps.psi(a_plus + sigma) + sps.psi(a) + c
        diag = p * sps.polygamma(1, a + sigma) + (1.0 - p) * sps.polygamma(1, a) + c * c / p
        hess = -sps.polygamma(1, a_plus + sigma) + np.diag(diag) - np.outer(c, c)
        return grad, hess
    if n == 2 and sigma == 1.0:
        p1 = float(np.sum(a * g))
        p2 = float(np.sum(a * g * g))
        h2 = 0.5 * (p1 * p1 + p2)
        grad = -sps.psi(a_plus + 2.0) + sps.psi(a) + (2.0 * g * p1 + g * g) / (2.0 * h2)
        gg = np.outer(g, g)
        bracket = 2.0 * p2 - 2.0 * p1 * p1 - 2.0 * p1 * np.add.outer(g, g) - gg
        hess = (-sps.polygamma(1, a_plus + 2.0) + np.diag(sps.polygamma(1, a))
                + gg * bracket / (4.0 * h2 * h2))
        return grad, hess
    return None


def _fd_gradient(a, g, n, sigma):
    k = a.size
    grad = np.empty(k)
    for i in range(k):
        h = 1e-4 * max(1.0, a[i])
        up, dn = a.copy(), a.copy()
        up[i] += h
        dn[i] -= h
        grad[i] = (log_i_multinomial(up, g, n, sigma)
                   - log_i_multinomial(dn, g, n, sigma)) / (2.0 * h)
    return grad


def _fd_hessian(a, g, n, sigma):
    k = a.size
    hess = np.empty((k, k))
    f0 = log_i_multinomial(a, g, n, sigma)
    steps = 1e-4 * np.maximum(1.0, a)
    for i in range(k):
        hi = steps[i]
        for j in range(i, k):
            hj = steps[j]
            if i == j:
                up, dn = a.copy(), a.copy()
                up[i] += hi
                dn[i] -= hi
                val = (log_i_multinomial(up, g, n, sigma) - 2.0 * f0
                       + log_i_multinomial(dn, g, n, sigma)) / (hi * hi)
            else:
                pp, pm, mp, mm = a.copy(), a.copy(), a.copy(), a.copy()
                pp[i] += hi; pp[j] += hj
                pm[i] += hi; pm[j] -= hj
                mp[i] -= hi; mp[j] += hj
                mm[i] -= hi; mm[j] -= hj
                val = (log_i_multinomial(pp, g, n, sigma) - log_i_multinomial(pm, g, n, sigma)
                       - log_i_multinomial(mp, g, n, sigma) + log_i_multinomial(mm, g, n, sigma)
                       ) / (4.0 * hi * hj)
            hess[i, j] = hess[j, i] = val
    return hess


def log_i_gradient(alpha, gamma, n: int, sigma: float = 1.0) -> np.ndarray:
    """Gradient of log I_n^sigma with respect to alpha.

    Closed forms cover n = 0, n = 1 (any sigma) and n = 2 with sigma = 1;
    other cells fall back to central finite differences of the multinomial
    sum with step 1e-4 * max(1, alpha_i).
    """
    a, g, n, sigma = _validated(alpha, gamma, n, sigma)
    closed = _grad_hess_closed(a, g, n, sigma)
    if closed is not None:
        return closed[0]
    return _fd_gradient(a, g, n, sigma)


def log_i_hessian(alpha, gamma, n: int, sigma: float = 1.0) -> np.ndarray:
    """Hessian of log I_n^sigma with respect to alpha; see log_i_gradient."""
    a, g, n, sigma = _validated(alpha, gamma, n, sigma)
    closed = _grad_hess_closed(a, g, n, sigma)
    if closed is not None:
        return closed[1]
    return _fd_hessian(a, g, n, sigma)


def gradient_hessian_method(n: int, sigma: float) -> str:
    """Which evaluation path log_i_gradient / log_i_hessian will take."""
    if n == 0 or n == 1 or (n == 2 and sigma == 1.0):
        return "closed"
    return "finite-difference"


def carlson_r(alpha, z, n: int) -> float:
    """Permutation-symmetric hypergeometric mean R_n(alpha, z).

    Related to the normalization constant by a multivariate beta factor,
    which collapses to R_n = n! h_n(alpha, z) / (alpha_+)_n.
    """
    a, zv, n, _ = _validated(alpha, z, n, 1.0)
    log_poch = float(sps.gammaln(a.sum() + n) - sps.gammaln(a.sum()))
    return float(math.factorial(n) * deformed_h(a, zv, n) * np.exp(-log_poch))
