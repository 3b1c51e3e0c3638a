"""Moments, log-ratio statistics, and the Monte Carlo harness that
certifies the closed forms.

The moment formulas target the tilt subfamily SM(alpha, beta,
normalized beta^{-1}, n, 1, 1): orders with ell_+ <= n come out in closed
form through the weighted symmetric polynomials, higher orders reduce to a
one-dimensional integral, and an integration-by-parts continuation covers
low orders as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy import special as sps

from .distributions import (Dirichlet, DirichletMixture, FamilyParams, ParamVector,
                            Schlomilch, SchlomilchMixture, sample)
from .errors import DomainError
from .normalization import (gradient_hessian_method, log_i_closed_sigma1,
                            log_i_gradient, log_i_hessian)
from .quadrature import integrate_01
from .sympoly import deformed_h

_CHUNK = 1 << 17


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo point estimate with its standard error.

    ``n_invalid`` counts non-finite statistic values, which are excluded
    from the estimate; a non-zero count flags a suspect statistic.
    """

    estimate: float
    std_error: float
    n_samples: int
    seed: int
    n_invalid: int = 0

    def __post_init__(self):
        if self.std_error < 0:
            raise DomainError("std_error must be non-negative")


@dataclass(frozen=True)
class LogRatioStats:
    means: dict[tuple[int, int], float]
    covariances: dict[tuple[int, int, int, int], float]
    method: str


def dirichlet_moments(alpha) -> tuple[np.ndarray, np.ndarray]:
    """Mean vector and covariance matrix of the Dirichlet family."""
    a = ParamVector.of(alpha).array
    a_plus = a.sum()
    mean = a / a_plus
    cov = -np.outer(a, a) / (a_plus ** 2 * (a_plus + 1.0))
    np.fill_diagonal(cov, a * (a_plus - a) / (a_plus ** 2 * (a_plus + 1.0)))
    return mean, cov


def tilt_family(alpha, beta, n: int) -> SchlomilchMixture:
    """The moment-tractable subfamily SM(alpha, beta, normalized beta^{-1}, n, 1, 1)."""
    b = ParamVector.of(beta, normalize=True)
    return SchlomilchMixture(ParamVector.of(alpha), b,
                             ParamVector.of(1.0 / b.array, normalize=True),
                             int(n), 1.0, 1.0)


def is_tilt_family(params: FamilyParams) -> bool:
    if not isinstance(params, SchlomilchMixture):
        return False
    if params.sigma != 1.0 or params.tau != 1.0:
        return False
    expected = 1.0 / params.beta.array
    expected = expected / expected.sum()
    return bool(np.allclose(params.gamma.array, expected, rtol=1e-12, atol=1e-14))


def _tilt_args(alpha, beta, ell=None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a = ParamVector.of(alpha).array
    b = ParamVector.of(beta, normalize=True).array
    if ell is None:
        ell = np.zeros(a.size, dtype=int)
    l_vec = np.asarray(ell)
    if l_vec.shape != a.shape or np.any(l_vec < 0) or np.any(l_vec != l_vec.astype(int)):
        raise DomainError("ell must be a vector of non-negative integers matching K")
    return a, b, l_vec.astype(int)


def tilt_moment_method(n: int, ell) -> str:
    """Evaluation path sm_tilt_moment will take: 'closed' or 'integral1d'."""
    return "closed" if int(np.sum(ell)) <= int(n) else "integral1d"


def sm_tilt_moment(alpha, beta, n: int, ell, rel_tol: float = 1e-10) -> float:
    """Mixed moment E[prod X_i^{ell_i}] of the tilt family of order n.

    For ell_+ <= n the value is a pure ratio of closed-form normalization
    constants; for ell_+ > n it reduces to a single integral over [0, 1]
    whose integrand has no singularities inside the interval because beta
    is normalized to sum one.
    """
    a, b, l_vec = _tilt_args(alpha, beta, ell)
    n = int(n)
    l_plus = int(l_vec.sum())
    if l_plus == 0:
        return 1.0
    b_inv = 1.0 / b
    log_norm = log_i_closed_sigma1(a, b_inv, n)
    if l_plus <= n:
        log_num = log_i_closed_sigma1(a + l_vec, b_inv, n - l_plus)
        return float(np.exp(log_num - l_vec @ np.log(b) - log_norm))
    a_plus = a.sum()
    c = a + l_vec

    def kernel(u):
        return np.exp(-np.log(np.outer(u, b) + (1.0 - u)[:, None]) @ c)

    integral = integrate_01(kernel, a_plus + n - 1.0, l_plus - n - 1.0, rel_tol=rel_tol)
    # The prod beta^alpha factor comes from the density normalization; the
    # dual-route ratio of normalization constants fixes it unambiguously.
    log_pref = (float(a @ np.log(b)) + sps.gammaln(c).sum() - sps.gammaln(a_plus + n)
                - sps.gammaln(l_plus - n) - log_norm)
    return float(np.exp(log_pref) * integral.value)


def sm_tilt_moment_continuation(alpha, beta, n: int, ell, rel_tol: float = 1e-9) -> float:
    """Analytic continuation of the 1-D integral form, valid for any ell_+ >= 1.

    Integration by parts moves the endpoint singularity into an n-th
    derivative of the remaining factor, which is evaluated exactly through
    the log-derivative recursion for exp(g).
    """
    a, b, l_vec = _tilt_args(alpha, beta, ell)
    n = int(n)
    l_plus = int(l_vec.sum())
    if l_plus < 1:
        raise DomainError("the continuation form requires ell_+ >= 1")
    a_plus = a.sum()
    c = a + l_vec
    amp = a_plus + n - 1.0
    binom = [math.comb(n - 1, j) for j in range(n)] if n else []

    def nth_derivative(u: np.ndarray) -> np.ndarray:
        # f = exp(g), g = amp*log u - sum_j c_j log(b_j u + 1 - u);
        # f^{(m)} = sum_{j<m} C(m-1, j) f^{(j)} g^{(m-j)}.
        denom = np.outer(u, b) + (1.0 - u)[:, None]
        f = np.empty((n + 1, u.size))
        f[0] = np.exp(amp * np.log(u) - np.log(denom) @ c)
        g_der = np.empty((n + 1, u.size))
        for m in range(1, n + 1):
            sign = 1.0 if (m - 1) % 2 == 0 else -1.0
            g_der[m] = sign * math.factorial(m - 1) * (
                amp / u ** m - ((b - 1.0) / denom) ** m @ c
            )
        for m in range(1, n + 1):
            acc = np.zeros(u.size)
            for j in range(m):
                acc += math.comb(m - 1, j) * f[j] * g_der[m - j]
            f[m] = acc
        return f[n]

    def kernel(u):
        return nth_derivative(np.asarray(u)) / u ** (a_plus - 1.0)

    integral = integrate_01(kernel, a_plus - 1.0, l_plus - 1.0, rel_tol=rel_tol)
    log_pref = (float(a @ np.log(b)) + sps.gammaln(c).sum() - sps.gammaln(a_plus + n)
                - sps.gammaln(l_plus) - log_i_closed_sigma1(a, 1.0 / b, n))
    return float(np.exp(log_pref) * integral.value)


def sm_tilt_mean(alpha, beta, n: int) -> np.ndarray:
    """First moments of the tilt family; closed for n >= 1."""
    a, b, _ = _tilt_args(alpha, beta)
    n = int(n)
    k = a.size
    if n == 0:
        return np.array([sm_tilt_moment(a, b, 0, np.eye(k, dtype=int)[i]) for i in range(k)])
    b_inv = 1.0 / b
    h_n = deformed_h(a, b_inv, n)
    mean = np.empty(k)
    for i in range(k):
        shifted = a.copy()
        shifted[i] += 1.0
        mean[i] = a[i] * deformed_h(shifted, b_inv, n - 1) / (n * b[i] * h_n)
    return mean


def sm_tilt_covariance(alpha, beta, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Mean and covariance of the tilt family for n in {1, 2}.

    n = 2 is fully closed-form; the n = 2 second moments are
    E[X_i X_j] = (a_i a_j + a_i delta_ij) / (2 b_i b_j h_2(a, 1/b)).
    n = 1 has no closed second moment, so those come from the 1-D integral.
    """
    if int(n) not in (1, 2):
        raise DomainError("covariances are provided for n in {1, 2}")
    a, b, _ = _tilt_args(alpha, beta)
    n = int(n)
    k = a.size
    mean = sm_tilt_mean(a, b, n)
    second = np.empty((k, k))
    if n == 2:
        h2 = deformed_h(a, 1.0 / b, 2)
        second = (np.outer(a, a) + np.diag(a)) / (2.0 * np.outer(b, b) * h2)
    else:
        eye = np.eye(k, dtype=int)
        for i in range(k):
            for j in range(i, k):
                second[i, j] = second[j, i] = sm_tilt_moment(a, b, n, eye[i] + eye[j])
    cov = second - np.outer(mean, mean)
    return mean, cov


def _logratio_parts(params: FamilyParams):
    if isinstance(params, Dirichlet):
        k = params.dim
        return (params.alpha.array, np.full(k, 1.0 / k), 0, 1.0, np.zeros(k), 1.0)
    if isinstance(params, Schlomilch):
        return (params.alpha.array, np.full(params.dim, 1.0 / params.dim), 0, 1.0,
                params.beta.log, params.tau)
    if isinstance(params, DirichletMixture):
        return (params.alpha.array, params.gamma.array, params.n, params.sigma,
                np.zeros(params.dim), 1.0)
    if isinstance(params, SchlomilchMixture):
        return (params.alpha.array, params.gamma.array, params.n, params.sigma,
                params.beta.log, params.tau)
    raise DomainError("log-ratio statistics apply to the simplex mixture families")


def logratio_stats(params: FamilyParams, pairs: Iterable[tuple[int, int, int, int]]) -> LogRatioStats:
    """Means and covariances of log coordinate ratios.

    For each requested (i, j, k, l),
        tau   * E[log(X_i/X_j)] + log(beta_i/beta_j) = (d_i - d_j) log I,
        tau^2 * Cov[log(X_i/X_j), log(X_k/X_l)]
                                 = (d_i - d_j)(d_k - d_l) log I,
    with derivatives in alpha taken from the normalization module (closed
    forms where available, finite differences otherwise).
    """
    a, g, n, sigma, log_beta, tau = _logratio_parts(params)
    k = a.size
    quads = [tuple(int(v) for v in q) for q in pairs]
    for q in quads:
        if len(q) != 4 or not all(0 <= v < k for v in q):
            raise DomainError(f"pair indices out of range for K={k}: {q}")
    grad = log_i_gradient(a, g, n, sigma)
    hess = log_i_hessian(a, g, n, sigma)
    means: dict[tuple[int, int], float] = {}
    covs: dict[tuple[int, int, int, int], float] = {}
    for (i, j, kk, ll) in quads:
        for (p, q) in ((i, j), (kk, ll)):
            if (p, q) not in means:
                means[(p, q)] = float((grad[p] - grad[q] - (log_beta[p] - log_beta[q])) / tau)
        covs[(i, j, kk, ll)] = float(
            (hess[i, kk] - hess[i, ll] - hess[j, kk] + hess[j, ll]) / tau ** 2
        )
    return LogRatioStats(means, covs, gradient_hessian_method(n, sigma))


def _collect_statistic(params, statistic, n_samples: int, seed: int) -> np.ndarray:
    vals = []
    remaining = int(n_samples)
    stream = 0
    while remaining > 0:
        m = min(_CHUNK, remaining)
        pts = sample(params, seed, m, stream=stream)
        vals.append(np.asarray(statistic(pts), dtype=float))
        remaining -= m
        stream += 1
    return np.concatenate(vals)


def _collect_two(params, stat_a, stat_b, n_samples: int, seed: int):
    va, vb = [], []
    remaining = int(n_samples)
    stream = 0
    while remaining > 0:
        m = min(_CHUNK, remaining)
        pts = sample(params, seed, m, stream=stream)
        va.append(np.asarray(stat_a(pts), dtype=float))
        vb.append(np.asarray(stat_b(pts), dtype=float))
        remaining -= m
        stream += 1
    return np.concatenate(va), np.concatenate(vb)


def mc_estimate(params: FamilyParams, statistic: Callable[[np.ndarray], np.ndarray],
                n_samples: int, seed: int) -> McEstimate:
    """Sample mean of a statistic with its standard error.

    ``statistic`` must map an (N, K) array of points to N values.
    Deterministic for fixed seed; samples are generated in chunks on
    substreams indexed by chunk.
    """
    if n_samples < 100:
        raise DomainError("n_samples must be at least 100")
    vals = _collect_statistic(params, statistic, n_samples, seed)
    finite = np.isfinite(vals)
    n_invalid = int(vals.size - finite.sum())
    vals = vals[finite]
    return McEstimate(float(vals.mean()),
                      float(vals.std(ddof=1) / math.sqrt(vals.size)),
                      int(n_samples), int(seed), n_invalid)


def mc_covariance(params: FamilyParams, stat_a, stat_b, n_samples: int, seed: int) -> McEstimate:
    """Sample covariance of two statistics with a delta-method standard error."""
    if n_samples < 100:
        raise DomainError("n_samples must be at least 100")
    va, vb = _collect_two(params, stat_a, stat_b, n_samples, seed)
    finite = np.isfinite(va) & np.isfinite(vb)
    n_invalid = int(va.size - finite.sum())
    va, vb = va[finite], vb[finite]
    da, db = va - va.mean(), vb - vb.mean()
    prod = da * db
    n = va.size
    cov = float(prod.sum() / (n - 1))
    var_of_cov = max(float(np.mean(prod ** 2) - np.mean(prod) ** 2), 0.0)
    return McEstimate(cov, math.sqrt(var_of_cov / n), int(n_samples), int(seed), n_invalid)
