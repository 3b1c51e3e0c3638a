"""Test-side oracles: quadrature-built marginal CDFs for sampler checks,
and standard-error helpers for Monte Carlo acceptance bands.

Everything here is derived independently of the sampling code under test:
marginals come from integrating the density over a slice of the simplex,
and CDFs from integrating the marginal with endpoint-aware substitutions.
"""

from __future__ import annotations

import numpy as np
from scipy import special as sps
from scipy import stats
from scipy.interpolate import PchipInterpolator

from simplexdist.distributions import (Dirichlet, DirichletMixture, G4B,
                                       InverseSchlomilch, Schlomilch,
                                       SchlomilchMixture, log_pdf)
from simplexdist.quadrature import _warped_rule_01


def face_exponents(params) -> np.ndarray:
    """Power-law exponent of the density at each coordinate face x_i -> 0."""
    if isinstance(params, (Dirichlet, DirichletMixture)):
        return params.alpha.array - 1.0
    if isinstance(params, (Schlomilch, SchlomilchMixture)):
        return params.tau * params.alpha.array - 1.0
    if isinstance(params, InverseSchlomilch):
        a = params.alpha.array
        return params.tau * (a.sum() - a) - 1.0
    if isinstance(params, G4B):
        return np.array([params.alpha1 - 1.0, params.alpha2 - 1.0])
    raise TypeError(type(params).__name__)


def marginal_density_fn(params, i: int, inner_order: int = 96, warp: float = 2.0):
    """Marginal density of coordinate i as a vectorized callable.

    The density is integrated over the slice {x_i = t} which is a scaled
    copy of S_{K-1}; supported for K in {2, 3}.
    """
    k = params.dim
    exps = face_exponents(params)
    if k == 2:
        j = 1 - i

        def marginal(t):
            t = np.atleast_1d(np.asarray(t, dtype=float))
            pts = np.zeros((t.size, 2))
            pts[:, i] = t
            pts[:, j] = 1.0 - t
            return np.exp(log_pdf(params, pts))

        return marginal
    if k != 3:
        raise NotImplementedError("marginals implemented for K in {2, 3}")
    others = [j for j in range(3) if j != i]
    w_nodes, w_weights = _warped_rule_01(inner_order, exps[others[0]], exps[others[1]], warp)

    def marginal(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        tt = np.repeat(t, w_nodes.size)
        ww = np.tile(w_nodes, t.size)
        pts = np.empty((tt.size, 3))
        pts[:, i] = tt
        pts[:, others[0]] = (1.0 - tt) * ww
        pts[:, others[1]] = (1.0 - tt) * (1.0 - ww)
        vals = np.exp(log_pdf(params, pts))
        smooth = vals / (ww ** exps[others[0]] * (1.0 - ww) ** exps[others[1]])
        inner = (smooth.reshape(t.size, -1) * w_weights).sum(axis=1)
        return (1.0 - t) * inner

    return marginal


def marginal_exponents(params, i: int) -> tuple[float, float]:
    """Endpoint exponents (at t -> 0 and t -> 1) of the marginal of coord i.

    For corner-regular families the t -> 1 exponent is the sum of the other
    faces' exponents plus the slice measure power.  The inverse family is
    not corner-regular (its denominator couples the vanishing coordinates)
    and comes out as tau*alpha_i - 1 instead.
    """
    exps = face_exponents(params)
    if isinstance(params, InverseSchlomilch):
        a = params.alpha.array
        tau = params.tau
        if params.dim == 2:
            return float(exps[i]), float(tau * a[i] - 1.0)
        # The reciprocal-power denominator develops a boundary layer where
        # the largest competing component takes over, which softens the
        # face exponent of the marginal.
        others = np.delete(a, i)
        e0 = tau * (a.sum() - a[i] - others.max()) - 1.0
        return float(e0), float(tau * a[i] - 1.0)
    return float(exps[i]), float(exps.sum() - exps[i] + (params.dim - 2))


def marginal_cdf_fn(params, i: int, grid_size: int = 801, gl_order: int = 10):
    """CDF of coordinate i built by integrating the quadrature marginal.

    The t-axis is parameterized by the Beta(e0+1, e1+1) quantile map so the
    integrand of the CDF is bounded at both endpoints; the CDF is then
    accumulated interval-by-interval with Gauss-Legendre and interpolated
    monotonically.
    """
    e0, e1 = marginal_exponents(params, i)
    a, b = e0 + 1.0, e1 + 1.0
    marginal = marginal_density_fn(params, i)
    u_edges = np.linspace(0.0, 1.0, grid_size)
    gl_x, gl_w = np.polynomial.legendre.leggauss(gl_order)
    mid = 0.5 * (u_edges[:-1] + u_edges[1:])
    half = 0.5 * np.diff(u_edges)
    u_nodes = (mid[:, None] + half[:, None] * gl_x[None, :]).ravel()
    t_nodes = sps.betaincinv(a, b, np.clip(u_nodes, 1e-300, 1.0 - 1e-16))
    # dt/du is the reciprocal Beta density at the mapped point.
    log_dtdu = (sps.betaln(a, b) - e0 * np.log(t_nodes) - e1 * np.log1p(-t_nodes))
    vals = marginal(t_nodes) * np.exp(log_dtdu)
    pieces = (vals.reshape(-1, gl_order) * gl_w).sum(axis=1) * half
    cdf_grid = np.concatenate([[0.0], np.cumsum(pieces)])
    total = cdf_grid[-1]
    cdf_grid = np.minimum.accumulate(np.minimum(cdf_grid / total, 1.0)[::-1])[::-1]
    t_grid = np.concatenate([[0.0], sps.betaincinv(a, b, np.clip(u_edges[1:], 0, 1 - 1e-16))])
    t_grid[-1] = 1.0
    interp = PchipInterpolator(t_grid, cdf_grid, extrapolate=False)

    def cdf(t):
        t = np.asarray(t, dtype=float)
        out = interp(np.clip(t, 0.0, 1.0))
        return np.clip(out, 0.0, 1.0)

    cdf.total_mass = float(total)
    return cdf


def ks_pvalue_against_marginal(params, samples: np.ndarray, i: int) -> float:
    """KS test p-value of sampled coordinate i against the quadrature CDF."""
    cdf = marginal_cdf_fn(params, i)
    assert abs(cdf.total_mass - 1.0) < 1e-6, f"marginal mass {cdf.total_mass}"
    return float(stats.kstest(samples[:, i], cdf).pvalue)


def covariance_with_se(xs: np.ndarray, i: int, j: int) -> tuple[float, float]:
    """Sample covariance of columns i, j and its delta-method standard error."""
    a = xs[:, i] - xs[:, i].mean()
    b = xs[:, j] - xs[:, j].mean()
    prod = a * b
    n = xs.shape[0]
    cov = float(prod.sum() / (n - 1))
    var = max(float(np.mean(prod ** 2) - np.mean(prod) ** 2), 0.0)
    return cov, float(np.sqrt(var / n))


def mean_with_se(vals: np.ndarray) -> tuple[float, float]:
    vals = np.asarray(vals, dtype=float)
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(vals.size))
