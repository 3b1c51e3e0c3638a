"""Deterministic and stochastic integration over the unit simplex and [0, 1].

The simplex S_K = {x in R^K : x_i >= 0, sum x_i = 1} is integrated with
respect to d^{K-1}x, i.e. over the first K-1 coordinates with nested limits.
The workhorse is a tensor Gauss-Jacobi rule built on the stick-breaking
substitution

    x_1 = t_1,  x_2 = (1 - t_1) t_2,  ...,  x_K = prod_j (1 - t_j),

whose Jacobian combines with declared per-coordinate endpoint exponents
x_i^{e_i} into exact per-axis Jacobi weights t^{p}(1-t)^{q}.  Integrands are
only ever evaluated at strict-interior nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import special as sps
from scipy.stats import qmc

from .errors import DomainError, MethodUnavailableError

METHODS = ("auto", "tensor-gauss", "adaptive", "quasi-random", "plain-mc")

TENSOR_GAUSS_MAX_DIM = 6

# Escalation ladders; each order is ~1.5x the previous so successive
# differences give a usable error estimate.
_SIMPLEX_ORDERS = (6, 9, 13, 19, 28, 42, 63, 94, 141, 211)
_LINE_ORDERS = (8, 12, 18, 27, 40, 60, 90, 135, 202, 303)

_QMC_SEED = 0x51D5EED
_MC_SEED = 0xD15C0


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration request over the simplex S_K.

    ``integrand`` receives an (N, K) array of interior simplex points and
    must return an (N,) array.  ``jacobi_exponents`` declares the power-law
    behaviour of the integrand at each coordinate face: exponent e_i means
    the integrand behaves like x_i^{e_i} as x_i -> 0.  Declared exponents
    are absorbed exactly by the quadrature weights.
    """

    dimension: int
    integrand: Callable[[np.ndarray], np.ndarray]
    jacobi_exponents: Optional[Sequence[float]] = None
    rel_tol: float = 1e-8
    method: str = "auto"
    max_evals: int = 4_000_000
    endpoint_warp: float = 1.0

    def __post_init__(self):
        if self.dimension < 1:
            raise DomainError(f"dimension must be >= 1, got {self.dimension}")
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if not self.endpoint_warp >= 1.0:
            raise DomainError("endpoint_warp must be >= 1")
        if self.jacobi_exponents is not None:
            exps = np.asarray(self.jacobi_exponents, dtype=float)
            if exps.shape != (self.dimension,):
                raise DomainError("jacobi_exponents must have one entry per coordinate")
            if np.any(exps <= -1):
                raise DomainError("jacobi exponents must be > -1")

    @property
    def exponents(self) -> np.ndarray:
        if self.jacobi_exponents is None:
            return np.zeros(self.dimension)
        return np.asarray(self.jacobi_exponents, dtype=float)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evals: int
    converged: bool = True

    def __post_init__(self):
        if self.error_estimate < 0:
            raise DomainError("error_estimate must be non-negative")


def _jacobi_rule_01(order: int, p: float, q: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for int_0^1 t^p (1-t)^q g(t) dt, nodes in (0, 1)."""
    if p == 0.0 and q == 0.0:
        x, w = np.polynomial.legendre.leggauss(order)
        return 0.5 * (x + 1.0), 0.5 * w
    x, w = sps.roots_jacobi(order, q, p)
    return 0.5 * (x + 1.0), w * 0.5 ** (p + q + 1.0)


def _stick_break(t: np.ndarray) -> np.ndarray:
    """Map (N, K-1) stick-breaking variables to (N, K) interior simplex points."""
    n, km1 = t.shape
    x = np.empty((n, km1 + 1))
    remaining = np.ones(n)
    for i in range(km1):
        x[:, i] = remaining * t[:, i]
        remaining = remaining * (1.0 - t[:, i])
    x[:, km1] = remaining
    return x


def _axis_jacobi_params(exps: np.ndarray) -> list[tuple[float, float]]:
    """Per-axis (p, q) absorbing declared exponents and the stick Jacobian."""
    k = len(exps)
    params = []
    for i in range(k - 1):
        p = exps[i]
        q = np.sum(exps[i + 1:] + 1.0) - 1.0
        params.append((float(p), float(q)))
    return params


def _smooth_part(spec: QuadratureSpec, x: np.ndarray) -> np.ndarray:
    """Evaluate the integrand with declared endpoint powers divided out."""
    vals = np.asarray(spec.integrand(x), dtype=float)
    exps = spec.exponents
    if np.any(exps != 0.0):
        vals = vals * np.exp(-np.log(x) @ exps)
    return vals


def _warped_rule_01(order: int, p: float, q: float, warp: float) -> tuple[np.ndarray, np.ndarray]:
    """Rule for int_0^1 t^p (1-t)^q g(t) dt after the substitution
    t = I_s(warp, warp) (regularized incomplete beta).

    The warp compresses nodes toward both endpoints, so fractional powers
    t^c or (1-t)^c in g gain smoothness of order warp*c; warp = 1 reduces
    to the plain Jacobi rule.
    """
    if warp == 1.0:
        return _jacobi_rule_01(order, p, q)
    pp = warp * (p + 1.0) - 1.0
    qq = warp * (q + 1.0) - 1.0
    s, w = _jacobi_rule_01(order, pp, qq)
    t = sps.betainc(warp, warp, s)
    one_minus_t = sps.betainc(warp, warp, 1.0 - s)
    log_factor = (p * np.log(t) + q * np.log(one_minus_t)
                  + (warp - 1.0) * (np.log(s) + np.log1p(-s)) - sps.betaln(warp, warp)
                  - pp * np.log(s) - qq * np.log1p(-s))
    return t, w * np.exp(log_factor)


def _tensor_gauss_pass(spec: QuadratureSpec, order: int) -> tuple[float, int]:
    k = spec.dimension
    axis_params = _axis_jacobi_params(spec.exponents)
    nodes, weights = [], []
    for p, q in axis_params:
        t, w = _warped_rule_01(order, p, q, spec.endpoint_warp)
        nodes.append(t)
        weights.append(w)
    grids = np.meshgrid(*nodes, indexing="ij")
    t = np.stack([g.ravel() for g in grids], axis=-1)
    wgrid = weights[0]
    for w in weights[1:]:
        wgrid = np.multiply.outer(wgrid, w)
    x = _stick_break(t)
    g = _smooth_part(spec, x)
    return float(np.sum(wgrid.ravel() * g)), x.shape[0]


def _escalate(values_for_order, orders, rel_tol, max_evals, evals_per_order):
    """Run an order ladder until successive estimates agree to rel_tol."""
    prev = None
    value = np.nan
    err = np.inf
    evals = 0
    for order in orders:
        cost = evals_per_order(order)
        if evals + cost > max_evals and prev is not None:
            return value, err, evals, False
        value = values_for_order(order)
        evals += cost
        if prev is not None:
            err = abs(value - prev)
            scale = max(abs(value), np.finfo(float).tiny)
            if err <= rel_tol * scale:
                return value, err, evals, True
        prev = value
    return value, err, evals, False


def _integrate_tensor_gauss(spec: QuadratureSpec) -> QuadratureResult:
    k = spec.dimension
    if k > TENSOR_GAUSS_MAX_DIM:
        raise MethodUnavailableError(
            f"tensor-gauss is limited to K <= {TENSOR_GAUSS_MAX_DIM}, got K={k}"
        )
    value, err, evals, ok = _escalate(
        lambda order: _tensor_gauss_pass(spec, order)[0],
        _SIMPLEX_ORDERS,
        spec.rel_tol,
        spec.max_evals,
        lambda order: order ** (k - 1),
    )
    return QuadratureResult(value, err if np.isfinite(err) else abs(value), evals, ok)


def _warped_scale_and_points(spec: QuadratureSpec, u: np.ndarray) -> tuple[float, np.ndarray]:
    """Map uniform cube points through per-axis Beta inverse CDFs.

    Returns the product of Beta normalizations and the simplex points; the
    integral of the declared-weight part is then scale * mean(smooth part).
    """
    axis_params = _axis_jacobi_params(spec.exponents)
    t = np.empty_like(u)
    log_scale = 0.0
    for i, (p, q) in enumerate(axis_params):
        a, b = p + 1.0, q + 1.0
        t[:, i] = sps.betaincinv(a, b, u[:, i])
        log_scale += sps.betaln(a, b)
    eps = 1e-14
    np.clip(t, eps, 1.0 - eps, out=t)
    return float(np.exp(log_scale)), _stick_break(t)


def _integrate_quasi_random(spec: QuadratureSpec) -> QuadratureResult:
    k = spec.dimension
    n = 1 << 20
    while n * 2 > spec.max_evals and n > (1 << 10):
        n >>= 1
    sampler = qmc.Sobol(d=k - 1, scramble=True, seed=_QMC_SEED)
    u = sampler.random(n)
    tiny = 2.0 ** -53
    np.clip(u, tiny, 1.0 - tiny, out=u)
    scale, x = _warped_scale_and_points(spec, u)
    g = _smooth_part(spec, x)
    batches = g.reshape(16, -1).mean(axis=1)
    value = scale * float(batches.mean())
    err = scale * float(batches.std(ddof=1)) / np.sqrt(16.0)
    ok = err <= spec.rel_tol * max(abs(value), np.finfo(float).tiny)
    return QuadratureResult(value, err, n, ok)


def _integrate_plain_mc(spec: QuadratureSpec) -> QuadratureResult:
    k = spec.dimension
    n = min(spec.max_evals, 1 << 19)
    rng = np.random.default_rng(np.random.SeedSequence((_MC_SEED, k)))
    axis_params = _axis_jacobi_params(spec.exponents)
    t = np.empty((n, k - 1))
    log_scale = 0.0
    for i, (p, q) in enumerate(axis_params):
        t[:, i] = rng.beta(p + 1.0, q + 1.0, size=n)
        log_scale += sps.betaln(p + 1.0, q + 1.0)
    eps = 1e-14
    np.clip(t, eps, 1.0 - eps, out=t)
    scale = float(np.exp(log_scale))
    g = _smooth_part(spec, _stick_break(t))
    value = scale * float(g.mean())
    err = scale * float(g.std(ddof=1)) / np.sqrt(n)
    ok = err <= spec.rel_tol * max(abs(value), np.finfo(float).tiny)
    return QuadratureResult(value, err, n, ok)


def _integrate_adaptive(spec: QuadratureSpec) -> QuadratureResult:
    if spec.dimension != 2:
        raise MethodUnavailableError("adaptive integration is limited to K = 2")
    e0, e1 = spec.exponents

    def smooth(u):
        x = np.stack([u, 1.0 - u], axis=-1)
        return _smooth_part(spec, x)

    return integrate_01(smooth, e0, e1, rel_tol=spec.rel_tol, max_evals=spec.max_evals)


def integrate_simplex(spec: QuadratureSpec) -> QuadratureResult:
    """Estimate the integral of ``spec.integrand`` over S_K w.r.t. d^{K-1}x.

    If the evaluation budget runs out before ``rel_tol`` is met the result
    carries ``converged=False``; the best value is still returned.
    """
    if spec.dimension == 1:
        # S_1 is the single point (1,); the 0-dimensional integral is a point
        # evaluation, which makes the recurrence relations close at K = 1.
        value = float(np.asarray(spec.integrand(np.array([[1.0]]))).reshape(()))
        return QuadratureResult(value, 0.0, 1, True)
    method = spec.method
    if method == "auto":
        method = "tensor-gauss" if spec.dimension <= TENSOR_GAUSS_MAX_DIM else "quasi-random"
    if method == "tensor-gauss":
        return _integrate_tensor_gauss(spec)
    if method == "quasi-random":
        return _integrate_quasi_random(spec)
    if method == "plain-mc":
        return _integrate_plain_mc(spec)
    return _integrate_adaptive(spec)


def _gauss_jacobi_pass(f, a_exp, b_exp, order) -> float:
    t, w = _jacobi_rule_01(order, a_exp, b_exp)
    return float(np.sum(w * np.asarray(f(t), dtype=float)))


def _bisect_01(f, a_exp, b_exp, lo, hi, rel_scale, tol, depth, budget) -> tuple[float, float, int]:
    """Adaptive bisection fallback on [lo, hi] with endpoint-weight handling."""

    def piece(a, b, order):
        # Substitute to fold u^a_exp at u=0 / (1-u)^b_exp at u=1 into the rule.
        if a == 0.0:
            t, w = _jacobi_rule_01(order, a_exp, 0.0)
            u = b * t
            vals = np.asarray(f(u), dtype=float) * (1.0 - u) ** b_exp
            return float(b ** (a_exp + 1.0) * np.sum(w * vals))
        if b == 1.0:
            t, w = _jacobi_rule_01(order, 0.0, b_exp)
            u = a + (1.0 - a) * t
            vals = np.asarray(f(u), dtype=float) * u ** a_exp
            return float((1.0 - a) ** (b_exp + 1.0) * np.sum(w * vals))
        x, w = np.polynomial.legendre.leggauss(order)
        u = a + (b - a) * 0.5 * (x + 1.0)
        vals = np.asarray(f(u), dtype=float) * u ** a_exp * (1.0 - u) ** b_exp
        return float((b - a) * 0.5 * np.sum(w * vals))

    coarse = piece(lo, hi, 20)
    fine = piece(lo, hi, 31)
    err = abs(fine - coarse)
    evals = 51
    if err <= tol * max(rel_scale, abs(fine)) or depth >= 24 or evals > budget:
        return fine, err, evals
    mid = 0.5 * (lo + hi)
    v1, e1, n1 = _bisect_01(f, a_exp, b_exp, lo, mid, rel_scale, tol / 2, depth + 1, budget - evals)
    v2, e2, n2 = _bisect_01(f, a_exp, b_exp, mid, hi, rel_scale, tol / 2, depth + 1, budget - evals - n1)
    return v1 + v2, e1 + e2, evals + n1 + n2


def integrate_01(f, a_exp: float, b_exp: float, rel_tol: float = 1e-10,
                 max_evals: int = 500_000) -> QuadratureResult:
    """Estimate int_0^1 u^{a_exp} (1-u)^{b_exp} f(u) du.

    ``f`` is the smooth part, evaluated only at interior nodes and expected
    to accept an array argument.  Gauss-Jacobi orders are escalated first;
    stubborn integrands fall back to adaptive bisection.
    """
    if a_exp <= -1 or b_exp <= -1:
        raise DomainError("endpoint exponents must be > -1")
    value, err, evals, ok = _escalate(
        lambda order: _gauss_jacobi_pass(f, a_exp, b_exp, order),
        _LINE_ORDERS,
        rel_tol,
        max_evals,
        lambda order: order,
    )
    if ok:
        return QuadratureResult(value, err, evals, True)
    budget = max_evals - evals
    if budget > 1000:
        v, e, n = _bisect_01(f, a_exp, b_exp, 0.0, 1.0, abs(value), rel_tol, 0, budget)
        ok = e <= rel_tol * max(abs(v), np.finfo(float).tiny)
        return QuadratureResult(v, e, evals + n, ok)
    return QuadratureResult(value, err, evals, False)
