"""The distribution families on the simplex: densities, seeded samplers,
the coordinate duality between them, mixture machinery, and the map to
generalized superellipsoids.

All densities are taken with respect to d^{K-1}x on the strict interior of
S_K (the last coordinate is dependent).  ``log_pdf`` and ``sample`` dispatch
on the parameter type; parameter objects are immutable and safe to share.
Sampling is deterministic for a fixed seed, with substreams derived via
:func:`rng_stream` so chunked generation stays reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache, singledispatch
from typing import Union

import numpy as np
from scipy import special as sps

from .errors import DomainError, UnsupportedRegimeError
from .normalization import (compositions, composition_count, log_i_closed_sigma1,
                            log_i_multinomial)
from .specialfn import gauss_2f1, gauss_2f1_finite

SUM_TOL = 1e-8
ALIAS_THRESHOLD = 1000


def rng_stream(seed: int, index: int = 0) -> np.random.Generator:
    """Substream ``index`` of the master seed.

    The split is SeedSequence(entropy=seed, spawn_key=(index,)); substreams
    with distinct indices are statistically independent, and results are
    reproducible for a fixed (seed, index) pair.
    """
    if seed < 0:
        seed += 1 << 64
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax; maps R^K into the interior of the simplex."""
    z = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


@dataclass(frozen=True)
class ParamVector:
    """Positive parameter vector with cached sum and log-components."""

    values: tuple[float, ...]

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("parameter vector must be 1-D and non-empty")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
            raise DomainError("parameter vector entries must be positive finite reals")
        object.__setattr__(self, "values", tuple(float(v) for v in arr))

    @classmethod
    def of(cls, values, normalize: bool = False) -> "ParamVector":
        arr = np.asarray(values, dtype=float)
        if normalize:
            arr = arr / arr.sum()
        return cls(tuple(arr))

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.values)

    @cached_property
    def sum(self) -> float:
        return float(self.array.sum())

    @cached_property
    def log(self) -> np.ndarray:
        return np.log(self.array)

    def __len__(self) -> int:
        return len(self.values)


def _vector(values, name: str, normalize: bool = False) -> ParamVector:
    if isinstance(values, ParamVector):
        values = values.values
    try:
        return ParamVector.of(values, normalize=normalize)
    except DomainError as exc:
        raise DomainError(f"{name}: {exc}") from exc


@dataclass(frozen=True)
class Dirichlet:
    alpha: ParamVector

    def __post_init__(self):
        object.__setattr__(self, "alpha", _vector(self.alpha, "alpha"))
        if len(self.alpha) < 2:
            raise DomainError("K must be >= 2")

    @property
    def dim(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class Schlomilch:
    """Denominator-tilted family; beta is stored normalized to sum 1."""

    alpha: ParamVector
    beta: ParamVector
    tau: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", _vector(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _vector(self.beta, "beta", normalize=True))
        if len(self.alpha) != len(self.beta) or len(self.alpha) < 2:
            raise DomainError("alpha and beta must share a common length K >= 2")
        if not self.tau > 0:
            raise DomainError("tau must be positive")

    @property
    def dim(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class DirichletMixture:
    alpha: ParamVector
    gamma: ParamVector
    n: int
    sigma: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", _vector(self.alpha, "alpha"))
        object.__setattr__(self, "gamma", _vector(self.gamma, "gamma", normalize=True))
        if len(self.alpha) != len(self.gamma) or len(self.alpha) < 2:
            raise DomainError("alpha and gamma must share a common length K >= 2")
        if self.n < 1 or self.n != int(self.n):
            raise DomainError("n must be a positive integer")
        if not self.sigma > 0:
            raise DomainError("sigma must be positive")

    @property
    def dim(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class SchlomilchMixture:
    alpha: ParamVector
    beta: ParamVector
    gamma: ParamVector
    n: int
    sigma: float = 1.0
    tau: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", _vector(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _vector(self.beta, "beta", normalize=True))
        object.__setattr__(self, "gamma", _vector(self.gamma, "gamma", normalize=True))
        k = len(self.alpha)
        if not (len(self.beta) == len(self.gamma) == k) or k < 2:
            raise DomainError("alpha, beta, gamma must share a common length K >= 2")
        if self.n < 0 or self.n != int(self.n):
            raise DomainError("n must be a non-negative integer")
        if not (self.sigma > 0 and self.tau > 0):
            raise DomainError("sigma and tau must be positive")

    @property
    def dim(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class InverseSchlomilch:
    """Family of reciprocal-transformed gamma ratios; softmax/Gumbel special
    case at alpha = (1, ..., 1)."""

    alpha: ParamVector
    beta: ParamVector
    tau: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", _vector(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _vector(self.beta, "beta", normalize=True))
        if len(self.alpha) != len(self.beta) or len(self.alpha) < 2:
            raise DomainError("alpha and beta must share a common length K >= 2")
        if not self.tau > 0:
            raise DomainError("tau must be positive")

    @property
    def dim(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class G4B:
    """Four-parameter generalized beta on (0, 1), handled as a K = 2 family."""

    alpha1: float
    alpha2: float
    kappa: float
    lam: float

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "kappa", "lam"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive finite real")

    @property
    def dim(self) -> int:
        return 2

    @property
    def mixture_order(self) -> int | None:
        """n with kappa = alpha1 + alpha2 + n, or None if not a non-negative integer."""
        n = self.kappa - self.alpha1 - self.alpha2
        if abs(n - round(n)) < 1e-9 and round(n) >= 0:
            return int(round(n))
        return None


@dataclass(frozen=True)
class Superellipsoid:
    """Power-mapped family on the positive orthant of a superellipsoid.

    The first K-1 simplex coordinates are mapped through
    x_i -> b_i (x_i / (1 - c_i))^{1/a_i}; the underlying simplex family is
    denominator-tilted with beta_i = beta_k / (1 - c_i).
    """

    alpha: ParamVector
    a: tuple[float, ...]
    b: tuple[float, ...]
    c: tuple[float, ...]
    beta_k: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", _vector(self.alpha, "alpha"))
        k = len(self.alpha)
        if k < 2:
            raise DomainError("K must be >= 2")
        for name, lo_ok in (("a", False), ("b", False), ("c", True)):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (k - 1,):
                raise DomainError(f"{name} must have length K-1 = {k - 1}")
            if name == "c":
                if np.any(v >= 1):
                    raise DomainError("entries of c must be < 1")
            elif np.any(v <= 0):
                raise DomainError(f"entries of {name} must be positive")
            object.__setattr__(self, name, tuple(float(x) for x in v))
        if not self.beta_k > 0:
            raise DomainError("beta_k must be positive")

    @property
    def dim(self) -> int:
        return len(self.alpha)

    @property
    def tied_beta(self) -> np.ndarray:
        c = np.asarray(self.c)
        return np.concatenate([self.beta_k / (1.0 - c), [self.beta_k]])


FamilyParams = Union[Dirichlet, Schlomilch, DirichletMixture, SchlomilchMixture,
                     InverseSchlomilch, G4B, Superellipsoid]

FAMILY_TAGS = {
    Dirichlet: "dirichlet",
    Schlomilch: "schlomilch",
    DirichletMixture: "dirichlet_mixture",
    SchlomilchMixture: "schlomilch_mixture",
    InverseSchlomilch: "inverse_schlomilch",
    G4B: "g4b",
    Superellipsoid: "superellipsoid",
}


def params_to_dict(params: FamilyParams) -> dict:
    """Serialize to the flat document schema shared by all families."""
    d: dict = {"family": FAMILY_TAGS[type(params)]}
    if isinstance(params, G4B):
        d.update(alpha=[params.alpha1, params.alpha2], kappa=params.kappa,
                 **{"lambda": params.lam})
        return d
    d["alpha"] = list(params.alpha.values)
    if isinstance(params, (Schlomilch, SchlomilchMixture, InverseSchlomilch)):
        d["beta"] = list(params.beta.values)
    if isinstance(params, (DirichletMixture, SchlomilchMixture)):
        d["gamma"] = list(params.gamma.values)
        d["n"] = params.n
        d["sigma"] = params.sigma
    if isinstance(params, (Schlomilch, SchlomilchMixture, InverseSchlomilch)):
        d["tau"] = params.tau
    if isinstance(params, Superellipsoid):
        d.update(a=list(params.a), b=list(params.b), c=list(params.c), beta=params.beta_k)
    return d


def params_from_dict(doc: dict) -> FamilyParams:
    """Parse the flat document schema (fields: family, alpha, beta, gamma,
    n, sigma, tau, kappa, lambda, a, b, c)."""
    if "family" not in doc:
        raise DomainError("missing required field 'family'")
    tag = str(doc["family"]).lower()
    known = {v: k for k, v in FAMILY_TAGS.items()}
    if tag not in known:
        raise DomainError(f"unknown family {tag!r}; expected one of {sorted(known)}")

    def need(field):
        if field not in doc:
            raise DomainError(f"family {tag!r} requires field {field!r}")
        return doc[field]

    if tag == "dirichlet":
        return Dirichlet(ParamVector.of(need("alpha")))
    if tag == "schlomilch":
        return Schlomilch(ParamVector.of(need("alpha")), ParamVector.of(need("beta")),
                          float(doc.get("tau", 1.0)))
    if tag == "dirichlet_mixture":
        return DirichletMixture(ParamVector.of(need("alpha")), ParamVector.of(need("gamma")),
                                int(need("n")), float(doc.get("sigma", 1.0)))
    if tag == "schlomilch_mixture":
        return SchlomilchMixture(ParamVector.of(need("alpha")), ParamVector.of(need("beta")),
                                 ParamVector.of(need("gamma")), int(need("n")),
                                 float(doc.get("sigma", 1.0)), float(doc.get("tau", 1.0)))
    if tag == "inverse_schlomilch":
        return InverseSchlomilch(ParamVector.of(need("alpha")), ParamVector.of(need("beta")),
                                 float(doc.get("tau", 1.0)))
    if tag == "g4b":
        alpha = np.asarray(need("alpha"), dtype=float)
        if alpha.shape != (2,):
            raise DomainError("g4b requires alpha with exactly two entries")
        return G4B(float(alpha[0]), float(alpha[1]), float(need("kappa")),
                   float(need("lambda")))
    a = need("a")
    return Superellipsoid(ParamVector.of(need("alpha")), tuple(np.atleast_1d(a)),
                          tuple(np.atleast_1d(need("b"))), tuple(np.atleast_1d(need("c"))),
                          float(doc.get("beta", 1.0)))


def validate_simplex_points(x, k: int) -> np.ndarray:
    """Check strict interior points of S_k; returns an (N, k) array."""
    arr = np.asarray(x, dtype=float)
    squeeze = arr.ndim == 1
    arr = np.atleast_2d(arr)
    if arr.shape[-1] != k:
        raise DomainError(f"points must have {k} coordinates, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("points must be finite")
    if np.any(arr <= 0.0):
        raise DomainError("points must lie in the strict interior (all coordinates > 0)")
    if np.any(np.abs(arr.sum(axis=-1) - 1.0) > SUM_TOL):
        raise DomainError("point coordinates must sum to 1")
    return arr, squeeze


def _log_sum_weighted_powers(log_w: np.ndarray, log_x: np.ndarray, power: float) -> np.ndarray:
    """log sum_j exp(log_w_j + power * log_x_j) along the last axis."""
    return sps.logsumexp(log_w + power * log_x, axis=-1)


@lru_cache(maxsize=256)
def _log_norm_mixture(alpha: tuple, gamma: tuple, n: int, sigma: float) -> float:
    if sigma == 1.0:
        return log_i_closed_sigma1(alpha, gamma, n)
    return log_i_multinomial(alpha, gamma, n, sigma)


@lru_cache(maxsize=256)
def _log_2f1_g4b(alpha1: float, alpha2: float, kappa: float, lam: float) -> float:
    n = G4B(alpha1, alpha2, kappa, lam).mixture_order
    if n is not None:
        return math.log(gauss_2f1_finite(alpha1, alpha2, n, lam))
    # Euler route with the symmetric argument order that keeps c > b > 0.
    return math.log(gauss_2f1(kappa, alpha1, alpha1 + alpha2, 1.0 - lam))


@singledispatch
def log_pdf(params, x):
    raise TypeError(f"unsupported parameter type {type(params).__name__}")


def _finish(vals: np.ndarray, squeeze: bool):
    return float(vals[0]) if squeeze else vals


@log_pdf.register
def _(params: Dirichlet, x):
    pts, squeeze = validate_simplex_points(x, params.dim)
    a = params.alpha.array
    log_norm = sps.gammaln(params.alpha.sum) - sps.gammaln(a).sum()
    return _finish(log_norm + np.log(pts) @ (a - 1.0), squeeze)


@log_pdf.register
def _(params: Schlomilch, x):
    pts, squeeze = validate_simplex_points(x, params.dim)
    a, tau = params.alpha.array, params.tau
    log_x = np.log(pts)
    log_denom = _log_sum_weighted_powers(params.beta.log, log_x, tau)
    vals = ((params.dim - 1) * np.log(tau)
            + sps.gammaln(params.alpha.sum) - sps.gammaln(a).sum()
            + float(a @ params.beta.log)
            + log_x @ (tau * a - 1.0)
            - params.alpha.sum * log_denom)
    return _finish(vals, squeeze)


@log_pdf.register
def _(params: DirichletMixture, x):
    pts, squeeze = validate_simplex_points(x, params.dim)
    a, g = params.alpha.array, params.gamma.array
    log_x = np.log(pts)
    log_mix = _log_sum_weighted_powers(params.gamma.log, log_x, params.sigma)
    vals = (params.n * log_mix + log_x @ (a - 1.0)
            - _log_norm_mixture(params.alpha.values, params.gamma.values,
                                params.n, params.sigma))
    return _finish(vals, squeeze)


@log_pdf.register
def _(params: SchlomilchMixture, x):
    pts, squeeze = validate_simplex_points(x, params.dim)
    a, n, sigma, tau = params.alpha.array, params.n, params.sigma, params.tau
    log_x = np.log(pts)
    log_mix = _log_sum_weighted_powers(sigma * params.beta.log + params.gamma.log,
                                       log_x, sigma * tau)
    log_denom = _log_sum_weighted_powers(params.beta.log, log_x, tau)
    vals = ((params.dim - 1) * np.log(tau)
            + float(a @ params.beta.log)
            + n * log_mix
            + log_x @ (tau * a - 1.0)
            - (params.alpha.sum + sigma * n) * log_denom
            - _log_norm_mixture(params.alpha.values, params.gamma.values, n, sigma))
    return _finish(vals, squeeze)


@log_pdf.register
def _(params: InverseSchlomilch, x):
    pts, squeeze = validate_simplex_points(x, params.dim)
    a, tau = params.alpha.array, params.tau
    log_x = np.log(pts)
    log_denom = _log_sum_weighted_powers(params.beta.log, log_x, -tau)
    vals = ((params.dim - 1) * np.log(tau)
            + sps.gammaln(params.alpha.sum) - sps.gammaln(a).sum()
            + float(a @ params.beta.log)
            - log_x @ (tau * a + 1.0)
            - params.alpha.sum * log_denom)
    return _finish(vals, squeeze)


@log_pdf.register
def _(params: G4B, x):
    pts, squeeze = validate_simplex_points(x, 2)
    t = pts[:, 0]
    a1, a2, kappa, lam = params.alpha1, params.alpha2, params.kappa, params.lam
    vals = (sps.gammaln(a1 + a2) - sps.gammaln(a1) - sps.gammaln(a2)
            - _log_2f1_g4b(a1, a2, kappa, lam)
            + (a1 - 1.0) * np.log(t) + (a2 - 1.0) * np.log1p(-t)
            - kappa * np.log(lam * t + 1.0 - t))
    return _finish(vals, squeeze)


def _superellipsoid_remainder(params: Superellipsoid, u: np.ndarray) -> np.ndarray:
    a = np.asarray(params.a)
    b = np.asarray(params.b)
    c = np.asarray(params.c)
    return 1.0 - ((1.0 - c) * (u / b) ** a).sum(axis=-1)


@log_pdf.register
def _(params: Superellipsoid, x):
    u = np.asarray(x, dtype=float)
    squeeze = u.ndim == 1
    u = np.atleast_2d(u)
    k = params.dim
    if u.shape[-1] != k - 1:
        raise DomainError(f"superellipsoid points have {k - 1} free coordinates")
    if np.any(u <= 0.0) or not np.all(np.isfinite(u)):
        raise DomainError("points must have positive finite coordinates")
    rem = _superellipsoid_remainder(params, u)
    if np.any(rem <= 0.0):
        raise DomainError("point lies outside the superellipsoid orthant")
    a = np.asarray(params.a)
    b = np.asarray(params.b)
    c = np.asarray(params.c)
    alpha = params.alpha.array
    alpha_head = alpha[:-1]
    log_u = np.log(u)
    vals = (sps.gammaln(params.alpha.sum) - sps.gammaln(alpha).sum()
            + np.sum(np.log(a) - a * alpha_head * np.log(b))
            + log_u @ (a * alpha_head - 1.0)
            + (alpha[-1] - 1.0) * np.log(rem)
            - params.alpha.sum * np.log1p((c * (u / b) ** a).sum(axis=-1)))
    return _finish(vals, squeeze)


# --- transforms -----------------------------------------------------------


def dual_transform(x, beta, tau: float, direction: str = "forward") -> np.ndarray:
    """Coordinate duality between simplex variables.

    forward:  y_i = beta_i x_i^tau / sum_j beta_j x_j^tau
    inverse:  x_i = (y_i/beta_i)^{1/tau} / sum_j (y_j/beta_j)^{1/tau}

    The two directions are exact inverses of one another.
    """
    if direction not in ("forward", "inverse"):
        raise DomainError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    b = _vector(beta, "beta")
    if not tau > 0:
        raise DomainError("tau must be positive")
    pts, squeeze = validate_simplex_points(x, len(b))
    log_x = np.log(pts)
    if direction == "forward":
        out = softmax(b.log + tau * log_x)
    else:
        out = softmax((log_x - b.log) / tau)
    return out[0] if squeeze else out


def superellipsoid_map(x, a, b, c) -> np.ndarray:
    """Map simplex points to superellipsoid coordinates u_i = b_i (x_i/(1-c_i))^{1/a_i}."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    squeeze = np.asarray(x).ndim == 1
    head = pts[:, :-1]
    u = b * (head / (1.0 - c)) ** (1.0 / a)
    return u[0] if squeeze else u


def superellipsoid_inverse_map(u, a, b, c) -> np.ndarray:
    """Inverse of :func:`superellipsoid_map`, returning full simplex points."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    uu = np.atleast_2d(np.asarray(u, dtype=float))
    squeeze = np.asarray(u).ndim == 1
    head = (1.0 - c) * (uu / b) ** a
    x = np.concatenate([head, 1.0 - head.sum(axis=-1, keepdims=True)], axis=-1)
    return x[0] if squeeze else x


# --- mixture machinery ----------------------------------------------------


def mixture_weights(alpha, gamma, n: int, sigma: float = 1.0) -> dict[tuple[int, ...], float]:
    """Component weights of the order-n mixture over compositions of n.

    Computed in log-space and normalized so the weights sum to one exactly.
    """
    a = np.asarray(alpha, dtype=float)
    g = np.asarray(gamma, dtype=float)
    if n < 1 or n != int(n):
        raise DomainError("n must be a positive integer")
    n = int(n)
    k = a.size
    comps = np.array(list(compositions(n, k)), dtype=np.int64)
    log_terms = (
        sps.gammaln(n + 1.0) - sps.gammaln(comps + 1.0).sum(axis=1)
        + (sps.gammaln(a + sigma * comps) - sps.gammaln(a)).sum(axis=1)
        + comps @ np.log(g)
    )
    w = np.exp(log_terms - sps.logsumexp(log_terms))
    w /= w.sum()
    return {tuple(int(v) for v in comp): float(wi) for comp, wi in zip(comps, w)}


def g4b_decompose(params: G4B) -> list[tuple[float, Schlomilch]]:
    """Finite mixture representation of a G4B with kappa = alpha1 + alpha2 + n.

    Returns (weight, component) pairs where each component is a K = 2
    denominator-tilted family; the weights sum to one.
    """
    n = params.mixture_order
    if n is None:
        raise UnsupportedRegimeError(
            "mixture decomposition requires kappa - alpha1 - alpha2 to be a "
            "non-negative integer"
        )
    a1, a2, lam = params.alpha1, params.alpha2, params.lam
    log_norm = _log_2f1_g4b(a1, a2, params.kappa, lam)
    out = []
    for k in range(n + 1):
        log_w = (sps.gammaln(n + 1.0) - sps.gammaln(k + 1.0) - sps.gammaln(n - k + 1.0)
                 + sps.gammaln(a1 + k) - sps.gammaln(a1)
                 + sps.gammaln(a2 + n - k) - sps.gammaln(a2)
                 - (sps.gammaln(a1 + a2 + n) - sps.gammaln(a1 + a2))
                 - (a1 + k) * math.log(lam) - log_norm)
        component = Schlomilch(ParamVector.of([a1 + k, a2 + n - k]),
                               ParamVector.of([lam / (lam + 1.0), 1.0 / (lam + 1.0)]),
                               1.0)
        out.append((float(np.exp(log_w)), component))
    return out


class _CategoricalSampler:
    """Draws component indices; alias table above ALIAS_THRESHOLD entries,
    direct inversion of the cumulative weights below."""

    def __init__(self, weights: np.ndarray):
        self.m = len(weights)
        if self.m > ALIAS_THRESHOLD:
            prob = self.m * np.asarray(weights, dtype=float)
            alias = np.zeros(self.m, dtype=np.int64)
            small = [i for i, p in enumerate(prob) if p < 1.0]
            large = [i for i, p in enumerate(prob) if p >= 1.0]
            while small and large:
                s, l = small.pop(), large.pop()
                alias[s] = l
                prob[l] = prob[l] + prob[s] - 1.0
                (small if prob[l] < 1.0 else large).append(l)
            for i in small + large:
                prob[i] = 1.0
            self.prob, self.alias, self.cdf = prob, alias, None
        else:
            cdf = np.cumsum(weights)
            cdf[-1] = 1.0
            self.prob = self.alias = None
            self.cdf = cdf

    def draw(self, rng: np.random.Generator, count: int) -> np.ndarray:
        if self.cdf is not None:
            return np.searchsorted(self.cdf, rng.random(count), side="right")
        idx = rng.integers(0, self.m, size=count)
        keep = rng.random(count) < self.prob[idx]
        return np.where(keep, idx, self.alias[idx])


# --- sampling -------------------------------------------------------------


def _gamma_matrix(rng: np.random.Generator, alpha: np.ndarray, count: int) -> np.ndarray:
    return rng.gamma(shape=alpha, size=(count, alpha.size))


def _dirichlet_draws(rng, alpha: np.ndarray, count: int) -> np.ndarray:
    z = _gamma_matrix(rng, alpha, count)
    return z / z.sum(axis=1, keepdims=True)


def _schlomilch_draws(rng, alpha, log_beta, tau, count) -> np.ndarray:
    z = _gamma_matrix(rng, alpha, count)
    return softmax((np.log(z) - log_beta) / tau)


def _inverse_schlomilch_draws(rng, alpha, log_beta, tau, count) -> np.ndarray:
    z = _gamma_matrix(rng, alpha, count)
    return softmax((log_beta - np.log(z)) / tau)


def _mixture_draws(rng, params, count, component_sampler) -> np.ndarray:
    if params.n == 0:
        return component_sampler(params.alpha.array, count)
    weights = mixture_weights(params.alpha.array, params.gamma.array,
                              params.n, params.sigma)
    comps = list(weights)
    picker = _CategoricalSampler(np.array([weights[c] for c in comps]))
    idx = picker.draw(rng, count)
    out = np.empty((count, params.dim))
    for j, comp in enumerate(comps):
        rows = np.flatnonzero(idx == j)
        if rows.size:
            shifted = params.alpha.array + params.sigma * np.asarray(comp)
            out[rows] = component_sampler(shifted, rows.size)
    return out


def _check_count(count: int) -> int:
    if count < 1 or count != int(count):
        raise DomainError("count must be a positive integer")
    return int(count)


@singledispatch
def _draw(params, rng: np.random.Generator, count: int) -> np.ndarray:
    raise TypeError(f"unsupported parameter type {type(params).__name__}")


def sample(params: FamilyParams, rng_seed: int, count: int, stream: int = 0) -> np.ndarray:
    """Draw ``count`` points, bit-reproducible for fixed (seed, stream).

    ``stream`` selects a substream of the master seed (see :func:`rng_stream`)
    so that chunked or parallel generation stays deterministic.
    """
    return _draw(params, rng_stream(rng_seed, stream), _check_count(count))


@_draw.register
def _(params: Dirichlet, rng, count: int) -> np.ndarray:
    return _dirichlet_draws(rng, params.alpha.array, count)


@_draw.register
def _(params: Schlomilch, rng, count: int) -> np.ndarray:
    return _schlomilch_draws(rng, params.alpha.array, params.beta.log, params.tau, count)


@_draw.register
def _(params: InverseSchlomilch, rng, count: int) -> np.ndarray:
    return _inverse_schlomilch_draws(rng, params.alpha.array, params.beta.log,
                                     params.tau, count)


@_draw.register
def _(params: DirichletMixture, rng, count: int) -> np.ndarray:
    return _mixture_draws(rng, params, count,
                          lambda shifted, m: _dirichlet_draws(rng, shifted, m))


@_draw.register
def _(params: SchlomilchMixture, rng, count: int) -> np.ndarray:
    return _mixture_draws(rng, params, count,
                          lambda shifted, m: _schlomilch_draws(
                              rng, shifted, params.beta.log, params.tau, m))


@_draw.register
def _(params: G4B, rng, count: int) -> np.ndarray:
    if params.mixture_order is None:
        raise UnsupportedRegimeError(
            "sampling requires kappa - alpha1 - alpha2 to be a non-negative "
            "integer; this G4B is density-only"
        )
    pairs = g4b_decompose(params)
    picker = _CategoricalSampler(np.array([w for w, _ in pairs]))
    idx = picker.draw(rng, count)
    out = np.empty((count, 2))
    for j, (_, comp) in enumerate(pairs):
        rows = np.flatnonzero(idx == j)
        if rows.size:
            out[rows] = _schlomilch_draws(rng, comp.alpha.array, comp.beta.log,
                                          1.0, rows.size)
    return out


@_draw.register
def _(params: Superellipsoid, rng, count: int) -> np.ndarray:
    beta = params.tied_beta
    x = _schlomilch_draws(rng, params.alpha.array, np.log(beta / beta.sum()), 1.0, count)
    return superellipsoid_map(x, params.a, params.b, params.c)


def gumbel_softmax_sample(beta, tau: float, rng_seed: int, count: int) -> np.ndarray:
    """Softmax of Gumbel noise shifted by log beta and tempered by tau.

    Distributionally identical to the alpha = (1, ..., 1) member of the
    inverse family; kept as an independent construction for cross-checks.
    Gumbel variates are -log(-log U) with U drawn from the open interval.
    """
    b = _vector(beta, "beta", normalize=True)
    if not tau > 0:
        raise DomainError("tau must be positive")
    rng = rng_stream(rng_seed)
    u = rng.random((_check_count(count), len(b)))
    np.clip(u, np.finfo(float).tiny, None, out=u)
    gumbel = -np.log(-np.log(u))
    return softmax((gumbel + b.log) / tau)
