"""Forward wave propagation on the padded interval and boundary-trace capture.

The model is u_tt = u_xx on (-R, R) with homogeneous Dirichlet ends,
u(x, 0) = a(x), u_t(x, 0) = b(x), where a and b are supported inside
(-1, 1) and R = T + 1 for integer padding T. Two independent solvers are
provided: a truncated eigenfunction series and a method-of-images
evaluator (exact up to quadrature of b), used to cross-check each other.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import ConfigurationError, DataError
from .observation import BoundaryTrace
from .spectral import (
    CoefficientVector,
    GridFunction,
    PaddingConfig,
    analyze,
    basis_matrix,
)

_SUPPORT_TOL = 1e-12


@dataclass(frozen=True)
class Profile:
    """Initial state: displacement a and optional velocity b, supported in (-1, 1)."""

    kind: str
    a: Callable[[np.ndarray], np.ndarray]
    b: Optional[Callable[[np.ndarray], np.ndarray]] = None


def smooth_bump() -> Profile:
    """C^1 bump: 1/2 + cos(2 pi x)/2 on |x| <= 1/2, zero elsewhere."""

    def f(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        m = np.abs(x) <= 0.5
        out[m] = 0.5 + 0.5 * np.cos(2.0 * np.pi * x[m])
        return out

    return Profile("smooth", f)


def step_profile() -> Profile:
    """Indicator of [-1/2, 1/2]."""

    def f(x):
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x) <= 0.5, 1.0, 0.0)

    return Profile("step", f)


def tabulated_profile(x: np.ndarray, values: np.ndarray, kind: str = "tabulated") -> Profile:
    """Piecewise-linear profile through the given samples, zero outside them."""
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.shape != values.shape or x.size < 2:
        raise ConfigurationError("tabulated profile needs matching 1-d arrays")
    if np.any(np.diff(x) <= 0):
        raise ConfigurationError("tabulated profile grid must be strictly increasing")

    def f(q):
        return np.interp(np.asarray(q, dtype=float), x, values, left=0.0, right=0.0)

    return Profile(kind, f)


def profile_by_name(name: str) -> Profile:
    if name == "smooth":
        return smooth_bump()
    if name == "step":
        return step_profile()
    raise ConfigurationError(f"unknown profile {name!r} (expected smooth or step)")


def validate_support(profile: Profile, cfg: PaddingConfig) -> None:
    """Check that a (and b) vanish on [-R, -1] and [1, R]."""
    for side in (np.linspace(1.0, cfg.R, 513), np.linspace(-cfg.R, -1.0, 513)):
        for part in (profile.a, profile.b):
            if part is None:
                continue
            vals = np.asarray(part(side), dtype=float)
            if np.max(np.abs(vals)) > _SUPPORT_TOL:
                raise ConfigurationError(
                    "initial data must be supported inside (-1, 1)"
                )


@dataclass(frozen=True)
class Field:
    """Space-time solution samples u[i, j] = u(x_i, t_j) plus the coefficients used."""

    x: np.ndarray
    t: np.ndarray
    u: np.ndarray
    cfg: PaddingConfig
    a_coeffs: CoefficientVector
    b_coeffs: Optional[CoefficientVector] = None


def expand_profile(
    profile: Profile, cfg: PaddingConfig, M: int, quad_points: Optional[int] = None
):
    """Analyze the zero-extended initial data into M basis coefficients.

    The quadrature grid defaults to 8M intervals (16 samples per wavelength
    of the highest retained mode).
    """
    if not isinstance(M, (int, np.integer)) or M < 1:
        raise ConfigurationError(f"mode count M must be a positive integer, got {M}")
    n = int(quad_points) if quad_points is not None else 8 * M + 1
    xq = np.linspace(-cfg.R, cfg.R, n)
    a_c = analyze(GridFunction(xq, profile.a(xq)), M, cfg)
    b_c = None
    if profile.b is not None:
        b_c = analyze(GridFunction(xq, profile.b(xq)), M, cfg)
    return a_c, b_c


def time_table(
    a_c: CoefficientVector,
    b_c: Optional[CoefficientVector],
    cfg: PaddingConfig,
    t: np.ndarray,
) -> np.ndarray:
    """Per-mode time factors: a_k cos(w_k t) + b_k sin(w_k t) / w_k, shape (M, nt)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t < 0.0):
        raise ConfigurationError("times must be non-negative")
    w = np.arange(1, a_c.K + 1) * np.pi / (2.0 * cfg.R)
    table = a_c.values[:, None] * np.cos(np.outer(w, t))
    if b_c is not None:
        if b_c.K != a_c.K:
            raise ConfigurationError("displacement and velocity mode counts differ")
        table += (b_c.values / w)[:, None] * np.sin(np.outer(w, t))
    return table


def solve_forward(
    profile: Profile,
    cfg: PaddingConfig,
    M: int,
    x: Optional[np.ndarray] = None,
    t: Optional[np.ndarray] = None,
    quad_points: Optional[int] = None,
) -> Field:
    """Truncated eigenfunction-series solution on the given space/time grids."""
    validate_support(profile, cfg)
    if x is None:
        x = np.linspace(-cfg.R, cfg.R, 241)
    if t is None:
        t = np.linspace(0.0, 2.0 * cfg.R, 241)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    a_c, b_c = expand_profile(profile, cfg, M, quad_points)
    u = basis_matrix(x, M, cfg) @ time_table(a_c, b_c, cfg, t)
    return Field(x=x, t=t, u=u, cfg=cfg, a_coeffs=a_c, b_coeffs=b_c)


def dalembert_eval(profile: Profile, x, t, cfg: PaddingConfig) -> np.ndarray:
    """Method-of-images solution u(x_i, t_j), exact for b = 0.

    The initial data is extended odd about both +-R and 4R-periodically;
    the solution is the average of the two traveling copies plus, for
    nonzero b, the integral of the extended velocity over the dependency
    interval (evaluated via a cumulative antiderivative, which is even
    under the same folding).
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(x) > cfg.R + _SUPPORT_TOL):
        raise ConfigurationError(f"evaluation points must lie in [-{cfg.R}, {cfg.R}]")
    if np.any(t < 0.0):
        raise ConfigurationError("times must be non-negative")
    scalar = x.ndim == 0 and t.ndim == 0
    xi_plus = (np.atleast_1d(x)[:, None] + np.atleast_1d(t)[None, :]).ravel()
    xi_minus = (np.atleast_1d(x)[:, None] - np.atleast_1d(t)[None, :]).ravel()
    p_plus, s_plus = kernels.fold_images(xi_plus, cfg.R)
    p_minus, s_minus = kernels.fold_images(xi_minus, cfg.R)
    u = 0.5 * (s_plus * profile.a(p_plus) + s_minus * profile.a(p_minus))
    if profile.b is not None:
        anti = _cumulative_antiderivative(profile.b)
        u = u + 0.5 * (anti(p_plus) - anti(p_minus))
    shape = (np.atleast_1d(x).size, np.atleast_1d(t).size)
    u = u.reshape(shape)
    return float(u[0, 0]) if scalar else u


def _cumulative_antiderivative(b: Callable) -> Callable:
    # W(p) = int_0^p b; b vanishes outside (-1, 1) so W is constant beyond.
    n = 16385
    xx = np.linspace(-1.0, 1.0, n)
    vals = np.asarray(b(xx), dtype=float)
    h = xx[1] - xx[0]
    cum = np.concatenate(([0.0], np.cumsum(0.5 * h * (vals[1:] + vals[:-1]))))
    cum -= cum[(n - 1) // 2]

    def w(p):
        return np.interp(np.clip(p, -1.0, 1.0), xx, cum)

    return w


def simulate_traces(
    profile: Profile,
    cfg: PaddingConfig,
    N: int,
    source: str = "spectral",
    M: int = 400,
    quad_points: Optional[int] = None,
) -> BoundaryTrace:
    """Record u(+1, t) and u(-1, t) on t_i = i/N, i = 0..N*R.

    source selects the solver: "spectral" (truncated series with M modes)
    or "oracle" (method of images).
    """
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ConfigurationError(f"samples per unit time N must be a positive integer, got {N}")
    if source not in ("spectral", "oracle"):
        raise ConfigurationError(f"unknown trace source {source!r}")
    validate_support(profile, cfg)
    n_samples = N * (cfg.T + 1) + 1
    t = np.arange(n_samples) / float(N)
    ends = np.array([1.0, -1.0])
    if source == "spectral":
        a_c, b_c = expand_profile(profile, cfg, M, quad_points)
        u = basis_matrix(ends, M, cfg) @ time_table(a_c, b_c, cfg, t)
    else:
        u = dalembert_eval(profile, ends, t, cfg)
    meta = {
        "profile": profile.kind,
        "T": str(cfg.T),
        "N": str(int(N)),
        "source": source,
        "noise": "none",
        "seed": "0",
    }
    return BoundaryTrace(t=t, f_plus=u[0], f_minus=u[1], cfg=cfg, meta=meta)


def boundary_traces(field: Field, N: int) -> BoundaryTrace:
    """Extract boundary traces at x = +-1 from an already computed field.

    The field grids must contain x = +-1 exactly and every sample time
    i/N, i = 0..N*R.
    """
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ConfigurationError(f"samples per unit time N must be a positive integer, got {N}")
    tol = 1e-9
    idx_plus = np.flatnonzero(np.abs(field.x - 1.0) <= tol)
    idx_minus = np.flatnonzero(np.abs(field.x + 1.0) <= tol)
    if idx_plus.size != 1 or idx_minus.size != 1:
        raise DataError("field grid must contain x = +1 and x = -1 exactly once")
    t_want = np.arange(N * (field.cfg.T + 1) + 1) / float(N)
    pos = np.searchsorted(field.t, t_want - tol)
    if pos.max() >= field.t.size or np.max(np.abs(field.t[pos] - t_want)) > tol:
        raise DataError("field time grid does not contain the requested samples i/N")
    meta = {
        "profile": "field",
        "T": str(field.cfg.T),
        "N": str(int(N)),
        "source": "spectral",
        "noise": "none",
        "seed": "0",
    }
    return BoundaryTrace(
        t=t_want,
        f_plus=field.u[idx_plus[0], pos],
        f_minus=field.u[idx_minus[0], pos],
        cfg=field.cfg,
        meta=meta,
    )
