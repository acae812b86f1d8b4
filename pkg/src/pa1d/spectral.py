"""Sine basis on the padded interval, quadrature, analysis and synthesis.

The padded interval is (-R, R) with R = T + 1 for an integer padding
width T. The Dirichlet eigenfunctions on it are
X_k(x) = sin(k pi (x + R) / (2R)), k >= 1, with eigenvalues
lambda_k = (k pi / (2R))^2 and squared norm ||X_k||^2 = R. Coefficients
throughout the package use the squared-norm convention
c_k = (f, X_k) / R.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DataError, ResolutionError
from . import kernels

_GRID_RTOL = 1e-9


@dataclass(frozen=True)
class PaddingConfig:
    """Padding width T; the computational interval is (-R, R) with R = T + 1.

    T = 0 (no padding) is allowed for analysis on the bare interval; the
    inverse-side operations require T >= 1.
    """

    T: int

    def __post_init__(self):
        if not isinstance(self.T, (int, np.integer)) or isinstance(self.T, bool):
            raise ConfigurationError(f"padding T must be an integer, got {self.T!r}")
        if self.T < 0:
            raise ConfigurationError(f"padding T must be >= 0, got {self.T}")

    @property
    def R(self) -> float:
        return float(self.T + 1)


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on a uniform, strictly increasing grid."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)
        if x.ndim != 1 or v.ndim != 1 or x.shape != v.shape:
            raise DataError("grid and values must be 1-d arrays of equal length")
        if x.size < 3:
            raise DataError(f"need at least 3 samples, got {x.size}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise DataError("grid function contains non-finite entries")
        steps = np.diff(x)
        if np.any(steps <= 0.0):
            raise DataError("grid must be strictly increasing")
        h = steps.mean()
        if np.max(np.abs(steps - h)) > _GRID_RTOL * h:
            raise DataError("grid must be uniform")

    @property
    def h(self) -> float:
        return float((self.x[-1] - self.x[0]) / (self.x.size - 1))

    def spans(self, lo: float, hi: float) -> bool:
        tol = _GRID_RTOL * max(1.0, abs(hi - lo))
        return abs(self.x[0] - lo) <= tol and abs(self.x[-1] - hi) <= tol


@dataclass(frozen=True)
class CoefficientVector:
    """Basis coefficients for modes k = 1..K (values[k-1] belongs to mode k)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or v.size < 1:
            raise DataError("coefficients must form a non-empty 1-d array")
        if not np.all(np.isfinite(v)):
            raise DataError("coefficients contain non-finite entries")

    @property
    def K(self) -> int:
        return self.values.size

    def coeff(self, k: int) -> float:
        if not 1 <= k <= self.K:
            raise ConfigurationError(f"mode index {k} outside 1..{self.K}")
        return float(self.values[k - 1])


def eigenvalue(k: int, cfg: PaddingConfig) -> float:
    """Dirichlet eigenvalue (k pi / (2R))^2 of mode k on the padded interval."""
    _check_mode(k)
    return (k * np.pi / (2.0 * cfg.R)) ** 2


def basis_eval(k: int, cfg: PaddingConfig, x) -> np.ndarray:
    """Evaluate X_k(x) = sin(k pi (x + R) / (2R)) for x inside [-R, R]."""
    _check_mode(k)
    x = np.asarray(x, dtype=float)
    _check_domain(x, cfg.R)
    return np.sin(k * np.pi * (x + cfg.R) / (2.0 * cfg.R))


def basis_matrix(x: np.ndarray, K: int, cfg: PaddingConfig) -> np.ndarray:
    """Matrix S with S[i, k-1] = X_k(x_i), for modes k = 1..K."""
    _check_mode(K)
    x = np.asarray(x, dtype=float)
    _check_domain(x, cfg.R)
    k = np.arange(1, K + 1)
    return np.sin(np.outer(x + cfg.R, k * np.pi / (2.0 * cfg.R)))


def simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights for n uniformly spaced samples.

    An odd interval count is handled by a 3/8-rule patch on the final three
    intervals, keeping the composite rule fourth order.
    """
    if n < 3:
        raise ConfigurationError(f"Simpson rule needs at least 3 samples, got {n}")
    if h <= 0.0:
        raise ConfigurationError(f"step must be positive, got {h}")
    w = np.zeros(n)
    intervals = n - 1
    if intervals % 2 == 0:
        w[0] = w[-1] = 1.0
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w *= h / 3.0
    else:
        # Simpson on the first n-4 intervals, 3/8 on the last three.
        head = intervals - 3
        if head > 0:
            w[:head + 1] = simpson_weights(head + 1, h)
        tail = np.array([1.0, 3.0, 3.0, 1.0]) * (3.0 * h / 8.0)
        w[-4:] += tail
    return w


def integrate(values: np.ndarray, h: float) -> float:
    """Composite Simpson integral of uniformly spaced samples."""
    values = np.asarray(values, dtype=float)
    return float(simpson_weights(values.size, h) @ values)


def analyze(f: GridFunction, K: int, cfg: PaddingConfig) -> CoefficientVector:
    """Coefficients c_k = (f, X_k) / R for k = 1..K by Simpson quadrature.

    f must sample the full interval [-R, R]; the grid must keep at least
    8 samples per wavelength of the highest retained mode.
    """
    _check_mode(K)
    if not f.spans(-cfg.R, cfg.R):
        raise DataError(
            f"analysis input must span [{-cfg.R}, {cfg.R}], "
            f"got [{f.x[0]}, {f.x[-1]}]"
        )
    n = f.x.size
    if n - 1 < 4 * K:
        raise ResolutionError(
            f"{n} samples resolve at most K = {(n - 1) // 4} modes "
            f"(8 per wavelength); requested K = {K}"
        )
    w = simpson_weights(n, f.h)
    coeffs = basis_matrix(f.x, K, cfg).T @ (w * f.values) / cfg.R
    return CoefficientVector(coeffs)


def synthesize(c: CoefficientVector, cfg: PaddingConfig, x) -> np.ndarray:
    """Evaluate sum_k c_k X_k(x) for x inside [-R, R]."""
    x = np.asarray(x, dtype=float)
    _check_domain(x, cfg.R)
    scalar = x.ndim == 0
    out = kernels.mode_sum(np.atleast_1d(x).astype(float), c.values, cfg.R)
    return float(out[0]) if scalar else out


def cosine_coefficient(g: GridFunction, k: int, cfg: PaddingConfig) -> float:
    """Cosine coefficient (1/R) * int_0^{2R} g(t) cos(k pi t / (2R)) dt."""
    _check_mode(k)
    if not g.spans(0.0, 2.0 * cfg.R):
        raise DataError(
            f"cosine transform input must span [0, {2.0 * cfg.R}], "
            f"got [{g.x[0]}, {g.x[-1]}]"
        )
    w = simpson_weights(g.x.size, g.h)
    kernel = np.cos(k * np.pi * g.x / (2.0 * cfg.R))
    return float(w @ (g.values * kernel) / cfg.R)


def _check_mode(k) -> None:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ConfigurationError(f"mode index must be an integer, got {k!r}")
    if k < 1:
        raise ConfigurationError(f"mode index must be >= 1, got {k}")


def _check_domain(x: np.ndarray, r_pad: float) -> None:
    tol = _GRID_RTOL * r_pad
    if x.size and (x.min() < -r_pad - tol or x.max() > r_pad + tol):
        raise ConfigurationError(
            f"evaluation points must lie in [-{r_pad}, {r_pad}]"
        )
