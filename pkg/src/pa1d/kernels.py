"""Hot numerical kernels with numba-jitted and pure-numpy implementations.

Set PA1D_NO_NUMBA=1 to force the numpy fallbacks (useful on platforms
without a working JIT, and for benchmarking one path against the other).
Both implementations of each kernel are importable regardless of the flag;
the public names dispatch to the selected backend at import time.

The leapfrog and folding kernels are written so both backends perform the
same floating-point operations in the same order and agree bit for bit.
The mode-sum kernel accumulates in loop order under numba but uses a BLAS
matmul in the numpy path, so those two agree only to rounding (~1e-13
relative).
"""

import os

import numpy as np

_FLAG = os.environ.get("PA1D_NO_NUMBA", "")
NUMBA_DISABLED = _FLAG not in ("", "0")

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled via PA1D_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        # No-op decorator so the jitted variants stay importable.
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


def _leapfrog_backward_loop(u_hi, u_mid, bc_minus, bc_plus, r2):
    # Marches u^{m-1} = 2 u^m - u^{m+1} + r2 * D2 u^m from the two terminal
    # layers down to time level 0. bc_* hold boundary values per time level
    # (0..M); u_hi/u_mid are levels M and M-1 and are not modified.
    n_steps = bc_minus.shape[0] - 1
    n = u_hi.shape[0]
    u_hi = u_hi.copy()
    u_mid = u_mid.copy()
    u_lo = np.empty(n)
    for m in range(n_steps - 1, 0, -1):
        for j in range(1, n - 1):
            u_lo[j] = (2.0 * u_mid[j] - u_hi[j]) + r2 * (
                (u_mid[j + 1] - 2.0 * u_mid[j]) + u_mid[j - 1]
            )
        u_lo[0] = bc_minus[m - 1]
        u_lo[n - 1] = bc_plus[m - 1]
        u_hi, u_mid, u_lo = u_mid, u_lo, u_hi
    return u_mid.copy()


def _leapfrog_backward_numpy(u_hi, u_mid, bc_minus, bc_plus, r2):
    n_steps = bc_minus.shape[0] - 1
    u_hi = u_hi.copy()
    u_mid = u_mid.copy()
    u_lo = np.empty_like(u_mid)
    for m in range(n_steps - 1, 0, -1):
        u_lo[1:-1] = (2.0 * u_mid[1:-1] - u_hi[1:-1]) + r2 * (
            (u_mid[2:] - 2.0 * u_mid[1:-1]) + u_mid[:-2]
        )
        u_lo[0] = bc_minus[m - 1]
        u_lo[-1] = bc_plus[m - 1]
        u_hi, u_mid, u_lo = u_mid, u_lo, u_hi
    return u_mid.copy()


def _fold_images_loop(xi, r_pad, points, signs):
    # Folds arguments of the odd 4R-periodic extension back into [-R, R].
    # The extension is odd about both -R and +R; a point landing in the
    # reflected half-period flips sign.
    period = 4.0 * r_pad
    for i in range(xi.shape[0]):
        z = (xi[i] + r_pad) - period * np.floor((xi[i] + r_pad) / period)
        if z <= 2.0 * r_pad:
            points[i] = z - r_pad
            signs[i] = 1.0
        else:
            points[i] = 3.0 * r_pad - z
            signs[i] = -1.0


def _fold_images_numpy(xi, r_pad, points, signs):
    period = 4.0 * r_pad
    z = (xi + r_pad) - period * np.floor((xi + r_pad) / period)
    inside = z <= 2.0 * r_pad
    points[:] = np.where(inside, z - r_pad, 3.0 * r_pad - z)
    signs[:] = np.where(inside, 1.0, -1.0)


def _mode_sum_loop(x, coeffs, r_pad):
    # u(x) = sum_k coeffs[k-1] * sin(k * pi * (x + R) / (2R))
    w = np.pi / (2.0 * r_pad)
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        s = w * (x[i] + r_pad)
        acc = 0.0
        for k in range(coeffs.shape[0]):
            acc += coeffs[k] * np.sin((k + 1) * s)
        out[i] = acc
    return out


def _mode_sum_numpy(x, coeffs, r_pad):
    w = np.pi / (2.0 * r_pad)
    k = np.arange(1, coeffs.shape[0] + 1)
    return np.sin(np.outer(x + r_pad, w * k)) @ coeffs


if HAVE_NUMBA:
    _leapfrog_backward_numba = njit(cache=True)(_leapfrog_backward_loop)
    _fold_images_numba = njit(cache=True)(_fold_images_loop)
    _mode_sum_numba = njit(cache=True)(_mode_sum_loop)

    leapfrog_backward = _leapfrog_backward_numba
    fold_images_into = _fold_images_numba
    mode_sum = _mode_sum_numba
else:
    leapfrog_backward = _leapfrog_backward_numpy
    fold_images_into = _fold_images_numpy
    mode_sum = _mode_sum_numpy


def backend() -> str:
    """Name of the active kernel backend, "numba" or "numpy"."""
    return "numba" if HAVE_NUMBA else "numpy"


def fold_images(xi: np.ndarray, r_pad: float):
    """Fold points into the fundamental interval of the odd periodic extension.

    Returns (points, signs) with points in [-R, R] and signs in {+1, -1}
    such that extension(xi) = sign * base(point).
    """
    xi = np.ascontiguousarray(xi, dtype=np.float64)
    points = np.empty_like(xi)
    signs = np.empty_like(xi)
    fold_images_into(xi, float(r_pad), points, signs)
    return points, signs
