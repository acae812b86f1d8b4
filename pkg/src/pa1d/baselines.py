"""Reference reconstructions that do not use the degenerate-mode analysis.

Both baselines deliberately stay naive. The least-squares fit solves the
trace model "as written" and therefore inherits its rank deficiency: the
degenerate columns are numerically zero, the minimum-norm solution zeroes
those modes, and no amplitude correction is applied. The backward
finite-difference solver reverses the wave equation from a zero terminal
state using the traces as Dirichlet data on [-1, 1].
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .errors import ConfigurationError, DataError, NumericalError
from .inverse import ModeSet, Reconstruction, denominator
from .observation import BoundaryTrace
from .spectral import PaddingConfig, basis_matrix

_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class LsqReport:
    """Diagnostics of the least-squares trace fit."""

    singular_values: np.ndarray
    condition_normal: float
    rank: int
    K: int

    @property
    def rank_deficient(self) -> bool:
        return self.rank < self.K


def trace_design_matrix(tr: BoundaryTrace, K: int) -> Tuple[np.ndarray, np.ndarray]:
    """Design matrix and stacked observations for the trace model.

    Row blocks are the F_plus then F_minus samples; column k carries the
    mode-k trace shape den_k * cos(w_k t), sign-flipped by (-1)^(k+1) in
    the F_minus block.
    """
    if not isinstance(K, (int, np.integer)) or K < 1:
        raise ConfigurationError(f"mode count K must be a positive integer, got {K}")
    cfg = tr.cfg
    k = np.arange(1, K + 1)
    w = k * np.pi / (2.0 * cfg.R)
    cos_table = np.cos(np.outer(tr.t, w))
    dens = np.array([denominator(int(kk), cfg) for kk in k])
    top = cos_table * dens
    bottom = cos_table * (dens * (-1.0) ** (k + 1))
    design = np.vstack((top, bottom))
    y = np.concatenate((tr.f_plus, tr.f_minus))
    return design, y


def lsq_fit(tr: BoundaryTrace, K: int) -> Tuple[np.ndarray, LsqReport]:
    """Minimum-norm least-squares mode amplitudes from both traces."""
    design, y = trace_design_matrix(tr, K)
    coeffs, _, rank, sv = np.linalg.lstsq(design, y, rcond=None)
    if sv[-1] > 0.0:
        cond_normal = float((sv[0] / sv[-1]) ** 2)
    else:
        cond_normal = float("inf")
    report = LsqReport(
        singular_values=sv, condition_normal=cond_normal, rank=int(rank), K=int(K)
    )
    return coeffs, report


def lsq_reconstruct(
    tr: BoundaryTrace, K: int, x_out: Optional[np.ndarray] = None
) -> Tuple[Reconstruction, LsqReport]:
    """Synthesize the least-squares amplitudes on the observation interval.

    No degenerate-mode handling and no amplitude correction: this is the
    answer the trace model gives without the structural analysis.
    """
    coeffs, report = lsq_fit(tr, K)
    if x_out is None:
        x_out = np.linspace(-1.0, 1.0, 401)
    x_out = np.asarray(x_out, dtype=float)
    values = basis_matrix(x_out, K, tr.cfg) @ coeffs
    modes = ModeSet(
        k_values=np.arange(1, K + 1),
        coeffs=coeffs,
        skipped=(),
        K=int(K),
        cfg=tr.cfg,
    )
    return (
        Reconstruction(x=x_out, values=values, method="lsq", mode_set=modes, factor=None),
        report,
    )


@dataclass(frozen=True)
class FdConfig:
    """Backward finite-difference discretization: space step, time step, horizon."""

    h: float
    tau: float
    t_final: float

    def __post_init__(self):
        if not (np.isfinite(self.h) and self.h > 0.0):
            raise ConfigurationError(f"space step must be positive, got {self.h}")
        if not (np.isfinite(self.tau) and self.tau > 0.0):
            raise ConfigurationError(f"time step must be positive, got {self.tau}")
        if not (np.isfinite(self.t_final) and self.t_final > 0.0):
            raise ConfigurationError(f"final time must be positive, got {self.t_final}")
        cells = 2.0 / self.h
        if abs(cells - round(cells)) > _ALIGN_TOL * cells or round(cells) < 2:
            raise ConfigurationError(
                f"space step must divide the interval length 2, got h = {self.h}"
            )
        steps = self.t_final / self.tau
        if abs(steps - round(steps)) > _ALIGN_TOL * steps or round(steps) < 2:
            raise ConfigurationError(
                f"time step must divide the final time {self.t_final}, got tau = {self.tau}"
            )
        if self.tau / self.h > 1.0 + 1e-12:
            raise NumericalError(
                f"unstable discretization: tau/h = {self.tau / self.h:.6g} exceeds 1"
            )

    @property
    def n_cells(self) -> int:
        return int(round(2.0 / self.h))

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.tau))


def default_fd_config(cfg: PaddingConfig, h: float = 2.5e-3, cfl: float = 1.0) -> FdConfig:
    """FdConfig with t_final = min(T+1, 2T) and tau = cfl * h."""
    t_final = float(min(cfg.T + 1, 2 * cfg.T))
    return FdConfig(h=h, tau=cfl * h, t_final=t_final)


def backward_fd(tr: BoundaryTrace, fd: FdConfig) -> Reconstruction:
    """March the leapfrog scheme backward from a zero state at t_final.

    Valid for t_final in [2, 2T]: by t = 2 the waves have left [-1, 1]
    and they stay away until t = 2T, so the zero terminal state is exact.
    The traces supply the Dirichlet data; sample times must align with the
    time step exactly (no interpolation). For t_final > R the data beyond
    the recorded horizon comes from the boundary reflection identities.
    """
    cfg = tr.cfg
    if cfg.T < 1:
        raise ConfigurationError(f"time reversal requires padding T >= 1, got T = {cfg.T}")
    if not (2.0 - _ALIGN_TOL <= fd.t_final <= 2.0 * cfg.T + _ALIGN_TOL):
        raise ConfigurationError(
            f"final time must lie in [2, {2 * cfg.T}] for a zero terminal state, "
            f"got {fd.t_final}"
        )
    n_per_unit = tr.samples_per_unit
    stride = fd.tau * n_per_unit
    if abs(stride - round(stride)) > _ALIGN_TOL or round(stride) < 1:
        raise DataError(
            f"trace sampling (1/{n_per_unit}) does not align with time step {fd.tau}"
        )
    stride = int(round(stride))
    n_steps = fd.n_steps
    if fd.t_final <= cfg.R + _ALIGN_TOL:
        bp_full = tr.f_plus
        bm_full = tr.f_minus
    else:
        # u(+1, t) = -F_minus(2R - t) and u(-1, t) = -F_plus(2R - t) on (R, 2R].
        bp_full = np.concatenate((tr.f_plus, -tr.f_minus[-2::-1]))
        bm_full = np.concatenate((tr.f_minus, -tr.f_plus[-2::-1]))
    need = n_steps * stride
    if need >= bp_full.size:
        raise DataError(
            f"trace covers {bp_full.size - 1} steps of 1/{n_per_unit}, "
            f"need {need} for t_final = {fd.t_final}"
        )
    bp = np.ascontiguousarray(bp_full[: need + 1 : stride])
    bm = np.ascontiguousarray(bm_full[: need + 1 : stride])
    nx = fd.n_cells + 1
    zero = np.zeros(nx)
    r2 = (fd.tau / fd.h) ** 2
    u0 = kernels.leapfrog_backward(zero, zero, bm, bp, r2)
    x = np.linspace(-1.0, 1.0, nx)
    return Reconstruction(x=x, values=u0, method="backward-fd")
