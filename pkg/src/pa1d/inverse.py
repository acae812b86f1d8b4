"""Recovery of the initial displacement from two-point boundary traces.

Pipeline: reflect the x = -1 trace onto (R, 2R] to form the extended
trace on [0, 2R], take its cosine coefficients, divide by the per-mode
boundary weight sin((2+T) k pi / (2R)), drop the structurally degenerate
modes k = (T+1) n, synthesize on the observation interval, and (for even
T) rescale by (T+1)/T to undo the energy lost to the dropped modes.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import ConfigurationError, ResolutionError
from .observation import BoundaryTrace
from .spectral import (
    GridFunction,
    PaddingConfig,
    cosine_coefficient,
    simpson_weights,
    synthesize,
)
from .spectral import CoefficientVector

_DEGENERATE_TOL = 1e-9
_SIGNS = ("minus", "plus")


def assemble_extended_trace(tr: BoundaryTrace, sign: str = "minus") -> GridFunction:
    """Combine both traces into one function on [0, 2R].

    The first half is F_plus; the second half is -F_minus(2R - t)
    (sign="minus", the consistent reflection). sign="plus" applies
    +F_minus(2R - t) instead and exists only as a regression handle for
    the sign convention; it does not reconstruct.
    """
    if sign not in _SIGNS:
        raise ConfigurationError(f"unknown assembly sign {sign!r} (expected minus or plus)")
    r_pad = tr.cfg.R
    flip = -1.0 if sign == "minus" else 1.0
    t_ext = np.concatenate((tr.t, 2.0 * r_pad - tr.t[-2::-1]))
    v_ext = np.concatenate((tr.f_plus, flip * tr.f_minus[-2::-1]))
    return GridFunction(t_ext, v_ext)


def denominator(k: int, cfg: PaddingConfig) -> float:
    """Boundary weight sin((2+T) k pi / (2R)) of mode k at x = +1."""
    _require_padding(cfg)
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ConfigurationError(f"mode index must be a positive integer, got {k!r}")
    return float(np.sin((2 + cfg.T) * k * np.pi / (2.0 * cfg.R)))


def skipped_indices(K: int, cfg: PaddingConfig) -> Tuple[int, ...]:
    """Structurally degenerate modes k = (T+1) n within 1..K."""
    _require_padding(cfg)
    step = cfg.T + 1
    return tuple(range(step, K + 1, step))


def correction_factor(cfg: PaddingConfig) -> float:
    """Amplitude factor undoing the skipped modes: (T+1)/T for even T, 1 for odd T."""
    _require_padding(cfg)
    if cfg.T % 2 == 0:
        return (cfg.T + 1) / cfg.T
    return 1.0


@dataclass(frozen=True)
class ModeSet:
    """Recovered padded-interval coefficients for the kept (non-degenerate) modes."""

    k_values: np.ndarray
    coeffs: np.ndarray
    skipped: Tuple[int, ...]
    K: int
    cfg: PaddingConfig

    def full_vector(self) -> CoefficientVector:
        """Coefficients expanded to k = 1..K with zeros at skipped modes."""
        out = np.zeros(self.K)
        out[self.k_values - 1] = self.coeffs
        return CoefficientVector(out)


def recover_coefficients(
    ext: GridFunction, K: int, cfg: PaddingConfig
) -> ModeSet:
    """Cosine-analyze the extended trace and divide out the boundary weights.

    Modes in the structural skip set are excluded; so is any mode whose
    boundary weight falls below 1e-9 in magnitude (for even T the two sets
    coincide).
    """
    _require_padding(cfg)
    if not isinstance(K, (int, np.integer)) or K < 1:
        raise ConfigurationError(f"mode count K must be a positive integer, got {K}")
    if ext.x.size - 1 < 4 * K:
        raise ResolutionError(
            f"{ext.x.size} trace samples resolve at most K = {(ext.x.size - 1) // 4} "
            f"modes (8 per period); requested K = {K}"
        )
    skip = set(skipped_indices(K, cfg))
    # One Simpson pass for all modes at once (same weights every k).
    w = simpson_weights(ext.x.size, ext.h)
    weighted = w * ext.values / cfg.R
    k_all = np.arange(1, K + 1)
    cos_table = np.cos(np.outer(k_all, np.pi * ext.x / (2.0 * cfg.R)))
    f_hat = cos_table @ weighted
    kept = []
    coeffs = []
    for k in k_all:
        if int(k) in skip:
            continue
        den = denominator(int(k), cfg)
        if abs(den) < _DEGENERATE_TOL:
            continue
        kept.append(int(k))
        coeffs.append(f_hat[k - 1] / den)
    return ModeSet(
        k_values=np.asarray(kept, dtype=int),
        coeffs=np.asarray(coeffs, dtype=float),
        skipped=tuple(sorted(set(range(1, K + 1)) - set(kept))),
        K=int(K),
        cfg=cfg,
    )


@dataclass(frozen=True)
class Reconstruction:
    """Recovered initial displacement on the observation interval."""

    x: np.ndarray
    values: np.ndarray
    method: str
    mode_set: Optional[ModeSet] = None
    factor: Optional[float] = None


def reconstruct(
    tr: BoundaryTrace,
    K: int,
    sign: str = "minus",
    x_out: Optional[np.ndarray] = None,
) -> Reconstruction:
    """Full spectral reconstruction of a on [-1, 1] from a boundary trace."""
    cfg = tr.cfg
    ext = assemble_extended_trace(tr, sign=sign)
    modes = recover_coefficients(ext, K, cfg)
    if x_out is None:
        x_out = np.linspace(-1.0, 1.0, 401)
    x_out = np.asarray(x_out, dtype=float)
    factor = correction_factor(cfg)
    truncated = synthesize(modes.full_vector(), cfg, x_out)
    return Reconstruction(
        x=x_out,
        values=factor * truncated,
        method="spectral",
        mode_set=modes,
        factor=factor,
    )


def _require_padding(cfg: PaddingConfig) -> None:
    if cfg.T < 1:
        raise ConfigurationError(
            f"inversion requires padding T >= 1, got T = {cfg.T}"
        )
