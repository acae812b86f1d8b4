"""Boundary-trace container, measurement noise, and the trace CSV format.

The on-disk format is LF-terminated text: `# key: value` metadata lines,
one `t,F_plus,F_minus` header, then one row per sample with full
round-trip float formatting, so write(read(data)) == data byte for byte.
"""

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import ConfigurationError, DataError
from .spectral import PaddingConfig

_GRID_RTOL = 1e-9
_NOISE_MODELS = ("none", "uniform", "gaussian")


@dataclass(frozen=True)
class BoundaryTrace:
    """Samples of u(+1, t) and u(-1, t) on the uniform grid t_i = i/N, 0 <= t_i <= R."""

    t: np.ndarray
    f_plus: np.ndarray
    f_minus: np.ndarray
    cfg: PaddingConfig
    meta: dict

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        fp = np.asarray(self.f_plus, dtype=float)
        fm = np.asarray(self.f_minus, dtype=float)
        for name, arr in (("t", t), ("F_plus", fp), ("F_minus", fm)):
            if arr.ndim != 1:
                raise DataError(f"{name} must be a 1-d array")
            if not np.all(np.isfinite(arr)):
                raise DataError(f"{name} contains non-finite entries")
        if not (t.size == fp.size == fm.size):
            raise DataError("trace arrays must share one length")
        if t.size < 3:
            raise DataError(f"trace needs at least 3 samples, got {t.size}")
        if abs(t[0]) > _GRID_RTOL:
            raise DataError(f"trace must start at t = 0, got {t[0]}")
        steps = np.diff(t)
        if np.any(steps <= 0.0):
            raise DataError("trace times must be strictly increasing")
        h = steps.mean()
        if np.max(np.abs(steps - h)) > _GRID_RTOL * h:
            raise DataError("trace times must be uniform")
        if abs(t[-1] - self.cfg.R) > _GRID_RTOL * self.cfg.R:
            raise DataError(
                f"trace must cover [0, {self.cfg.R}], ends at t = {t[-1]}"
            )
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "f_plus", fp)
        object.__setattr__(self, "f_minus", fm)

    @property
    def samples_per_unit(self) -> int:
        return int(round(1.0 / self.h))

    @property
    def h(self) -> float:
        return float((self.t[-1] - self.t[0]) / (self.t.size - 1))


@dataclass(frozen=True)
class NoiseSpec:
    """Additive noise: model in {none, uniform, gaussian}, level eps, RNG seed."""

    model: str = "none"
    eps: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.model not in _NOISE_MODELS:
            raise ConfigurationError(
                f"unknown noise model {self.model!r} (expected one of {_NOISE_MODELS})"
            )
        if not np.isfinite(self.eps) or self.eps < 0.0:
            raise ConfigurationError(f"noise level must be >= 0, got {self.eps}")
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise ConfigurationError(f"seed must be an integer, got {self.seed!r}")
        if self.seed < 0:
            raise ConfigurationError(f"seed must be non-negative, got {self.seed}")

    def describe(self) -> str:
        if self.model == "none" or self.eps == 0.0:
            return "none"
        return f"{self.model} eps={self.eps!r}"


def noise_draws(spec: NoiseSpec, n: int):
    """Raw unit-scale draws (d_plus, d_minus) for a trace of n samples.

    Depends only on (model, seed, n), never on eps: the applied
    perturbation is eps * amplitude * draw, so doubling eps doubles every
    perturbation bit for bit.
    """
    rng = np.random.default_rng(spec.seed)
    if spec.model == "uniform":
        return rng.uniform(-1.0, 1.0, n), rng.uniform(-1.0, 1.0, n)
    if spec.model == "gaussian":
        return rng.standard_normal(n), rng.standard_normal(n)
    raise ConfigurationError(f"noise model {spec.model!r} draws nothing")


def add_noise(tr: BoundaryTrace, spec: NoiseSpec) -> BoundaryTrace:
    """Perturb both traces with amplitude eps * max(sup|F_plus|, sup|F_minus|).

    eps = 0 (or model "none") returns the input values bit for bit; see
    noise_draws for the eps-linearity guarantee.
    """
    meta = dict(tr.meta)
    meta["noise"] = spec.describe()
    meta["seed"] = str(int(spec.seed))
    if spec.model == "none" or spec.eps == 0.0:
        return replace(tr, meta=meta)
    amplitude = max(np.max(np.abs(tr.f_plus)), np.max(np.abs(tr.f_minus)))
    d_plus, d_minus = noise_draws(spec, tr.t.size)
    scale = spec.eps * amplitude
    return replace(
        tr,
        f_plus=tr.f_plus + scale * d_plus,
        f_minus=tr.f_minus + scale * d_minus,
        meta=meta,
    )


_HEADER = "t,F_plus,F_minus"
_META_KEYS = ("T", "N", "profile", "source", "noise", "seed")


def write_trace(tr: BoundaryTrace) -> bytes:
    """Serialize a trace to CSV bytes (LF endings, lossless float text)."""
    lines = ["# pa1d trace v1"]
    meta = dict(tr.meta)
    meta.setdefault("T", str(tr.cfg.T))
    for key in _META_KEYS:
        if key in meta:
            lines.append(f"# {key}: {meta[key]}")
    for key in sorted(meta):
        if key not in _META_KEYS:
            lines.append(f"# {key}: {meta[key]}")
    lines.append(_HEADER)
    for ti, fp, fm in zip(tr.t, tr.f_plus, tr.f_minus):
        lines.append(f"{float(ti)!r},{float(fp)!r},{float(fm)!r}")
    return ("\n".join(lines) + "\n").encode("ascii")


def read_trace(data: bytes) -> BoundaryTrace:
    """Parse trace CSV bytes; errors name the offending 1-based line."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DataError(f"trace file is not valid UTF-8: {exc}") from None
    meta: dict = {}
    rows = []
    header_seen = False
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if header_seen:
                raise DataError(f"line {lineno}: metadata after the column header")
            body = line.lstrip("#").strip()
            if ":" in body:
                key, _, value = body.partition(":")
                meta[key.strip()] = value.strip()
            continue
        if not header_seen:
            if line != _HEADER:
                raise DataError(
                    f"line {lineno}: expected header {_HEADER!r}, got {line!r}"
                )
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise DataError(f"line {lineno}: expected 3 fields, got {len(parts)}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise DataError(f"line {lineno}: unparsable number in {line!r}") from None
    if not header_seen:
        raise DataError("missing column header line")
    if "T" not in meta:
        raise DataError("missing required metadata line '# T: <int>'")
    try:
        cfg = PaddingConfig(int(meta["T"]))
    except (ValueError, ConfigurationError) as exc:
        raise DataError(f"bad padding metadata: {exc}") from None
    arr = np.asarray(rows, dtype=float)
    if arr.size == 0:
        raise DataError("trace file contains no data rows")
    tr = BoundaryTrace(
        t=arr[:, 0], f_plus=arr[:, 1], f_minus=arr[:, 2], cfg=cfg, meta=meta
    )
    if "N" in meta:
        try:
            n_meta = int(meta["N"])
        except ValueError:
            raise DataError(f"bad samples-per-unit metadata: {meta['N']!r}") from None
        if n_meta != tr.samples_per_unit:
            raise DataError(
                f"metadata says N = {n_meta} but sampling step implies {tr.samples_per_unit}"
            )
    return tr


def save_trace(tr: BoundaryTrace, path) -> None:
    Path(path).write_bytes(write_trace(tr))


def load_trace(path) -> BoundaryTrace:
    p = Path(path)
    if not p.exists():
        raise DataError(f"trace file not found: {p}")
    return read_trace(p.read_bytes())
