"""End-to-end experiment pipeline, error metrics, sweeps, and file writers.

A pipeline run is: forward-simulate boundary traces for a named profile,
perturb them per the noise spec, reconstruct with one or more methods,
and score each reconstruction against the true profile on a shared
output grid. Sweeps repeat the pipeline while varying one parameter.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from . import baselines, forward, inverse
from .errors import ConfigurationError, DataError, Pa1dError
from .observation import BoundaryTrace, NoiseSpec, add_noise, write_trace
from .spectral import PaddingConfig, simpson_weights

_METHODS = ("spectral", "lsq", "backward-fd")
_NODE_TOL = 1e-9


def rel_l2(x: np.ndarray, rec: np.ndarray, truth: np.ndarray) -> float:
    """Relative L2 error ||rec - truth|| / ||truth|| by Simpson quadrature on x."""
    x = np.asarray(x, dtype=float)
    w = simpson_weights(x.size, float((x[-1] - x[0]) / (x.size - 1)))
    num = float(w @ (rec - truth) ** 2)
    den = float(w @ truth**2)
    if den <= 0.0:
        raise ConfigurationError("reference function is identically zero")
    return float(np.sqrt(num / den))


def l_inf(rec: np.ndarray, truth: np.ndarray) -> float:
    """Largest pointwise error max |rec - truth|."""
    return float(np.max(np.abs(rec - truth)))


@dataclass(frozen=True)
class ExperimentConfig:
    """Every knob of one pipeline run; unknown JSON keys are rejected."""

    profile: str = "smooth"
    T: int = 2
    M: int = 400
    K: int = 50
    N: int = 100
    source: str = "spectral"
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    methods: Tuple[str, ...] = ("spectral",)
    sign: str = "minus"
    output_points: int = 401
    quad_points: Optional[int] = None
    fd: Optional[baselines.FdConfig] = None
    workers: int = 1

    def __post_init__(self):
        forward.profile_by_name(self.profile)
        for name, value in (("T", self.T), ("M", self.M), ("K", self.K), ("N", self.N)):
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise ConfigurationError(f"{name} must be an integer, got {value!r}")
        if self.T < 0:
            raise ConfigurationError(f"T must be >= 0, got {self.T}")
        for name, value in (("M", self.M), ("K", self.K), ("N", self.N)):
            if value < 1:
                raise ConfigurationError(f"{name} must be >= 1, got {value}")
        if self.source not in ("spectral", "oracle"):
            raise ConfigurationError(f"unknown trace source {self.source!r}")
        if self.sign not in ("minus", "plus"):
            raise ConfigurationError(f"unknown assembly sign {self.sign!r}")
        if not self.methods:
            raise ConfigurationError("at least one reconstruction method is required")
        for m in self.methods:
            if m not in _METHODS:
                raise ConfigurationError(
                    f"unknown method {m!r} (expected one of {_METHODS})"
                )
        if len(set(self.methods)) != len(self.methods):
            raise ConfigurationError("duplicate reconstruction methods")
        if self.output_points < 3:
            raise ConfigurationError(
                f"output grid needs at least 3 points, got {self.output_points}"
            )
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")
        object.__setattr__(self, "methods", tuple(self.methods))

    @property
    def padding(self) -> PaddingConfig:
        return PaddingConfig(self.T)

    def to_dict(self) -> dict:
        d = {
            "profile": self.profile,
            "T": self.T,
            "M": self.M,
            "K": self.K,
            "N": self.N,
            "source": self.source,
            "noise": {
                "model": self.noise.model,
                "eps": self.noise.eps,
                "seed": self.noise.seed,
            },
            "methods": list(self.methods),
            "sign": self.sign,
            "output_points": self.output_points,
            "quad_points": self.quad_points,
            "workers": self.workers,
        }
        if self.fd is not None:
            d["fd"] = {"h": self.fd.h, "tau": self.fd.tau, "t_final": self.fd.t_final}
        return d

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigurationError("config must be a JSON object")
        known = {
            "profile", "T", "M", "K", "N", "source", "noise", "methods",
            "sign", "output_points", "quad_points", "fd", "workers",
        }
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {', '.join(unknown)}")
        kwargs = dict(raw)
        if "noise" in kwargs:
            kwargs["noise"] = _noise_from_dict(kwargs["noise"])
        if "fd" in kwargs and kwargs["fd"] is not None:
            kwargs["fd"] = _fd_from_dict(kwargs["fd"])
        if "methods" in kwargs:
            if not isinstance(kwargs["methods"], (list, tuple)):
                raise ConfigurationError("methods must be a list of method names")
            kwargs["methods"] = tuple(kwargs["methods"])
        return cls(**kwargs)


def _noise_from_dict(raw) -> NoiseSpec:
    if not isinstance(raw, dict):
        raise ConfigurationError("noise must be an object with model/eps/seed")
    unknown = sorted(set(raw) - {"model", "eps", "seed"})
    if unknown:
        raise ConfigurationError(f"unknown noise keys: {', '.join(unknown)}")
    return NoiseSpec(**raw)


def _fd_from_dict(raw) -> baselines.FdConfig:
    if not isinstance(raw, dict):
        raise ConfigurationError("fd must be an object with h/tau/t_final")
    unknown = sorted(set(raw) - {"h", "tau", "t_final"})
    if unknown:
        raise ConfigurationError(f"unknown fd keys: {', '.join(unknown)}")
    return baselines.FdConfig(**raw)


@dataclass(frozen=True)
class PipelineResult:
    """Everything one pipeline run produced."""

    cfg: ExperimentConfig
    x_out: np.ndarray
    truth: np.ndarray
    trace: BoundaryTrace
    observed: BoundaryTrace
    recons: dict
    report: dict


def _project(recon: inverse.Reconstruction, x_out: np.ndarray) -> np.ndarray:
    # Reuse exact nodes when the reconstruction grid contains x_out;
    # fall back to linear interpolation otherwise.
    if recon.x.size == x_out.size and np.max(np.abs(recon.x - x_out)) <= _NODE_TOL:
        return recon.values
    pos = np.searchsorted(recon.x, x_out - _NODE_TOL)
    pos = np.minimum(pos, recon.x.size - 1)
    if np.max(np.abs(recon.x[pos] - x_out)) <= _NODE_TOL:
        return recon.values[pos]
    return np.interp(x_out, recon.x, recon.values)


def default_fd_for(cfg: ExperimentConfig) -> baselines.FdConfig:
    """FD discretization aligned with the trace sampling: h = tau = 1/N."""
    step = 1.0 / cfg.N
    return baselines.FdConfig(
        h=step, tau=step, t_final=float(min(cfg.T + 1, 2 * cfg.T))
    )


def _run_methods(observed, profile, cfg: ExperimentConfig, report, timings):
    x_out = np.linspace(-1.0, 1.0, cfg.output_points)
    truth = profile.a(x_out)
    recons = {}
    metrics = {}
    for method in cfg.methods:
        t0 = time.perf_counter()
        if method == "spectral":
            rec = inverse.reconstruct(observed, cfg.K, sign=cfg.sign, x_out=x_out)
            report["modes"] = {
                "K": cfg.K,
                "kept": [int(k) for k in rec.mode_set.k_values],
                "skipped": [int(k) for k in rec.mode_set.skipped],
                "correction_factor": rec.factor,
            }
        elif method == "lsq":
            rec, lsq_report = baselines.lsq_reconstruct(observed, cfg.K, x_out=x_out)
            report["lsq"] = {
                "K": lsq_report.K,
                "rank": lsq_report.rank,
                "rank_deficient": lsq_report.rank_deficient,
                "condition_normal": lsq_report.condition_normal,
            }
        else:
            fd = cfg.fd if cfg.fd is not None else default_fd_for(cfg)
            rec = baselines.backward_fd(observed, fd)
        timings[f"reconstruct_{method}"] = (time.perf_counter() - t0) * 1e3
        recons[method] = rec
        values = _project(rec, x_out)
        metrics[method] = {
            "rel_l2": rel_l2(x_out, values, truth),
            "l_inf": l_inf(values, truth),
        }
    report["metrics"] = metrics
    if "spectral" in recons:
        report["coefficient_errors"] = _coefficient_errors(
            profile, recons["spectral"].mode_set, cfg.padding
        )
    return x_out, truth, recons


def run_pipeline(cfg: ExperimentConfig) -> PipelineResult:
    """Simulate, observe, reconstruct, and score one experiment."""
    timings: dict = {}
    profile = forward.profile_by_name(cfg.profile)
    pad = cfg.padding

    t0 = time.perf_counter()
    trace = forward.simulate_traces(
        profile, pad, cfg.N, source=cfg.source, M=cfg.M, quad_points=cfg.quad_points
    )
    timings["forward"] = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    observed = add_noise(trace, cfg.noise)
    timings["observe"] = (time.perf_counter() - t0) * 1e3

    report: dict = {"schema": "pa1d-report v1", "config": cfg.to_dict()}
    x_out, truth, recons = _run_methods(observed, profile, cfg, report, timings)
    report["timings_ms"] = timings
    return PipelineResult(
        cfg=cfg,
        x_out=x_out,
        truth=truth,
        trace=trace,
        observed=observed,
        recons=recons,
        report=report,
    )


def reconstruct_trace(
    tr: BoundaryTrace,
    K: int,
    methods: Tuple[str, ...] = ("spectral",),
    sign: str = "minus",
    output_points: int = 401,
    fd: Optional[baselines.FdConfig] = None,
) -> PipelineResult:
    """Reconstruct from an existing (possibly noisy) trace and score it.

    The true profile is looked up from the trace metadata so the result
    can carry an a_true column and error metrics.
    """
    name = tr.meta.get("profile", "")
    try:
        profile = forward.profile_by_name(name)
    except ConfigurationError:
        raise DataError(
            f"trace metadata names no known profile (got {name!r}); "
            "cannot tabulate the reference solution"
        ) from None
    cfg = ExperimentConfig(
        profile=name,
        T=tr.cfg.T,
        K=K,
        N=tr.samples_per_unit,
        source=tr.meta.get("source", "spectral"),
        methods=tuple(methods),
        sign=sign,
        output_points=output_points,
        fd=fd,
    )
    timings: dict = {}
    report: dict = {
        "schema": "pa1d-report v1",
        "config": cfg.to_dict(),
        "trace_meta": dict(tr.meta),
    }
    x_out, truth, recons = _run_methods(tr, profile, cfg, report, timings)
    report["timings_ms"] = timings
    return PipelineResult(
        cfg=cfg,
        x_out=x_out,
        truth=truth,
        trace=tr,
        observed=tr,
        recons=recons,
        report=report,
    )


def _coefficient_errors(profile, modes: inverse.ModeSet, pad: PaddingConfig) -> dict:
    n = max(8 * modes.K + 1, 2049)
    if n % 2 == 0:
        n += 1
    a_ref, _ = forward.expand_profile(profile, pad, modes.K, quad_points=n)
    errs = np.abs(modes.coeffs - a_ref.values[modes.k_values - 1])
    return {
        "k": [int(k) for k in modes.k_values],
        "abs_error": [float(e) for e in errs],
    }


def write_recon_csv(result: PipelineResult) -> bytes:
    """Recon CSV: x, a_true, then one column per reconstruction method."""
    cfg = result.cfg
    meta = result.observed.meta
    lines = [
        "# pa1d recon v1",
        f"# profile: {cfg.profile}",
        f"# T: {cfg.T}",
        f"# K: {cfg.K}",
        f"# N: {cfg.N}",
        f"# noise: {meta.get('noise', cfg.noise.describe())}",
        f"# seed: {meta.get('seed', cfg.noise.seed)}",
        f"# methods: {','.join(cfg.methods)}",
    ]
    columns = [result.truth]
    header = "x,a_true"
    for method in cfg.methods:
        header += f",a_rec_{method.replace('-', '_')}"
        columns.append(_project(result.recons[method], result.x_out))
    lines.append(header)
    for i, xi in enumerate(result.x_out):
        row = [f"{float(xi)!r}"] + [f"{float(col[i])!r}" for col in columns]
        lines.append(",".join(row))
    return ("\n".join(lines) + "\n").encode("ascii")


def write_report_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


@dataclass(frozen=True)
class SweepRow:
    param_value: float
    rel_l2: Optional[float]
    l_inf: Optional[float]
    runtime_ms: float
    status: str


_SWEEP_PARAMS = ("K", "noise", "N")


def run_sweep(cfg: ExperimentConfig, param: str, values) -> list:
    """Run the pipeline once per parameter value; failures become error rows.

    The swept config must name exactly one reconstruction method so each
    row has an unambiguous metric. Points run concurrently when
    cfg.workers > 1; row order always follows the input values.
    """
    if param not in _SWEEP_PARAMS:
        raise ConfigurationError(
            f"unknown sweep parameter {param!r} (expected one of {_SWEEP_PARAMS})"
        )
    if len(cfg.methods) != 1:
        raise ConfigurationError(
            "sweeps require exactly one reconstruction method in the config"
        )
    if param == "noise" and cfg.noise.model == "none":
        raise ConfigurationError(
            "noise sweep requires a noise model (uniform or gaussian) in the config"
        )
    values = list(values)
    if not values:
        raise ConfigurationError("sweep needs at least one parameter value")
    method = cfg.methods[0]

    def one(value) -> SweepRow:
        t0 = time.perf_counter()
        try:
            run_cfg = _override(cfg, param, value)
            result = run_pipeline(run_cfg)
            m = result.report["metrics"][method]
            return SweepRow(
                param_value=float(value),
                rel_l2=m["rel_l2"],
                l_inf=m["l_inf"],
                runtime_ms=(time.perf_counter() - t0) * 1e3,
                status="ok",
            )
        except Pa1dError as exc:
            return SweepRow(
                param_value=float(value),
                rel_l2=None,
                l_inf=None,
                runtime_ms=(time.perf_counter() - t0) * 1e3,
                status=f"error:{type(exc).__name__}",
            )

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(one, values))
    return [one(v) for v in values]


def _override(cfg: ExperimentConfig, param: str, value) -> ExperimentConfig:
    if param == "K":
        return replace(cfg, K=_as_int(param, value))
    if param == "N":
        return replace(cfg, N=_as_int(param, value))
    eps = float(value)
    return replace(cfg, noise=replace(cfg.noise, eps=eps))


def _as_int(param: str, value) -> int:
    iv = int(value)
    if iv != float(value):
        raise ConfigurationError(f"sweep over {param} needs integer values, got {value!r}")
    return iv


def write_sweep_csv(param: str, rows) -> bytes:
    lines = ["# pa1d sweep v1", f"# param: {param}"]
    lines.append("param_value,rel_l2,l_inf,runtime_ms,status")
    for r in rows:
        rl = "" if r.rel_l2 is None else repr(float(r.rel_l2))
        li = "" if r.l_inf is None else repr(float(r.l_inf))
        lines.append(
            f"{float(r.param_value)!r},{rl},{li},{float(r.runtime_ms)!r},{r.status}"
        )
    return ("\n".join(lines) + "\n").encode("ascii")


def save_bytes(data: bytes, path) -> None:
    Path(path).write_bytes(data)
