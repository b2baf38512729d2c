"""Figure-reproduction sweeps and the region report.

Every ``run_*`` function is a pure function of its :class:`ScenarioConfig`
and returns a :class:`SweepResult` that serializes to CSV. Monte Carlo
trials draw from independent streams keyed by ``(seed, trial, area)``, so
results do not depend on how trials are spread over workers.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import Any, Iterable

import numpy as np

from . import __version__
from .channel import ChannelModelKind, LinkBudget, array_response
from .errors import ConfigError
from .geometry import SPEED_OF_LIGHT, ArrayConfig, UserLocation
from .multiuser import correlation, mrc_sinrs
from .regions import classify_region, critical_distance, power_ratio, rayleigh_distance
from .single_user import snr_closed_form, snr_exact, snr_limit, snr_ratio, snr_upw

# Sum-rate user areas: (r_min, r_max) in m and (theta_min, theta_max) in degrees.
FIG7_AREAS = (((100.0, 200.0), (-45.0, 45.0)), ((1000.0, 1200.0), (-45.0, 45.0)))


def to_db(x):
    return 10 * np.log10(x)


@dataclass(frozen=True)
class Sweep:
    start: float
    stop: float
    points: int
    log: bool = False

    def __post_init__(self):
        if not self.start < self.stop:
            raise ConfigError(f"sweep start {self.start} must be below stop {self.stop}")
        if int(self.points) != self.points or self.points < 2:
            raise ConfigError(f"sweep needs at least 2 points, got {self.points}")
        if self.log and not self.start > 0:
            raise ConfigError("log sweep needs a positive start")

    @classmethod
    def parse(cls, text: str) -> "Sweep":
        """Parse ``start:stop:points[:log]``."""
        parts = text.strip().split(":")
        if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "lin")):
            raise ConfigError(f"bad sweep {text!r}; expected start:stop:points[:log]")
        try:
            start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"bad sweep {text!r}: {exc}") from None
        return cls(start, stop, points, len(parts) == 4 and parts[3] == "log")

    def values(self) -> np.ndarray:
        if self.log:
            return np.logspace(math.log10(self.start), math.log10(self.stop), self.points)
        return np.linspace(self.start, self.stop, self.points)

    def integer_values(self) -> np.ndarray:
        """Rounded, de-duplicated values for integer-valued sweeps such as ``M``."""
        vals = np.unique(np.rint(self.values()).astype(np.int64))
        if vals[0] < 1:
            raise ConfigError("integer sweep must start at 1 or above")
        return vals

    def __str__(self):
        text = f"{self.start:g}:{self.stop:g}:{self.points}"
        return text + ":log" if self.log else text


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters of one experiment run.

    Fields left at ``None`` take the figure's own default. ``spacing=None``
    means half a wavelength; ``wavelength=None`` derives it from
    ``carrier_freq``.
    """

    carrier_freq: float = 2.4e9
    wavelength: float | None = None
    spacing: float | None = None
    ref_snr_db: float = 50.0
    elements: tuple[int, ...] | None = None
    user_r: tuple[float, ...] | None = None
    user_theta_deg: tuple[float, ...] | None = None
    alpha: float = 0.8
    seed: int | None = None
    trials: int = 100
    users: int = 10
    sweep: Sweep | None = None
    workers: int = 1

    def __post_init__(self):
        for name in ("carrier_freq", "alpha"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.wavelength is not None and not self.wavelength > 0:
            raise ConfigError("wavelength must be positive")
        if self.spacing is not None and not self.spacing > 0:
            raise ConfigError("spacing must be positive")
        if self.elements is not None and any(int(m) != m or m < 1 for m in self.elements):
            raise ConfigError(f"element counts must be positive integers, got {self.elements}")
        if self.user_r is not None and any(not r > 0 for r in self.user_r):
            raise ConfigError(f"user distances must be positive, got {self.user_r}")
        if self.user_theta_deg is not None and any(abs(t) > 90 for t in self.user_theta_deg):
            raise ConfigError(f"user angles must lie in [-90, 90] degrees, got {self.user_theta_deg}")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.trials < 1 or self.users < 1 or self.workers < 1:
            raise ConfigError("trials, users and workers must be at least 1")

    @property
    def lam(self) -> float:
        return self.wavelength if self.wavelength is not None else SPEED_OF_LIGHT / self.carrier_freq

    def array(self, num_elements: int) -> ArrayConfig:
        d = self.spacing if self.spacing is not None else self.lam / 2
        return ArrayConfig(int(num_elements), d, self.lam)

    @property
    def budget(self) -> LinkBudget:
        return LinkBudget.from_db(self.ref_snr_db)

    def echo(self) -> list[tuple[str, str]]:
        out = []
        for f in fields(self):
            value = getattr(self, f.name)
            # worker count never changes results, so it stays out of the output
            if value is None or f.name == "workers":
                continue
            if isinstance(value, tuple):
                value = ",".join(f"{v:g}" for v in value)
            out.append((f.name, str(value)))
        return out


@dataclass
class SweepResult:
    columns: list[str]
    rows: np.ndarray
    metadata: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self):
        self.rows = np.atleast_2d(np.asarray(self.rows, dtype=float))
        if self.rows.shape[1] != len(self.columns):
            raise ValueError(f"{self.rows.shape[1]} values per row for {len(self.columns)} columns")

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key, value in self.metadata:
            buf.write(f"# {key}={value}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format(float(v), ".17g") for v in row) + "\n")
        return buf.getvalue()

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())


def read_csv(text: str) -> SweepResult:
    """Inverse of :meth:`SweepResult.to_csv`."""
    metadata, lines = [], []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            metadata.append((key, value))
        elif line.strip():
            lines.append(line)
    columns = lines[0].split(",")
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return SweepResult(columns, rows.reshape(-1, len(columns)), metadata)


def _result(figure: str, cfg: ScenarioConfig, columns, rows) -> SweepResult:
    meta = [("tool", f"xlmimo {__version__}"), ("figure", figure)]
    meta += cfg.echo()
    return SweepResult(columns, np.column_stack(rows), meta)


def _first(values, default):
    return values[0] if values else default


def _label(x: float) -> str:
    return f"{x:g}"


def run_fig2(config: ScenarioConfig) -> SweepResult:
    """SNR versus element count: summation, closed form, plane wave, and limit."""
    cfg = replace(
        config,
        sweep=config.sweep or Sweep(1, 1e5, 60, log=True),
        user_r=config.user_r or (15.0,),
        user_theta_deg=config.user_theta_deg or (0.0,),
    )
    u = UserLocation.from_degrees(cfg.user_r[0], cfg.user_theta_deg[0])
    budget = cfg.budget
    ms = cfg.sweep.integer_values()
    cols = [[], [], [], []]
    for m in ms:
        arr = cfg.array(m)
        cols[0].append(snr_exact(arr, u, budget))
        cols[1].append(snr_closed_form(arr, u, budget))
        cols[2].append(snr_upw(arr, u, budget))
        cols[3].append(snr_limit(arr, u, budget))
    return _result(
        "fig2",
        cfg,
        ["M", "snr_exact_db", "snr_closed_db", "snr_upw_db", "snr_limit_db"],
        [ms] + [to_db(np.array(c)) for c in cols],
    )


def run_fig3(config: ScenarioConfig) -> SweepResult:
    """Closed-form and plane-wave SNR versus link distance for several directions."""
    cfg = replace(
        config,
        sweep=config.sweep or Sweep(1, 1e4, 200, log=True),
        elements=config.elements or (2048,),
        user_theta_deg=config.user_theta_deg or (0.0, 86.0),
    )
    arr = cfg.array(cfg.elements[0])
    budget = cfg.budget
    rs = cfg.sweep.values()
    columns, data = ["r_m"], [rs]
    for theta in cfg.user_theta_deg:
        columns.append(f"snr_closed_db_theta{_label(theta)}")
        data.append(to_db(np.array(
            [snr_closed_form(arr, UserLocation.from_degrees(r, theta), budget) for r in rs]
        )))
    columns.append("snr_upw_db")
    data.append(to_db(np.array([snr_upw(arr, UserLocation(r, 0.0), budget) for r in rs])))
    return _result("fig3", cfg, columns, data)


def run_fig4(config: ScenarioConfig) -> SweepResult:
    """SNR ratio versus user direction for several link distances."""
    cfg = replace(
        config,
        sweep=config.sweep or Sweep(-89.9, 89.9, 1799),
        elements=config.elements or (512,),
        user_r=config.user_r or (50.0, 100.0, 200.0),
    )
    arr = cfg.array(cfg.elements[0])
    # snap grid to 1e-12 deg so a symmetric grid hits 0 exactly
    thetas = np.round(cfg.sweep.values(), 12)
    if np.any(np.abs(thetas) > 90):
        raise ConfigError("direction sweep must stay within [-90, 90] degrees")
    columns, data = ["theta_deg"], [thetas]
    for r in cfg.user_r:
        columns.append(f"snr_ratio_r{_label(r)}")
        data.append(np.array([snr_ratio(arr, UserLocation.from_degrees(r, t)) for t in thetas]))
    return _result("fig4", cfg, columns, data)


def run_fig6(config: ScenarioConfig) -> SweepResult:
    """Correlation between a fixed user and a second user moved away along the same direction."""
    cfg = replace(
        config,
        sweep=config.sweep or Sweep(0, 300, 301),
        elements=config.elements or (512, 1024),
        user_r=config.user_r or (150.0,),
        user_theta_deg=config.user_theta_deg or (0.0,),
    )
    r1, theta = cfg.user_r[0], cfg.user_theta_deg[0]
    deltas = cfg.sweep.values()
    if deltas[0] < 0:
        raise ConfigError("distance separation must be non-negative")
    u1 = UserLocation.from_degrees(r1, theta)

    def rho_column(num_elements, kind):
        arr = cfg.array(num_elements)
        a1 = array_response(arr, u1, kind=kind)
        return np.array([
            correlation(a1, array_response(arr, UserLocation.from_degrees(r1 + dl, theta), kind=kind))
            for dl in deltas
        ])

    columns, data = ["delta_m"], [deltas]
    for m in cfg.elements:
        columns.append(f"rho_exact_M{m}")
        data.append(rho_column(m, ChannelModelKind.EXACT))
    columns.append("rho_upw")
    data.append(rho_column(max(cfg.elements), ChannelModelKind.FAR_FIELD_UPW))
    return _result("fig6", cfg, columns, data)


def _fig7_trial(args) -> np.ndarray:
    """Sum rates of one placement draw: shape ``(len(ms), 2 * areas)``."""
    cfg, ms, trial = args
    powers = np.full(cfg.users, cfg.budget.tx_snr)
    out = np.empty((len(ms), 2 * len(FIG7_AREAS)))
    for a, ((r_lo, r_hi), (t_lo, t_hi)) in enumerate(FIG7_AREAS):
        rng = np.random.default_rng([cfg.seed, trial, a])
        rs = rng.uniform(r_lo, r_hi, cfg.users)
        thetas = rng.uniform(math.radians(t_lo), math.radians(t_hi), cfg.users)
        users = [UserLocation(r, t) for r, t in zip(rs, thetas)]
        for j, m in enumerate(ms):
            arr = cfg.array(m)
            for c, kind in enumerate((ChannelModelKind.EXACT, ChannelModelKind.FAR_FIELD_UPW)):
                h = np.array([array_response(arr, u, kind=kind).entries for u in users])
                out[j, 2 * a + c] = np.sum(np.log2(1 + mrc_sinrs(h, powers)))
    return out


def run_fig7(config: ScenarioConfig) -> SweepResult:
    """Mean MRC sum rate versus element count for two user areas."""
    if config.seed is None:
        raise ConfigError("fig7 needs an explicit seed")
    cfg = replace(config, sweep=config.sweep or Sweep(16, 8192, 10, log=True))
    ms = cfg.sweep.integer_values()
    jobs = [(cfg, ms, t) for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            per_trial = list(pool.map(_fig7_trial, jobs))
    else:
        per_trial = [_fig7_trial(j) for j in jobs]
    total = np.zeros_like(per_trial[0])
    for block in per_trial:  # fixed summation order
        total += block
    mean = total / cfg.trials
    columns = ["M"]
    for a in range(1, len(FIG7_AREAS) + 1):
        columns += [f"rate_exact_area{a}", f"rate_upw_area{a}"]
    return _result("fig7", cfg, columns, [ms] + list(mean.T))


def classify_cli(config: ScenarioConfig) -> list[tuple[str, Any]]:
    """Thresholds and field region of one user, as ordered key/value pairs."""
    if not config.elements or not config.user_r:
        raise ConfigError("classify needs --elements and --user-r-m")
    arr = config.array(config.elements[0])
    u = UserLocation.from_degrees(config.user_r[0], _first(config.user_theta_deg, 0.0))
    rayl = rayleigh_distance(arr)
    crit = critical_distance(arr, config.alpha)
    region = classify_region(arr, u, config.alpha)
    return [
        ("elements", arr.num_elements),
        ("spacing_m", arr.spacing),
        ("wavelength_m", arr.wavelength),
        ("aperture_m", arr.aperture),
        ("alpha", config.alpha),
        ("rayleigh_m", rayl),
        ("critical_m", crit),
        ("critical_over_D", crit / arr.aperture),
        ("user_r_m", u.r),
        ("user_theta_deg", math.degrees(u.theta)),
        ("power_ratio", power_ratio(arr, u)),
        ("region", region.value),
    ]


def format_report(pairs: Iterable[tuple[str, Any]]) -> str:
    lines = []
    for key, value in pairs:
        if isinstance(value, float):
            value = format(value, ".12g")
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


RUNNERS = {
    "fig2": run_fig2,
    "fig3": run_fig3,
    "fig4": run_fig4,
    "fig6": run_fig6,
    "fig7": run_fig7,
}
