"""Canonical systems, closed-form oracles, initial data and parameter scans.

Builders return fully validated SystemSpec objects for the model families
used throughout: the purely linear system, the two-component toy model with
cubic mixed, quartic and Burgers-type coupling terms, the three-term
quadratic-mixed/cubic/Burgers system with its coefficient threshold, the
classical two-component blow-up system, and scalar viscous Burgers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .nonlinearity import Monomial, NonlinearitySpec

__all__ = [
    "SystemSpec",
    "ScanRow",
    "ScanResult",
    "linear_gaussian_exact",
    "build_linear",
    "build_toy",
    "build_cas3",
    "cas3_threshold",
    "build_esclev",
    "build_burgers_scalar",
    "gaussian_initial_data",
    "scan_parameter",
    "SCENARIO_NAMES",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SystemSpec:
    """n diffusing components with per-component drift and polynomial coupling."""

    n: int
    d: tuple[float, ...]
    c: tuple[float, ...]
    f: NonlinearitySpec

    def __post_init__(self):
        if len(self.d) != self.n or len(self.c) != self.n:
            raise ValueError("d and c must have one entry per component")
        if any(di <= 0 for di in self.d):
            raise ValueError("diffusion coefficients must be positive")
        if self.f.n != self.n:
            raise ValueError("nonlinearity component count mismatch")


def linear_gaussian_exact(d: float, c: float, x, t) -> np.ndarray:
    """Drifting, spreading Gaussian exp(-(x+ct)^2/(4d(1+t)))/sqrt(1+t).

    Solves u_t = d u_xx + c u_x exactly for the initial profile exp(-x^2/(4d)).
    """
    if d <= 0:
        raise ValueError("diffusion coefficient must be positive")
    x = np.asarray(x, dtype=float)
    return np.exp(-((x + c * t) ** 2) / (4.0 * d * (1.0 + t))) / math.sqrt(1.0 + t)


def build_linear(n: int = 2, d=(1.0, 1.0), c=(1.0, -1.0)) -> SystemSpec:
    """Nonlinearity-free system; the Gaussian family above evolves it exactly."""
    return SystemSpec(
        n=n, d=tuple(float(v) for v in d), c=tuple(float(v) for v in c),
        f=NonlinearitySpec(n=n, terms=tuple(() for _ in range(n))),
    )


def build_toy(r: int, q: int, d1: float, d2: float, c1: float, c2: float) -> SystemSpec:
    """Two components with f1 = (2pi u1)^r u2 + (2pi)^(q-1) u2^q and
    f2 = 2pi dx(u1^2) + (2pi)^(q-1) u2^q, coefficients kept verbatim.

    r >= 2 is required: a quadratic mixed term (r = 1) falls outside the class
    the decay analysis can close its iteration on.  q >= 4 keeps the pure-u2
    powers irrelevant.
    """
    if r < 2:
        raise ValueError(
            "r must be >= 2: quadratic mixed-terms (r = 1) cannot be handled "
            "by the frequency-oscillation method this toy model illustrates"
        )
    if q < 4:
        raise ValueError("q must be >= 4 so the u2 power stays irrelevant")
    f1 = (
        Monomial(TWO_PI**r, (r, 1), (0, 0)),  # (2pi u1)^r u2
        Monomial(TWO_PI ** (q - 1), (0, q), (0, 0)),
    )
    f2 = (
        Monomial(TWO_PI, (2, 0), (0, 0), outer_divergence=True),
        Monomial(TWO_PI ** (q - 1), (0, q), (0, 0)),
    )
    return SystemSpec(
        n=2, d=(float(d1), float(d2)), c=(float(c1), float(c2)),
        f=NonlinearitySpec(n=2, terms=(f1, f2)),
    )


def build_cas3(
    d1: float, d2: float, c1: float, c2: float,
    kappa: float, beta: float, gamma: float,
) -> SystemSpec:
    """Two components with f1 = kappa*u1*u2 + beta*u2^3, f2 = gamma*dx(u2^2).

    Zero-coefficient terms are dropped.  Equal velocities are permitted here;
    they serve as negative controls for the classifier.
    """
    f1 = []
    if kappa != 0.0:
        f1.append(Monomial(float(kappa), (1, 1), (0, 0)))
    if beta != 0.0:
        f1.append(Monomial(float(beta), (0, 3), (0, 0)))
    f2 = []
    if gamma != 0.0:
        f2.append(Monomial(float(gamma), (0, 2), (0, 0), outer_divergence=True))
    return SystemSpec(
        n=2, d=(float(d1), float(d2)), c=(float(c1), float(c2)),
        f=NonlinearitySpec(n=2, terms=(tuple(f1), tuple(f2))),
    )


def cas3_threshold(kappa: float, gamma: float, c1: float, c2: float) -> float:
    """Coefficient threshold beta* = gamma*kappa/(c2 - c1); the favorable
    regime of the three-term system is beta - beta* < 0."""
    if c1 == c2:
        raise ValueError("threshold undefined for equal velocities")
    return gamma * kappa / (c2 - c1)


def build_esclev(p1: int, q1: int, p2: int, q2: int,
                 c1: float = 0.0, c2: float = 0.0) -> SystemSpec:
    """Two heat equations coupled by u1^p_i u2^q_i with p_i, q_i in {1, 2}
    and p_i + q_i = 3: the classical regime in which every positive,
    nontrivial initial condition blows up in finite time.

    Diffusion is fixed at (1, 1); velocities default to zero (the cited
    blow-up regime has no advection) but may be overridden for exploration.
    """
    for name, (p, q) in (("first", (p1, q1)), ("second", (p2, q2))):
        if p not in (1, 2) or q not in (1, 2) or p + q != 3:
            raise ValueError(
                f"{name} equation exponents ({p}, {q}) outside the blow-up "
                "regime p, q in {1, 2} with p + q = 3"
            )
    f1 = (Monomial(1.0, (p1, q1), (0, 0)),)
    f2 = (Monomial(1.0, (p2, q2), (0, 0)),)
    return SystemSpec(
        n=2, d=(1.0, 1.0), c=(float(c1), float(c2)),
        f=NonlinearitySpec(n=2, terms=(f1, f2)),
    )


def build_burgers_scalar(d: float = 1.0, c: float = 0.0) -> SystemSpec:
    """Scalar viscous Burgers equation u_t = d u_xx + c u_x + dx(u^2)."""
    f = (Monomial(1.0, (2,), (0,), outer_divergence=True),)
    return SystemSpec(n=1, d=(float(d),), c=(float(c),),
                      f=NonlinearitySpec(n=1, terms=(f,)))


def gaussian_initial_data(
    n: int, amplitudes, widths, centers, grid
) -> np.ndarray:
    """Fields A_i * exp(-(x - x0_i)^2 / (4 sigma_i)), one row per component.

    Centers must keep a 10% margin from the periodic seam at +-L/2 so that
    the truncation of the line stays honest.
    """
    amplitudes = np.broadcast_to(np.asarray(amplitudes, dtype=float), (n,))
    widths = np.broadcast_to(np.asarray(widths, dtype=float), (n,))
    centers = np.broadcast_to(np.asarray(centers, dtype=float), (n,))
    if np.any(widths <= 0):
        raise ValueError("widths must be positive")
    limit = 0.4 * grid.length
    if np.any(np.abs(centers) > limit):
        raise ValueError(
            f"centers must stay within +-{limit} "
            f"(10% margin from the seam at +-{grid.length / 2})"
        )
    x = grid.x
    return amplitudes[:, None] * np.exp(
        -((x[None, :] - centers[:, None]) ** 2) / (4.0 * widths[:, None])
    )


# ---------------------------------------------------------------------------
# Parameter scans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    value: float
    status_kind: str
    status_t: float | None
    sup_u_slope: float | None  # fitted on completed runs
    blowup_time: float | None
    eta_max: float


@dataclass(frozen=True)
class ScanResult:
    parameter: str
    rows: tuple[ScanRow, ...]


SCENARIO_NAMES = ("linear", "toy", "cas3", "esclev", "burgers-scalar", "custom")


def scan_parameter(
    builder,
    base_kwargs: dict,
    parameter: str,
    values,
    grid,
    config,
    init_fields: np.ndarray,
    fit_window: tuple[float, float] | None = None,
) -> ScanResult:
    """Rebuild and rerun the scenario once per parameter value.

    Each row is an independent, deterministic run; rows report the terminal
    status, the fitted sup-norm slope (completed runs with enough samples),
    the blow-up time (terminated runs) and the maximum of eta.  Outcomes are
    reported, never asserted: the theory provides a dichotomy condition, not
    monotonicity.
    """
    from .integrator import run_simulation  # lazy: scenarios stays import-light
    from .diagnostics import fit_decay_rate

    if parameter not in base_kwargs:
        raise ValueError(
            f"unknown parameter {parameter!r}; scannable: {sorted(base_kwargs)}"
        )
    rows = []
    for value in values:
        kwargs = dict(base_kwargs)
        kwargs[parameter] = value
        system = builder(**kwargs)
        record = run_simulation(system, init_fields, grid, config)
        slope = None
        blowup_time = None
        if record.status.is_completed:
            times = record.times
            series = np.max(np.stack([rec.sup_u for rec in record.snapshots]), axis=1)
            window = fit_window or (config.t_end / 4.0, config.t_end)
            try:
                slope, _ = fit_decay_rate(times, series, window)
            except ValueError:
                slope = None
        elif record.status.kind == "blowup":
            blowup_time = record.status.t
        eta_max = max(
            (rec.eta for rec in record.snapshots if math.isfinite(rec.eta)),
            default=math.nan,
        )
        rows.append(
            ScanRow(
                value=float(value),
                status_kind=record.status.kind,
                status_t=record.status.t,
                sup_u_slope=slope,
                blowup_time=blowup_time,
                eta_max=eta_max,
            )
        )
    return ScanResult(parameter=parameter, rows=tuple(rows))
