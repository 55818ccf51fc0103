"""Quantities tracked along a run: sup norms, co-moving weighted Fourier
norms, the temporal weight eta, pointwise decay envelopes and fitted decay
exponents.

All k-space norms are taken of the co-moving coefficients w_i = exp(-i c_i k t) v_i.
The frequency derivative d/dk w_i is obtained by transforming (-i x) times the
co-moving physical field, which is spectrally exact while the field stays away
from the periodic seam.  With the transform convention of :mod:`rdasim.spectral`
the sup norm of u_i is dominated by the L1 norm of w_i with constant 1/(2*pi):

    sup_x |u_i| <= ||w_i||_1 / (2*pi),

asserted (with rounding slack) on every snapshot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import (
    Grid,
    SpectralState,
    forward_transform,
    inverse_transform,
    comoving_shift,
    boundary_mass,
)

__all__ = [
    "SUP_FOURIER_CONSTANT",
    "DiagnosticsRecord",
    "WeightedNorms",
    "weighted_fourier_norms",
    "compute_record",
    "eta",
    "eta_components",
    "pointwise_envelope",
    "fit_decay_rate",
    "normal_form_transform",
    "linear_exponent_suite",
]

SUP_FOURIER_CONSTANT = 1.0 / (2.0 * math.pi)


@dataclass
class WeightedNorms:
    """Per-component weighted L1/L2 norms of the co-moving coefficients.

    n00 = ||w||_1, n10 = || |k| w ||_1, n01 = ||dk w||_1,
    n11 = || |k| dk w ||_1, n10_2 = || k w ||_2.
    """

    n00: np.ndarray
    n10: np.ndarray
    n01: np.ndarray
    n11: np.ndarray
    n10_2: np.ndarray
    contaminated: bool = False


@dataclass
class DiagnosticsRecord:
    t: float
    sup_u: np.ndarray
    sup_du: np.ndarray
    n00: np.ndarray
    n10: np.ndarray
    n01: np.ndarray
    n11: np.ndarray
    n10_2: np.ndarray
    eta_components: np.ndarray  # the five weighted terms, summed over components
    envelope_u: np.ndarray
    envelope_du: np.ndarray
    contaminated: bool = False
    eta: float = field(default=math.nan)  # running supremum, filled by the run loop


def _k_integral(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Trapezoid quadrature over the k-grid (sorted ascending)."""
    order = np.argsort(grid.k)
    return np.trapezoid(values[..., order], grid.k[order], axis=-1)


def weighted_fourier_norms(
    state: SpectralState,
    grid: Grid,
    velocities,
    boundary_threshold: float = 1e-8,
    margin_fraction: float = 0.05,
) -> WeightedNorms:
    """Co-moving weighted norms; flags (but still returns) contaminated data.

    dk w_i is realized as the transform of (-i x) * u_i(x - c_i t), so the
    co-moving physical field must be localized for the values to be reliable;
    the contamination flag reports a boundary-mass breach.
    """
    w = comoving_shift(state, velocities, grid)
    u_co = inverse_transform(w, grid).real
    dkw = forward_transform((-1j * grid.x) * u_co.astype(complex), grid)
    abs_w = np.abs(w)
    abs_dkw = np.abs(dkw)
    abs_k = np.abs(grid.k)
    norms = WeightedNorms(
        n00=_k_integral(abs_w, grid),
        n10=_k_integral(abs_k * abs_w, grid),
        n01=_k_integral(abs_dkw, grid),
        n11=_k_integral(abs_k * abs_dkw, grid),
        n10_2=np.sqrt(_k_integral((abs_k * abs_w) ** 2, grid)),
        contaminated=bool(
            np.max(boundary_mass(u_co, grid, margin_fraction)) > boundary_threshold
        ),
    )
    return norms


def eta_components(norms: WeightedNorms, t: float) -> np.ndarray:
    """The five rate-weighted terms of the temporal weight at one time:

    sqrt(1+t)*||w||_1, (sqrt(1+t)/ln(2+t))*|||k| dk w||_1, (1+t)*|||k| w||_1,
    ||dk w||_1 and (1+t)^(3/4)*||k w||_2, each summed over components.
    """
    s = float(t)
    return np.array([
        math.sqrt(1.0 + s) * float(np.sum(norms.n00)),
        math.sqrt(1.0 + s) / math.log(2.0 + s) * float(np.sum(norms.n11)),
        (1.0 + s) * float(np.sum(norms.n10)),
        float(np.sum(norms.n01)),
        (1.0 + s) ** 0.75 * float(np.sum(norms.n10_2)),
    ])


def eta(history, include_contaminated: bool = False) -> float:
    """Running supremum of the five-term sum over a non-empty history.

    Accepts DiagnosticsRecords or (t, WeightedNorms) pairs; monotone
    non-decreasing under appending.  Records flagged as contaminated violate
    the precondition of the frequency-derivative trick (their x-weighted
    norms pick up the periodic seam), so they do not update the supremum
    unless explicitly requested.
    """
    records = list(history)
    if not records:
        raise ValueError("eta needs a non-empty history")
    total = -math.inf
    for rec in records:
        if isinstance(rec, DiagnosticsRecord):
            if rec.contaminated and not include_contaminated:
                continue
            total = max(total, float(np.sum(rec.eta_components)))
        else:
            t, norms = rec
            total = max(total, float(np.sum(eta_components(norms, t))))
    if total == -math.inf:
        total = math.nan  # every record was contaminated
    return total


def pointwise_envelope(
    state: SpectralState, grid: Grid, velocities
) -> tuple[np.ndarray, np.ndarray]:
    """Suprema of the co-moving localization products.

    envelope_u[i]  = sup_x |u_i| * (1 + |x + c_i t| + sqrt(t))
    envelope_du[i] = sup_x |dx u_i| * (1 + |x + c_i t| + sqrt(t)) * sqrt(1+t)/ln(2+t)

    Both are evaluated through the co-moving field, where |x + c_i t| is the
    centered grid coordinate, so drifting bumps never wrap through the seam.
    """
    t = float(state.t)
    w = comoving_shift(state, velocities, grid)
    u_co = inverse_transform(w, grid).real
    du_co = inverse_transform(1j * grid.k_deriv * w, grid).real
    weight = 1.0 + np.abs(grid.x) + math.sqrt(max(t, 0.0))
    envelope_u = np.max(np.abs(u_co) * weight, axis=-1)
    envelope_du = np.max(np.abs(du_co) * weight, axis=-1) * (
        math.sqrt(1.0 + t) / math.log(2.0 + t)
    )
    return envelope_u, envelope_du


def compute_record(
    state: SpectralState,
    grid: Grid,
    velocities,
    boundary_threshold: float = 1e-8,
    margin_fraction: float = 0.05,
) -> DiagnosticsRecord:
    """Full snapshot of every tracked quantity at one time."""
    u = inverse_transform(state.vhat, grid).real
    du = inverse_transform(1j * grid.k_deriv * state.vhat, grid).real
    sup_u = np.max(np.abs(u), axis=-1)
    sup_du = np.max(np.abs(du), axis=-1)
    norms = weighted_fourier_norms(
        state, grid, velocities, boundary_threshold, margin_fraction
    )
    envelope_u, envelope_du = pointwise_envelope(state, grid, velocities)
    record = DiagnosticsRecord(
        t=float(state.t),
        sup_u=sup_u,
        sup_du=sup_du,
        n00=norms.n00,
        n10=norms.n10,
        n01=norms.n01,
        n11=norms.n11,
        n10_2=norms.n10_2,
        eta_components=eta_components(norms, state.t),
        envelope_u=envelope_u,
        envelope_du=envelope_du,
        contaminated=norms.contaminated,
    )
    if not record.contaminated and np.all(np.isfinite(sup_u)):
        # sup-norm domination by the co-moving L1 norm, documented constant
        assert np.all(
            sup_u <= SUP_FOURIER_CONSTANT * norms.n00 * (1.0 + 1e-9) + 1e-300
        ), "sup |u_i| exceeded ||w_i||_1/(2*pi); transform convention broken"
    return record


def fit_decay_rate(
    times, values, window: tuple[float, float]
) -> tuple[float, float]:
    """Least-squares slope of log(value) against log(1+t) on a window.

    Returns (slope, stderr).  Requires at least 10 samples in the window,
    strictly positive values, and a window starting at t >= 1.
    """
    t_a, t_b = window
    if t_a < 1.0:
        raise ValueError("fit window must start at t >= 1")
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    mask = (times >= t_a) & (times <= t_b)
    if np.count_nonzero(mask) < 10:
        raise ValueError(
            f"need >= 10 samples in window [{t_a}, {t_b}], "
            f"got {np.count_nonzero(mask)}"
        )
    v = values[mask]
    if np.any(v <= 0.0):
        raise ValueError("values must be positive for a log-log fit")
    x = np.log1p(times[mask])
    y = np.log(v)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    dof = len(x) - 2
    sxx = np.sum((x - x.mean()) ** 2)
    stderr = math.sqrt(float(np.sum(resid**2)) / dof / sxx) if dof > 0 else 0.0
    return float(slope), stderr


def normal_form_transform(
    state: SpectralState, grid: Grid, gamma: float, c1: float, c2: float
) -> np.ndarray:
    """Two-component combination u_1 + gamma/(c2-c1) * u_2^2, both components
    first shifted into the frame moving with velocity c1."""
    if state.vhat.shape[0] != 2:
        raise ValueError("normal form transform is defined for two components")
    if c1 == c2:
        raise ValueError("normal form transform requires c1 != c2")
    shifted = comoving_shift(state, (c1, c1), grid)
    fields = inverse_transform(shifted, grid).real
    return fields[0] + gamma / (c2 - c1) * fields[1] ** 2


def linear_exponent_suite(
    d,
    c,
    init_fields: np.ndarray,
    grid: Grid,
    t_end: float,
    dt: float = 0.1,
    output_every: float = 1.0,
    window: tuple[float, float] | None = None,
):
    """Fit the decay exponents of || |k|^j dk^m w ||_1 on a nonlinearity-free
    run and tabulate them against the prediction -(1+j-m)/2.

    Returns {(j, m): (fitted, stderr, predicted)}.
    """
    from .integrator import IntegratorConfig, run_simulation  # lazy: avoids cycle
    from .scenarios import SystemSpec
    from .nonlinearity import NonlinearitySpec

    n = len(d)
    system = SystemSpec(
        n=n, d=tuple(d), c=tuple(c),
        f=NonlinearitySpec(n=n, terms=tuple(() for _ in range(n))),
    )
    config = IntegratorConfig(dt=dt, t_end=t_end, output_every=output_every)
    record = run_simulation(system, init_fields, grid, config)
    if not record.status.is_completed:
        raise RuntimeError(f"linear run terminated early: {record.status}")
    if window is None:
        window = (t_end / 4.0, t_end)
    times = record.times
    table = {}
    for (j, m), name in (((0, 0), "n00"), ((1, 0), "n10"),
                         ((0, 1), "n01"), ((1, 1), "n11")):
        series = np.array([np.sum(getattr(rec, name)) for rec in record.snapshots])
        slope, stderr = fit_decay_rate(times, series, window)
        table[(j, m)] = (slope, stderr, -(1 + j - m) / 2.0)
    return table
