"""Periodic spectral discretization of the real line.

Transform convention (the one place it is pinned down): the forward transform
approximates the nonunitary integral transform

    v(k) = integral exp(-i k x) u(x) dx        ~  dx * sum_j exp(-i k x_j) u(x_j)

and the inverse approximates (1/2pi) integral exp(i k x) v(k) dk, which on the
discrete k-grid (spacing dk = 2pi/L) is (1/L) * sum_m exp(i k_m x_j) v(k_m).
With this scaling a Gaussian exp(-x^2/(4d)) transforms to 2*sqrt(pi*d)*exp(-d k^2),
weighted k-space norms are directly comparable to their closed forms, and the
discrete Parseval identity reads sum |u_j|^2 dx = sum |v_m|^2 / L.

Wavenumbers are stored in FFT order, k_m = 2*pi*m/L with m in {0..N/2-1, -N/2..-1}.
The unpaired Nyquist mode m = -N/2 is zeroed in every derivative/advection
multiplier (``k_deriv``) so that real fields stay real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid",
    "SpectralState",
    "make_grid",
    "forward_transform",
    "inverse_transform",
    "to_spectral",
    "to_physical",
    "spectral_derivative",
    "dealiased_product",
    "comoving_shift",
    "boundary_mass",
]


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [-L/2, L/2) with its wavenumber set."""

    n_modes: int
    length: float
    x: np.ndarray = field(repr=False, compare=False)
    k: np.ndarray = field(repr=False, compare=False)
    k_deriv: np.ndarray = field(repr=False, compare=False)
    phase: np.ndarray = field(repr=False, compare=False)  # exp(-i k x_0) = (-1)^m

    @property
    def dx(self) -> float:
        return self.length / self.n_modes

    @property
    def dk(self) -> float:
        return 2.0 * math.pi / self.length


def make_grid(n_modes: int, length: float) -> Grid:
    """Build a grid; n_modes must be a power of two >= 16, length > 0."""
    if n_modes < 16 or (n_modes & (n_modes - 1)) != 0:
        raise ValueError(f"n_modes must be a power of two >= 16, got {n_modes}")
    if not length > 0:
        raise ValueError(f"length must be positive, got {length}")
    dx = length / n_modes
    x = -length / 2.0 + dx * np.arange(n_modes)
    k = 2.0 * math.pi * np.fft.fftfreq(n_modes, d=dx)
    k_deriv = k.copy()
    k_deriv[n_modes // 2] = 0.0  # unpaired Nyquist mode
    m = np.fft.fftfreq(n_modes, d=1.0 / n_modes)  # integer mode numbers
    phase = np.where(np.mod(m, 2) == 0, 1.0, -1.0) + 0.0j
    return Grid(n_modes=n_modes, length=float(length), x=x, k=k,
                k_deriv=k_deriv, phase=phase)


@dataclass
class SpectralState:
    """Time stamp plus per-component Fourier coefficients, shape (n, N)."""

    t: float
    vhat: np.ndarray

    @property
    def n_components(self) -> int:
        return self.vhat.shape[0]

    def copy(self) -> "SpectralState":
        return SpectralState(self.t, self.vhat.copy())


def forward_transform(fields: np.ndarray, grid: Grid) -> np.ndarray:
    """Continuum-scaled DFT along the last axis; accepts real or complex input."""
    fields = np.asarray(fields)
    if fields.shape[-1] != grid.n_modes:
        raise ValueError(
            f"last axis has {fields.shape[-1]} samples, grid has {grid.n_modes}"
        )
    return grid.dx * grid.phase * np.fft.fft(fields, axis=-1)


def inverse_transform(vhat: np.ndarray, grid: Grid) -> np.ndarray:
    """Inverse of :func:`forward_transform`; returns a complex array."""
    vhat = np.asarray(vhat)
    if vhat.shape[-1] != grid.n_modes:
        raise ValueError(
            f"last axis has {vhat.shape[-1]} modes, grid has {grid.n_modes}"
        )
    return np.fft.ifft(vhat * grid.phase, axis=-1) / grid.dx


def to_spectral(fields: np.ndarray, grid: Grid, t: float = 0.0) -> SpectralState:
    """Transform real physical fields of shape (n, N) into a SpectralState."""
    fields = np.atleast_2d(np.asarray(fields, dtype=float))
    return SpectralState(t=t, vhat=forward_transform(fields, grid))


def to_physical(state: SpectralState | np.ndarray, grid: Grid) -> np.ndarray:
    """Real physical fields of a (conjugate-symmetric) spectral state."""
    vhat = state.vhat if isinstance(state, SpectralState) else state
    return inverse_transform(vhat, grid).real


def spectral_derivative(state: SpectralState, grid: Grid) -> SpectralState:
    """d/dx as the multiplier i*k (Nyquist zeroed)."""
    return SpectralState(t=state.t, vhat=1j * grid.k_deriv * state.vhat)


# ---------------------------------------------------------------------------
# Dealiased products
# ---------------------------------------------------------------------------

def pad_spectrum(vhat: np.ndarray, grid: Grid, n_padded: int) -> np.ndarray:
    """Embed coefficients into a larger mode set, splitting the Nyquist mode
    across +/-N/2 to keep conjugate symmetry."""
    n = grid.n_modes
    if n_padded < n:
        raise ValueError("padded size smaller than original")
    if n_padded == n:
        return vhat.copy()
    shape = vhat.shape[:-1] + (n_padded,)
    out = np.zeros(shape, dtype=complex)
    half = n // 2
    out[..., :half] = vhat[..., :half]
    out[..., n_padded - half + 1:] = vhat[..., half + 1:]
    nyq = vhat[..., half] / 2.0
    out[..., half] = nyq
    out[..., n_padded - half] = nyq
    return out


def truncate_spectrum(vhat_fine: np.ndarray, n_modes: int) -> np.ndarray:
    """Keep modes m in {-N/2..N/2-1}; the unpaired Nyquist row is zeroed."""
    n_fine = vhat_fine.shape[-1]
    half = n_modes // 2
    shape = vhat_fine.shape[:-1] + (n_modes,)
    out = np.zeros(shape, dtype=complex)
    out[..., :half] = vhat_fine[..., :half]
    out[..., half + 1:] = vhat_fine[..., n_fine - half + 1:]
    return out


def _bandwidth(vhat: np.ndarray, grid: Grid) -> int:
    """Largest occupied |mode| (relative tolerance 1e-14)."""
    n = grid.n_modes
    m = np.rint(np.fft.fftfreq(n, d=1.0 / n)).astype(int)
    mags = np.abs(vhat)
    cutoff = 1e-14 * (mags.max() if mags.size else 0.0)
    occupied = np.abs(m)[mags > cutoff]
    return int(occupied.max()) if occupied.size else 0


def dealiased_product(
    factors: list[np.ndarray], grid: Grid, pad_ratio: float
) -> np.ndarray:
    """Pointwise product of physical fields, computed alias-free.

    The factors are transformed, zero-padded to ceil(pad_ratio * N) modes,
    multiplied on the fine grid and truncated back, which equals the exact
    discrete convolution of band-limited inputs.  For full-band factors the
    ratio must satisfy pad_ratio >= (deg + 1)/2; narrower inputs may use less,
    and the check below uses the factors' actual bandwidths.
    """
    if not factors:
        raise ValueError("need at least one factor")
    deg = len(factors)
    n = grid.n_modes
    n_padded = math.ceil(pad_ratio * n)
    n_padded += n_padded % 2  # keep the padded mode set symmetric
    if n_padded < n:
        raise ValueError(f"pad_ratio {pad_ratio} shrinks the grid")
    vhats = [forward_transform(np.asarray(f, dtype=float), grid) for f in factors]
    total_bandwidth = sum(_bandwidth(v, grid) for v in vhats)
    if n_padded < total_bandwidth + n // 2:
        raise ValueError(
            f"insufficient padding for a degree-{deg} product: "
            f"{n_padded} modes < {total_bandwidth + n // 2} required "
            f"(use pad_ratio >= {(deg + 1) / 2} for full-band factors)"
        )
    fine = _fine_grid(n_padded, grid.length)
    product = np.ones(n_padded)
    for v in vhats:
        product = product * inverse_transform(pad_spectrum(v, grid, n_padded), fine).real
    vhat_prod = truncate_spectrum(forward_transform(product, fine), n)
    return inverse_transform(vhat_prod, grid).real


def _fine_grid(n_modes: int, length: float) -> Grid:
    """Grid constructor without the power-of-two restriction (internal)."""
    dx = length / n_modes
    x = -length / 2.0 + dx * np.arange(n_modes)
    k = 2.0 * math.pi * np.fft.fftfreq(n_modes, d=dx)
    k_deriv = k.copy()
    k_deriv[n_modes // 2] = 0.0
    m = np.fft.fftfreq(n_modes, d=1.0 / n_modes)
    phase = np.where(np.mod(m, 2) == 0, 1.0, -1.0) + 0.0j
    return Grid(n_modes=n_modes, length=float(length), x=x, k=k,
                k_deriv=k_deriv, phase=phase)


# ---------------------------------------------------------------------------
# Co-moving frame and boundary guard
# ---------------------------------------------------------------------------

def comoving_shift(state: SpectralState, velocities, grid: Grid) -> np.ndarray:
    """Per-component multiplier exp(-i c_i k t); returns the shifted coefficients.

    The inverse transform of row i samples u_i(x - c_i t, t) up to periodic
    wrap, i.e. the drifting component is re-centered.  All moduli |w| = |v|
    are preserved exactly.
    """
    c = np.asarray(velocities, dtype=float)
    if c.shape != (state.vhat.shape[0],):
        raise ValueError(
            f"need one velocity per component, got {c.shape} for {state.vhat.shape}"
        )
    return np.exp(-1j * np.outer(c, grid.k_deriv) * state.t) * state.vhat


def boundary_mass(
    fields: np.ndarray, grid: Grid, margin_fraction: float
) -> np.ndarray:
    """max |u_i| over the outer margin of the box, relative to max |u_i| overall.

    Guards the truncation of the line to a periodic box: localized fields give
    ~0, anything touching the seam gives O(1).
    """
    if not 0.0 < margin_fraction < 0.5:
        raise ValueError("margin_fraction must lie in (0, 0.5)")
    fields = np.atleast_2d(np.asarray(fields, dtype=float))
    edge = grid.length / 2.0 - margin_fraction * grid.length
    outer = np.abs(grid.x) >= edge
    total = np.max(np.abs(fields), axis=-1)
    outer_max = np.max(np.abs(fields[:, outer]), axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(total > 0.0, outer_max / np.where(total > 0, total, 1.0), 0.0)
    return ratio
