"""Pseudospectral simulation and decay-rate verification for n-component
reaction-diffusion-advection systems on the real line."""

__version__ = "0.1.0"

from .nonlinearity import (
    Monomial,
    TermClass,
    Category,
    NonlinearitySpec,
    ParseError,
    parse_nonlinearity,
    expand_divergence,
    classify_term,
    classify_system,
    evaluate_nonlinearity,
)
from .spectral import (
    Grid,
    SpectralState,
    make_grid,
    to_spectral,
    to_physical,
    spectral_derivative,
    dealiased_product,
    comoving_shift,
    boundary_mass,
)
from .integrator import (
    IntegratorConfig,
    RunStatus,
    RunRecord,
    phi_functions,
    linear_propagator,
    etdrk4_step,
    detect_blowup,
    run_simulation,
)
from .diagnostics import (
    DiagnosticsRecord,
    weighted_fourier_norms,
    eta,
    pointwise_envelope,
    fit_decay_rate,
    normal_form_transform,
    linear_exponent_suite,
)
from .scenarios import (
    SystemSpec,
    ScanResult,
    linear_gaussian_exact,
    build_linear,
    build_toy,
    build_cas3,
    cas3_threshold,
    build_esclev,
    build_burgers_scalar,
    gaussian_initial_data,
    scan_parameter,
)
