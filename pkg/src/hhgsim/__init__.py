"""hhgsim: quantum-optical high harmonic generation at desk scale.

Computes driven-dipole responses, harmonic coherent-state amplitudes and
spectra for coherent, phase-averaged and photon-number driving fields, and
the truncated Fock-basis density matrices of individual harmonic modes.
"""

from .dipole import (
    AtomParams,
    ComplexSeries,
    SfaDipoleEngine,
    ToyDipoleEngine,
    ToyDipoleParams,
    covariance_check,
    sfa_dipole,
    toy_dipole,
)
from .errors import (
    AliasingError,
    ConfigError,
    InsufficientScanError,
    ResolutionError,
    SchemaError,
    TruncationError,
    UnsupportedEnvelopeError,
)
from .field import (
    Coherent,
    DrivingState,
    Envelope,
    FieldConfig,
    Flat,
    Fock,
    Gaussian,
    PhaseAveraged,
    SinSquared,
    TimeGrid,
    classical_field,
    driving_mixture_fock_diagonal,
    mean_driving_field,
    uniform_phases,
)
from .harmonics import (
    HarmonicAmplitude,
    SpectrumResult,
    estimate_cutoff,
    fit_loglog_slope,
    fock_limit_scan,
    harmonic_amplitude,
    harmonic_amplitudes,
    spectrum_coherent,
    spectrum_ensemble,
)
from .phasespace import (
    DriveNode,
    GeneralizedP,
    HusimiSampler,
    QuadratureSpec,
    delta_limit_probe,
    fock_moment,
    generalized_p,
    generalized_p_normalization,
    husimi,
    husimi_grid,
)
from .quantum_state import (
    CoherenceReport,
    ModeDensityMatrix,
    coherence_report,
    coherent_mode_state,
    l1_coherence,
    mean_field_amplitude,
    mean_photon,
    phase_averaged_mode_state,
    photon_distribution,
    poisson_mode_state,
    poisson_n_max,
    purity,
)

__version__ = "0.1.0"
