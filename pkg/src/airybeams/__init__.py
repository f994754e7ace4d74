"""Scalar-diffraction simulation of Airy and Gaussian beams in the near field.

Free-space propagation (Rayleigh-Sommerfeld, Huygens-Fresnel, Fraunhofer,
and closed forms), caustic analysis, link-budget evaluation, knife-edge
and soft-obstacle diffraction with self-healing metrics, and polychromatic
pulsed beams.  All lengths are wavelength-normalized (LAMBDA0 = 1,
K0 = 2*pi).
"""

from .aperture import (
    DEFAULT_DX,
    AiryBeamSpec,
    GaussianBeamSpec,
    SampledAperture,
    aperture_energy,
    airy_aperture_field,
    airy_energy_modulated_closed,
    airy_energy_truncated_closed,
    airy_unit_energy_amplitude,
    gaussian_aperture_field,
    gaussian_energy_closed,
    gaussian_unit_energy_amplitude,
    make_airy_aperture,
    make_gaussian_aperture,
)
from .budget import (
    ReceiverSpec,
    field_energy_fraction,
    match_gaussian_center,
    matched_gaussian_spec,
    obstructed_energy_fraction,
    path_loss_db,
    received_energy,
    received_energy_closed,
    received_energy_qdl_approx,
)
from .caustics import (
    CausticCurve,
    PhaseProfile,
    RangeReport,
    airy_caustic_x,
    airy_phase_profile,
    caustic_intensity_modulated,
    caustic_nonparaxial,
    caustic_paraxial,
    field_near_caustic_sp,
    phase_for_trajectory,
    range_report,
    ray_at,
    trajectory_curvature,
)
from .errors import (
    BeamSimError,
    CausticError,
    ConfigError,
    DomainError,
    FarFieldError,
    ParaxialError,
    SamplingError,
    WindowError,
)
from .obstacles import (
    KnifeEdgeSpec,
    SoftObstacleSpec,
    clearance_edge_position,
    knife_edge_field,
    similarity_index,
    soft_diffracted_envelope,
    soft_diffracted_field,
    soft_perturbation_closed,
    soft_transmittance,
    two_stage_knife_field,
)
from .polychrome import (
    PulseSpec,
    polychromatic_intensity,
    pulse_amplitude,
    pulsed_airy_spectral_field,
    wavenumber_at,
)
from .propagate import (
    FieldGrid,
    airy_envelope,
    airy_field_closed,
    airy_field_grid,
    fraunhofer_distance,
    gaussian_envelope,
    gaussian_field_closed,
    gaussian_field_grid,
    intensity_grid,
    propagate_far_field,
    propagate_fresnel,
    propagate_rs,
)
from .specfun import airy_ai, airy_ai_prime, airy_zero_approx, hankel2
from .units import K0, LAMBDA0

__version__ = "0.1.0"
