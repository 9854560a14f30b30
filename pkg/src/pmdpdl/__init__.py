"""Pulse-timing toolkit for chains of polarization elements.

Two independent engines over the same network description: an exact
Gaussian-sum pulse propagator (ground truth at any measurement strength) and
a closed-form engine built on conditioned (weak-value) polarization averages,
valid when every differential delay is small against the pulse coherence
time. Plus a strict text format for networks, polarization sweeps, an
element-ordering optimizer and a CLI.
"""
from .elements import Element, Pdl, Pmd, Polarizer, element_operator
from .errors import (
    DegeneratePostSelectionError,
    NearZeroTransmissionError,
    OrthogonalPostSelectionError,
    ParseError,
    PmdPdlError,
    TooManyElementsError,
    ZeroVectorError,
)
from .network import (
    ExactResult,
    NetworkSpec,
    max_weakness_ratio,
    parse_network,
    run_exact,
    run_weak,
    serialize_network,
    with_scaled_dgd,
)
from .optimizer import (
    ArrangementResult,
    GroupedVsInterleaved,
    SweepResult,
    SweepRow,
    extremal_polarization,
    extremal_sphere,
    grouped_vs_interleaved,
    optimize_arrangement,
    sweep_polarization,
    sweep_sphere,
)
from .polarization import (
    AXIS_X,
    AXIS_Y,
    AXIS_Z,
    JONES_H,
    JONES_V,
    Axis3,
    JonesVector,
    axis_from_angles,
    bloch_vector,
    db_from_mu,
    expectation,
    jones_angles,
    jones_from_angles,
    minus_eigenstate,
    mu_from_db,
    pauli_on_axis,
    pdl_operator,
    plus_eigenstate,
    pmd_phase_operator,
    projector,
)
from .pulse import (
    GaussianSumState,
    PulseSpec,
    Term,
    apply_pdl,
    apply_pmd,
    gaussian_overlap,
    initial_state,
    intensity,
    intensity_profile,
    mean_time,
    project_pure,
    prune,
    transmission,
)
from .weak import (
    WeakResult,
    abl_prob_h,
    max_anomalous_shift,
    mean_time_pure_general,
    network_mean_time,
    psp_pair,
    weak_value_pdl,
    weak_value_pure,
)

__version__ = "0.1.0"

__all__ = [
    "AXIS_X",
    "AXIS_Y",
    "AXIS_Z",
    "ArrangementResult",
    "Axis3",
    "DegeneratePostSelectionError",
    "Element",
    "ExactResult",
    "GaussianSumState",
    "GroupedVsInterleaved",
    "JONES_H",
    "JONES_V",
    "JonesVector",
    "NearZeroTransmissionError",
    "NetworkSpec",
    "OrthogonalPostSelectionError",
    "ParseError",
    "Pdl",
    "Pmd",
    "PmdPdlError",
    "Polarizer",
    "PulseSpec",
    "SweepResult",
    "SweepRow",
    "Term",
    "TooManyElementsError",
    "WeakResult",
    "ZeroVectorError",
    "abl_prob_h",
    "apply_pdl",
    "apply_pmd",
    "axis_from_angles",
    "bloch_vector",
    "db_from_mu",
    "element_operator",
    "expectation",
    "extremal_polarization",
    "extremal_sphere",
    "gaussian_overlap",
    "grouped_vs_interleaved",
    "initial_state",
    "intensity",
    "intensity_profile",
    "jones_angles",
    "jones_from_angles",
    "max_anomalous_shift",
    "max_weakness_ratio",
    "mean_time",
    "mean_time_pure_general",
    "minus_eigenstate",
    "mu_from_db",
    "network_mean_time",
    "optimize_arrangement",
    "parse_network",
    "pauli_on_axis",
    "pdl_operator",
    "plus_eigenstate",
    "pmd_phase_operator",
    "project_pure",
    "projector",
    "prune",
    "psp_pair",
    "run_exact",
    "run_weak",
    "serialize_network",
    "sweep_polarization",
    "sweep_sphere",
    "transmission",
    "weak_value_pdl",
    "weak_value_pure",
    "with_scaled_dgd",
]
