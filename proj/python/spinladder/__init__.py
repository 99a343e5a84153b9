"""Adiabatic entangling transfer in a bichromatically driven spin ladder.

Thin wrapper around the compiled core. Frequencies are angular and expressed
in units of the beat frequency between the two drive carriers unless a spin
pair fixes an absolute scale.
"""

from ._core import (  # noqa: F401
    Axis,
    DomainError,
    DriveParams,
    Error,
    PulsePair,
    SheetLabel,
    SpinParams,
    ValidationError,
    __version__,
    boundary_overlays,
    classify_at_field,
    classify_weak_field,
    drive_exchange,
    dynamical_resonance_omega2,
    find_axis_intersections,
    island_a_lower_delta,
    island_a_seq2_upper_omega1,
    island_a_upper_omega1,
    island_d_upper_omega1,
    island_dprime_omega1,
    island_dprime_omega2,
    quasienergies,
    resonance_23_omega2,
    run,
    simulate_full,
    simulate_transfer,
    track_adiabatic_path,
    verify_drive_exchange,
    weak_field_limit_omega0,
)

__all__ = [
    "Axis",
    "DomainError",
    "DriveParams",
    "Error",
    "PulsePair",
    "SheetLabel",
    "SpinParams",
    "ValidationError",
    "__version__",
    "boundary_overlays",
    "classify_at_field",
    "classify_weak_field",
    "drive_exchange",
    "dynamical_resonance_omega2",
    "find_axis_intersections",
    "island_a_lower_delta",
    "island_a_seq2_upper_omega1",
    "island_a_upper_omega1",
    "island_d_upper_omega1",
    "island_dprime_omega1",
    "island_dprime_omega2",
    "quasienergies",
    "resonance_23_omega2",
    "run",
    "simulate_full",
    "simulate_transfer",
    "track_adiabatic_path",
    "verify_drive_exchange",
    "weak_field_limit_omega0",
]
