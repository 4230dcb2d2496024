"""Laminated piezoelectric beam sections: constitutive reduction, capacitance, stress and modes."""

from ._piezobeam import (
    Beam,
    Boundary,
    Circuit,
    Closure,
    ClosureRow,
    ComputationError,
    Condition,
    Constitutive,
    InputError,
    Layer,
    MaterialDb,
    PlaneMaterial,
    Section,
    StressProfile,
    Wiring,
    __version__,
    capacitance_per_length,
    compare_closures,
    coupling_factor,
    discretized_oracle,
    free_actuation,
    load_section,
    make_beam,
    modal_frequencies,
    nsr_transverse_field,
    reduce_section,
    section_from_json,
    sensor_charge,
    stress_profile,
    tip_deflection,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
