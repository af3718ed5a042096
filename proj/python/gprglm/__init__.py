from ._core import (
    MaterialParams,
    case_names,
    enthalpy,
    eos_internal_energy,
    euler_exact,
    euler_star,
    oracle_profile,
    run_case,
    sound_speed,
    stokes_first,
    temperature,
)

__all__ = [
    "MaterialParams",
    "case_names",
    "enthalpy",
    "eos_internal_energy",
    "euler_exact",
    "euler_star",
    "oracle_profile",
    "run_case",
    "sound_speed",
    "stokes_first",
    "temperature",
]
