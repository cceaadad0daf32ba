"""respole: S-matrix poles and scattering observables of 1D tight-binding
open quantum systems, by two independent routes (outgoing-wave polynomial and
effective-Hamiltonian Newton search) that must agree."""

__version__ = "0.1.0"

from .dispersion import (
    energy_from_z,
    group_velocity,
    k_from_z,
    z_from_k,
    z_pair_from_energy,
)
from .errors import BandEdgeError, ClassificationError, NumericalError, ParameterError
from .feshbach import (
    EffectiveHamiltonian,
    build_h_eff,
    feshbach_pole_search,
    q_space_reconstruct,
    secular_residual,
    self_energy,
    surface_green,
)
from .model import (
    DeviceSpec,
    ModelParams,
    device_from_json,
    device_to_json,
    make_tdot,
    p_space_hamiltonian,
    tdot_params,
)
from .oracle import (
    TruncatedLattice,
    bound_energies_from_truncation,
    build_report,
    finite_lattice_hamiltonian,
    pole_residual_report,
    pole_set_distance,
)
from .poles import PoleClass, SpectralPole, classify, pole_to_record
from .scattering import (
    GreenPair,
    ScatteringSolution,
    green_function,
    scattering_solve,
    transmission_sweep,
    verify_green_identity,
)
from .siegert import ClosedFormEps0, closed_form_eps0, poly_roots, secular_polynomial, solve_poles
from .wavefunction import (
    WavefunctionSample,
    decay_rate,
    evaluate,
    normalize_bound,
)

__all__ = [
    "BandEdgeError",
    "ClassificationError",
    "ClosedFormEps0",
    "DeviceSpec",
    "EffectiveHamiltonian",
    "GreenPair",
    "ModelParams",
    "NumericalError",
    "ParameterError",
    "PoleClass",
    "ScatteringSolution",
    "SpectralPole",
    "TruncatedLattice",
    "WavefunctionSample",
    "bound_energies_from_truncation",
    "build_h_eff",
    "build_report",
    "classify",
    "closed_form_eps0",
    "decay_rate",
    "device_from_json",
    "device_to_json",
    "energy_from_z",
    "evaluate",
    "feshbach_pole_search",
    "finite_lattice_hamiltonian",
    "green_function",
    "group_velocity",
    "k_from_z",
    "make_tdot",
    "normalize_bound",
    "p_space_hamiltonian",
    "pole_residual_report",
    "pole_set_distance",
    "pole_to_record",
    "poly_roots",
    "q_space_reconstruct",
    "scattering_solve",
    "secular_polynomial",
    "secular_residual",
    "self_energy",
    "solve_poles",
    "surface_green",
    "tdot_params",
    "transmission_sweep",
    "verify_green_identity",
    "z_from_k",
    "z_pair_from_energy",
]
