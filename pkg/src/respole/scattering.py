"""Scattering observables at real wave number: amplitudes, T/R, Green's function.

A unit wave incident from the left fixes the inner amplitudes through

    (E - H_eff(e^{ik})) (amp0, amp_d, ...)^T = (2 i t sin k, 0, ...)^T,

with continuity A + B = C = amp0 across the contact.  The lattice Green's
function with the source on the contact solves the same system with
right-hand side (1, 0, ...), so the two are proportional through i v_g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dispersion import group_velocity
from .errors import NumericalError, ParameterError
from .feshbach import build_h_eff
from .model import DeviceSpec

from ._format import format_float


@dataclass(frozen=True)
class ScatteringSolution:
    """Amplitudes and probabilities at one real k in (0, pi)."""

    k: float
    E: float
    B: complex
    C: complex
    amps: tuple[complex, ...]
    T: float
    R: float
    A: complex = 1.0 + 0j


@dataclass(frozen=True)
class GreenPair:
    """Retarded resolvent elements with the source on the contact site."""

    k: float
    G00: complex
    Gd0: complex
    values: tuple[complex, ...] = ()


def _solve_inner(spec: DeviceSpec, k: float, rhs0: complex) -> np.ndarray:
    if not (isinstance(k, (int, float)) and 0.0 < k < math.pi):
        raise ParameterError(f"wave number must lie strictly inside (0, pi), got {k}")
    z = complex(math.cos(k), math.sin(k))
    E = -2.0 * spec.lead_t * math.cos(k)
    m = E * np.eye(spec.n_sites, dtype=complex) - build_h_eff(spec, z).matrix
    rhs = np.zeros(spec.n_sites, dtype=complex)
    rhs[spec.contact] = rhs0
    try:
        sol = np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"inner system singular at k = {k}") from exc
    if not np.all(np.isfinite(sol)):
        raise NumericalError(f"inner system ill-conditioned at k = {k}")
    return sol


def scattering_solve(spec: DeviceSpec, k: float) -> ScatteringSolution:
    """Solve the left-incidence scattering problem at real k with A = 1."""
    amps = _solve_inner(spec, k, 2j * spec.lead_t * math.sin(k))
    c_amp = complex(amps[spec.contact])
    b_amp = c_amp - 1.0
    return ScatteringSolution(
        k=float(k),
        E=-2.0 * spec.lead_t * math.cos(k),
        B=b_amp,
        C=c_amp,
        amps=tuple(amps),
        T=abs(c_amp) ** 2,
        R=abs(b_amp) ** 2,
    )


def green_function(spec: DeviceSpec, k: float) -> GreenPair:
    """Retarded Green's function elements (contact column) at real k."""
    g = _solve_inner(spec, k, 1.0 + 0j)
    return GreenPair(
        k=float(k),
        G00=complex(g[spec.contact]),
        Gd0=complex(g[1]) if spec.n_sites > 1 else 0j,
        values=tuple(g),
    )


def verify_green_identity(spec: DeviceSpec, k: float) -> float:
    """Max deviation of amps == i v_g G (contract: below 1e-12)."""
    sol = scattering_solve(spec, k)
    g = green_function(spec, k)
    factor = 1j * group_velocity(k, spec.lead_t)
    return float(
        max(abs(a - factor * gv) for a, gv in zip(sol.amps, g.values))
    )


def transmission_sweep(
    spec: DeviceSpec, k_min: float, k_max: float, steps: int
) -> list[ScatteringSolution]:
    """Scattering solutions on a uniform k grid, endpoints included."""
    if not 0.0 < k_min < k_max < math.pi:
        raise ParameterError(
            f"need 0 < k_min < k_max < pi, got k_min={k_min}, k_max={k_max}"
        )
    if steps < 2:
        raise ParameterError(f"sweep needs at least 2 steps, got {steps}")
    ks = np.linspace(k_min, k_max, steps)
    return [scattering_solve(spec, float(k)) for k in ks]


SWEEP_HEADER = "k,E,T,R,ReB,ImB,ReC,ImC"


def sweep_rows_csv(rows: list[ScatteringSolution]) -> str:
    """CSV dump of a sweep (17 significant digits, ``\\n`` endings)."""
    lines = [SWEEP_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                format_float(v)
                for v in (r.k, r.E, r.T, r.R, r.B.real, r.B.imag, r.C.real, r.C.imag)
            )
        )
    return "\n".join(lines) + "\n"
