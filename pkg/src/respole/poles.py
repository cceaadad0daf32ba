"""Discrete-state records and their classification in the complex k plane.

Pole taxonomy for a single-band lead: bound states sit on the lines
Re k = 0 or Re k = pi with Im k > 0; anti-bound states sit on the same lines
with Im k < 0; resonant / anti-resonant pairs fill the lower half plane at
Re k > 0 / Re k < 0.  Nothing can sit in the upper half plane away from
those two lines, so that region raises an error instead of a label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .dispersion import k_from_z, wrap_to_zone
from .errors import ClassificationError, ParameterError

CLASSIFY_TOL = 1e-9


class PoleClass(str, Enum):
    BOUND_LOWER = "BoundLower"
    BOUND_UPPER = "BoundUpper"
    ANTI_BOUND = "AntiBound"
    RESONANT = "Resonant"
    ANTI_RESONANT = "AntiResonant"
    THRESHOLD = "Threshold"
    DECOUPLED = "Decoupled"


BOUND_CLASSES = (PoleClass.BOUND_LOWER, PoleClass.BOUND_UPPER)


@dataclass(frozen=True)
class SpectralPole:
    """One discrete eigenstate: Bloch factor, wave number, energy, class,
    and the inner-space amplitudes (site order, contact normalized to 1
    whenever possible)."""

    z: complex
    k: complex
    E: complex
    pole_class: PoleClass
    amps: tuple[complex, ...]
    contact: int = 0

    @property
    def amp0(self) -> complex:
        """Amplitude on the contact site."""
        return self.amps[self.contact]

    @property
    def amp_d(self) -> complex:
        """Amplitude on the side-coupled level (2-site devices)."""
        return self.amps[1] if len(self.amps) > 1 else 0j

    @property
    def normalizable(self) -> bool:
        return self.pole_class in BOUND_CLASSES


def classify(z: complex, tol: float = CLASSIFY_TOL) -> PoleClass:
    """Label a pole by its position in the complex k plane.

    ``tol`` bounds both the unit-circle (threshold) test and the distance of
    Re k from the axis lines {0, pi}; distances are measured on the zone
    circle so values just below -pi count as near +pi.
    """
    if z == 0:
        raise ParameterError("Bloch factor z must be nonzero")
    if abs(abs(z) - 1.0) <= tol:
        return PoleClass.THRESHOLD
    k = k_from_z(z)
    d_zero = abs(k.real)
    d_pi = abs(wrap_to_zone(k.real - math.pi))
    if k.imag > 0:
        if d_zero <= tol:
            return PoleClass.BOUND_LOWER
        if d_pi <= tol:
            return PoleClass.BOUND_UPPER
        raise ClassificationError(
            f"pole at k = {k} lies in the upper half plane off the bound-state "
            "lines; no state of this model can sit there"
        )
    if d_zero <= tol or d_pi <= tol:
        return PoleClass.ANTI_BOUND
    return PoleClass.RESONANT if k.real > 0 else PoleClass.ANTI_RESONANT


def pole_to_record(pole: SpectralPole) -> dict:
    """Flat serialization record (JSON object / CSV row) of one pole."""
    return {
        "z_re": pole.z.real,
        "z_im": pole.z.imag,
        "k_re": pole.k.real,
        "k_im": pole.k.imag,
        "E_re": pole.E.real,
        "E_im": pole.E.imag,
        "class": pole.pole_class.value,
        "amp0_re": pole.amp0.real,
        "amp0_im": pole.amp0.imag,
        "ampd_re": pole.amp_d.real,
        "ampd_im": pole.amp_d.imag,
    }
