"""Lattice wavefunctions of discrete states: sampling, norms, decay rates.

Away from the device the amplitude is z**|x| times the contact amplitude,
so bound states (|z| < 1) decay geometrically and resonant states (|z| > 1)
grow without bound -- the latter live outside the Hilbert space and are
reported un-normalized (``SpectralPole.normalizable`` is False for them).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ._format import format_float
from .errors import ParameterError
from .feshbach import q_space_reconstruct
from .poles import BOUND_CLASSES, SpectralPole


@dataclass(frozen=True)
class WavefunctionSample:
    """Amplitude at one site; ``x`` is a lead integer or a device label."""

    x: int | str
    value: complex
    magnitude: float


def _sample(x, value) -> WavefunctionSample:
    return WavefunctionSample(x=x, value=complex(value), magnitude=abs(value))


def evaluate(pole: SpectralPole, x_max: int) -> list[WavefunctionSample]:
    """Samples on lead sites -x_max..x_max plus the device rows.

    The side-coupled level of a 2-site device is labeled "d"; larger devices
    label their non-contact sites "p<i>".
    """
    if x_max < 1:
        raise ParameterError(f"x_max must be >= 1, got {x_max}")
    samples = [
        _sample(x, q_space_reconstruct(pole, x)) for x in range(-x_max, x_max + 1)
    ]
    for i, amp in enumerate(pole.amps):
        if i == pole.contact:
            continue
        label = "d" if len(pole.amps) == 2 else f"p{i}"
        samples.append(_sample(label, amp))
    return samples


def normalize_bound(pole: SpectralPole) -> SpectralPole:
    """Rescale a bound state's amplitudes to unit lattice norm.

    The lead contribution is the exact geometric sum of |z|^(2|x|), so no
    truncation enters even for very weak binding.  Non-bound classes are not
    normalizable and raise.
    """
    if pole.pole_class not in BOUND_CLASSES:
        raise ParameterError(
            f"{pole.pole_class.value} state is not normalizable; only bound states are"
        )
    r2 = abs(pole.z) ** 2
    norm_sq = sum(abs(a) ** 2 for a in pole.amps)
    norm_sq += abs(pole.amp0) ** 2 * 2.0 * r2 / (1.0 - r2)
    n = math.sqrt(norm_sq)
    return replace(pole, amps=tuple(a / n for a in pole.amps))


def decay_rate(pole: SpectralPole) -> float:
    """Im k: positive for bound states, negative for everything decaying."""
    return pole.k.imag


WAVEFUNCTION_HEADER = "x,re,im,abs"


def wavefunction_csv(samples: list[WavefunctionSample]) -> str:
    lines = [WAVEFUNCTION_HEADER]
    for s in samples:
        lines.append(
            f"{s.x},{format_float(s.value.real)},{format_float(s.value.imag)},"
            f"{format_float(s.magnitude)}"
        )
    return "\n".join(lines) + "\n"
