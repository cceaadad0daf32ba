"""Pole finding through the outgoing-wave boundary condition.

Demanding purely outgoing waves on the lead closes the infinite problem into
a polynomial equation in the Bloch factor z.  For the T-type dot it is the
quartic

    t^2 z^4 + t eps_d z^3 + t1^2 z^2 - t eps_d z - t^2 = 0,

whose four roots carry every S-matrix pole of the model.  For a general
device the polynomial (degree 2 n_sites) is recovered numerically from
determinant samples on the unit circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError
from .feshbach import _make_pole, _residual_batch, decoupled_poles
from .model import DeviceSpec, tdot_params
from .poles import (  # noqa: F401  (re-exported: this module owns the pole taxonomy)
    BOUND_CLASSES,
    CLASSIFY_TOL,
    PoleClass,
    SpectralPole,
    classify,
    pole_to_record,
)

MAX_DEVICE_SITES = 8  # polynomial degree 16; monomial conditioning is fine up to here


def secular_polynomial(spec: DeviceSpec) -> np.ndarray:
    """Real coefficients (ascending powers of z) of the secular polynomial.

    T-dot devices use the closed quartic above; anything else interpolates
    z**n_sites * det(E(z) - H_eff(z)) on the unit circle.  The sign is fixed
    so the leading coefficient is positive.
    """
    params = tdot_params(spec)
    if params is not None:
        t, t1, ed = params.t, params.t1, params.eps_d
        return np.array([-t * t, -t * ed, t1 * t1, t * ed, t * t])
    return _interpolated_polynomial(spec)


def _interpolated_polynomial(spec: DeviceSpec) -> np.ndarray:
    if spec.n_sites > MAX_DEVICE_SITES:
        raise ParameterError(
            f"devices above {MAX_DEVICE_SITES} sites exceed the supported polynomial degree"
        )
    degree = 2 * spec.n_sites
    m = degree + 1
    # unit-circle samples, rotated off z = +-1
    theta = 2.0 * np.pi * np.arange(m) / m + np.pi / (2.0 * m)
    zs = np.exp(1j * theta)
    g = zs ** spec.n_sites * _residual_batch(spec, zs)
    vand = zs[:, None] ** np.arange(m)[None, :]
    try:
        coeffs = np.linalg.solve(vand, g)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("interpolation system singular: sample points collided") from exc
    if np.max(np.abs(coeffs.imag)) > 1e-10:
        raise NumericalError(
            f"secular coefficients came out non-real (max imag {np.max(np.abs(coeffs.imag)):.3e})"
        )
    real = coeffs.real
    if real[-1] < 0:
        real = -real
    return real


def poly_roots(coeffs: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """All complex roots (with multiplicity) of a polynomial in ascending form.

    Companion-matrix eigenvalues give the starting points; each root is then
    polished by Newton on the monomial coefficients until |P(z)| falls below
    tol * max|coeff| or below the roundoff floor of the evaluation itself
    (large roots bottom out above the absolute target).
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.size < 2:
        raise ParameterError("polynomial degree must be at least 1")
    if coeffs[-1] == 0:
        raise ParameterError("leading coefficient must be nonzero")
    bound = tol * float(np.max(np.abs(coeffs)))
    eps = float(np.finfo(float).eps)
    roots = np.roots(coeffs[::-1])
    polished = np.empty_like(roots)
    for i, z in enumerate(roots):
        val, _, floor = _horner(coeffs, z)
        best_z, best_val = z, abs(val)
        target = max(bound, 4.0 * eps * floor)
        for _ in range(50):
            if best_val < target:
                break
            val, der, _ = _horner(coeffs, z)
            if der == 0:
                break
            z = z - val / der
            val, _, floor = _horner(coeffs, z)
            target = max(bound, 4.0 * eps * floor)
            if abs(val) < best_val:
                best_z, best_val = z, abs(val)
        if best_val >= target:
            raise NumericalError(
                f"root polishing stalled; residual {best_val:.3e} above {target:.3e}"
            )
        polished[i] = best_z
    return polished


def _horner(coeffs: np.ndarray, z: complex) -> tuple[complex, complex, float]:
    """Polynomial value, derivative, and roundoff scale sum|c| |z|^i at z."""
    p = coeffs[-1]
    dp = 0j
    floor = abs(p)
    az = abs(z)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
        floor = floor * az + abs(c)
    return p, dp, floor


@dataclass(frozen=True)
class ClosedFormEps0:
    """Exact solution of the T-dot with a dot level at zero.

    p > 1 and q = 1/p set the four poles: two bound states at E = -+(p+q)t
    on the Re k = 0 and Re k = pi lines, and a resonant/anti-resonant pair
    at E = -+i(p-q)t.
    """

    p: float
    q: float
    poles: tuple[SpectralPole, SpectralPole, SpectralPole, SpectralPole]


def closed_form_eps0(t: float, t1: float) -> ClosedFormEps0:
    """The four poles of the T-dot with eps_d = 0, in closed form."""
    if not t > 0:
        raise ParameterError(f"lead hopping t must be > 0, got {t}")
    if t1 == 0:
        raise ParameterError("closed form needs a coupled dot (t1 != 0)")
    p = math.sqrt((t1 * t1 + math.sqrt(4.0 * t**4 + t1**4)) / (2.0 * t * t))
    q = 1.0 / p
    lp = math.log(p)
    half_pi = math.pi / 2.0

    def pole(z, k, E, cls):
        # second secular row fixes amp_d = -t1/E once amp0 = 1
        return SpectralPole(
            z=complex(z), k=complex(k), E=complex(E), pole_class=cls,
            amps=(1.0 + 0j, -t1 / complex(E)), contact=0,
        )

    poles = (
        pole(q, 1j * lp, -(p + q) * t, PoleClass.BOUND_LOWER),
        pole(-q, math.pi + 1j * lp, (p + q) * t, PoleClass.BOUND_UPPER),
        pole(1j * p, half_pi - 1j * lp, -1j * (p - q) * t, PoleClass.RESONANT),
        pole(-1j * p, -half_pi - 1j * lp, 1j * (p - q) * t, PoleClass.ANTI_RESONANT),
    )
    return ClosedFormEps0(p=p, q=q, poles=poles)


def solve_poles(spec: DeviceSpec) -> list[SpectralPole]:
    """Every S-matrix pole of the device via the secular polynomial.

    Returns one ``SpectralPole`` per polynomial root, classified and carrying
    the inner-space amplitudes, sorted by (Re z, Im z).  A dot with zero
    coupling short-circuits to its embedded Decoupled level.
    """
    params = tdot_params(spec)
    if params is not None and params.t1 == 0.0:
        return decoupled_poles(spec)
    roots = poly_roots(secular_polynomial(spec))
    out = [_make_pole(spec, complex(z)) for z in roots]
    out.sort(key=lambda p: (p.z.real, p.z.imag))
    return out
