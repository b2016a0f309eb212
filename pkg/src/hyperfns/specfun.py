"""Complex special-function kernels.

Three primitives live here: the principal branch of log Gamma with pole
bookkeeping, Gamma-product ratios evaluated in log space with cancellation
of matched poles, and the Gauss hypergeometric function 2F1(a, b; c; z)
restricted to real z <= 0 with analytic continuation past z = -1.

Everything downstream (c-functions, Eisenstein integrals, transforms) is
assembled from these three kernels, so their accuracy contracts are the
tightest in the package: log_gamma is good to ~1e-15 relative, 2F1 to
~1e-12 relative for parameters of moderate imaginary part.  Cancellation
inside the 2F1 series grows roughly like exp(0.8*|Im(a - b)|) and is
reported through the error estimate rather than hidden.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import scipy.special as sp

from .core import (
    POLE_EPS,
    DomainViolation,
    EvalResult,
    ParameterPole,
    PoleAtNonpositiveInteger,
    Status,
    near_nonpos_int,
)

_LOG_PI = math.log(math.pi)
_MAX_SERIES_TERMS = 200000
_DEGENERATE_EPS = 5e-4
_RICHARDSON_EPS = (1e-5, 5e-6)

# Region boundaries for the z <= 0 evaluation strategy.  Each strategy keeps
# the magnitude of its working series argument at or below 2/3.
_DIRECT_EDGE = -0.5
_PFAFF_EDGE = -2.0


def _loggamma_raw(z: complex) -> complex:
    """Principal-branch log Gamma, accurate arbitrarily close to the poles.

    Within distance 0.25 of a nonpositive integer -n the reflection formula
    is applied with the offset delta = z + n formed exactly in complex
    arithmetic, so sin(pi*delta) keeps full relative accuracy even for
    delta ~ 1e-20.  Elsewhere this defers to scipy's loggamma.
    """
    z = complex(z)
    if z.real < 0.5 and abs(z.imag) < 0.3:
        n = round(-z.real)
        if n >= 0:
            delta = z + n
            if abs(delta) < 0.25:
                w = cmath.sin(math.pi * delta)
                if n % 2 == 1:
                    w = -w
                return _LOG_PI - cmath.log(w) - complex(sp.loggamma(1 + n - delta))
    return complex(sp.loggamma(z))


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Raises PoleAtNonpositiveInteger when z is within POLE_EPS of a pole.
    """
    z = complex(z)
    if near_nonpos_int(z) is not None:
        raise PoleAtNonpositiveInteger(f"log_gamma pole at z = {z}")
    return _loggamma_raw(z)


@dataclass(frozen=True)
class GammaRatioSpec:
    """Gamma-product ratio prod Gamma(num_i) / prod Gamma(den_j)."""

    numerators: tuple[complex, ...]
    denominators: tuple[complex, ...]

    @classmethod
    def of(cls, numerators: Sequence[complex], denominators: Sequence[complex]):
        return cls(tuple(complex(v) for v in numerators),
                   tuple(complex(v) for v in denominators))


def gamma_ratio(spec: GammaRatioSpec) -> EvalResult:
    """Evaluate a Gamma-product ratio in log space with pole bookkeeping.

    With k numerator and j denominator arguments sitting at nonpositive
    integers, the status is POLE for k > j and ZERO for k < j.  For k = j
    the common limit is taken with all pole arguments displaced by one
    shared offset, under which Gamma(-n + delta) ~ (-1)^n / (n! delta); the
    offsets cancel and the finite limit is returned as REGULARIZED.
    """
    num_poles = [near_nonpos_int(v) for v in spec.numerators]
    den_poles = [near_nonpos_int(v) for v in spec.denominators]
    k = sum(1 for n in num_poles if n is not None)
    j = sum(1 for n in den_poles if n is not None)
    if k > j:
        return EvalResult(None, math.inf, Status.POLE)
    if k < j:
        return EvalResult(0.0 + 0.0j, 0.0, Status.ZERO)

    logsum = 0.0 + 0.0j
    sign = 1
    nfac = 0
    for v, n in zip(spec.numerators, num_poles):
        if n is None:
            logsum += _loggamma_raw(v)
        else:
            sign = -sign if n % 2 else sign
            logsum -= math.lgamma(n + 1)
        nfac += 1
    for v, n in zip(spec.denominators, den_poles):
        if n is None:
            logsum -= _loggamma_raw(v)
        else:
            sign = -sign if n % 2 else sign
            logsum += math.lgamma(n + 1)
        nfac += 1

    if logsum.real > 700.0:
        return EvalResult(None, math.inf, Status.OVERFLOW)
    value = sign * cmath.exp(logsum)
    err = abs(value) * 1e-14 * max(1, nfac)
    status = Status.REGULARIZED if k > 0 else Status.OK
    return EvalResult(value, err, status)


def _gauss_series(a: complex, b: complex, c: complex, w: complex,
                  tol: float = 1e-16) -> tuple[complex, float]:
    """Sum 2F1(a, b; c; w) by its power series for |w| < 1.

    Returns (value, error estimate).  The estimate combines a geometric
    tail bound with a cancellation term proportional to the largest
    intermediate summand.
    """
    aw = abs(w)
    if aw >= 1.0:
        raise DomainViolation(f"series argument |w| = {aw} >= 1")
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    max_term = 1.0
    small = 0
    k = 0
    while k < _MAX_SERIES_TERMS:
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1))) * w
        total += term
        at = abs(term)
        if at > max_term:
            max_term = at
        if at <= tol * max(abs(total), 1e-300):
            small += 1
            if small >= 2 and k > 4:
                break
        else:
            small = 0
        k += 1
    tail = abs(term) * aw / (1.0 - aw)
    err = tail + max_term * 5e-16
    return total, err


def _terminating(a: complex, b: complex, c: complex, z: float,
                 n: int) -> EvalResult:
    # Exact polynomial case: one upper parameter is a nonpositive integer.
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    max_term = 1.0
    for kk in range(n):
        term = term * ((a + kk) * (b + kk) / ((c + kk) * (kk + 1))) * z
        if not (math.isfinite(term.real) and math.isfinite(term.imag)):
            return EvalResult(None, math.inf, Status.OVERFLOW)
        total += term
        max_term = max(max_term, abs(term))
    return EvalResult(total, max_term * 5e-16 * max(1, n), Status.OK)


def _eval_direct(a: complex, b: complex, c: complex, z: float) -> EvalResult:
    val, err = _gauss_series(a, b, c, z)
    return EvalResult(val, err, Status.OK)


def _eval_pfaff(a: complex, b: complex, c: complex, z: float) -> EvalResult:
    w = z / (z - 1.0)
    val, err = _gauss_series(a, c - b, c, w)
    pref = cmath.exp(-a * math.log1p(-z))
    return EvalResult(pref * val, abs(pref) * err, Status.OK)


def _eval_inversion(a: complex, b: complex, c: complex, z: float) -> EvalResult:
    # Continuation onto |z| > 1 through the two recessive/dominant channels
    # in powers of 1/z; requires a - b away from the integers.
    u = 1.0 / z
    logmz = math.log(-z)
    g1 = gamma_ratio(GammaRatioSpec.of([c, a - b], [a, c - b]))
    g2 = gamma_ratio(GammaRatioSpec.of([c, b - a], [b, c - a]))
    if g1.status is Status.POLE or g2.status is Status.POLE:
        return EvalResult(None, math.inf, Status.POLE)
    total = 0.0 + 0.0j
    err = 0.0
    for g, expo, s_params in (
        (g1, -b, (b, 1 - c + b, 1 - a + b)),
        (g2, -a, (a, 1 - c + a, 1 - b + a)),
    ):
        if g.status is Status.ZERO:
            continue
        pref = cmath.exp(expo * logmz)
        sval, serr = _gauss_series(*s_params, u)
        total += g.value * pref * sval
        err += abs(pref) * (abs(g.value) * serr + g.abs_err * abs(sval))
    return EvalResult(total, err, Status.OK)


def _eval_degenerate(a: complex, b: complex, c: complex, z: float) -> EvalResult:
    # a - b at (or extremely near) an integer: the continuation coefficients
    # degenerate pairwise.  Evaluate at a +/- eps for two eps levels and
    # Richardson-extrapolate the symmetric averages.
    svals = []
    err_inner = 0.0
    for eps in _RICHARDSON_EPS:
        rp = _eval_inversion(a + eps, b, c, z)
        rm = _eval_inversion(a - eps, b, c, z)
        if rp.value is None or rm.value is None:
            return EvalResult(None, math.inf, Status.POLE)
        svals.append(0.5 * (rp.value + rm.value))
        err_inner = max(err_inner, rp.abs_err, rm.abs_err)
    s1, s2 = svals
    value = (4.0 * s2 - s1) / 3.0
    spread = abs(s1 - s2)
    status = Status.OK
    if spread > 1e-7 * max(abs(value), 1e-300):
        status = Status.ACCURACY_LOSS
    return EvalResult(value, spread + err_inner, status)


def hyp2f1_nonpos(a: complex, b: complex, c: complex, z: float) -> EvalResult:
    """Gauss 2F1(a, b; c; z) for real z <= 0.

    Strategy by region: direct series on (-0.5, 0], the z/(z-1) transform
    on [-2, -0.5], and the 1/z continuation below -2, switching to a
    Richardson limit when a - b is within 5e-4 of an integer.  Terminating
    parameter values short-circuit to the exact polynomial.

    Raises ParameterPole when c is a nonpositive integer and
    DomainViolation for z > 0.
    """
    a, b, c = complex(a), complex(b), complex(c)
    z = float(z)
    if z > 1e-15:
        raise DomainViolation(f"hyp2f1_nonpos requires z <= 0, got z = {z}")
    if near_nonpos_int(c) is not None:
        raise ParameterPole(f"lower parameter c = {c} is a nonpositive integer")
    if z == 0.0 or z > -1e-300:
        return EvalResult(1.0 + 0.0j, 5e-16, Status.OK)

    na = near_nonpos_int(a)
    nb = near_nonpos_int(b)
    if na is not None or nb is not None:
        if na is not None and nb is not None:
            return _terminating(complex(-na), complex(-nb), c, z, min(na, nb))
        if na is not None:
            return _terminating(complex(-na), b, c, z, na)
        return _terminating(a, complex(-nb), c, z, nb)

    if z > _DIRECT_EDGE:
        return _eval_direct(a, b, c, z)
    if z >= _PFAFF_EDGE:
        return _eval_pfaff(a, b, c, z)

    d = a - b
    if abs(d.imag) < _DEGENERATE_EPS and abs(d.real - round(d.real)) < _DEGENERATE_EPS:
        return _eval_degenerate(a, b, c, z)
    return _eval_inversion(a, b, c, z)
