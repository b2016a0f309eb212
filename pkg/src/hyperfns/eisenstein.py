"""Connection coefficients, Eisenstein integrals and the boundedness test.

Two independent evaluation routes are provided for the normalized radial
eigenfunction E(lambda, eta)(t):

* a closed form, a Gamma-ratio prefactor times a single Gauss 2F1 in the
  variable -sinh^2 t, valid for all t >= 0;
* a two-channel exponential series Phi_lambda + c(lambda) Phi_{-lambda},
  valid for t above a small threshold and lambda off the coefficient pole
  lattice.

The scalar c(lambda) is the connection coefficient between the two
exponential channels.  Pole and zero locations of both c and E are exposed
as exact arithmetic-progression catalogs, a clearing polynomial p_R wipes
the finitely many poles in any right half-plane {Re > -R}, and the
regularized evaluator takes analytic limits at the catalog points by a
complex-step device on the series representation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import (
    POLE_EPS,
    T_MIN_SERIES,
    DomainViolation,
    EtaVector,
    EvalResult,
    KType,
    K_INVARIANT,
    OutOfDomain,
    Progression,
    SeriesPole,
    Space,
    Status,
    as_eta,
    near_nonpos_int,
)
from . import hcseries, specfun
from .hcseries import Poly
from .specfun import GammaRatioSpec, gamma_ratio, hyp2f1_nonpos

_LOG2 = math.log(2.0)

# Proximity bands around catalog poles: inside SWITCH the regularized
# evaluator takes the analytic limit, between SWITCH and WARN it evaluates
# directly but flags the conditioning.
_POLE_SWITCH = 1e-6
_POLE_WARN = 1e-3
_COMPLEX_STEP = 1e-20


@dataclass(frozen=True)
class PoleCatalog:
    """Exact arithmetic-progression descriptions of poles and zeros."""

    e_poles: tuple[Progression, ...]
    c_poles: tuple[Progression, ...]
    c_zeros: tuple[Progression, ...]
    e_zeros: tuple[Progression, ...]

    def to_json(self) -> dict:
        return {
            "e_poles": [p.to_json() for p in self.e_poles],
            "c_poles": [p.to_json() for p in self.c_poles],
            "c_zeros": [p.to_json() for p in self.c_zeros],
            "e_zeros": [p.to_json() for p in self.e_zeros],
        }


def pole_catalog(space: Space, ktype: Optional[KType] = None) -> PoleCatalog:
    """Pole and zero progressions of c and of the Eisenstein integral."""
    kt = ktype or K_INVARIANT
    kt.validate_for(space)
    rho = space.rho
    K, L = kt.ak, kt.al
    q = space.q
    e_poles = (
        Progression(-rho - L - K, -2),
        Progression(rho - q + L - K, -2),
    )
    c_poles = e_poles + (Progression(Fraction(0), 1),)
    c_zeros = (
        Progression(rho + L + K, 2),
        Progression(-rho + q - L + K, 2),
        Progression(Fraction(0), -1),
    )
    e_zeros = (Progression(Fraction(0), -1),)
    return PoleCatalog(e_poles, c_poles, c_zeros, e_zeros)


def _nearest(progs: Sequence[Progression], lam: complex):
    best = math.inf
    best_val: Fraction | None = None
    for pr in progs:
        j = (lam.real - float(pr.start)) / pr.step
        for jj in (max(0, math.floor(j)), max(0, math.ceil(j)), 0):
            v = pr.start + jj * pr.step
            d = abs(lam - complex(float(v)))
            if d < best:
                best = d
                best_val = v
    return best, best_val


@dataclass(frozen=True)
class SpectralPoint:
    """A spectral parameter with its membership flags."""

    lam: complex
    is_e_pole: bool
    is_c_pole: bool
    is_nonpos_int: bool
    in_s1: bool
    in_sr: Optional[bool]
    in_ar: Optional[bool]


def spectral_point(space: Space, ktype: Optional[KType], lam: complex,
                   r: Optional[float] = None,
                   R: Optional[float] = None) -> SpectralPoint:
    lam = complex(lam)
    cat = pole_catalog(space, ktype)
    rho = space.rho_f
    in_sr = None
    if r is not None:
        if not (1.0 <= r <= 2.0):
            raise DomainViolation("r must lie in [1, 2]")
        in_sr = abs(lam.real) <= (2.0 / r - 1.0) * rho + POLE_EPS
    in_ar = None if R is None else (lam.real <= R + POLE_EPS)
    return SpectralPoint(
        lam=lam,
        is_e_pole=any(p.contains(lam) for p in cat.e_poles),
        is_c_pole=any(p.contains(lam) for p in cat.c_poles),
        is_nonpos_int=near_nonpos_int(lam) is not None,
        in_s1=abs(lam.real) <= rho + POLE_EPS,
        in_sr=in_sr,
        in_ar=in_ar,
    )


def _c_gamma_args(space: Space, kt: KType, lam: complex):
    rho = space.rho_f
    K, L = kt.ak, kt.al
    q = space.q
    A = lambda z: (z + rho + K + L) / 2.0
    B = lambda z: (z - rho + q - K + L) / 2.0
    num = [A(lam), B(lam), -lam]
    den = [A(-lam), B(-lam), lam]
    return num, den


def c_function(space: Space, ktype: Optional[KType], lam: complex) -> EvalResult:
    """Connection coefficient c(lambda) between the exponential channels.

    Evaluated as 2^{2 lambda} times a six-factor Gamma ratio in log space.
    The ratio is built so that the denominator is the numerator at
    -lambda, which forces c(lambda) c(-lambda) = 1 identically.
    """
    lam = complex(lam)
    kt = ktype or K_INVARIANT
    kt.validate_for(space)
    num, den = _c_gamma_args(space, kt, lam)
    gr = gamma_ratio(GammaRatioSpec.of(num, den))
    if gr.value is None:
        return gr
    pref = cmath.exp(2.0 * lam * _LOG2)
    return EvalResult(pref * gr.value, abs(pref) * gr.abs_err, gr.status)


def _c_raw(space: Space, kt: KType, lam: complex) -> complex:
    # No pole bookkeeping; relies on the near-pole-accurate log Gamma so
    # that evaluations offset 1e-20 from a pole stay fully accurate.
    num, den = _c_gamma_args(space, kt, lam)
    s = 2.0 * lam * _LOG2
    for v in num:
        s += specfun._loggamma_raw(v)
    for v in den:
        s -= specfun._loggamma_raw(v)
    return cmath.exp(s)


@dataclass(frozen=True)
class CMatrix:
    """Connection endomorphism on the orbit components."""

    values: np.ndarray
    status: Status

    def apply(self, space: Space, eta: EtaVector) -> EtaVector:
        orbs = space.orbits
        vec = np.array([eta[w] for w in orbs], dtype=complex)
        out = self.values @ vec
        return EtaVector({w: out[i] for i, w in enumerate(orbs)})


def c_matrix(space: Space, lam: complex) -> CMatrix:
    """Matrix form of the connection coefficient.

    Diagonal with equal entries c(lambda); the off-diagonal entries vanish
    identically in the two-orbit case, so for q > 1 this is the 1x1 matrix
    [c(lambda)].
    """
    res = c_function(space, None, lam)
    n = len(space.orbits)
    if res.value is None:
        return CMatrix(np.full((n, n), np.nan, dtype=complex), res.status)
    return CMatrix(np.eye(n, dtype=complex) * res.value, res.status)


def _closed_params(space: Space, kt: KType, lam: complex):
    rho = space.rho_f
    K, L = kt.ak, kt.al
    q = space.q
    a = (lam + rho + K + L) / 2.0
    b = (-lam + rho + K + L) / 2.0
    cc = q / 2.0 + L
    barg = (lam - rho + q - K + L) / 2.0
    return a, b, cc, barg


def eisenstein_closed(space: Space, ktype: Optional[KType], lam: complex,
                      eta, w: int, t: float) -> EvalResult:
    """Closed-form Eisenstein integral at orbit w and radius t >= 0.

    The value is eta_w 2^{lambda-rho} cosh^{|k|} t sinh^{|l|} t times a
    four-factor Gamma ratio times 2F1(a, b; q/2+|l|; -sinh^2 t); the
    normalization makes e^{(rho-lambda) t} E -> eta_w for Re lambda > 0.
    A POLE status marks the catalog poles, ZERO the lattice zeros.
    """
    lam = complex(lam)
    t = float(t)
    if t < 0:
        raise DomainViolation("t must be >= 0")
    kt = ktype or K_INVARIANT
    kt.validate_for(space)
    ev = as_eta(space, eta)
    eta_w = ev[w]
    a, b, cc, barg = _closed_params(space, kt, lam)
    gr = gamma_ratio(GammaRatioSpec.of([a, barg], [lam, cc]))
    if gr.status is Status.POLE or gr.status is Status.OVERFLOW:
        return EvalResult(None, math.inf, gr.status)
    if gr.status is Status.ZERO or eta_w == 0:
        return EvalResult(0.0 + 0.0j, 0.0, gr.status if eta_w != 0 else Status.OK)
    K, L = kt.ak, kt.al
    if t == 0.0 and L > 0:
        return EvalResult(0.0 + 0.0j, 0.0, gr.status)
    logpref = (lam - space.rho_f) * _LOG2
    if K:
        logpref += K * math.log(math.cosh(t))
    if L:
        logpref += L * math.log(math.sinh(t))
    z = -math.sinh(t) ** 2
    hyp = hyp2f1_nonpos(a, b, cc, z)
    if hyp.value is None:
        return EvalResult(None, math.inf, hyp.status)
    if logpref.real > 690.0:
        return EvalResult(None, math.inf, Status.OVERFLOW)
    pref = cmath.exp(logpref)
    value = eta_w * pref * gr.value * hyp.value
    err = abs(eta_w) * abs(pref) * (
        abs(gr.value) * hyp.abs_err + abs(hyp.value) * gr.abs_err)
    status = gr.status
    if hyp.status is Status.ACCURACY_LOSS:
        status = Status.ACCURACY_LOSS
    return EvalResult(value, err, status)


def eisenstein_series(space: Space, ktype: Optional[KType], lam: complex,
                      eta, w: int, t: float, tol: float = 1e-12) -> EvalResult:
    """Series-route Eisenstein integral Phi_lambda eta_w + c Phi_{-lambda} eta_w.

    Requires t >= the series threshold, lambda and -lambda off the
    coefficient pole lattice, and a plainly regular c(lambda).
    """
    lam = complex(lam)
    ev = as_eta(space, eta)
    eta_w = ev[w]
    cres = c_function(space, ktype, lam)
    if cres.status not in (Status.OK, Status.ZERO):
        raise SeriesPole(f"connection coefficient not regular at lambda = {lam}")
    pp = hcseries.phi_series(space, ktype, lam, t, tol)
    pm = hcseries.phi_series(space, ktype, -lam, t, tol)
    value = eta_w * (pp.value + cres.value * pm.value)
    err = abs(eta_w) * (pp.abs_err + abs(cres.value) * pm.abs_err
                        + cres.abs_err * abs(pm.value))
    return EvalResult(value, err, Status.OK)


def eisenstein_series_profile(space: Space, ktype: Optional[KType], lam: complex,
                              eta, w: int, ts: np.ndarray,
                              tol: float = 1e-12) -> np.ndarray:
    """Vectorized series route over an array of radii (same preconditions).

    This is the workhorse of the transform quadratures: the coefficient
    tables for +/- lambda are built once and reused across all nodes, and
    the evaluation stays accurate for arbitrarily large |Im lambda| where
    the closed form loses digits to cancellation.
    """
    lam = complex(lam)
    ts = np.asarray(ts, dtype=float)
    if ts.size and ts.min() < T_MIN_SERIES:
        raise SeriesPole(f"series route needs t >= {T_MIN_SERIES}")
    ev = as_eta(space, eta)
    eta_w = ev[w]
    cres = c_function(space, ktype, lam)
    if cres.status not in (Status.OK, Status.ZERO):
        raise SeriesPole(f"connection coefficient not regular at lambda = {lam}")
    t_min = float(ts.min()) if ts.size else 1.0
    tp = hcseries.phi_series_weights(space, ktype, lam, t_min, tol)
    tm = hcseries.phi_series_weights(space, ktype, -lam, t_min, tol)
    rho = space.rho_f
    n = max(tp.n_max, tm.n_max)
    ms = np.arange(0, n + 1, 2)
    decay = np.exp(-np.outer(ts, ms))
    gp = np.array([tp.values[m] if m <= tp.n_max else 0.0 for m in ms])
    gm = np.array([tm.values[m] if m <= tm.n_max else 0.0 for m in ms])
    phi_p = np.exp((lam - rho) * ts) * (decay @ gp)
    phi_m = np.exp((-lam - rho) * ts) * (decay @ gm)
    return eta_w * (phi_p + cres.value * phi_m)


def p_r_poly(space: Space, ktype: Optional[KType], R: float) -> Poly:
    """Clearing polynomial for the Eisenstein poles in {Re lambda > -R}.

    Without a K-type this is the fixed product
    prod_{j=0}^{[R]} (lambda + rho + 2j)(lambda - rho + q + 2j); with one,
    the minimal monic product over the catalog poles above -R.
    """
    if R <= 0:
        raise DomainViolation("R must be positive")
    kt = ktype or K_INVARIANT
    rho = space.rho
    if kt.trivial:
        top = math.floor(R)
        roots = []
        for j in range(int(top) + 1):
            roots.append(float(-rho - 2 * j))
            roots.append(float(rho - space.q - 2 * j))
        return Poly(tuple(roots))
    cat = pole_catalog(space, kt)
    vals: set[Fraction] = set()
    for pr in cat.e_poles:
        vals.update(pr.members_down_to(-R))
    roots = sorted((float(v) for v in vals), reverse=True)
    return Poly(tuple(roots))


def _series_device_value(space: Space, kt: KType, poly: Poly, lam_h: complex,
                         t: float, n_max: int) -> complex:
    # p_R(lam) (Phi_lam + c(lam) Phi_{-lam}) with no pole bookkeeping.
    gp = hcseries._gamma_raw(space, kt, lam_h, n_max)
    gm = hcseries._gamma_raw(space, kt, -lam_h, n_max)
    rho = space.rho_f
    sp_ = 0.0 + 0.0j
    sm = 0.0 + 0.0j
    for m in range(n_max, -1, -2):
        w = math.exp(-m * t)
        sp_ += gp[m] * w
        sm += gm[m] * w
    phi_p = cmath.exp((lam_h - rho) * t) * sp_
    phi_m = cmath.exp((-lam_h - rho) * t) * sm
    return poly(lam_h) * (phi_p + _c_raw(space, kt, lam_h) * phi_m)


def _ring_average(space: Space, kt: KType, poly: Poly, lam0: complex,
                  eta, w: int, t: float) -> complex:
    # Mean over a small circle; kills the simple-pole term of the Laurent
    # expansion exactly and the next seven orders by symmetry.
    r = 1e-5
    total = 0.0 + 0.0j
    npts = 8
    for j in range(npts):
        ang = 2.0 * math.pi * (j + 0.5) / npts
        lam = lam0 + r * cmath.exp(1j * ang)
        res = eisenstein_closed(space, kt, lam, eta, w, t)
        if res.value is None:
            raise SeriesPole("closed form singular on regularization ring")
        total += poly(lam) * res.value
    return total / npts


def eisenstein_regularized(space: Space, ktype: Optional[KType], R: float,
                           lam0: complex, eta, w: int, t: float) -> EvalResult:
    """p_R(lambda_0) E(lambda_0, eta)(t), finite at every catalog point.

    Away from the pole catalog this is the plain product with the closed
    form.  Within 1e-6 of a catalog pole the value is the analytic limit,
    computed by one complex-step evaluation of the series representation
    of (lambda - lambda_0) p_R E at lambda_0 + i 1e-20: the real part is
    the limit (the step carries the derivative in its imaginary part).
    Between 1e-6 and 1e-3 the conditioning warning status is attached.
    """
    lam0 = complex(lam0)
    if lam0.real < -R - 1e-9:
        raise OutOfDomain(f"Re lambda = {lam0.real} below -R = {-R}")
    kt = ktype or K_INVARIANT
    kt.validate_for(space)
    poly = p_r_poly(space, kt, R)
    cat = pole_catalog(space, kt)
    dist, snap = _nearest(cat.e_poles, lam0)
    ev = as_eta(space, eta)
    eta_w = ev[w]
    if dist >= _POLE_WARN or snap is None:
        closed = eisenstein_closed(space, kt, lam0, eta, w, t)
        if closed.value is None:
            return EvalResult(None, math.inf, closed.status)
        pv = poly(lam0)
        return EvalResult(pv * closed.value, abs(pv) * closed.abs_err,
                          closed.status)
    if dist >= _POLE_SWITCH:
        closed = eisenstein_closed(space, kt, lam0, eta, w, t)
        if closed.value is None:
            return EvalResult(None, math.inf, closed.status)
        pv = poly(lam0)
        return EvalResult(pv * closed.value, abs(pv) * closed.abs_err,
                          Status.ILL_CONDITIONED)
    lam_star = float(snap)
    if t >= T_MIN_SERIES:
        n_max = 64
        while n_max < 4096:
            tail = math.exp(-(n_max + 1) * t) * (1 + n_max) ** 4
            if tail < 1e-14:
                break
            n_max *= 2
        base = _series_device_value(space, kt, poly,
                                    complex(lam_star, _COMPLEX_STEP), t, n_max)
        value = eta_w * complex(base.real, 0.0)
        err = abs(eta_w) * (abs(base.imag) * 10.0 + 1e-13 * abs(base) + 1e-15)
        return EvalResult(value, err, Status.REGULARIZED)
    base = _ring_average(space, kt, poly, complex(lam_star), eta, w, t)
    return EvalResult(base, 1e-10 * (1 + abs(base)), Status.REGULARIZED)


class Classification(str, Enum):
    BOUNDED = "Bounded"
    UNBOUNDED = "Unbounded"
    IDENTICALLY_ZERO = "IdenticallyZero"
    UNDETERMINED = "Undetermined"


def classify_bounded(space: Space, ktype: Optional[KType], R: float,
                     lam0: complex) -> Classification:
    """Boundedness of t -> p_R(lambda_0) E(lambda_0, eta)(t) on (0, inf).

    The function family is identically zero exactly at the nonpositive
    integers, bounded exactly on the strip |Re lambda| <= rho intersected
    with {Re >= -R}, and unbounded otherwise, except that for a fixed
    K-type with integer rho the integer window
    (rho, rho - q + |l| - |k|] is left undetermined.
    """
    lam0 = complex(lam0)
    if lam0.real < -R - 1e-9:
        raise OutOfDomain(f"Re lambda = {lam0.real} below -R = {-R}")
    kt = ktype or K_INVARIANT
    kt.validate_for(space)
    if near_nonpos_int(lam0) is not None:
        return Classification.IDENTICALLY_ZERO
    rho = space.rho
    if not kt.trivial and rho.denominator == 1:
        hi = rho - space.q + kt.al - kt.ak
        if abs(lam0.imag) <= POLE_EPS:
            n = round(lam0.real)
            if abs(lam0.real - n) <= POLE_EPS and rho < n <= hi:
                return Classification.UNDETERMINED
    if abs(lam0.real) <= space.rho_f + POLE_EPS:
        return Classification.BOUNDED
    return Classification.UNBOUNDED


def ode_residual(space: Space, ktype: Optional[KType], lam: complex, eta,
                 w: int, t: float, h: float = 1e-3) -> float:
    """Normalized defect of the radial eigen-equation on the closed form.

    Five-point central stencils approximate the second-order radial
    operator (with the K-type potential when one is set); the defect is
    |L E - (lambda^2 - rho^2) E| / (1 + |E|).
    """
    if not t > 2 * h > 0:
        raise DomainViolation("need t > 2h > 0")
    kt = ktype or K_INVARIANT
    vals = []
    for j in (-2, -1, 0, 1, 2):
        res = eisenstein_closed(space, kt, lam, eta, w, t + j * h)
        if res.value is None:
            raise SeriesPole("closed form singular inside the stencil")
        vals.append(res.value)
    f2 = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h * h)
    f1 = (vals[0] - 8 * vals[1] + 8 * vals[3] - vals[4]) / (12 * h)
    jpj = (space.p - 1) * math.tanh(t) + (space.q - 1) / math.tanh(t)
    pot = (kt.ak * (kt.ak + space.p - 2) / math.cosh(t) ** 2
           - kt.al * (kt.al + space.q - 2) / math.sinh(t) ** 2)
    rho = space.rho_f
    lhs = f2 + jpj * f1 + pot * vals[2]
    rhs = (lam * lam - rho * rho) * vals[2]
    return abs(lhs - rhs) / (1.0 + abs(vals[2]))


def jacobi_phi(alpha: float, beta: float, mu: complex, t: float) -> EvalResult:
    """Jacobi-normalized kernel 2F1((r+i mu)/2, (r-i mu)/2; alpha+1; -sinh^2 t)
    with r = alpha + beta + 1."""
    rj = alpha + beta + 1.0
    a = (rj + 1j * mu) / 2.0
    b = (rj - 1j * mu) / 2.0
    return hyp2f1_nonpos(a, b, alpha + 1.0, -math.sinh(t) ** 2)
