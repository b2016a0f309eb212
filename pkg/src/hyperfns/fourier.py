"""Jacobian-weighted spherical transform of radial test functions.

The transform of a compactly supported radial profile f is

    F f(lambda)(eta) = sum_w eta_w int_0^infty f_w(t) E(-lambda, 1)(t) J(t) dt,

with J(t) = cosh^{p-1} t sinh^{q-1} t.  On vertical spectral lines the
kernel is evaluated through the exponential series route, which keeps full
accuracy for large |Im lambda| where the closed form cancels; quadrature
is composite Gauss-Legendre with adaptive bisection.

The desk-scale harnesses built on top check the one-sided Plancherel
bound, the weighted Hausdorff-Young ratio, Riemann-Lebesgue decay along
vertical lines, and the Paley-Wiener envelope of smooth bumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss

from .core import (
    POLE_EPS,
    T_MIN_SERIES,
    DomainViolation,
    EvalResult,
    IntegrandPole,
    KType,
    K_INVARIANT,
    QuadratureBudgetExceeded,
    Space,
    Status,
    as_eta,
)
from . import eisenstein
from .eisenstein import pole_catalog

_MAX_PANELS = 4096
_IM_SWITCH = 4.0

_gl_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _gl_cache:
        _gl_cache[n] = leggauss(n)
    return _gl_cache[n]


def jacobian(space: Space, t: float) -> float:
    """Radial volume density cosh^{p-1} t sinh^{q-1} t (t >= 0)."""
    if t < 0:
        raise DomainViolation("t must be >= 0")
    return math.cosh(t) ** (space.p - 1) * math.sinh(t) ** (space.q - 1)


class ProfileKind(str, Enum):
    SMOOTH_BUMP = "SmoothBump"
    POLY_BUMP = "PolynomialBump"
    CUSTOM = "CustomSampled"


@dataclass(frozen=True)
class OrbitProfile:
    """One orbit's radial factor, compactly supported in (0, infinity)."""

    kind: ProfileKind
    a: float
    b: float
    amplitude: float = 1.0
    fn: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        if not (0.0 < self.a < self.b):
            raise DomainViolation("need support 0 < a < b")

    def __call__(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        out = np.zeros_like(ts)
        inside = (ts > self.a) & (ts < self.b)
        if not inside.any():
            return out
        x = ts[inside]
        if self.kind is ProfileKind.SMOOTH_BUMP:
            out[inside] = self.amplitude * np.exp(-1.0 / ((x - self.a) * (self.b - x)))
        elif self.kind is ProfileKind.POLY_BUMP:
            out[inside] = self.amplitude * (x - self.a) * (self.b - x)
        else:
            out[inside] = self.amplitude * self.fn(x)
        return out


@dataclass(frozen=True)
class RadialProfile:
    """Per-orbit radial test function."""

    per_orbit: dict[int, Optional[OrbitProfile]]

    @classmethod
    def smooth_bump(cls, space: Space, a: float, b: float,
                    amplitudes=None) -> "RadialProfile":
        return cls._build(space, ProfileKind.SMOOTH_BUMP, a, b, amplitudes)

    @classmethod
    def poly_bump(cls, space: Space, a: float, b: float,
                  amplitudes=None) -> "RadialProfile":
        return cls._build(space, ProfileKind.POLY_BUMP, a, b, amplitudes)

    @classmethod
    def zero(cls, space: Space) -> "RadialProfile":
        return cls({w: None for w in space.orbits})

    @classmethod
    def _build(cls, space, kind, a, b, amplitudes):
        if amplitudes is None:
            amplitudes = {w: 1.0 for w in space.orbits}
        per = {}
        for w in space.orbits:
            amp = float(amplitudes.get(w, 0.0))
            per[w] = OrbitProfile(kind, a, b, amp) if amp != 0.0 else None
        return cls(per)

    def orbit(self, w: int) -> Optional[OrbitProfile]:
        return self.per_orbit.get(w)

    @property
    def is_zero(self) -> bool:
        return all(v is None for v in self.per_orbit.values())


@dataclass(frozen=True)
class QuadratureConfig:
    panels: int = 4
    nodes_per_panel: int = 32
    target_abs_err: float = 1e-10

    def __post_init__(self):
        if self.panels < 1 or self.nodes_per_panel < 2:
            raise DomainViolation("quadrature counts must be positive")


@dataclass(frozen=True)
class LineSpec:
    """A vertical spectral line lambda_0 + i xi over a grid of heights."""

    re_part: float
    heights: np.ndarray

    def points(self) -> np.ndarray:
        return self.re_part + 1j * np.asarray(self.heights, dtype=float)


def _integrate_adaptive(fvec: Callable[[np.ndarray], np.ndarray], a: float,
                        b: float, cfg: QuadratureConfig) -> tuple[complex, float]:
    """Composite Gauss-Legendre with bisection on the 16-vs-32 indicator."""
    nodes_hi, w_hi = _gl(cfg.nodes_per_panel)
    nodes_lo, w_lo = _gl(max(2, cfg.nodes_per_panel // 2))
    width0 = (b - a) / cfg.panels
    stack = [(a + i * width0, a + (i + 1) * width0) for i in range(cfg.panels)]
    total = 0.0 + 0.0j
    err_total = 0.0
    used = 0
    while stack:
        lo, hi = stack.pop()
        used += 1
        if used > _MAX_PANELS:
            raise QuadratureBudgetExceeded(
                f"more than {_MAX_PANELS} panels needed on [{a}, {b}]")
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        th = mid + half * nodes_hi
        tl = mid + half * nodes_lo
        fh = fvec(th)
        fl = fvec(tl)
        ih = half * np.sum(w_hi * fh)
        il = half * np.sum(w_lo * fl)
        indicator = abs(ih - il)
        budget = cfg.target_abs_err * (hi - lo) / (b - a)
        if indicator <= budget or (hi - lo) < 1e-12 * (b - a):
            total += ih
            err_total += indicator
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    return total, err_total


def _kernel_values(space: Space, ktype: Optional[KType], lam: complex,
                   ts: np.ndarray) -> np.ndarray:
    """E(-lambda, 1)(t) on the nodes, choosing the stable route."""
    mlam = -lam
    if abs(lam.imag) >= _IM_SWITCH and ts.min() >= T_MIN_SERIES:
        return eisenstein.eisenstein_series_profile(
            space, ktype, mlam, 1.0, 1, ts)
    out = np.empty(ts.shape, dtype=complex)
    for i, t in enumerate(ts):
        res = eisenstein.eisenstein_closed(space, ktype, mlam, 1.0, 1, float(t))
        if res.value is None:
            raise IntegrandPole(f"kernel singular at lambda = {lam}")
        out[i] = res.value
    return out


def fourier_transform(space: Space, ktype: Optional[KType], f: RadialProfile,
                      lam: complex, eta, quad: QuadratureConfig | None = None,
                      regularize_with: Optional[float] = None) -> EvalResult:
    """Transform of f at spectral parameter lambda against eta.

    With regularize_with = R the integrand carries the clearing polynomial
    p_R(-lambda), so the returned value is p_R(-lambda) F f(lambda)(eta),
    finite on the whole window {Re lambda <= R}.
    """
    lam = complex(lam)
    quad = quad or QuadratureConfig()
    kt = ktype or K_INVARIANT
    ev = as_eta(space, eta)
    if f.is_zero:
        return EvalResult(0.0 + 0.0j, 0.0, Status.OK)
    cat = pole_catalog(space, kt)
    at_pole = any(p.contains(-lam) for p in cat.e_poles)
    if at_pole and regularize_with is None:
        raise IntegrandPole(f"-lambda = {-lam} lies in the kernel pole catalog")

    total = 0.0 + 0.0j
    err = 0.0
    status = Status.OK
    for w in space.orbits:
        prof = f.orbit(w)
        if prof is None or ev[w] == 0:
            continue
        if regularize_with is not None:
            def fvec(ts, _w=w, _prof=prof):
                J = np.cosh(ts) ** (space.p - 1) * np.sinh(ts) ** (space.q - 1)
                ker = np.array([
                    eisenstein.eisenstein_regularized(
                        space, kt, regularize_with, -lam, 1.0, 1, float(t)).value
                    for t in ts])
                return _prof(ts) * ker * J
            status = Status.REGULARIZED
        else:
            def fvec(ts, _w=w, _prof=prof):
                J = np.cosh(ts) ** (space.p - 1) * np.sinh(ts) ** (space.q - 1)
                return _prof(ts) * _kernel_values(space, kt, lam, ts) * J
        val, e = _integrate_adaptive(fvec, prof.a, prof.b, quad)
        total += ev[w] * val
        err += abs(ev[w]) * e
    return EvalResult(total, err, status)


def lr_norm(space: Space, f: RadialProfile, r: float,
            quad: QuadratureConfig | None = None) -> float:
    """(sum_w int |f_w|^r J dt)^{1/r} with the radial volume density."""
    quad = quad or QuadratureConfig()
    total = 0.0
    for w in space.orbits:
        prof = f.orbit(w)
        if prof is None:
            continue
        def fvec(ts, _prof=prof):
            J = np.cosh(ts) ** (space.p - 1) * np.sinh(ts) ** (space.q - 1)
            return np.abs(_prof(ts)) ** r * J + 0.0j
        val, _ = _integrate_adaptive(fvec, prof.a, prof.b, quad)
        total += val.real
    return total ** (1.0 / r)


def _line_integral(space: Space, ktype: Optional[KType], f: RadialProfile,
                   eta, lam0: float, xi_max: float, power: float,
                   weight: Callable[[complex], float],
                   quad: QuadratureConfig) -> float:
    """int_{-xi_max}^{xi_max} (weight(lam) |F f(lam)(eta)|)^power d xi."""
    support_b = max(prof.b for prof in f.per_orbit.values() if prof is not None)
    width = min(2.0, 2.0 * math.pi / support_b)
    n_panels = max(4, int(math.ceil(2 * xi_max / width)))
    nodes, ws = _gl(quad.nodes_per_panel)
    total = 0.0
    for i in range(n_panels):
        lo = -xi_max + i * (2 * xi_max / n_panels)
        hi = lo + 2 * xi_max / n_panels
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        for x, wgt in zip(mid + half * nodes, half * ws):
            lam = lam0 + 1j * x
            val = fourier_transform(space, ktype, f, lam, eta, quad)
            total += wgt * (weight(lam) * abs(val.value)) ** power
    return total


def plancherel_check(space: Space, f: RadialProfile, xi_max: float,
                     quad: QuadratureConfig | None = None) -> tuple[float, float]:
    """Truncated imaginary-axis energy against the product norm bound.

    Returns (lhs, rhs) with
    lhs = (int_{-xi_max}^{xi_max} |F f(i xi)(eta)|^2 d xi)^{1/2} and
    rhs = ||f||_2 ||eta|| for the all-ones eta.
    """
    quad = quad or QuadratureConfig()
    eta = as_eta(space, 1.0)
    if f.is_zero:
        return 0.0, 0.0
    lhs2 = _line_integral(space, None, f, eta, 0.0, xi_max, 2.0,
                          lambda lam: 1.0, quad)
    rhs = lr_norm(space, f, 2.0, quad) * eta.norm()
    return math.sqrt(lhs2), rhs


def hy_ratio(space: Space, ktype: Optional[KType], f: RadialProfile, r: float,
             lambda0: float, R: float, xi_max: float,
             quad: QuadratureConfig | None = None) -> float:
    """Empirical weighted Hausdorff-Young ratio on a vertical line.

    Computes the truncated L^{r'} norm of
    p_R(-(lambda0 + i xi)) F f(lambda0 + i xi)(eta) / (1 + lambda0 + i xi)^d
    divided by ||f||_r ||eta||, with d = deg p_R and 1/r + 1/r' = 1; for
    r = 1 the supremum over the quadrature grid is used.
    """
    quad = quad or QuadratureConfig()
    if not (1.0 <= r <= 2.0):
        raise DomainViolation("r must lie in [1, 2]")
    rho = space.rho_f
    if abs(lambda0) > (2.0 / r - 1.0) * rho + 1e-12 or lambda0 > R + 1e-12:
        raise DomainViolation(
            f"lambda0 = {lambda0} outside the admissible strip for r = {r}")
    if f.is_zero:
        return 0.0
    eta = as_eta(space, 1.0)
    poly = eisenstein.p_r_poly(space, ktype, R)
    d = poly.degree

    def weight(lam: complex) -> float:
        return abs(poly(-lam)) / abs(1.0 + lam) ** d

    denom = lr_norm(space, f, r, quad) * eta.norm()
    if r == 1.0:
        # sup norm over a dense height grid
        best = 0.0
        for xi in np.linspace(-xi_max, xi_max, 801):
            lam = lambda0 + 1j * xi
            val = fourier_transform(space, ktype, f, lam, eta, quad)
            best = max(best, weight(lam) * abs(val.value))
        return best / denom
    rp = r / (r - 1.0)
    lhs = _line_integral(space, ktype, f, eta, lambda0, xi_max, rp,
                         weight, quad) ** (1.0 / rp)
    return lhs / denom


def rl_decay_profile(space: Space, ktype: Optional[KType], f: RadialProfile,
                     r: float, lambda0: float, heights,
                     quad: QuadratureConfig | None = None) -> list[float]:
    """|F f(lambda0 + i xi)(eta)| at the requested heights xi.

    lambda0 must lie in the open admissible strip for the exponent r.
    """
    quad = quad or QuadratureConfig()
    if not (1.0 <= r < 2.0):
        raise DomainViolation("r must lie in [1, 2)")
    rho = space.rho_f
    if abs(lambda0) >= (2.0 / r - 1.0) * rho and not (r == 1.0 and abs(lambda0) <= rho + 1e-12):
        raise DomainViolation("lambda0 outside the open strip")
    eta = as_eta(space, 1.0)
    out = []
    for xi in heights:
        if f.is_zero:
            out.append(0.0)
            continue
        val = fourier_transform(space, ktype, f, lambda0 + 1j * float(xi),
                                eta, quad)
        out.append(abs(val.value))
    return out


@dataclass(frozen=True)
class PaleyWienerFit:
    """Least dominating constant and fitted exponential rate."""

    M: float
    rate: float
    support_b: float

    @property
    def rate_ok(self) -> bool:
        return self.rate <= self.support_b + 0.05


def paley_wiener_check(space: Space, f: RadialProfile, n: int, R: float,
                       sigma_grid=None, xi_grid=None,
                       quad: QuadratureConfig | None = None) -> PaleyWienerFit:
    """Fit the decay envelope of the cleared transform of a smooth bump.

    Over the grid {sigma + i xi} the quantity
    V = |p_R(-lambda) F f(lambda)(eta)| (1 + |lambda|)^n / ||eta||
    is bounded by M e^{b sigma} with b the support endpoint; the least such
    M over the grid is reported together with the exponential rate fitted
    by regressing log max_xi V on sigma.
    """
    quad = quad or QuadratureConfig()
    if f.is_zero:
        return PaleyWienerFit(0.0, 0.0, 0.0)
    support_b = max(prof.b for prof in f.per_orbit.values() if prof is not None)
    if sigma_grid is None:
        sigma_grid = np.linspace(0.0, R, 6)
    if xi_grid is None:
        xi_grid = np.linspace(0.0, 6.0, 13)
    eta = as_eta(space, 1.0)
    poly = eisenstein.p_r_poly(space, None, R)
    m_best = 0.0
    logmax = []
    for sigma in sigma_grid:
        vmax = 0.0
        for xi in xi_grid:
            lam = float(sigma) + 1j * float(xi)
            val = fourier_transform(space, None, f, lam, eta, quad)
            v = (abs(poly(-lam)) * abs(val.value)
                 * (1.0 + abs(lam)) ** n / eta.norm())
            vmax = max(vmax, v)
        logmax.append(math.log(max(vmax, 1e-300)))
        m_best = max(m_best, vmax * math.exp(-support_b * float(sigma)))
    sig = np.asarray(sigma_grid, dtype=float)
    ly = np.asarray(logmax)
    slope = float(np.polyfit(sig, ly, 1)[0]) if len(sig) > 1 else 0.0
    return PaleyWienerFit(m_best, slope, support_b)
