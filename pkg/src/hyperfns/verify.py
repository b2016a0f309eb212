"""Desk-scale verification suites behind the command-line `verify` command.

Each suite function returns a list of CheckResult records, one per named
invariant, so the CLI can print one line per check and exit nonzero when
any fails.  The tests run the same identities at acceptance scale; here
the grids are kept small enough for interactive use.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import EtaVector, KType, Space, Status, as_eta, rel_diff
from . import eisenstein, fourier, hcseries, specfun
from .eisenstein import (
    c_function,
    c_matrix,
    classify_bounded,
    eisenstein_closed,
    eisenstein_regularized,
    eisenstein_series,
    jacobi_phi,
    ode_residual,
    p_r_poly,
    pole_catalog,
)
from .fourier import QuadratureConfig, RadialProfile, fourier_transform, lr_norm
from .specfun import GammaRatioSpec, gamma_ratio, hyp2f1_nonpos, log_gamma


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _check(name: str, worst: float, tol: float) -> CheckResult:
    return CheckResult(name, worst <= tol, f"worst={worst:.3e} tol={tol:.1e}")


def regular_lambda(space: Space, ktype, lam: complex, margin: float = 0.15) -> bool:
    """True when lambda and -lambda keep `margin` distance from every
    catalog progression and from the positive half-integer lattice."""
    cat = pole_catalog(space, ktype)
    progs = cat.e_poles + cat.c_poles + cat.c_zeros + cat.e_zeros
    for mu in (lam, -lam):
        for pr in progs:
            if pr.distance(mu) < margin:
                return False
        if abs(mu.imag) < margin:
            x = 2.0 * mu.real
            if x > 0.5 and abs(x - round(x)) < 2 * margin:
                return False
    return True


def sample_regular(space: Space, ktype, rng, n: int, re_max: float = 4.0,
                   im_max: float = 4.0) -> list[complex]:
    out = []
    while len(out) < n:
        lam = complex(rng.uniform(-re_max, re_max), rng.uniform(-im_max, im_max))
        if regular_lambda(space, ktype, lam):
            out.append(lam)
    return out


# ---------------------------------------------------------------- identities

def suite_identities(space: Space | None = None, n: int = 40,
                     seed: int = 7) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    worst = 0.0
    for _ in range(n):
        z = complex(rng.uniform(0.2, 8.0), rng.uniform(-20.0, 20.0))
        lhs = log_gamma(z) + log_gamma(1.0 - z)
        rhs = cmath.log(math.pi / cmath.sin(math.pi * z))
        diff = abs(cmath.exp(lhs - rhs) - 1.0)
        worst = max(worst, diff)
    out.append(_check("loggamma reflection", worst, 1e-11))

    worst = 0.0
    for _ in range(n):
        a = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
        c = complex(rng.uniform(0.5, 4), rng.uniform(-1, 1))
        z = rng.uniform(-50.0, 0.0)
        lhs = hyp2f1_nonpos(a, b, c, z)
        w = z / (z - 1.0)
        rhs_val, _ = specfun._gauss_series(a, c - b, c, w)
        rhs = cmath.exp(-a * math.log1p(-z)) * rhs_val
        if lhs.value is None:
            continue
        worst = max(worst, rel_diff(lhs.value, rhs))
    out.append(_check("2F1 Pfaff symmetry", worst, 1e-9))

    worst = 0.0
    for z in np.linspace(-0.6, -0.4, 5):
        for _ in range(4):
            a = complex(rng.uniform(-1, 2), rng.uniform(-1, 1))
            b = complex(rng.uniform(-1, 2), rng.uniform(-1, 1))
            c = complex(rng.uniform(0.5, 3), 0.0)
            r1 = specfun._eval_direct(a, b, c, float(z))
            r2 = specfun._eval_pfaff(a, b, c, float(z))
            worst = max(worst, rel_diff(r1.value, r2.value))
    for z in np.linspace(-2.2, -1.8, 5):
        for _ in range(4):
            a = complex(rng.uniform(-1, 2), rng.uniform(0.3, 1.0))
            b = complex(rng.uniform(-1, 2), rng.uniform(-1.0, -0.3))
            c = complex(rng.uniform(0.5, 3), 0.0)
            r1 = specfun._eval_pfaff(a, b, c, float(z))
            r2 = specfun._eval_inversion(a, b, c, float(z))
            worst = max(worst, rel_diff(r1.value, r2.value))
    out.append(_check("2F1 region overlap", worst, 1e-9))

    worst = 0.0
    for _ in range(10):
        args_n = [complex(rng.uniform(0.3, 6), rng.uniform(-1, 1)) for _ in range(2)]
        args_d = [complex(rng.uniform(0.3, 6), rng.uniform(-1, 1)) for _ in range(2)]
        ratio = gamma_ratio(GammaRatioSpec.of(args_n, args_d))
        direct = 1.0 + 0.0j
        for v in args_n:
            direct *= cmath.exp(log_gamma(v))
        for v in args_d:
            direct /= cmath.exp(log_gamma(v))
        worst = max(worst, rel_diff(ratio.value, direct))
    out.append(_check("gamma_ratio vs direct product", worst, 1e-11))

    spaces = [space] if space else [Space(3, 2), Space(5, 3), Space(2, 1)]
    worst_fun = worst_conj = worst_unit = worst_prod = 0.0
    for sp in spaces:
        for lam in sample_regular(sp, None, rng, 12):
            eta = as_eta(sp, [complex(rng.uniform(0.3, 1), rng.uniform(-1, 1))
                              for _ in sp.orbits])
            mat = c_matrix(sp, -lam)
            eta2 = mat.apply(sp, eta)
            for w in sp.orbits:
                t = rng.uniform(0.4, 2.5)
                a1 = eisenstein_closed(sp, None, -lam, eta, w, t).value
                a2 = eisenstein_closed(sp, None, lam, eta2, w, t).value
                worst_fun = max(worst_fun, rel_diff(a1, a2))
                b1 = eisenstein_closed(sp, None, -lam.conjugate(), eta, w, t).value
                b2 = eisenstein_closed(sp, None, -lam, eta.conjugate(), w, t).value
                worst_conj = max(worst_conj, rel_diff(b1.conjugate(), b2))
            cv = c_function(sp, None, lam).value
            cm = c_function(sp, None, -lam).value
            worst_prod = max(worst_prod, abs(cv * cm - 1.0))
        for _ in range(8):
            xi = rng.uniform(0.3, 8.0)
            cv = c_function(sp, None, 1j * xi).value
            worst_unit = max(worst_unit, abs(abs(cv) - 1.0))
    out.append(_check("functional equation", worst_fun, 1e-8))
    out.append(_check("conjugation symmetry", worst_conj, 1e-9))
    out.append(_check("unitary axis |c| = 1", worst_unit, 1e-10))
    out.append(_check("c(l) c(-l) = 1", worst_prod, 1e-7))

    worst = 0.0
    for sp in spaces:
        for lam in sample_regular(sp, None, rng, 4, re_max=2.5, im_max=2.5):
            for t in (0.7, 1.4, 2.8):
                e1 = eisenstein_closed(sp, None, lam, 1.0, 1, t).value
                e2 = eisenstein_series(sp, None, lam, 1.0, 1, t).value
                worst = max(worst, rel_diff(e1, e2))
    out.append(_check("closed vs series route", worst, 1e-8))

    worst = 0.0
    for sp in spaces:
        for lam in sample_regular(sp, None, rng, 3, re_max=2.0, im_max=2.0):
            worst = max(worst, ode_residual(sp, None, lam, 1.0, 1, 1.7))
        for kt in (KType(1, 0), KType(0, 2)):
            for lam in sample_regular(sp, kt, rng, 2, re_max=2.0, im_max=2.0):
                worst = max(worst, ode_residual(sp, kt, lam, 1.0, 1, 1.7))
    out.append(_check("radial operator residual", worst, 1e-5))

    worst = 0.0
    for sp in spaces:
        for _ in range(4):
            lam = complex(rng.uniform(0.3, 2.0), rng.uniform(-1, 1))
            if not regular_lambda(sp, None, lam):
                continue
            val = eisenstein_closed(sp, None, lam, 1.0, 1, 30.0).value
            dev = abs(cmath.exp((sp.rho_f - lam) * 30.0) * val - 1.0)
            worst = max(worst, dev)
    out.append(_check("leading asymptotics at t = 30", worst, 1e-3))

    worst = 0.0
    for sp in (Space(2, 3), Space(3, 3)):
        alpha = sp.q / 2.0 - 1.0
        beta = sp.p / 2.0 - 1.0
        for lam in sample_regular(sp, None, rng, 4, re_max=2.0, im_max=2.0):
            for t in (0.6, 1.5):
                gr = gamma_ratio(GammaRatioSpec.of(
                    [(lam + sp.rho_f) / 2, (lam - sp.rho_f + sp.q) / 2],
                    [lam, sp.q / 2.0]))
                pref = 2.0 ** (lam - sp.rho_f) * gr.value
                phi = jacobi_phi(alpha, beta, -1j * lam, t).value
                e = eisenstein_closed(sp, None, lam, 1.0, 1, t).value
                worst = max(worst, rel_diff(e, pref * phi))
    out.append(_check("Jacobi-form cross-check", worst, 1e-8))

    worst = 0.0
    R = 5.0
    for sp in (Space(3, 2), Space(5, 3)):
        poly = p_r_poly(sp, None, R)
        for lam in sample_regular(sp, None, rng, 5, re_max=4.5, im_max=3.0):
            if lam.real < -R:
                continue
            pv = abs(poly(lam))
            for t in (0.2, 1.0, 6.0, 30.0):
                val = eisenstein_closed(sp, None, lam, 1.0, 1, t).value
                bound = ((1 + abs(lam)) ** poly.degree * (1 + t)
                         * math.exp((abs(lam.real) - sp.rho_f) * t))
                worst = max(worst, pv * abs(val) / bound)
    out.append(_check("sharp growth envelope", worst, 8.0e6))

    ok = True
    details = []
    for sp in (Space(3, 2),):
        rho = sp.rho_f
        cat = pole_catalog(sp, None)
        for lam0 in (complex(0.4, 0.6), complex(-rho + 0.1, 0.2),
                     complex(rho + 0.7, 0.0), complex(-rho - 0.9, 0.4)):
            if min(pr.distance(lam0) for pr in cat.e_poles) < 0.15:
                continue
            cls = classify_bounded(sp, None, R, lam0)
            ts = np.arange(20.0, 40.0, 2.0)
            logs = [math.log(abs(eisenstein_regularized(
                sp, None, R, lam0, 1.0, 1, t).value)) for t in ts]
            slope = float(np.polyfit(ts, logs, 1)[0])
            if cls is eisenstein.Classification.BOUNDED and slope > 1e-3:
                ok = False
                details.append(f"bounded point grows at {lam0}")
            if cls is eisenstein.Classification.UNBOUNDED:
                target = abs(lam0.real) - rho
                if abs(slope - target) > 0.25 * abs(target):
                    ok = False
                    details.append(f"slope {slope:.2f} vs {target:.2f} at {lam0}")
    out.append(CheckResult("classifier vs empirical growth", ok,
                           "; ".join(details) or "classes match measured trends"))
    return out


# -------------------------------------------------------------------- series

def suite_series(space: Space | None = None, seed: int = 11) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    spaces = [space] if space else [Space(3, 2), Space(5, 3), Space(7, 2)]

    c, s = hcseries.cs_coeffs(120)
    t = 1.0
    csum = sum(cm * math.exp(-m * t) for m, cm in enumerate(c))
    ssum = sum(sm * math.exp(-m * t) for m, sm in enumerate(s))
    worst = max(abs(csum - 1.0 / math.cosh(t) ** 2),
                abs(ssum - 1.0 / math.sinh(t) ** 2))
    out.append(_check("sech^2 / csch^2 partial sums", worst, 1e-10))

    worst = 0.0
    for sp in spaces:
        b = hcseries.b_coeffs(sp, 31)
        worst = max(worst, max(abs(v) for v in b[1::2]), abs(b[0] - 1.0))
        ts = 1.3
        rho = sp.rho_f
        target = (math.cosh(ts) ** (-(sp.p - 1) / 2.0)
                  * math.sinh(ts) ** (-(sp.q - 1) / 2.0) * math.exp(rho * ts))
        # normalized so b_0 = 1: compare shapes via ratio at two radii
        val = sum(bk * math.exp(-k * ts) for k, bk in enumerate(
            hcseries.b_coeffs(sp, 80)))
        scale = target / val
        ts2 = 2.1
        target2 = (math.cosh(ts2) ** (-(sp.p - 1) / 2.0)
                   * math.sinh(ts2) ** (-(sp.q - 1) / 2.0) * math.exp(rho * ts2))
        val2 = sum(bk * math.exp(-k * ts2) for k, bk in enumerate(
            hcseries.b_coeffs(sp, 80)))
        worst = max(worst, abs(target2 / val2 / scale - 1.0))
    out.append(_check("b-series shape and parity", worst, 1e-9))

    worst = 0.0
    for sp in spaces:
        lam = complex(rng.uniform(0.2, 2.0), rng.uniform(0.3, 2.0))
        full = hcseries.gamma_coeffs(sp, None, lam, 24)
        triv = hcseries.gamma_coeffs(sp, KType(0, 0), lam, 24)
        worst = max(worst, max(abs(a - b) for a, b in
                               zip(full.values, triv.values)))
    out.append(_check("trivial K-type reduction", worst, 1e-12))

    ok = True
    detail = []
    for sp in spaces:
        m = 24
        xs = np.arange(0.05, m / 2 + 0.5, 0.01)
        for x in xs:
            tab = hcseries.gamma_coeffs(sp, None, complex(x), m)
            if abs(tab.values[m]) > 1e6:
                near = min(abs(x - 0.5 * j) for j in range(1, m + 1))
                if near > 1e-2 + 1e-6:
                    ok = False
                    detail.append(f"spike off lattice at {x:.3f} ({sp.p},{sp.q})")
    out.append(CheckResult("coefficient pole containment", ok,
                           "; ".join(detail) or "spikes only on the lattice"))

    worst = 0.0
    for sp in spaces:
        chi = hcseries.TAIL_CHI.get((sp.p, sp.q), 6.0)
        m = 40
        for lam0 in range(1, m // 2 + 1):
            for ang in (0.25, 0.75, 1.25, 1.75):
                lam = lam0 + 1e-3 * cmath.exp(1j * math.pi * ang)
                tab = hcseries._gamma_raw(sp, None, lam, m)
                for mm in range(2, m + 1, 2):
                    ratio = abs((lam - lam0) * tab[mm]) / (1.0 + mm) ** chi
                    worst = max(worst, ratio)
    out.append(_check("regularized residue envelope", worst, hcseries.REG_BOUND_M))
    return out


# ------------------------------------------------------------------- fourier

def suite_fourier(space: Space | None = None, seed: int = 13) -> list[CheckResult]:
    out = []
    sp = space or Space(5, 3)
    quad = QuadratureConfig(target_abs_err=1e-10)
    f = RadialProfile.smooth_bump(sp, 1.0, 2.0)
    lam = 0.5 + 2.0j

    v1 = fourier_transform(sp, None, f, lam, 1.0, quad).value
    v2 = fourier_transform(sp, None, f, lam, 2.0, quad).value
    out.append(_check("linearity in eta", abs(v2 - 2.0 * v1) / abs(v2), 1e-12))

    z = fourier_transform(sp, None, RadialProfile.zero(sp), lam, 1.0, quad)
    out.append(_check("zero profile maps to zero", abs(z.value), 0.0))

    tight = QuadratureConfig(target_abs_err=5e-11)
    vt = fourier_transform(sp, None, f, lam, 1.0, tight)
    out.append(_check("quadrature self-consistency",
                      abs(vt.value - v1), max(1e-13, 2 * vt.abs_err + 1e-13)))

    worst = 0.0
    rng = np.random.default_rng(seed)
    for _ in range(4):
        mu = complex(rng.uniform(0.1, 1.5), rng.uniform(4.5, 7.0))
        lhs = fourier_transform(sp, None, f, -mu, 1.0, quad).value
        mat = c_matrix(sp, mu)
        eta2 = mat.apply(sp, as_eta(sp, 1.0))
        rhs = fourier_transform(sp, None, f, mu, eta2, quad).value
        worst = max(worst, rel_diff(lhs, rhs))
    out.append(_check("transform symmetry under lambda -> -lambda", worst, 1e-7))

    kt = fourier_transform(sp, KType(0, 0), f, lam, 1.0, quad).value
    out.append(_check("trivial K-type transform", abs(kt - v1) / abs(v1), 1e-9))

    lhs, rhs = fourier.plancherel_check(sp, f, 40.0, quad)
    out.append(CheckResult("Plancherel bound (truncated)", lhs <= rhs,
                           f"lhs={lhs:.6f} rhs={rhs:.6f}"))

    n2 = lr_norm(sp, f, 2.0, quad)
    import scipy.integrate as si
    direct, _ = si.quad(lambda t: math.exp(-2.0 / ((t - 1) * (2 - t)))
                        * fourier.jacobian(sp, t), 1.0, 2.0)
    out.append(_check("measure consistency", abs(n2 - math.sqrt(direct)), 1e-8))
    return out


SUITES = {
    "identities": suite_identities,
    "series": suite_series,
    "fourier": suite_fourier,
}
