"""Acceptance suite.

One test per acceptance criterion, each printing a single pass line with
its elapsed time.  Tolerances and runtime budgets are fixed here and
asserted; grids exclude annuli of radius 0.15 around the pole catalogs
and the coefficient lattice.
"""

import cmath
import math
import time

import numpy as np
import pytest

from hyperfns.core import KType, Space, as_eta, rel_diff
from hyperfns import eisenstein, fixtures, fourier
from hyperfns.eisenstein import (
    Classification,
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
from hyperfns.fourier import QuadratureConfig, RadialProfile
from hyperfns.specfun import GammaRatioSpec, gamma_ratio
from hyperfns.verify import regular_lambda, sample_regular

GRID_SPACES = [Space(2, 1), Space(3, 2), Space(5, 3), Space(7, 2)]
T_GRID = (0.5, 1.0, 2.0, 4.0)
QUAD = QuadratureConfig(target_abs_err=1e-10)


def lambda_grid(space: Space, ktype=None):
    vals = np.linspace(-2.5, 2.5, 5)
    out = []
    for re in vals:
        for im in vals:
            lam = complex(re, im)
            if regular_lambda(space, ktype, lam, margin=0.15):
                out.append(lam)
    return out


def _report(num: int, name: str, t0: float, budget: float, worst=None):
    dt = time.time() - t0
    extra = "" if worst is None else f" worst={worst:.3e}"
    print(f"ACCEPTANCE {num} {name}: PASS{extra} ({dt:.1f}s)")
    assert dt < budget, f"criterion {num} exceeded its {budget:.0f}s budget"


def test_c1_dual_route_agreement():
    t0 = time.time()
    worst = 0.0
    count = 0
    for sp in GRID_SPACES:
        for lam in lambda_grid(sp):
            for t in T_GRID:
                e1 = eisenstein_closed(sp, None, lam, 1.0, 1, t)
                e2 = eisenstein_series(sp, None, lam, 1.0, 1, t)
                d = rel_diff(e1.value, e2.value)
                worst = max(worst, d)
                count += 1
                assert d <= 1e-8, f"{sp.p},{sp.q} lam={lam} t={t}: {d:.2e}"
    assert count > 200
    _report(1, "dual-route agreement", t0, 30.0, worst)


def test_c2_ode_residuals():
    t0 = time.time()
    worst = 0.0
    ktypes = [None, KType(1, 0), KType(0, 2), KType(2, 1)]
    for sp in GRID_SPACES:
        for kt in ktypes:
            for lam in lambda_grid(sp, kt):
                for t in T_GRID:
                    r = ode_residual(sp, kt, lam, 1.0, 1, t)
                    worst = max(worst, r)
                    assert r < 1e-5, f"{sp.p},{sp.q} kt={kt} lam={lam} t={t}: {r:.2e}"
    _report(2, "radial operator residuals", t0, 60.0, worst)


def _sample_class(sp: Space, rng, which: str, R: float, n: int):
    rho = sp.rho_f
    cat = pole_catalog(sp, None)
    out = []
    while len(out) < n:
        if which == "bounded":
            lam = complex(rng.uniform(-rho + 0.05, rho - 0.05),
                          rng.uniform(-1.5, 1.5))
        else:
            side = 1 if rng.uniform() < 0.5 else -1
            lo, hi = rho + 0.3, R - 0.01
            re = side * rng.uniform(lo, hi)
            lam = complex(re, rng.uniform(-1.5, 1.5))
        if min(pr.distance(lam) for pr in cat.e_poles) < 0.15:
            continue
        if abs(lam.imag) < 0.05 and abs(lam.real - round(lam.real)) < 0.05:
            continue
        out.append(lam)
    return out


def test_c3_boundedness_classifier_empirics():
    t0 = time.time()
    rng = np.random.default_rng(42)
    R = 5.0
    for sp in (Space(3, 2), Space(7, 2)):
        rho = sp.rho_f
        for lam0 in _sample_class(sp, rng, "bounded", R, 20):
            assert classify_bounded(sp, None, R, lam0) is Classification.BOUNDED
            ts_lo = np.arange(30.0, 40.0, 0.5)
            ts_hi = np.arange(40.0, 50.5, 0.5)
            sup_lo = max(abs(eisenstein_regularized(sp, None, R, lam0, 1.0, 1, t).value)
                         for t in ts_lo)
            sup_hi = max(abs(eisenstein_regularized(sp, None, R, lam0, 1.0, 1, t).value)
                         for t in ts_hi)
            assert sup_hi <= 1.05 * sup_lo, f"growth trend at {lam0}"
        for lam0 in _sample_class(sp, rng, "unbounded", R, 20):
            assert classify_bounded(sp, None, R, lam0) is Classification.UNBOUNDED
            ts = np.arange(20.0, 40.0, 1.0)
            logs = [math.log(abs(eisenstein_regularized(sp, None, R, lam0, 1.0, 1, t).value))
                    for t in ts]
            slope = np.polyfit(ts, logs, 1)[0]
            target = abs(lam0.real) - rho
            assert abs(slope - target) <= 0.25 * abs(target), \
                f"slope {slope:.3f} vs {target:.3f} at {lam0}"
        for n in range(0, 6):
            lam0 = -float(n)
            assert classify_bounded(sp, None, R, lam0) is Classification.IDENTICALLY_ZERO
            for t in (0.5, 3.0, 17.0, 41.0):
                val = eisenstein_regularized(sp, None, R, lam0, 1.0, 1, t).value
                assert abs(val) < 1e-10
    _report(3, "boundedness classifier empirics", t0, 180.0)


def test_c4_catalog_correctness():
    t0 = time.time()
    configs = [(Space(3, 2), None), (Space(5, 3), None), (Space(7, 3), None),
               (Space(3, 1), KType(0, 4))]
    xs = np.linspace(-10.0, 10.0, 2001)
    for sp, kt in configs:
        cat = pole_catalog(sp, kt)
        for x in xs:
            res = c_function(sp, kt, complex(x))
            if res.value is None:
                big, small = True, False
            else:
                a = abs(res.value)
                big, small = a > 1e6, a < 1e-6
            if big:
                d = min(pr.distance(complex(x)) for pr in cat.c_poles)
                assert d <= 2e-2, f"spike at {x} ({sp.p},{sp.q},{kt}) d={d:.3f}"
            if small:
                d = min(pr.distance(complex(x)) for pr in cat.c_zeros)
                assert d <= 2e-2, f"trough at {x} ({sp.p},{sp.q},{kt}) d={d:.3f}"
    _report(4, "pole/zero catalog scan", t0, 60.0)


def test_c5_functional_equations():
    t0 = time.time()
    rng = np.random.default_rng(7)
    spaces = [Space(3, 2), Space(5, 3), Space(2, 1), Space(4, 1)]
    worst = 0.0
    total = 0
    for sp in spaces:
        for lam in sample_regular(sp, None, rng, 50):
            eta = as_eta(sp, [complex(rng.uniform(0.3, 1.5), rng.uniform(-1, 1))
                              for _ in sp.orbits])
            eta_rel = c_matrix(sp, -lam).apply(sp, eta)
            for w in sp.orbits:
                t = rng.uniform(0.3, 3.0)
                a1 = eisenstein_closed(sp, None, -lam, eta, w, t).value
                a2 = eisenstein_closed(sp, None, lam, eta_rel, w, t).value
                worst = max(worst, rel_diff(a1, a2))
                b1 = eisenstein_closed(sp, None, -lam.conjugate(), eta, w, t).value
                b2 = eisenstein_closed(sp, None, -lam, eta.conjugate(), w, t).value
                worst = max(worst, rel_diff(b1.conjugate(), b2))
            cv = c_function(sp, None, lam).value
            cw = c_function(sp, None, -lam).value
            worst = max(worst, abs(cv * cw - 1.0))
            total += 1
    assert total == 200
    assert worst < 1e-7
    _report(5, "functional equations on 200 points", t0, 60.0, worst)


def test_c6_jacobi_cross_check():
    t0 = time.time()
    worst = 0.0
    for sp in (Space(2, 3), Space(3, 3)):
        alpha = sp.q / 2.0 - 1.0
        beta = sp.p / 2.0 - 1.0
        for lam in lambda_grid(sp):
            for t in T_GRID:
                gr = gamma_ratio(GammaRatioSpec.of(
                    [(lam + sp.rho_f) / 2, (lam - sp.rho_f + sp.q) / 2],
                    [lam, sp.q / 2.0]))
                pref = 2.0 ** (lam - sp.rho_f) * gr.value
                phi = jacobi_phi(alpha, beta, -1j * lam, t).value
                e = eisenstein_closed(sp, None, lam, 1.0, 1, t).value
                d = rel_diff(e, pref * phi)
                worst = max(worst, d)
                assert d <= 1e-8
    _report(6, "Jacobi-form cross-check", t0, 30.0, worst)


def test_c7_fourier_harnesses():
    t0 = time.time()
    # Plancherel: constant-free bound, valid for 2^{2 rho} >= 4 pi
    for sp, prof in [
        (Space(5, 3), RadialProfile.smooth_bump(Space(5, 3), 1.0, 2.0)),
        (Space(5, 3), RadialProfile.poly_bump(Space(5, 3), 0.8, 1.7)),
        (Space(7, 2), RadialProfile.smooth_bump(Space(7, 2), 1.0, 2.0)),
        (Space(7, 2), RadialProfile.poly_bump(Space(7, 2), 0.8, 1.7)),
        (Space(3, 3), RadialProfile.smooth_bump(Space(3, 3), 1.0, 2.0)),
    ]:
        lhs, rhs = fourier.plancherel_check(sp, prof, 200.0, QUAD)
        assert lhs <= rhs, f"({sp.p},{sp.q}): lhs={lhs:.6f} rhs={rhs:.6f}"

    # Hausdorff-Young ratios: finite, positive, stable under doubling
    sp = Space(5, 3)
    f = RadialProfile.smooth_bump(sp, 1.0, 2.0)
    for r, lam0 in ((1.0, 1.0), (1.5, 0.8), (2.0, 0.0)):
        v100 = fourier.hy_ratio(sp, None, f, r, lam0, 3.0, 100.0, QUAD)
        v200 = fourier.hy_ratio(sp, None, f, r, lam0, 3.0, 200.0, QUAD)
        assert np.isfinite(v100) and v100 > 0
        assert v200 < 2.0 * v100, f"r={r}: {v100:.4f} -> {v200:.4f}"

    # Riemann-Lebesgue decay along a vertical line
    sp32 = Space(3, 2)
    fb = RadialProfile.smooth_bump(sp32, 1.0, 2.0)
    vals = fourier.rl_decay_profile(sp32, None, fb, 1.5, 0.2, [1.0, 100.0], QUAD)
    assert vals[1] < 0.01 * vals[0]

    # Paley-Wiener envelope rate bounded by the support endpoint
    fit = fourier.paley_wiener_check(sp32, fb, 2, 3.0, quad=QUAD)
    assert fit.rate <= fit.support_b + 0.05
    _report(7, "transform harnesses", t0, 300.0)


def test_c8_fixture_conformance():
    t0 = time.time()
    cases = fixtures.load_cases()
    assert len(cases) >= 20
    worst = 0.0
    for case in cases:
        got = fixtures.evaluate_case(case)
        err = abs(got - case.expected) / max(abs(case.expected), 1e-300)
        worst = max(worst, err / case.tol)
        assert err <= case.tol, f"{case.case_id}: {err:.2e} > {case.tol:.0e}"
    _report(8, "fixture conformance", t0, 60.0, worst)
