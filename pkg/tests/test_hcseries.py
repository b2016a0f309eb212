import cmath
import json
import math

import numpy as np
import pytest

from hyperfns.core import KType, SeriesPole, SlowConvergence, Space
from hyperfns import hcseries
from hyperfns.hcseries import (
    CoeffKind,
    b_coeffs,
    cs_coeffs,
    d_coeffs,
    gamma_coeffs,
    gamma_tilde,
    phi_series,
    q_r_poly,
)


class TestWeightCoeffs:
    def test_d_both_factors_vanish(self):
        assert d_coeffs(Space(3, 3), 3) == [4.0, 0.0, 0.0, 0.0]

    def test_d_53(self):
        d = d_coeffs(Space(5, 3), 2)
        assert d[0] == 9.0
        assert d[1] == -8.0
        assert d[2] == 16.0

    def test_cs_values(self):
        c, s = cs_coeffs(4)
        assert s == [0.0, 0.0, 4.0, 0.0, 8.0]
        # sign pinned by the partial-sum identity below, not the printed list
        assert c == [0.0, 0.0, 4.0, 0.0, -8.0]

    def test_cs_partial_sums(self):
        c, s = cs_coeffs(60)
        t = 1.0
        csum = sum(v * math.exp(-m * t) for m, v in enumerate(c))
        ssum = sum(v * math.exp(-m * t) for m, v in enumerate(s))
        assert abs(csum - 1.0 / math.cosh(t) ** 2) < 1e-12
        assert abs(ssum - 1.0 / math.sinh(t) ** 2) < 1e-12

    def test_b_normalization_and_parity(self, space):
        b = b_coeffs(space, 21)
        assert b[0] == 1.0
        assert all(b[m] == 0.0 for m in range(1, 22, 2))

    def test_b_33(self):
        # (1+x)^-1 (1-x)^-1 = sum x^{2n} in x = e^{-2t}
        b = b_coeffs(Space(3, 3), 8)
        assert b[2] == pytest.approx(0.0, abs=1e-14)
        assert b[4] == pytest.approx(1.0, abs=1e-14)
        assert b[8] == pytest.approx(1.0, abs=1e-14)

    def test_b_matches_function(self, space):
        # partial sums reproduce cosh^{-u} sinh^{-v} e^{rho t} shape
        t = 1.7
        u = (space.p - 1) / 2.0
        v = (space.q - 1) / 2.0
        target = (math.cosh(t) ** (-u) * math.sinh(t) ** (-v)
                  * math.exp(space.rho_f * t))
        b = b_coeffs(space, 90)
        val = sum(bk * math.exp(-k * t) for k, bk in enumerate(b))
        # common normalization constant 2^rho relates them
        assert val * 2.0 ** space.rho_f == pytest.approx(target, rel=1e-11)


class TestGammaTables:
    def test_normalization(self, space):
        t = gamma_tilde(space, None, 0.7 + 0.3j, 8)
        assert t.values[0] == 1.0
        g = gamma_coeffs(space, None, 0.7 + 0.3j, 8)
        assert g.values[0] == 1.0

    def test_resolved_recursion_convention(self):
        # every odd entry vanishes and the first even step divides by
        # 2(2 - 2 lambda); at lambda = 2 that gives d_1 / -4
        lam = 2.0 + 0.0j
        t = gamma_tilde(Space(5, 3), None, lam, 4)
        assert t.values[1] == 0.0
        assert t.values[3] == 0.0
        assert t.values[2] == pytest.approx(-8.0 / (2 * (2 - 4)), abs=1e-14)

    def test_pole_flagging(self):
        t = gamma_tilde(Space(3, 2), None, 1.0, 6)
        assert not all(t.regular)
        first_bad = next(i for i, r in enumerate(t.regular) if not r)
        assert first_bad == 2
        assert all(not r for r in t.regular[2:])

    def test_trivial_ktype_reduction(self, space):
        lam = 0.45 + 1.2j
        a = gamma_coeffs(space, None, lam, 20)
        b = gamma_coeffs(space, KType(0, 0), lam, 20)
        assert max(abs(x - y) for x, y in zip(a.values, b.values)) <= 1e-12

    def test_pole_containment_scan(self):
        m = 40
        for sp in (Space(3, 2), Space(5, 3)):
            for x in np.arange(0.07, m / 2 + 0.4, 0.0137):
                tab = gamma_coeffs(sp, None, complex(x), m)
                if abs(tab.values[m]) > 1e6:
                    near = min(abs(x - 0.5 * j) for j in range(1, m + 1))
                    assert near <= 1e-2 + 1e-6, f"spike off lattice at {x}"

    def test_regularized_envelope(self):
        # |(lam - lam0) Gamma_m| <= M (1+m)^chi on rings around the poles
        for sp in (Space(3, 2), Space(5, 3), Space(7, 2)):
            chi = hcseries.TAIL_CHI[(sp.p, sp.q)]
            m = 40
            for lam0 in range(1, m // 2 + 1):
                for ang in (0.3, 1.1, 1.9):
                    lam = lam0 + 1e-3 * cmath.exp(1j * ang)
                    tab = hcseries._gamma_raw(sp, None, lam, m)
                    for mm in range(2, m + 1, 2):
                        bound = hcseries.REG_BOUND_M * (1.0 + mm) ** chi
                        assert abs((lam - lam0) * tab[mm]) <= bound

    def test_growth_envelope_matches_frozen_chi(self):
        # re-fit the growth exponent over m <= 200 and check the frozen
        # value dominates it
        for (p, q), chi_frozen in hcseries.TAIL_CHI.items():
            sp = Space(p, q)
            M = 200
            sup = np.zeros(M + 1)
            for lam in (0.3 + 0.7j, -1.2 + 1.9j, 2.1 + 3.3j, -3.8 + 0.9j):
                tab = gamma_coeffs(sp, None, lam, M)
                sup = np.maximum(sup, np.abs(tab.values))
            ms = np.arange(20, M + 1, 2)
            fit = np.polyfit(np.log(1.0 + ms), np.log(np.maximum(sup[ms], 1e-300)), 1)[0]
            assert fit <= chi_frozen + 0.25, f"chi too small for ({p},{q})"

    def test_growth_bound_with_clearing_poly(self):
        # |q_R Gamma_m| <= M (1+m)^chi (1+|lam|)^deg on a window grid
        sp = Space(5, 3)
        R = 5.0
        qr = q_r_poly(R)
        chi = hcseries.TAIL_CHI[(5, 3)]
        worst = 0.0
        for lam in (0.25 + 0.4j, 1.7 + 0.2j, -2.0 + 1.0j, 4.0 + 2.0j):
            tab = gamma_coeffs(sp, None, lam, 200)
            for m, v in enumerate(tab.values):
                ratio = (abs(qr(lam)) * abs(v)
                         / ((1.0 + m) ** chi * (1.0 + abs(lam)) ** qr.degree))
                worst = max(worst, ratio)
        assert worst < 50.0

    def test_json_schema(self):
        table = gamma_coeffs(Space(3, 2), KType(1, 0), 0.5 + 0.25j, 4)
        doc = table.to_json()
        assert set(doc) == {"p", "q", "k", "l", "lambda", "kind", "values"}
        assert doc["kind"] == "Gamma"
        assert doc["lambda"] == {"re": 0.5, "im": 0.25}
        assert len(doc["values"]) == 5
        assert set(doc["values"][0]) == {"re", "im", "regular"}
        json.dumps(doc)


class TestClearingPoly:
    def test_r3(self):
        poly = q_r_poly(3.0)
        assert poly.roots == (0.5, 1.0)

    def test_small_r_empty(self):
        poly = q_r_poly(0.4)
        assert poly.degree == 0
        assert poly(2.3 + 1j) == 1.0

    def test_r5(self):
        assert q_r_poly(5.0).roots == (0.5, 1.0, 1.5, 2.0)


class TestPhiSeries:
    def test_leading_term(self, space):
        lam = 1.3 + 0.4j
        t = 30.0
        res = phi_series(space, None, lam, t)
        lead = cmath.exp((lam - space.rho_f) * t)
        assert abs(res.value - lead) < 1e-8 * abs(lead)

    def test_series_pole_raises(self):
        with pytest.raises(SeriesPole):
            phi_series(Space(3, 2), None, 1.0, 1.0)
        with pytest.raises(SeriesPole):
            phi_series(Space(3, 2), None, 0.5, 1.0)

    def test_slow_convergence_raises(self):
        with pytest.raises(SlowConvergence):
            phi_series(Space(3, 2), None, 0.7 + 0.3j, 0.01)

    def test_error_estimate_honest(self, space):
        lam = 0.8 + 1.1j
        r1 = phi_series(space, None, lam, 0.6, tol=1e-8)
        r2 = phi_series(space, None, lam, 0.6, tol=1e-14)
        assert abs(r1.value - r2.value) <= r1.abs_err + r2.abs_err + 1e-15

    def test_ode_residual_series_route(self):
        # second-order operator applied to the summed series
        h = 1e-3
        for sp, kt in ((Space(3, 2), None), (Space(5, 3), None),
                       (Space(3, 2), KType(0, 2)), (Space(5, 3), KType(2, 1))):
            lam = 0.75 + 0.55j
            t0 = 1.1
            vals = [phi_series(sp, kt, lam, t0 + j * h, tol=1e-13).value
                    for j in (-2, -1, 0, 1, 2)]
            f2 = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3]
                  - vals[4]) / (12 * h * h)
            f1 = (vals[0] - 8 * vals[1] + 8 * vals[3] - vals[4]) / (12 * h)
            ktv = kt or KType(0, 0)
            jpj = (sp.p - 1) * math.tanh(t0) + (sp.q - 1) / math.tanh(t0)
            pot = (ktv.ak * (ktv.ak + sp.p - 2) / math.cosh(t0) ** 2
                   - ktv.al * (ktv.al + sp.q - 2) / math.sinh(t0) ** 2)
            lhs = f2 + jpj * f1 + pot * vals[2]
            rhs = (lam * lam - sp.rho_f ** 2) * vals[2]
            assert abs(lhs - rhs) / (1 + abs(vals[2])) < 1e-5


class TestCache:
    def test_concurrent_reads(self):
        import threading
        sp = Space(3, 2)
        lam = 0.21 + 0.9j
        results = []

        def worker():
            t = gamma_coeffs(sp, None, lam, 64)
            results.append(t.values[10])

        threads = [threading.Thread(target=worker) for _ in range(8)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
        assert len(set(results)) == 1
