"""Oracle self-consistency and determinism checks."""

import json
from pathlib import Path

import mpmath as mp
import pytest

from fixture_oracle import formulas as F
from fixture_oracle import generate as G


def test_regeneration_is_deterministic(tmp_path):
    d1 = tmp_path / "a"
    d2 = tmp_path / "b"
    G.generate(d1)
    G.generate(d2)
    files1 = sorted(p.name for p in d1.glob("*.json"))
    files2 = sorted(p.name for p in d2.glob("*.json"))
    assert files1 == files2 and files1
    for name in files1:
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


def test_committed_fixtures_match_regeneration(tmp_path):
    committed = Path(__file__).resolve().parents[2] / "fixtures"
    if not committed.is_dir():
        pytest.skip("committed fixture directory not present")
    G.generate(tmp_path)
    for p in sorted(tmp_path.glob("*.json")):
        assert (committed / p.name).read_bytes() == p.read_bytes()


def test_two_evaluation_paths_agree_to_40_digits():
    with mp.workdps(70):
        for a, b, c, z in G.twof1_probes():
            va = F.hp_hyp2f1_connection(a, b, c, z, 60)
            vb = F.hp_hyp2f1_direct(a, b, c, z, 60)
            assert abs(va - vb) / abs(va) < mp.mpf(10) ** -40


def test_connection_coefficient_unit_product():
    with mp.workdps(60):
        lam = mp.mpc("0.8", "1.1")
        prod = F.hp_c(4, 3, 0, 0, lam, 50) * F.hp_c(4, 3, 0, 0, -lam, 50)
        assert abs(prod - 1) < mp.mpf(10) ** -40


def test_closed_form_equals_two_channel_series():
    with mp.workdps(60):
        for (p, q, k, l) in [(3, 2, 0, 0), (5, 3, 2, 1), (3, 1, 0, 4)]:
            lam = mp.mpc("0.4", "0.9")
            t = mp.mpf(2)
            closed = F.hp_eis_closed(p, q, k, l, lam, t, 1, 50)
            series = (F.hp_phi(p, q, k, l, lam, t, 50)
                      + F.hp_c(p, q, k, l, lam, 50)
                      * F.hp_phi(p, q, k, l, -lam, t, 50))
            assert abs(closed - series) / abs(closed) < mp.mpf(10) ** -40


def test_ring_average_radius_stability():
    with mp.workdps(60):
        v1 = F.hp_eis_regularized(7, 3, 3, 1, mp.mpf("1.3"), 1, 40)
        # same limit from the double-precision-scale radius path
        roots = []
        rho = mp.mpf(4)
        for j in range(4):
            roots.append(-rho - 2 * j)
            roots.append(rho - 3 - 2 * j)
        r = mp.mpf(10) ** -6
        total = mp.mpc(0)
        for i in range(16):
            ang = 2 * mp.pi * (i + mp.mpf(1) / 2) / 16
            lam = 1 + r * mp.e ** (1j * ang)
            pv = mp.mpc(1)
            for rt in roots:
                pv *= (lam - rt)
            total += pv * F.hp_eis_closed(7, 3, 0, 0, lam, mp.mpf("1.3"), 1, 50)
        v2 = total / 16
        assert abs(v1 - v2) / abs(v1) < mp.mpf(10) ** -30
