"""Deterministic fixture generation.

Builds every golden case at 50+ significant digits, writing one JSON file
per suite with sorted case ids, sorted keys and fixed-width decimal
strings, so regeneration is byte-identical.  Fails loudly if a value does
not stabilize when the working precision is raised.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import mpmath as mp

from . import formulas as F

DIGITS = 40


def _s(x, digits: int = DIGITS + 5) -> str:
    return mp.nstr(mp.mpf(x), digits, strip_zeros=True)


def _cplx(value, digits: int = DIGITS + 5) -> dict:
    v = mp.mpc(value)
    return {"re": _s(v.real, digits), "im": _s(v.imag, digits)}


def _record(case_id: str, inputs: dict, value, digits: int, ref: str) -> dict:
    return {
        "case_id": case_id,
        "inputs": inputs,
        "expected": _cplx(value, digits + 5),
        "digits": digits,
        "formula_ref": ref,
    }


def _stable(fn, dps_lo: int, dps_hi: int, digits: int):
    """Evaluate at two working precisions and insist on `digits` agreement."""
    lo = fn(dps_lo)
    hi = fn(dps_hi)
    scale = max(abs(mp.mpc(hi)), mp.mpf(10) ** (-digits))
    if abs(mp.mpc(lo) - mp.mpc(hi)) / scale > mp.mpf(10) ** (-digits):
        raise RuntimeError("high-precision evaluation did not stabilize")
    return hi


def specfun_cases() -> list[dict]:
    out = []
    z = mp.mpc("0.5", "1.0")
    val = _stable(lambda d: F.hp_loggamma(z, d), 50, 70, DIGITS)
    out.append(_record("loggamma/half-plus-i",
                       {"z": {"re": "0.5", "im": "1.0"}}, val, DIGITS,
                       "principal log-gamma"))

    cases = [
        ("hyp2f1/moderate-negative",
         ("1.25", "0.5"), ("0.25", "-0.5"), ("1.5", "0.0"), "-10.0"),
        ("hyp2f1/direct-band",
         ("0.75", "0.3"), ("0.5", "-0.2"), ("1.25", "0.0"), "-0.35"),
        ("hyp2f1/transform-band",
         ("0.75", "0.3"), ("0.5", "-0.2"), ("1.25", "0.0"), "-1.4"),
        ("hyp2f1/deep-negative",
         ("1.1", "0.7"), ("0.4", "-0.25"), ("2.25", "0.0"), "-300.0"),
    ]
    for cid, (ar, ai), (br, bi), (cr, ci), zs in cases:
        a = mp.mpc(ar, ai)
        b = mp.mpc(br, bi)
        c = mp.mpc(cr, ci)
        z = mp.mpf(zs)
        val = _stable(lambda d: F.hp_hyp2f1_connection(a, b, c, z, d), 60, 80, DIGITS)
        alt = F.hp_hyp2f1_direct(a, b, c, z, 60)
        if abs(val - alt) / abs(val) > mp.mpf(10) ** (-DIGITS):
            raise RuntimeError(f"2F1 paths disagree for {cid}")
        out.append(_record(cid,
                           {"a": {"re": ar, "im": ai}, "b": {"re": br, "im": bi},
                            "c": {"re": cr, "im": ci}, "z": zs},
                           val, DIGITS, "gauss-2f1-negative-axis"))
    return out


def series_cases() -> list[dict]:
    out = []
    for (p, q, n) in [(3, 3, 2), (5, 3, 4), (7, 2, 6)]:
        val = _stable(lambda d: F.hp_b_coeff(p, q, n, d), 50, 70, DIGITS)
        out.append(_record(f"bcoeff/p{p}q{q}n{n}",
                           {"p": str(p), "q": str(q), "n": str(n)},
                           val, DIGITS, "inverse-sqrt-jacobian-series"))

    lam = mp.mpc("0.7", "0.3")
    lam_in = {"re": "0.7", "im": "0.3"}
    for m in (5, 6, 12):
        val = _stable(lambda d: F.hp_gamma_tilde_table(3, 2, 0, 0, lam, m, d)[m],
                      50, 70, DIGITS)
        out.append(_record(f"gamma_tilde/p3q2m{m}",
                           {"p": "3", "q": "2", "lam": lam_in, "m": str(m)},
                           val, DIGITS, "coefficient-recursion"))
        val = _stable(lambda d: F.hp_gamma_table(3, 2, 0, 0, lam, m, d)[m],
                      50, 70, DIGITS)
        out.append(_record(f"gamma/p3q2m{m}",
                           {"p": "3", "q": "2", "lam": lam_in, "m": str(m)},
                           val, DIGITS, "coefficient-recursion"))
    for m in (6, 10):
        val = _stable(lambda d: F.hp_gamma_table(5, 3, 2, 1, lam, m, d)[m],
                      50, 70, DIGITS)
        out.append(_record(f"gamma/p5q3k2l1m{m}",
                           {"p": "5", "q": "3", "k": "2", "l": "1",
                            "lam": lam_in, "m": str(m)},
                           val, DIGITS, "coefficient-recursion"))

    val = _stable(lambda d: F.hp_phi(3, 2, 0, 0, mp.mpc(1, 1), mp.mpf("1.5"), d),
                  50, 70, DIGITS)
    out.append(_record("phi/p3q2",
                       {"p": "3", "q": "2", "lam": {"re": "1.0", "im": "1.0"},
                        "t": "1.5"},
                       val, DIGITS, "radial-series"))
    return out


def eisenstein_cases() -> list[dict]:
    out = []
    val = _stable(lambda d: F.hp_c(4, 3, 0, 0, mp.mpc("0.8", "1.1"), d),
                  50, 70, DIGITS)
    out.append(_record("cfun/p4q3",
                       {"p": "4", "q": "3", "lam": {"re": "0.8", "im": "1.1"}},
                       val, DIGITS, "connection-coefficient"))
    val = _stable(lambda d: F.hp_c(3, 1, 0, 4, mp.mpc("0.6", "0.8"), d),
                  50, 70, DIGITS)
    out.append(_record("cfun/p3q1k0l4",
                       {"p": "3", "q": "1", "k": "0", "l": "4",
                        "lam": {"re": "0.6", "im": "0.8"}},
                       val, DIGITS, "connection-coefficient"))

    val = _stable(lambda d: F.hp_eis_closed(3, 2, 0, 0, mp.mpc("1.0", "0.5"),
                                            mp.mpf("1.0"), 1, d), 50, 70, DIGITS)
    out.append(_record("eis_closed/p3q2",
                       {"p": "3", "q": "2", "lam": {"re": "1.0", "im": "0.5"},
                        "t": "1.0", "eta": {"re": "1.0", "im": "0.0"}},
                       val, DIGITS, "closed-form-eigenfunction"))
    val = _stable(lambda d: F.hp_eis_closed(5, 3, 2, 1, mp.mpc("0.65", "0.45"),
                                            mp.mpf("1.1"), 1, d), 50, 70, DIGITS)
    out.append(_record("eis_closed/p5q3k2l1",
                       {"p": "5", "q": "3", "k": "2", "l": "1",
                        "lam": {"re": "0.65", "im": "0.45"},
                        "t": "1.1", "eta": {"re": "1.0", "im": "0.0"}},
                       val, DIGITS, "closed-form-eigenfunction"))
    val = _stable(lambda d: F.hp_eis_closed(5, 3, 0, 0, mp.mpc("0.4", "0.9"),
                                            mp.mpf("2.0"), 1, d), 50, 70, DIGITS)
    out.append(_record("eis_series/p5q3",
                       {"p": "5", "q": "3", "lam": {"re": "0.4", "im": "0.9"},
                        "t": "2.0", "eta": {"re": "1.0", "im": "0.0"}},
                       val, DIGITS, "closed-form-eigenfunction"))

    val = _stable(lambda d: F.hp_eis_regularized(7, 3, mp.mpf(3), mp.mpc(1),
                                                 mp.mpf("1.3"), 1, d),
                  50, 70, 25)
    out.append(_record("eis_reg/p7q3pole1",
                       {"p": "7", "q": "3", "R": "3.0",
                        "lam": {"re": "1.0", "im": "0.0"},
                        "t": "1.3", "eta": {"re": "1.0", "im": "0.0"}},
                       val, 25, "cleared-limit-at-pole"))
    return out


def fourier_cases() -> list[dict]:
    out = []
    val = _stable(lambda d: F.hp_fourier_bump(3, 2, 1, 2, mp.mpc("0.5", "2.0"),
                                              1, d), 30, 40, 25)
    out.append(_record("fourier/p3q2bump12",
                       {"p": "3", "q": "2", "a": "1.0", "b": "2.0",
                        "lam": {"re": "0.5", "im": "2.0"},
                        "eta": {"re": "1.0", "im": "0.0"}},
                       val, 25, "jacobian-weighted-transform"))
    return out


SUITES = {
    "specfun": specfun_cases,
    "series": series_cases,
    "eisenstein": eisenstein_cases,
    "fourier": fourier_cases,
}


def twof1_probes() -> list[tuple]:
    """The 2F1 inputs exercised by the fixture set, for the two-path check."""
    probes = [
        (mp.mpc("1.25", "0.5"), mp.mpc("0.25", "-0.5"), mp.mpc("1.5"), mp.mpf("-10")),
        (mp.mpc("0.75", "0.3"), mp.mpc("0.5", "-0.2"), mp.mpc("1.25"), mp.mpf("-0.35")),
        (mp.mpc("0.75", "0.3"), mp.mpc("0.5", "-0.2"), mp.mpc("1.25"), mp.mpf("-1.4")),
        (mp.mpc("1.1", "0.7"), mp.mpc("0.4", "-0.25"), mp.mpc("2.25"), mp.mpf("-300")),
    ]
    rho = mp.mpf(3) / 2
    for t in (mp.mpf(1), mp.mpf("1.7")):
        lam = mp.mpc("1.0", "0.5")
        probes.append(((lam + rho) / 2, (-lam + rho) / 2, mp.mpf(1),
                       -mp.sinh(t) ** 2))
    rho53 = mp.mpf(3)
    lam = mp.mpc("0.65", "0.45")
    probes.append(((lam + rho53 + 3) / 2, (-lam + rho53 + 3) / 2,
                   mp.mpf(3) / 2 + 1, -mp.sinh(mp.mpf("1.1")) ** 2))
    lam = mp.mpc("0.5", "2.0")
    for t in (mp.mpf("1.2"), mp.mpf("1.8")):
        probes.append(((-lam + rho) / 2, (lam + rho) / 2, mp.mpf(1),
                       -mp.sinh(t) ** 2))
    return probes


def generate(out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(SUITES):
        records = sorted(SUITES[name](), key=lambda r: r["case_id"])
        path = out_dir / f"{name}.json"
        path.write_text(json.dumps(records, indent=2, sort_keys=True) + "\n")
        written.append(path)
    return written


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    args = ap.parse_args(argv)
    if args.suite == "all":
        for p in generate(args.out):
            print(f"wrote {p}")
        return 0
    records = sorted(SUITES[args.suite](), key=lambda r: r["case_id"])
    path = args.out / f"{args.suite}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(records, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
