"""Command-line front end.

Complex flags are written as "re,im" and grids as "start:stop:count".
Output is CSV on stdout with 17 significant digits (byte-identical across
runs); --json switches to the JSON schemas of the producing modules.
Exit codes: 0 success, 1 domain error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .core import HyperfnsError, KType, Space, as_eta
from . import eisenstein, fixtures, fourier, hcseries, verify
from .fourier import QuadratureConfig, RadialProfile


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_complex(s: str) -> complex:
    parts = s.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"bad complex literal {s!r}, want re,im")


def _parse_grid(s: str) -> np.ndarray:
    parts = s.split(":")
    if len(parts) == 1:
        return np.array([float(parts[0])])
    if len(parts) == 3:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        return np.linspace(start, stop, count)
    raise argparse.ArgumentTypeError(f"bad grid {s!r}, want start:stop:count")


def _space(args) -> Space:
    return Space(args.p, args.q)


def _ktype(args) -> KType | None:
    if args.k is not None or args.l is not None:
        return KType(args.k or 0, args.l or 0)
    return None


def _add_space_args(sub, ktype=True):
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--q", type=int, required=True)
    if ktype:
        sub.add_argument("--k", type=int, default=None)
        sub.add_argument("--l", type=int, default=None)


def _emit_rows(rows: list[list[str]], header: list[str]) -> None:
    print(",".join(header))
    for row in rows:
        print(",".join(row))


def _map_jobs(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _cmd_eval(args) -> int:
    sp = _space(args)
    kt = _ktype(args)
    lam = args.lam
    ts = _parse_grid(args.t)
    eta = as_eta(sp, args.eta if args.eta is not None else 1.0)

    def one(t: float) -> list[str]:
        from .core import SlowConvergence
        row = [_fmt(t)]
        if args.method in ("closed", "both"):
            r = eisenstein.eisenstein_closed(sp, kt, lam, eta, args.orbit, float(t))
            v = r.value if r.value is not None else complex(float("nan"), float("nan"))
            row += [_fmt(v.real), _fmt(v.imag)]
        if args.method in ("series", "both"):
            try:
                r = eisenstein.eisenstein_series(sp, kt, lam, eta, args.orbit,
                                                 float(t))
                row += [_fmt(r.value.real), _fmt(r.value.imag)]
            except SlowConvergence:
                # radii below the series threshold have no series value
                row += ["nan", "nan"]
        if args.method == "both":
            c = complex(float(row[1]), float(row[2]))
            s = complex(float(row[3]), float(row[4]))
            scale = max(abs(c), abs(s), 1e-300)
            row.append(_fmt(abs(c - s) / scale))
        return row

    header = ["t"]
    if args.method in ("closed", "both"):
        header += ["closed_re", "closed_im"]
    if args.method in ("series", "both"):
        header += ["series_re", "series_im"]
    if args.method == "both":
        header.append("rel_discrepancy")
    _emit_rows(_map_jobs(one, [float(t) for t in ts], args.jobs), header)
    return 0


def _cmd_coeffs(args) -> int:
    sp = _space(args)
    kt = _ktype(args)
    fn = hcseries.gamma_tilde if args.kind == "gamma-tilde" else hcseries.gamma_coeffs
    table = fn(sp, kt, args.lam, args.n_max)
    if args.json:
        print(json.dumps(table.to_json(), indent=2, sort_keys=True))
        return 0
    rows = [[str(m), _fmt(v.real), _fmt(v.imag), str(int(r))]
            for m, (v, r) in enumerate(zip(table.values, table.regular))]
    _emit_rows(rows, ["m", "re", "im", "regular"])
    return 0


def _cmd_cfun(args) -> int:
    sp = _space(args)
    kt = _ktype(args)
    if args.re_grid is not None:
        res = _parse_grid(args.re_grid)
        lams = [complex(x, args.im) for x in res]
    else:
        lams = [args.lam]

    def one(lam: complex) -> list[str]:
        r = eisenstein.c_function(sp, kt, lam)
        v = r.value if r.value is not None else complex(float("nan"), float("nan"))
        return [_fmt(lam.real), _fmt(lam.imag), _fmt(v.real), _fmt(v.imag),
                r.status.value]

    rows = _map_jobs(one, lams, args.jobs)
    if args.json:
        print(json.dumps([
            {"lambda": {"re": float(r[0]), "im": float(r[1])},
             "value": None if r[4] == "pole" else {"re": float(r[2]), "im": float(r[3])},
             "status": r[4]} for r in rows], indent=2))
        return 0
    _emit_rows(rows, ["lambda_re", "lambda_im", "value_re", "value_im", "status"])
    return 0


def _cmd_poles(args) -> int:
    cat = eisenstein.pole_catalog(_space(args), _ktype(args))
    if args.json:
        print(json.dumps(cat.to_json(), indent=2, sort_keys=True))
        return 0
    rows = []
    for kind in ("e_poles", "c_poles", "c_zeros", "e_zeros"):
        for pr in getattr(cat, kind):
            rows.append([kind, _fmt(float(pr.start)), str(pr.step), "infinite"])
    _emit_rows(rows, ["family", "start", "step", "count"])
    return 0


def _cmd_classify(args) -> int:
    cls = eisenstein.classify_bounded(_space(args), _ktype(args), args.R, args.lam)
    print(cls.value)
    if cls is eisenstein.Classification.UNDETERMINED:
        print("note: integer spectral window above rho is outside the "
              "classifier's guarantee for this K-type", file=sys.stderr)
    return 0


def _make_profile(sp: Space, desc: str) -> RadialProfile:
    kind, _, rest = desc.partition(":")
    a, b = (float(x) for x in rest.split(","))
    if kind == "smooth":
        return RadialProfile.smooth_bump(sp, a, b)
    if kind == "poly":
        return RadialProfile.poly_bump(sp, a, b)
    raise argparse.ArgumentTypeError(f"unknown profile kind {kind!r}")


def _cmd_fourier(args) -> int:
    sp = _space(args)
    kt = _ktype(args)
    prof = _make_profile(sp, args.profile)
    line = fourier.LineSpec(args.lam0, _parse_grid(args.heights))
    eta = as_eta(sp, 1.0)
    quad = QuadratureConfig(target_abs_err=args.target_abs_err)

    def one(lam: complex) -> list[str]:
        r = fourier.fourier_transform(sp, kt, prof, lam, eta, quad)
        return [_fmt(lam.real), _fmt(lam.imag), _fmt(r.value.real),
                _fmt(r.value.imag), _fmt(r.abs_err)]

    rows = _map_jobs(one, [complex(lam) for lam in line.points()], args.jobs)
    if args.json:
        print(json.dumps([
            {"lambda": {"re": float(r[0]), "im": float(r[1])},
             "value": {"re": float(r[2]), "im": float(r[3])},
             "abs_err": float(r[4])} for r in rows], indent=2))
        return 0
    _emit_rows(rows, ["lambda_re", "lambda_im", "value_re", "value_im", "abs_err"])
    return 0


def _cmd_verify(args) -> int:
    names = [args.suite] if args.suite != "all" else ["identities", "series",
                                                      "fourier", "fixtures"]
    sp = Space(args.p, args.q) if args.p and args.q else None
    failed = []
    for name in names:
        if name == "fixtures":
            try:
                cases = fixtures.load_cases()
            except Exception as exc:
                print(f"[fixtures] load failed: {exc}")
                failed.append("fixtures/load")
                continue
            worst = 0.0
            bad = 0
            for case in cases:
                got = fixtures.evaluate_case(case)
                err = abs(got - case.expected) / max(abs(case.expected), 1e-300)
                worst = max(worst, err / case.tol)
                if err > case.tol:
                    bad += 1
                    failed.append(f"fixtures/{case.case_id}")
            status = "pass" if bad == 0 else "FAIL"
            print(f"[fixtures] {len(cases)} cases, worst rel err "
                  f"{worst:.3e} x tol: {status}")
            continue
        results = verify.SUITES[name](sp) if sp else verify.SUITES[name]()
        for res in results:
            mark = "pass" if res.ok else "FAIL"
            print(f"[{name}] {res.name}: {mark} ({res.detail})")
            if not res.ok:
                failed.append(f"{name}/{res.name}")
    if failed:
        print("failed invariants:", ", ".join(failed), file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperfns", description=__doc__)
    subs = ap.add_subparsers(dest="cmd", required=True)

    ev = subs.add_parser("eval", help="evaluate the Eisenstein integral on a radius grid")
    _add_space_args(ev)
    ev.add_argument("--lam", "--lambda", dest="lam", type=_parse_complex, required=True)
    ev.add_argument("--t", required=True, help="radius or start:stop:count grid")
    ev.add_argument("--eta", type=_parse_complex, default=None)
    ev.add_argument("--orbit", type=int, default=1)
    ev.add_argument("--method", choices=["closed", "series", "both"], default="closed")
    ev.add_argument("--jobs", type=int, default=1)
    ev.set_defaults(fn=_cmd_eval)

    co = subs.add_parser("coeffs", help="series coefficient table at fixed lambda")
    _add_space_args(co)
    co.add_argument("--lam", "--lambda", dest="lam", type=_parse_complex, required=True)
    co.add_argument("--n-max", type=int, default=24)
    co.add_argument("--kind", choices=["gamma", "gamma-tilde"], default="gamma")
    co.add_argument("--json", action="store_true")
    co.set_defaults(fn=_cmd_coeffs)

    cf = subs.add_parser("cfun", help="connection coefficient c(lambda)")
    _add_space_args(cf)
    cf.add_argument("--lam", "--lambda", dest="lam", type=_parse_complex)
    cf.add_argument("--re-grid", default=None, help="start:stop:count for Re lambda")
    cf.add_argument("--im", type=float, default=0.0)
    cf.add_argument("--json", action="store_true")
    cf.add_argument("--jobs", type=int, default=1)
    cf.set_defaults(fn=_cmd_cfun)

    po = subs.add_parser("poles", help="pole and zero catalogs")
    _add_space_args(po)
    po.add_argument("--json", action="store_true")
    po.set_defaults(fn=_cmd_poles)

    cl = subs.add_parser("classify", help="boundedness classification of lambda_0")
    _add_space_args(cl)
    cl.add_argument("--R", type=float, required=True)
    cl.add_argument("--lam", "--lambda", dest="lam", type=_parse_complex, required=True)
    cl.set_defaults(fn=_cmd_classify)

    fo = subs.add_parser("fourier", help="transform values along a vertical line")
    _add_space_args(fo)
    fo.add_argument("--profile", required=True, help="smooth:a,b or poly:a,b")
    fo.add_argument("--lam0", type=float, default=0.0)
    fo.add_argument("--heights", required=True, help="start:stop:count for Im lambda")
    fo.add_argument("--target-abs-err", type=float, default=1e-10)
    fo.add_argument("--json", action="store_true")
    fo.add_argument("--jobs", type=int, default=1)
    fo.set_defaults(fn=_cmd_fourier)

    vf = subs.add_parser("verify", help="run the invariant suites")
    vf.add_argument("--suite", choices=["identities", "series", "fourier",
                                        "fixtures", "all"], default="all")
    vf.add_argument("--p", type=int, default=None)
    vf.add_argument("--q", type=int, default=None)
    vf.set_defaults(fn=_cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except HyperfnsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
