"""Loading and replaying of the committed golden fixtures.

Fixture files are JSON lists of records with decimal-string inputs and
expected values produced offline at 50 significant digits.  Each case_id
prefix names the operation under test; regularized-at-pole cases carry a
wider tolerance because the double-precision limit device cannot do
better than about 1e-6 relative.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .core import KType, Space
from . import eisenstein, fourier, hcseries, specfun

DEFAULT_TOL = 1e-10
REGULARIZED_TOL = 1e-6

_ENV_VAR = "HYPERFNS_FIXTURES"


def fixtures_dir() -> Path:
    env = os.environ.get(_ENV_VAR)
    if env:
        return Path(env)
    here = Path(__file__).resolve()
    for parent in here.parents:
        cand = parent / "fixtures"
        if cand.is_dir():
            return cand
    return Path("fixtures")


@dataclass(frozen=True)
class FixtureCase:
    case_id: str
    inputs: dict
    expected: complex
    digits: int
    formula_ref: str

    @property
    def tol(self) -> float:
        return REGULARIZED_TOL if self.case_id.startswith("eis_reg") else DEFAULT_TOL


def _as_complex(v) -> complex:
    if isinstance(v, dict):
        return complex(float(v["re"]), float(v["im"]))
    return complex(float(v), 0.0)


def _as_float(v) -> float:
    return float(v)


def load_cases(path: Path | None = None) -> list[FixtureCase]:
    base = path or fixtures_dir()
    cases = []
    for f in sorted(base.glob("*.json")):
        for rec in json.loads(f.read_text()):
            cases.append(FixtureCase(
                case_id=rec["case_id"],
                inputs=rec["inputs"],
                expected=_as_complex(rec["expected"]),
                digits=int(rec["digits"]),
                formula_ref=rec.get("formula_ref", ""),
            ))
    return sorted(cases, key=lambda c: c.case_id)


def evaluate_case(case: FixtureCase) -> complex:
    """Recompute a fixture's value through the production code paths."""
    ins = case.inputs
    cid = case.case_id

    def space() -> Space:
        return Space(int(ins["p"]), int(ins["q"]))

    def ktype() -> KType | None:
        if "k" in ins or "l" in ins:
            return KType(int(ins.get("k", 0)), int(ins.get("l", 0)))
        return None

    if cid.startswith("loggamma/"):
        return specfun.log_gamma(_as_complex(ins["z"]))
    if cid.startswith("hyp2f1/"):
        res = specfun.hyp2f1_nonpos(_as_complex(ins["a"]), _as_complex(ins["b"]),
                                    _as_complex(ins["c"]), _as_float(ins["z"]))
        return res.value
    if cid.startswith("bcoeff/"):
        return complex(hcseries.b_coeffs(space(), int(ins["n"]))[int(ins["n"])])
    if cid.startswith("gamma_tilde/"):
        tab = hcseries.gamma_tilde(space(), ktype(), _as_complex(ins["lam"]),
                                   int(ins["m"]))
        return tab.values[int(ins["m"])]
    if cid.startswith("gamma/"):
        tab = hcseries.gamma_coeffs(space(), ktype(), _as_complex(ins["lam"]),
                                    int(ins["m"]))
        return tab.values[int(ins["m"])]
    if cid.startswith("phi/"):
        res = hcseries.phi_series(space(), ktype(), _as_complex(ins["lam"]),
                                  _as_float(ins["t"]), 1e-13)
        return res.value
    if cid.startswith("cfun/"):
        return eisenstein.c_function(space(), ktype(), _as_complex(ins["lam"])).value
    if cid.startswith("eis_closed/") or cid.startswith("eis_series/"):
        res = eisenstein.eisenstein_closed(
            space(), ktype(), _as_complex(ins["lam"]), _as_complex(ins["eta"]),
            int(ins.get("w", 1)), _as_float(ins["t"]))
        return res.value
    if cid.startswith("eis_reg/"):
        res = eisenstein.eisenstein_regularized(
            space(), ktype(), _as_float(ins["R"]), _as_complex(ins["lam"]),
            _as_complex(ins["eta"]), int(ins.get("w", 1)), _as_float(ins["t"]))
        return res.value
    if cid.startswith("fourier/"):
        sp = space()
        prof = fourier.RadialProfile.smooth_bump(
            sp, _as_float(ins["a"]), _as_float(ins["b"]))
        res = fourier.fourier_transform(
            sp, ktype(), prof, _as_complex(ins["lam"]), _as_complex(ins["eta"]),
            fourier.QuadratureConfig(target_abs_err=1e-12))
        return res.value
    raise KeyError(f"unknown fixture case id {cid}")
