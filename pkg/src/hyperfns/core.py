"""Shared domain types for the hyperbolic-space harmonic analysis kernels.

The geometric input is a signature pair (p, q) describing the hyperboloid
{x : x_1^2+...+x_p^2 - x_{p+1}^2-...-x_{p+q}^2 = 1}.  Radial analysis on it
is governed by the half-sum parameter rho = (p+q-2)/2 and by the set of
open orbits, which has one element for q > 1 and two for q = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

POLE_EPS = 1e-9
"""Half-width of the detection window around lattice poles."""

T_MIN_SERIES = 0.05
"""Below this radius the exponential series tail bound is useless."""


class HyperfnsError(Exception):
    """Base class for domain errors raised by this package."""


class PoleAtNonpositiveInteger(HyperfnsError):
    pass


class ParameterPole(HyperfnsError):
    pass


class SeriesPole(HyperfnsError):
    pass


class SlowConvergence(HyperfnsError):
    pass


class QuadratureBudgetExceeded(HyperfnsError):
    pass


class IntegrandPole(HyperfnsError):
    pass


class DomainViolation(HyperfnsError):
    pass


class OutOfDomain(HyperfnsError):
    pass


class Status(str, Enum):
    """Evaluation status attached to numerical results.

    OK marks a plain evaluation.  REGULARIZED marks a finite limit taken at
    a point where the defining formula is singular.  ZERO and POLE mark
    exact lattice zeros and uncancelled poles.  OVERFLOW is used instead of
    returning non-finite numbers.  ACCURACY_LOSS flags results whose error
    estimate is dominated by cancellation, ILL_CONDITIONED results computed
    uncomfortably close to a pole.
    """

    OK = "regular"
    REGULARIZED = "regularized-at-pole"
    OVERFLOW = "overflow-guarded"
    POLE = "pole"
    ZERO = "zero"
    ACCURACY_LOSS = "accuracy-loss"
    ILL_CONDITIONED = "ill-conditioned"


@dataclass(frozen=True)
class EvalResult:
    """Complex value with an absolute error estimate and a status flag."""

    value: complex | None
    abs_err: float
    status: Status = Status.OK

    def to_json(self) -> dict:
        if self.value is None:
            v = None
        else:
            v = {"re": self.value.real, "im": self.value.imag}
        return {"value": v, "abs_err": self.abs_err, "status": self.status.value}

    @property
    def ok(self) -> bool:
        return self.status in (Status.OK, Status.REGULARIZED, Status.ZERO,
                               Status.ILL_CONDITIONED, Status.ACCURACY_LOSS)


@dataclass(frozen=True)
class Space:
    """The pair (p, q) with its derived half-sum and orbit set."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise DomainViolation(f"need p >= 1 and q >= 1, got ({self.p}, {self.q})")

    @property
    def rho(self) -> Fraction:
        return Fraction(self.p + self.q - 2, 2)

    @property
    def rho_f(self) -> float:
        return float(self.rho)

    @property
    def orbits(self) -> tuple[int, ...]:
        return (1,) if self.q > 1 else (1, -1)


@dataclass(frozen=True)
class KType:
    """Indices (k, l) of an irreducible factor of SO(p) x SO(q).

    k labels spherical harmonics on the first sphere factor and l on the
    second.  Negative values are allowed only in the two-dimensional
    rotation groups (p = 2 resp. q = 2), where only |k|, |l| enter any
    formula.  For p = 1 (resp. q = 1) the nontrivial indices have no
    representation-theoretic meaning, but the analytic formulas remain
    well defined and the catalog and boundedness probes use them, so they
    are accepted here as formal parameters.
    """

    k: int = 0
    l: int = 0

    def validate_for(self, space: Space) -> None:
        p, q = space.p, space.q
        if p > 2 and self.k < 0:
            raise DomainViolation("k must be >= 0 when p > 2")
        if q > 2 and self.l < 0:
            raise DomainViolation("l must be >= 0 when q > 2")

    @property
    def ak(self) -> int:
        return abs(self.k)

    @property
    def al(self) -> int:
        return abs(self.l)

    @property
    def trivial(self) -> bool:
        return self.k == 0 and self.l == 0


K_INVARIANT = KType(0, 0)


@dataclass(frozen=True)
class EtaVector:
    """Boundary-data vector with one complex component per open orbit."""

    components: Mapping[int, complex]

    def __post_init__(self):
        object.__setattr__(self, "components", dict(self.components))

    def __getitem__(self, w: int) -> complex:
        return self.components[w]

    def norm(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self.components.values()))

    def conjugate(self) -> "EtaVector":
        return EtaVector({w: complex(v).conjugate() for w, v in self.components.items()})

    def scaled(self, factor: complex) -> "EtaVector":
        return EtaVector({w: factor * v for w, v in self.components.items()})


def as_eta(space: Space, eta) -> EtaVector:
    """Coerce a scalar, sequence, mapping or EtaVector to an EtaVector."""
    orbs = space.orbits
    if isinstance(eta, EtaVector):
        if set(eta.components) != set(orbs):
            raise DomainViolation("eta components do not match the orbit set")
        return eta
    if isinstance(eta, (int, float, complex)):
        return EtaVector({w: complex(eta) for w in orbs})
    if isinstance(eta, Mapping):
        return EtaVector({w: complex(eta[w]) for w in orbs})
    vals = list(eta)
    if len(vals) != len(orbs):
        raise DomainViolation(f"expected {len(orbs)} eta components, got {len(vals)}")
    return EtaVector({w: complex(v) for w, v in zip(orbs, vals)})


def near_nonpos_int(z: complex, eps: float = POLE_EPS) -> int | None:
    """Return n >= 0 if z lies within eps of -n, else None."""
    zr = z.real
    if abs(z.imag) > eps or zr > eps:
        return None
    n = round(-zr)
    if n >= 0 and abs(z - (-n)) <= eps:
        return n
    return None


def is_nonpos_int(z: complex, eps: float = POLE_EPS) -> bool:
    return near_nonpos_int(z, eps) is not None


def rel_diff(x: complex, y: complex, floor: float = 1e-300) -> float:
    """Relative difference with a floor to keep zero values comparable."""
    scale = max(abs(x), abs(y), floor)
    return abs(x - y) / scale


@dataclass(frozen=True)
class Progression:
    """Arithmetic progression start + j*step, j = 0, 1, 2, ... on the real axis."""

    start: Fraction
    step: int

    def contains(self, lam: complex, eps: float = POLE_EPS) -> bool:
        if abs(lam.imag) > eps:
            return False
        j = (lam.real - float(self.start)) / self.step
        if j < -eps:
            return False
        jr = round(j)
        if jr < 0:
            return False
        return abs(lam.real - (float(self.start) + jr * self.step)) <= eps

    def distance(self, lam: complex) -> float:
        """Distance from lam to the nearest member."""
        j = (lam.real - float(self.start)) / self.step
        jr = max(0, round(j))
        best = abs(lam - complex(float(self.start) + jr * self.step))
        for jj in (jr - 1, jr + 1):
            if jj >= 0:
                best = min(best, abs(lam - complex(float(self.start) + jj * self.step)))
        return best

    def members_down_to(self, lo: float) -> list[Fraction]:
        """Members with value >= lo, for downward progressions."""
        if self.step >= 0:
            raise ValueError("members_down_to needs a downward progression")
        out = []
        j = 0
        while True:
            v = self.start + j * self.step
            if float(v) < lo - 1e-12:
                break
            out.append(v)
            j += 1
        return out

    def members_in(self, lo: float, hi: float, cap: int = 10000) -> list[Fraction]:
        out = []
        for j in range(cap):
            v = self.start + j * self.step
            fv = float(v)
            if self.step > 0 and fv > hi + 1e-12:
                break
            if self.step < 0 and fv < lo - 1e-12:
                break
            if lo - 1e-12 <= fv <= hi + 1e-12:
                out.append(v)
        return out

    def to_json(self) -> dict:
        return {"start": float(self.start), "step": self.step, "count": "infinite"}
