"""Floating-point witnesses for the sequence definitions of the cones at infinity.

Arcs are exact parametrizations s ↦ φ(s) inside X, optionally Laurent in s
through a second symbol r standing for 1/s.  Containment is checked exactly;
everything after sampling is double precision with Hermitian norms.
"""

from __future__ import annotations

import cmath
import math
import random
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cones import ConeResult
from .errors import InputError
from .ideals import Ideal, Variety
from .poly import Polynomial, VariableContext, coerce, parse_polynomial

RESIDUAL_TOL = 1e-4
MONOTONE_SLACK = 1.1
# residuals below this are rounding noise; the monotone test ignores them
NOISE_FLOOR = 1e-12


class WitnessArc:
    """Polynomial (or Laurent) arc in C^m.

    Parameters
    ----------
    vars : list of str
        Names of the target coordinates.
    components : list of str or Polynomial
        One component per coordinate, in the parameter (and its inverse).
    parameter : str
        Name of the parameter, default ``"s"``.
    inverse : str, optional
        Name standing for ``1/parameter``; enables Laurent arcs such as
        ``(s, 1/s)`` on the hyperbola.
    """

    def __init__(self, vars: Sequence[str], components, parameter: str = "s",
                 inverse: str | None = None):
        self.target = VariableContext(list(vars))
        names = [parameter] + ([inverse] if inverse else [])
        self.pctx = VariableContext(names)
        self.parameter, self.inverse = parameter, inverse
        if len(components) != len(self.target):
            raise InputError(f"arc has {len(components)} components for {len(self.target)} variables")
        self.components = [c if isinstance(c, Polynomial) else parse_polynomial(c, self.pctx)
                           for c in components]
        s = Polynomial.variable(self.pctx, parameter)
        self._relation = Ideal([s * Polynomial.variable(self.pctx, inverse) - 1], self.pctx) if inverse else None
        if all(self._normal(c).is_constant() for c in self.components):
            raise InputError("arc is constant, it never escapes to infinity")
        self._derivs = [self._d(c) for c in self.components]

    @classmethod
    def from_json(cls, data: dict) -> "WitnessArc":
        try:
            return cls(data["vars"], data["components"], data.get("parameter", "s"), data.get("inverse"))
        except KeyError as exc:
            raise InputError(f"arc file lacks field {exc.args[0]!r}") from None

    def to_json(self) -> dict:
        out = {"vars": list(self.target.names), "parameter": self.parameter,
               "components": [str(c) for c in self.components]}
        if self.inverse:
            out["inverse"] = self.inverse
        return out

    def _normal(self, p: Polynomial) -> Polynomial:
        return self._relation.reduce(p) if self._relation is not None else p

    def _d(self, p: Polynomial) -> Polynomial:
        out = p.diff(self.parameter)
        if self.inverse:
            r = Polynomial.variable(self.pctx, self.inverse)
            out = out - p.diff(self.inverse) * r * r
        return out

    def validate(self, X: Variety | Ideal):
        """Raise InputError naming the first generator of X not vanishing on the arc."""
        ideal = X.ideal if isinstance(X, Variety) else X
        if list(ideal.ctx.names) != list(self.target.names):
            raise InputError(f"arc variables {list(self.target.names)} differ from "
                             f"variety variables {list(ideal.ctx.names)}")
        for g in ideal.generators:
            rest = self._normal(g.compose(self.components, self.pctx))
            if rest:
                raise InputError(f"arc is not contained in X: generator {g} gives {rest}")
        return self

    def _args(self, s: complex):
        return [s, 1 / s] if self.inverse else [s]

    def point(self, s: complex) -> np.ndarray:
        a = self._args(s)
        return np.array([c.evaluate_complex(a) for c in self.components])

    def tangent(self, s: complex) -> np.ndarray:
        a = self._args(s)
        return np.array([c.evaluate_complex(a) for c in self._derivs])


@dataclass
class SampleSchedule:
    """Sample radii, phases and the secant pairing rule.

    Each radius contributes one sample at every fixed argument plus
    ``random_phases`` seeded random arguments.  The pairing is a polynomial
    in ``s`` giving the partner parameter on the second arc.
    """

    radii: list = field(default_factory=lambda: [10.0 ** e for e in np.linspace(2, 6, 9)])
    arguments: list = field(default_factory=lambda: [0.0])
    random_phases: int = 1
    seed: int = 0
    pairing: str = "s"

    def __post_init__(self):
        r = [float(x) for x in self.radii]
        if len(r) < 2 or any(x <= 0 for x in r):
            raise InputError("need at least two positive radii")
        if any(b <= a for a, b in zip(r, r[1:])):
            raise InputError("radii must be strictly increasing")
        if r[-1] < 1e3 * r[0]:
            raise InputError("final radius must be at least 1000 times the first")
        self.radii = r
        self._pair = parse_polynomial(self.pairing, VariableContext(["s"]))

    @classmethod
    def from_json(cls, data: dict) -> "SampleSchedule":
        return cls(**{k: data[k] for k in ("radii", "arguments", "random_phases", "seed", "pairing")
                      if k in data})

    def points(self) -> list[tuple[float, complex]]:
        rng = random.Random(self.seed)
        out = []
        for r in self.radii:
            phases = list(self.arguments) + [rng.uniform(0, 2 * math.pi) for _ in range(self.random_phases)]
            out.extend((r, cmath.rect(r, a)) for a in phases)
        return out

    def partner(self, s: complex) -> complex:
        return self._pair.evaluate_complex([s])


@dataclass
class DirectionSample:
    radii: list
    directions: list

    def __len__(self):
        return len(self.directions)


def _unit(v: np.ndarray):
    n = np.linalg.norm(v)
    return None if n == 0 or not math.isfinite(n) else v / n


def sample_directions(kind: str, arc: WitnessArc, sched: SampleSchedule) -> DirectionSample:
    """Unit vectors p/‖p‖ (``c3``) or φ'(s)/‖φ'(s)‖ (``c4``) along the arc."""
    kind = kind.lower()
    if kind not in ("c3", "c4"):
        raise InputError(f"direction kind must be c3 or c4, got {kind!r}")
    radii, dirs = [], []
    for r, s in sched.points():
        u = _unit(arc.point(s) if kind == "c3" else arc.tangent(s))
        if u is None:
            warnings.warn(f"zero vector at s = {s}, sample skipped")
            continue
        radii.append(r)
        dirs.append(u)
    return DirectionSample(radii, dirs)


def sample_secants(arc1: WitnessArc, arc2: WitnessArc, sched: SampleSchedule) -> DirectionSample:
    """Unit secants (φ(s) − ψ(t))/‖·‖ with t given by the schedule's pairing."""
    if list(arc1.target.names) != list(arc2.target.names):
        raise InputError("secant arcs live in different contexts")
    radii, dirs = [], []
    for r, s in sched.points():
        u = _unit(arc1.point(s) - arc2.point(sched.partner(s)))
        if u is None:
            warnings.warn(f"coincident pair at s = {s}, sample skipped")
            continue
        radii.append(r)
        dirs.append(u)
    return DirectionSample(radii, dirs)


@dataclass
class MembershipReport:
    cone: str
    radii: list
    residuals: list
    slope: float | None
    passed: bool
    reason: str = ""

    def to_json(self) -> dict:
        return {"cone": self.cone, "status": "PASS" if self.passed else "FAIL",
                "table": [{"radius": r, "max_residual": e} for r, e in zip(self.radii, self.residuals)],
                "final_residual": self.residuals[-1] if self.residuals else None,
                "slope": self.slope, "reason": self.reason}


def fitted_slope(radii, residuals) -> float | None:
    """Least-squares slope of log residual against log radius (positive residuals only)."""
    pts = [(math.log(r), math.log(e)) for r, e in zip(radii, residuals) if e > 0]
    if len(pts) < 2:
        return None
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def check_cone_membership(cone: ConeResult | Ideal, dirs: DirectionSample | Sequence,
                          radii: Sequence[float] | None = None) -> MembershipReport:
    """Evaluate the cone's generators on sampled directions, radius by radius.

    Passes when the per-radius maximum residual is non-increasing from the
    third radius on (10% slack, rounding noise ignored) and the last one is
    below 1e-4.
    """
    ideal = cone.ideal if isinstance(cone, ConeResult) else cone
    name = cone.which if isinstance(cone, ConeResult) else "ideal"
    if isinstance(dirs, DirectionSample):
        radii, vecs = dirs.radii, dirs.directions
    else:
        vecs = list(dirs)
    if not vecs:
        raise InputError("no directions to check")
    if radii is None or len(radii) != len(vecs):
        raise InputError("need one radius per direction")
    gens = []
    for g in ideal.generators:
        if g.terms:
            scale = max(abs(complex(c)) for c in g.terms.values())
            gens.append((g, scale))
    per: dict[float, float] = {}
    for r, d in zip(radii, vecs):
        val = max((abs(g.evaluate_complex(list(d))) / sc for g, sc in gens), default=0.0)
        per[r] = max(per.get(r, 0.0), val)
    rs = sorted(per)
    res = [per[r] for r in rs]
    reason = ""
    ok = True
    for j in range(2, len(res)):
        if res[j] > MONOTONE_SLACK * res[j - 1] and res[j] > NOISE_FLOOR:
            ok, reason = False, f"residual grows at radius {rs[j]:g}"
            break
    if ok and not res[-1] < RESIDUAL_TOL:
        ok, reason = False, f"final residual {res[-1]:.3g} not below {RESIDUAL_TOL:g}"
    return MembershipReport(name, rs, res, fitted_slope(rs, res), ok, reason)


# ---------------------------------------------------------------------------
# algebraic region


@dataclass
class RegionReport:
    A: float
    B: float
    samples: int
    violations: int
    worst_ratio: float
    fitted_B: float | None
    passed: bool

    def to_json(self) -> dict:
        return {"A": self.A, "B": self.B, "samples": self.samples, "violations": self.violations,
                "worst_ratio": self.worst_ratio, "fitted_B": self.fitted_B,
                "status": "PASS" if self.passed else "FAIL"}


def _basis_matrix(S) -> np.ndarray:
    return np.array([[complex(coerce(x)) for x in col] for col in S.basis], dtype=complex).T.reshape(S.ambient, S.dim)


def algebraic_region_check(arcs: Sequence[WitnessArc], V1, V2, A: float, B: float,
                           sched: SampleSchedule | None = None) -> RegionReport:
    """Test ‖z''‖ ≤ A(1 + ‖z'‖)^B on arc samples, z = z' + z'' with z' ∈ V1, z'' ∈ V2.

    Also fits the exponent as the log-log slope of ‖z''‖ against 1 + ‖z'‖.
    """
    sched = sched or SampleSchedule()
    if V1.ambient != V2.ambient or V1.dim + V2.dim != V1.ambient:
        raise InputError("V1 and V2 must have complementary dimensions in the same space")
    M = np.hstack([_basis_matrix(V1), _basis_matrix(V2)])
    if np.linalg.matrix_rank(M) < V1.ambient:
        raise InputError("V1 + V2 is not the whole space")
    k = V1.dim
    xs, ys = [], []
    violations, worst, n = 0, 0.0, 0
    for arc in arcs:
        for _, s in sched.points():
            z = arc.point(s)
            c = np.linalg.solve(M, z)
            zp = np.linalg.norm(M[:, :k] @ c[:k])
            zpp = np.linalg.norm(M[:, k:] @ c[k:])
            bound = A * (1 + zp) ** B
            n += 1
            worst = max(worst, float(zpp / bound))
            if zpp > bound:
                violations += 1
            if zpp > 0:
                xs.append(math.log1p(zp))
                ys.append(math.log(zpp))
    fit = float(np.polyfit(xs, ys, 1)[0]) if len(set(xs)) >= 2 else None
    return RegionReport(A, B, n, violations, worst, fit, violations == 0)
