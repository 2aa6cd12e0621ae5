"""Tangent cones at infinity C3, C4, C5 as ideals in direction variables.

C3 is the cone over the part at infinity of the projective closure.  C4 and
C5 are images of incidence varieties (tangent pairs, resp. secant triples)
closed up in projective space, sliced at the hyperplane at infinity and
projected to the direction factor.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import InputError, InvariantViolation
from .ideals import (
    Ideal,
    Variety,
    dimension,
    eliminate,
    jacobian_matrix,
    radical_membership,
    saturate,
    saturate_poly,
    singular_locus,
    stage,
)
from .poly import GREVLEX, Polynomial, VariableContext

log = logging.getLogger(__name__)

CONE_KINDS = ("C3", "C4", "C5")


@dataclass
class IncidenceBuild:
    """Intermediate ideals of a cone construction, kept for diagnostics."""

    stages: dict[str, Ideal] = field(default_factory=dict)

    def add(self, name: str, ideal: Ideal) -> Ideal:
        self.stages[name] = ideal
        return ideal

    def summary(self) -> dict:
        return {name: len(I.generators) for name, I in self.stages.items()}


@dataclass
class ConeResult:
    which: str
    ideal: Ideal
    dim: int
    purity: str
    build: IncidenceBuild | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def variables(self) -> list[str]:
        return list(self.ideal.ctx.names)

    @property
    def generators(self) -> list[Polynomial]:
        return [] if self.ideal.is_zero_ideal() else list(self.ideal.generators)

    def to_json(self) -> dict:
        return {
            "which": self.which,
            "variables": self.variables,
            "generators": self.ideal.generator_strings(),
            "dim": self.dim,
            "purity": self.purity,
        }


def direction_context(ctx: VariableContext) -> VariableContext:
    names = []
    taken = set(ctx.names)
    for n in ctx.names:
        v = f"v_{n}"
        while v in taken or v in names:
            v = v + "_"
        names.append(v)
    return VariableContext(names)


def _fresh(base: str, taken: set) -> str:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def _copy_names(ctx: VariableContext, suffix: str, taken: set) -> list[str]:
    return [_fresh(f"{n}_{suffix}", taken) for n in ctx.names]


def purity_of(ideal: Ideal, dim: int) -> str:
    """Certify equidimensionality only where it is free: principal, linear, or finite."""
    if dim <= 0:
        return "zero"
    if ideal.is_zero_ideal():
        return "pure"
    gb = ideal.groebner()
    if len(gb) == 1 or all(g.degree() == 1 for g in gb):
        return "pure"
    return "unknown"


def _finish(which: str, J: Ideal, X: Variety, build: IncidenceBuild | None,
            lower: int | None, upper: int | None) -> ConeResult:
    gb = J.groebner()
    for g in gb:
        if not g.is_homogeneous():
            raise InvariantViolation(f"{which} ideal has a non-homogeneous element {g}")
    J = Ideal(gb, J.ctx) if gb else Ideal.zero(J.ctx)
    if gb:
        J._seed_groebner(GREVLEX, gb)
    d = dimension(J)
    warnings = []
    if lower is not None and not lower <= d <= upper:
        raise InvariantViolation(f"dim {which} = {d} outside [{lower}, {upper}]")
    return ConeResult(which, J, d, purity_of(J, d), build, warnings)


def _to_directions(I: Ideal, dctx: VariableContext, names: list[str]) -> Ideal:
    """Re-express an ideal whose variables are ``names`` in the direction context."""
    gens = []
    pos = [I.ctx.index(n) for n in names]
    for g in I.generators:
        terms = {tuple(m[k] for k in pos): c for m, c in g.terms.items()}
        gens.append(Polynomial._raw(dctx, terms))
    return Ideal(gens, dctx)


def _require_unbounded(X: Variety):
    if X.dim is None or X.dim < 1:
        raise InputError(f"X must be unbounded (dim >= 1); got dim {X.dim}")


# ---------------------------------------------------------------------------


def c3_infinity(X: Variety) -> ConeResult:
    """Cone over cl(X) ∩ H_∞: homogenize, saturate by the new variable, set it to zero."""
    _require_unbounded(X)
    ctx = X.ctx
    taken = set(ctx.names)
    w = _fresh("w0", taken)
    big = VariableContext((w,) + ctx.names)
    build = IncidenceBuild()
    with stage("C3 projective closure"):
        H = Ideal([g.embed(big).homogenize(big.names, w) for g in X.ideal.generators], big)
        build.add("homogenized", H)
        H = build.add("closure", saturate_poly(H, Polynomial.variable(big, w)))
    Z = build.add("slice", H.specialize({w: 0}))
    dctx = direction_context(ctx)
    J = _to_directions(Z, dctx, list(ctx.names))
    res = _finish("C3", J, X, build, None, None)
    if res.dim != X.dim:
        msg = f"dim C3 = {res.dim} differs from dim X = {X.dim}"
        log.warning(msg)
        res.warnings.append(msg)
    return res


def _irrelevant_slice(Z: Ideal, blocks: list[list[str]], build: IncidenceBuild) -> Ideal:
    """Remove the loci where a whole projective coordinate block vanishes."""
    for names in blocks:
        with stage("saturation by irrelevant locus"):
            gens = [Polynomial.variable(Z.ctx, n) for n in names]
            Z = saturate(Z, Ideal(gens, Z.ctx))
    return build.add("slice_saturated", Z)


def c5_infinity(X: Variety) -> ConeResult:
    """Secant cone at infinity via the incidence variety {(x, y, v): (x - y) ∧ v = 0}."""
    _require_unbounded(X)
    ctx = X.ctx
    m, k = X.ambient_dim, X.dim
    taken = set()
    xs = _copy_names(ctx, "p", taken)
    ys = _copy_names(ctx, "q", taken)
    x0 = _fresh("h_p", taken)
    y0 = _fresh("h_q", taken)
    dctx = direction_context(ctx)
    vs = [_fresh(n, taken) for n in dctx.names]
    big = VariableContext([x0, *xs, y0, *ys, *vs],
                          {"p": [x0, *xs], "q": [y0, *ys], "v": vs})
    X_ = [Polynomial.variable(big, n) for n in xs]
    Y_ = [Polynomial.variable(big, n) for n in ys]
    V_ = [Polynomial.variable(big, n) for n in vs]
    build = IncidenceBuild()

    gens = [g.embed(big, dict(zip(ctx.names, xs))) for g in X.ideal.generators]
    gens += [g.embed(big, dict(zip(ctx.names, ys))) for g in X.ideal.generators]
    diff = [a - b for a, b in zip(X_, Y_)]
    for i in range(m):
        for j in range(i + 1, m):
            gens.append(diff[i] * V_[j] - diff[j] * V_[i])
    A = build.add("incidence", Ideal(gens, big))

    with stage("C5 diagonal removal"):
        A = build.add("off_diagonal", saturate(A, Ideal(diff, big)))
    with stage("C5 bi-projective closure"):
        H = Ideal([g.homogenize("p", x0).homogenize("q", y0) for g in A.generators], big)
        H = saturate_poly(H, Polynomial.variable(big, x0))
        H = build.add("closure", saturate_poly(H, Polynomial.variable(big, y0)))
    Z = build.add("slice", H.specialize({x0: 0, y0: 0}))
    Z = _irrelevant_slice(Z, [xs, ys], build)
    with stage("C5 projection to directions"):
        E = eliminate(Z, [x0, *xs, y0, *ys])
    build.add("eliminated", E)
    J = _to_directions(E, dctx, vs)
    return _finish("C5", J, X, build, k, min(m, 2 * k + 1))


def c4_infinity(X: Variety) -> ConeResult:
    """Limits of tangent directions at smooth points escaping to infinity."""
    _require_unbounded(X)
    ctx = X.ctx
    m, k = X.ambient_dim, X.dim
    taken = set()
    ps = _copy_names(ctx, "p", taken)
    p0 = _fresh("h_p", taken)
    dctx = direction_context(ctx)
    vs = [_fresh(n, taken) for n in dctx.names]
    big = VariableContext([p0, *ps, *vs], {"p": [p0, *ps], "v": vs})
    V_ = [Polynomial.variable(big, n) for n in vs]
    ren = dict(zip(ctx.names, ps))
    build = IncidenceBuild()

    F = [g for g in X.ideal.generators if g.terms]
    gens = [g.embed(big, ren) for g in F]
    for row in jacobian_matrix(F):
        acc = Polynomial.zero(big)
        for entry, v in zip(row, V_):
            if entry.terms:
                acc = acc + entry.embed(big, ren) * v
        gens.append(acc)
    A = build.add("incidence", Ideal(gens, big))
    sing = singular_locus(X)
    S = Ideal([g.embed(big, ren) for g in sing.generators], big)
    with stage("C4 smooth-part restriction"):
        A = build.add("smooth_part", saturate(A, S))
    with stage("C4 projective closure"):
        H = Ideal([g.homogenize("p", p0) for g in A.generators], big)
        H = build.add("closure", saturate_poly(H, Polynomial.variable(big, p0)))
    Z = build.add("slice", H.specialize({p0: 0}))
    Z = _irrelevant_slice(Z, [ps], build)
    with stage("C4 projection to directions"):
        E = eliminate(Z, [p0, *ps])
    build.add("eliminated", E)
    J = _to_directions(E, dctx, vs)
    return _finish("C4", J, X, build, k, min(m, 2 * k + 1))


def cone(X: Variety, which: str) -> ConeResult:
    which = which.upper()
    if which == "C3":
        return c3_infinity(X)
    if which == "C4":
        return c4_infinity(X)
    if which == "C5":
        return c5_infinity(X)
    raise InputError(f"unknown cone {which!r}; expected one of c3, c4, c5")


@dataclass
class InclusionReport:
    checks: list[dict]
    dims: dict[str, int]
    passed: bool
    violation: str | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "dims": self.dims, "checks": self.checks,
                "violation": self.violation}


def _contained(small: ConeResult, large: ConeResult) -> str | None:
    """None if V(small) ⊆ V(large), else the first generator of ``large`` not vanishing on V(small)."""
    for g in large.generators:
        if not radical_membership(g, small.ideal):
            return str(g)
    return None


def verify_inclusions(X: Variety, cones: dict[str, ConeResult] | None = None) -> InclusionReport:
    """Check V(C3) ⊆ V(C4) ⊆ V(C5) and the dimension window k ≤ dim C4 ≤ dim C5 ≤ min(m, 2k+1)."""
    cones = dict(cones or {})
    for w in CONE_KINDS:
        if w not in cones:
            cones[w] = cone(X, w)
    c3, c4, c5 = cones["C3"], cones["C4"], cones["C5"]
    k, m = X.dim, X.ambient_dim
    checks = []
    violation = None

    def record(name, ok, detail=""):
        checks.append({"name": name, "status": "PASS" if ok else "FAIL", "detail": detail})
        return ok

    bad = _contained(c3, c4)
    if not record("C3 ⊆ C4", bad is None, bad or ""):
        violation = violation or f"C4 generator {bad} does not vanish on C3"
    bad = _contained(c4, c5)
    if not record("C4 ⊆ C5", bad is None, bad or ""):
        violation = violation or f"C5 generator {bad} does not vanish on C4"
    record("dim C3 = k", c3.dim == k, f"{c3.dim} vs {k}")
    record("k ≤ dim C4", k <= c4.dim, f"{k} ≤ {c4.dim}")
    record("dim C4 ≤ dim C5", c4.dim <= c5.dim, f"{c4.dim} ≤ {c5.dim}")
    record("dim C5 ≤ min(m, 2k+1)", c5.dim <= min(m, 2 * k + 1), f"{c5.dim} ≤ {min(m, 2 * k + 1)}")
    passed = all(c["status"] == "PASS" for c in checks)
    if not passed and violation is None:
        violation = next(c["name"] for c in checks if c["status"] == "FAIL")
    dims = {"k": k, "m": m, "C3": c3.dim, "C4": c4.dim, "C5": c5.dim}
    return InclusionReport(checks, dims, passed, violation)
