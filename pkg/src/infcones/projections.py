"""Linear projections of X: transversality, properness, sheet counts, and theorem checkers.

The checkers never assume a theorem's hypothesis.  They test it symbolically,
test the conclusion independently, and report both in a :class:`TheoremReport`.
"Outside a large ball" is decided as "the discrepancy locus is finite", which
over C is the same as bounded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .cones import ConeResult, c3_infinity, c4_infinity, c5_infinity
from .errors import InputError, ResourceExceeded
from .ideals import (
    Ideal,
    Variety,
    degree,
    dimension,
    distinct_point_count,
    eliminate,
    finite_radius_bound,
    jacobian_matrix,
    matmul,
    minors,
    saturate,
    singular_locus,
    stage,
    zero_dim_count,
)
from .poly import GaussianRational, Polynomial, VariableContext, coerce, format_coefficient

VERIFIED = "verified"
HYPOTHESIS_NOT_SATISFIED = "hypothesis-not-satisfied"
HYPOTHESIS_NOT_CERTIFIED = "hypothesis-not-certified"
FAILED = "failed"
RESOURCE_EXCEEDED = "resource-exceeded"


@dataclass(frozen=True)
class LinearSubspace:
    """Span of exact column vectors in C^m."""

    ambient: int
    basis: tuple  # tuple of column vectors, each a tuple of length ``ambient``

    def __post_init__(self):
        cols = tuple(tuple(coerce(x) for x in col) for col in self.basis)
        object.__setattr__(self, "basis", cols)
        for col in cols:
            if len(col) != self.ambient:
                raise InputError(f"basis vector {col} does not have {self.ambient} entries")
        if cols and linalg.rank([list(c) for c in cols]) != len(cols):
            raise InputError("basis vectors are linearly dependent")

    @classmethod
    def span(cls, *vectors, ambient: int | None = None):
        if ambient is None:
            if not vectors:
                raise InputError("the zero subspace needs an explicit ambient dimension")
            ambient = len(vectors[0])
        return cls(ambient, tuple(tuple(v) for v in vectors))

    @classmethod
    def coordinate(cls, ambient: int, *indices: int):
        return cls.span(*[[1 if j == i else 0 for j in range(ambient)] for i in indices],
                        ambient=ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> list[list]:
        """m × dim matrix whose columns are the basis vectors."""
        return [[col[r] for col in self.basis] for r in range(self.ambient)]

    def to_json(self) -> dict:
        return {"ambient": self.ambient,
                "basis": [[format_coefficient(x) for x in col] for col in self.basis]}

    def contains_vector(self, v) -> bool:
        return linalg.rank([list(c) for c in self.basis] + [list(v)]) == self.dim


@dataclass(frozen=True)
class Splitting:
    """C^m = V ⊕ W with split coordinates (x, y): z = V·x + W·y."""

    V: LinearSubspace
    W: LinearSubspace

    def __post_init__(self):
        if self.V.ambient != self.W.ambient:
            raise InputError("V and W live in different ambient spaces")
        if self.V.dim + self.W.dim != self.V.ambient or linalg.rank(
                [list(c) for c in self.V.basis + self.W.basis]) != self.V.ambient:
            raise InputError("V ⊕ W is not the whole space")

    @property
    def ambient(self) -> int:
        return self.V.ambient

    def assembled(self) -> list[list]:
        """Columns V then W: maps split coordinates to standard coordinates."""
        cols = self.V.basis + self.W.basis
        return [[col[r] for col in cols] for r in range(self.ambient)]

    @property
    def change_of_coords(self) -> list[list]:
        """Standard coordinates to split coordinates."""
        return linalg.inverse(self.assembled())

    def to_json(self) -> dict:
        return {"V": self.V.to_json(), "W": self.W.to_json()}


@dataclass
class Check:
    name: str
    passed: bool
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail",
                "certificate": self.certificate}


@dataclass
class TheoremReport:
    theorem: str
    hypotheses: list[Check] = field(default_factory=list)
    conclusions: list[Check] = field(default_factory=list)
    verdict: str = FAILED
    message: str = ""

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "verdict": self.verdict,
                "hypotheses": [c.to_json() for c in self.hypotheses],
                "conclusions": [c.to_json() for c in self.conclusions],
                "message": self.message}

    def conclude(self):
        if not all(c.passed for c in self.hypotheses):
            self.verdict = HYPOTHESIS_NOT_SATISFIED
        elif all(c.passed for c in self.conclusions):
            self.verdict = VERIFIED
        else:
            self.verdict = FAILED
        return self


def _gens(I: Ideal) -> list[str]:
    return I.generator_strings()


# ---------------------------------------------------------------------------
# subspace slices


def _lambda_context(d: int) -> VariableContext:
    return VariableContext([f"lam{j + 1}" for j in range(d)])


def slice_ideal(cone: ConeResult, S: LinearSubspace) -> Ideal:
    """Pull the cone ideal back along λ ↦ S·λ."""
    if S.ambient != len(cone.ideal.ctx):
        raise InputError(f"subspace lives in C^{S.ambient}, cone in C^{len(cone.ideal.ctx)}")
    lctx = _lambda_context(S.dim)
    lam = [Polynomial.variable(lctx, n) for n in lctx.names]
    images = []
    for r in range(S.ambient):
        acc = Polynomial.zero(lctx)
        for col, l in zip(S.basis, lam):
            if col[r]:
                acc = acc + l.scale(col[r])
        images.append(acc)
    return Ideal([g.compose(images, lctx) for g in cone.ideal.generators], lctx)


def cone_subspace_trivial(cone: ConeResult, S: LinearSubspace) -> bool:
    """True iff the cone meets S only at the origin."""
    if S.dim == 0:
        return True
    return dimension(slice_ideal(cone, S)) <= 0


def _random_entry(rng: random.Random, height: int):
    re = rng.randint(-height, height)
    im = rng.randint(-height, height) if rng.random() < 0.5 else 0
    return GaussianRational(re, im)


def random_subspace(m: int, d: int, rng: random.Random, height: int = 3) -> LinearSubspace:
    while True:
        cols = [[_random_entry(rng, height) for _ in range(m)] for _ in range(d)]
        if linalg.rank(cols) == d:
            return LinearSubspace(m, tuple(tuple(c) for c in cols))


def find_transverse_subspace(X: Variety, seed: int = 0, *, cone: ConeResult | None = None,
                             height: int = 3, retries: int = 50) -> LinearSubspace:
    """Random (m-k)-dimensional W with W ∩ C3,∞(X) = {0} (another cone may be given)."""
    cone = cone or c3_infinity(X)
    m, k = X.ambient_dim, X.dim
    rng = random.Random(seed)
    for _ in range(retries):
        W = random_subspace(m, m - k, rng, height)
        if cone_subspace_trivial(cone, W):
            return W
    raise InputError(f"no transverse subspace found in {retries} random draws "
                     f"(height {height}); raise the retry limit or the height")


def check_proper(X: Variety, W: LinearSubspace, c3: ConeResult | None = None) -> bool:
    """Projection along W restricted to X is proper iff W ∩ C3,∞(X) = {0}."""
    if W.dim != X.ambient_dim - X.dim:
        raise InputError(f"W must have dimension m - k = {X.ambient_dim - X.dim}")
    return cone_subspace_trivial(c3 or c3_infinity(X), W)


# ---------------------------------------------------------------------------
# fibers and sheets


def fiber_ideal(X: Variety, W: LinearSubspace, c: Sequence) -> Ideal:
    """X ∩ (c + W) in coordinates μ along W."""
    mctx = VariableContext([f"mu{j + 1}" for j in range(W.dim)])
    mu = [Polynomial.variable(mctx, n) for n in mctx.names]
    images = []
    for r in range(W.ambient):
        acc = Polynomial.constant(mctx, c[r])
        for col, u in zip(W.basis, mu):
            if col[r]:
                acc = acc + u.scale(col[r])
        images.append(acc)
    return Ideal([g.compose(images, mctx) for g in X.ideal.generators], mctx)


def sheet_count(X: Variety, W: LinearSubspace, seed: int = 0, *, samples: int = 3,
                retries: int = 20, height: int = 10) -> int:
    """Generic fiber size of the projection along W: max distinct count over random fibers."""
    if W.dim != X.ambient_dim - X.dim:
        raise InputError(f"W must have dimension m - k = {X.ambient_dim - X.dim}")
    rng = random.Random(seed)
    best, good = 0, 0
    for _ in range(retries):
        c = [_random_entry(rng, height) for _ in range(X.ambient_dim)]
        F = fiber_ideal(X, W, c)
        if dimension(F) > 0:
            continue
        best = max(best, distinct_point_count(F))
        good += 1
        if good >= samples:
            return best
    if good == 0:
        raise InputError(f"all {retries} random fibers were positive-dimensional; "
                         "is the projection proper?")
    return best


def critical_locus(X: Variety, W: LinearSubspace) -> Ideal:
    """Points of X where Jac(F)·[w_1 … w_{m-k}] drops rank (includes Sing X)."""
    c = X.ambient_dim - X.dim
    if W.dim != c:
        raise InputError(f"W must have dimension m - k = {c}")
    if c == 0:
        return Ideal.unit(X.ctx)
    F = [g for g in X.ideal.generators if g.terms]
    JW = matmul(jacobian_matrix(F), W.matrix())
    return X.ideal.with_generators(minors(JW, c))


# ---------------------------------------------------------------------------
# theorem checkers


def _guard(report: TheoremReport, fn):
    try:
        fn()
    except ResourceExceeded as exc:
        report.verdict = RESOURCE_EXCEEDED
        report.message = str(exc)
    return report


def verify_theorem_1_2(X: Variety, W: LinearSubspace, c4: ConeResult | None = None) -> TheoremReport:
    """If C4,∞(X) ∩ W = {0}, Sing X and the critical set of π agree outside a ball."""
    report = TheoremReport("critical-locus-equals-singular-locus")

    def run():
        cone = c4 or c4_infinity(X)
        report.hypotheses.append(Check("C4 ∩ W = {0}", cone_subspace_trivial(cone, W),
                                       {"cone": _gens(cone.ideal), "cone_dim": cone.dim,
                                        "W": W.to_json()}))
        with stage("critical locus"):
            crit = critical_locus(X, W)
            sing = singular_locus(X)
            D = saturate(crit, sing)
        d = dimension(D)
        cert = {"critical_locus": _gens(crit), "singular_locus": _gens(sing),
                "discrepancy": _gens(D), "discrepancy_dim": d}
        if d <= 0:
            cert["discrepancy_count"] = zero_dim_count(D)
            cert["discrepancy_points"] = distinct_point_count(D)
            cert["radius_bound"] = finite_radius_bound(D)
        report.conclusions.append(Check("Sing π \\ Sing X is finite", d <= 0, cert))
        report.conclude()

    return _guard(report, run)


def _split_names(X: Variety, split: Splitting) -> tuple[list[str], list[str]]:
    """Names for split coordinates: reuse a variable name when its basis vector is a unit vector."""
    names = list(X.ctx.names)
    used: set[str] = set()

    def pick(col, fallback):
        nz = [r for r, x in enumerate(col) if x]
        if len(nz) == 1 and col[nz[0]] == 1 and names[nz[0]] not in used:
            used.add(names[nz[0]])
            return names[nz[0]]
        name = fallback
        while name in used or name in names:
            name += "_"
        used.add(name)
        return name

    xs = [pick(col, f"a{j + 1}") for j, col in enumerate(split.V.basis)]
    ys = [pick(col, f"b{j + 1}") for j, col in enumerate(split.W.basis)]
    return xs, ys


def split_ideal(X: Variety, split: Splitting) -> tuple[Ideal, list[str], list[str]]:
    """X in split coordinates (x | y) where z = V·x + W·y."""
    xs, ys = _split_names(X, split)
    sctx = VariableContext(xs + ys)
    u = [Polynomial.variable(sctx, n) for n in sctx.names]
    M = split.assembled()
    images = []
    for row in M:
        acc = Polynomial.zero(sctx)
        for a, ui in zip(row, u):
            if a:
                acc = acc + ui.scale(a)
        images.append(acc)
    return Ideal([g.compose(images, sctx) for g in X.ideal.generators], sctx), xs, ys


def kernel_subspace(split: Splitting, i: int) -> LinearSubspace:
    """W^i: the W-directions with y_i = 0 (1-based i)."""
    if not 1 <= i <= split.W.dim:
        raise InputError(f"index must lie in 1..{split.W.dim}")
    cols = [c for j, c in enumerate(split.W.basis) if j != i - 1]
    return LinearSubspace(split.ambient, tuple(cols))


def verify_theorem_1_3(X: Variety, split: Splitting, i: int, *, c5: ConeResult | None = None,
                       c3: ConeResult | None = None) -> TheoremReport:
    """If C5,∞(X) ∩ W^i = {0}, π_i(X) is a hypersurface and π_i is injective and proper near infinity."""
    report = TheoremReport("hypersurface-projection")
    k = X.dim
    if split.V.dim != k:
        raise InputError(f"V must have dimension k = {k}")

    def run():
        Wi = kernel_subspace(split, i)
        cone5 = c5 or c5_infinity(X)
        report.hypotheses.append(Check("C5 ∩ W^i = {0}", cone_subspace_trivial(cone5, Wi),
                                       {"cone": _gens(cone5.ideal), "kernel": Wi.to_json()}))
        S, xs, ys = split_ideal(X, split)
        keep = xs + [ys[i - 1]]
        drop = [n for n in ys if n not in keep]
        with stage("projection image"):
            image = eliminate(S, drop)
        gb = image.groebner()
        dim_img = dimension(image)
        cert = {"variables": list(image.ctx.names), "image": _gens(image), "dim": dim_img}
        if len(gb) == 1:
            cert["principal_generator"] = str(gb[0])
        report.conclusions.append(Check("π_i(X) is a hypersurface in C^(k+1)", dim_img == k, cert))

        with stage("injectivity pair ideal"):
            pairs = _pair_ideal(S, xs, keep)
            off = saturate(pairs, Ideal(_pair_diagonal(pairs.ctx, S.ctx), pairs.ctx))
        dpair = dimension(off)
        report.conclusions.append(Check("π_i injective outside a compact set", dpair <= 0,
                                        {"pair_ideal_dim": dpair, "pairs": _gens(off)}))
        cone3 = c3 or c3_infinity(X)
        report.conclusions.append(Check("π_i proper (C3 ∩ W^i = {0})", cone_subspace_trivial(cone3, Wi),
                                        {"cone": _gens(cone3.ideal)}))
        report.conclude()

    return _guard(report, run)


def _pair_context(ctx: VariableContext) -> VariableContext:
    return VariableContext([f"{n}_p" for n in ctx.names] + [f"{n}_q" for n in ctx.names])


def _pair_ideal(S: Ideal, xs, keep) -> Ideal:
    pctx = _pair_context(S.ctx)
    P = {n: f"{n}_p" for n in S.ctx.names}
    Q = {n: f"{n}_q" for n in S.ctx.names}
    gens = [g.embed(pctx, P) for g in S.generators] + [g.embed(pctx, Q) for g in S.generators]
    gens += [Polynomial.variable(pctx, P[n]) - Polynomial.variable(pctx, Q[n]) for n in keep]
    return Ideal(gens, pctx)


def _pair_diagonal(pctx: VariableContext, ctx: VariableContext) -> list[Polynomial]:
    return [Polynomial.variable(pctx, f"{n}_p") - Polynomial.variable(pctx, f"{n}_q")
            for n in ctx.names]


def check_affine_linearity(X: Variety, *, c5: ConeResult | None = None,
                           split: Splitting | None = None, seed: int = 0) -> TheoremReport:
    """Pure k-dimensional C5,∞(X) forces X to be an affine subspace."""
    report = TheoremReport("affine-linearity")
    k = X.dim

    def run():
        cone = c5 or c5_infinity(X)
        dim_ok = cone.dim == k
        report.hypotheses.append(Check("dim C5 = k", dim_ok, {"dim_C5": cone.dim, "k": k}))
        report.hypotheses.append(Check("C5 pure", cone.purity in ("pure", "zero"),
                                       {"purity": cone.purity, "cone": _gens(cone.ideal)}))
        if not dim_ok:
            report.verdict = HYPOTHESIS_NOT_SATISFIED
            return
        if cone.purity not in ("pure", "zero"):
            report.verdict = HYPOTHESIS_NOT_CERTIFIED
            return
        deg = degree(X)
        report.conclusions.append(Check("deg X = 1", deg == 1, {"degree": deg}))
        gb = X.ideal.groebner()
        report.conclusions.append(Check("X is an affine subspace", all(g.degree() == 1 for g in gb),
                                        {"groebner": [str(g) for g in gb]}))
        if split is not None:
            W = split.W
        else:
            W = find_transverse_subspace(X, seed, cone=cone)
        report.conclusions.append(Check("ker π ∩ C5 = {0}", cone_subspace_trivial(cone, W),
                                        {"W": W.to_json()}))
        report.conclude()

    return _guard(report, run)
