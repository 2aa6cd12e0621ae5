"""Groebner-basis machinery over Q(i).

Buchberger's algorithm with the Gebauer-Moeller pair criteria, plus the
derived operations the cone constructions need: elimination, saturation,
intersection, radical membership, Krull dimension, projective degree,
Jacobians and singular loci, and standard-monomial counting.

Every Groebner computation charges one step per processed S-pair against
the active :class:`Budget`; running past it raises
:class:`~infcones.errors.ResourceExceeded` instead of returning a partial
answer.
"""

from __future__ import annotations

import contextlib
import contextvars
import itertools
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import ContextMismatch, InputError, InvariantViolation, ResourceExceeded
from .poly import GREVLEX, MonomialOrder, Polynomial, VariableContext

DEFAULT_STEP_BUDGET = 500_000


@dataclass
class Budget:
    """Step (S-pair) budget shared by all Groebner runs inside a :func:`use_budget` block."""

    max_steps: int = DEFAULT_STEP_BUDGET
    max_degree: int | None = None
    used: int = 0
    computations: int = 0

    def __post_init__(self):
        if self.max_steps <= 0:
            raise InputError("step budget must be positive")

    def charge(self, degree: int = 0):
        self.used += 1
        if self.used > self.max_steps:
            raise ResourceExceeded(f"{self.max_steps} S-pair steps", current_stage())
        if self.max_degree is not None and degree > self.max_degree:
            raise ResourceExceeded(f"S-pair degree {degree} > cap {self.max_degree}", current_stage())


_BUDGET: contextvars.ContextVar[Budget | None] = contextvars.ContextVar("budget", default=None)
_STAGE: contextvars.ContextVar[str | None] = contextvars.ContextVar("stage", default=None)


@contextlib.contextmanager
def use_budget(budget: Budget):
    token = _BUDGET.set(budget)
    try:
        yield budget
    finally:
        _BUDGET.reset(token)


@contextlib.contextmanager
def stage(name: str):
    """Label the running pipeline stage (used in resource-error messages)."""
    token = _STAGE.set(name)
    try:
        yield
    finally:
        _STAGE.reset(token)


def current_stage() -> str | None:
    return _STAGE.get()


def _active_budget() -> Budget:
    b = _BUDGET.get()
    return b if b is not None else Budget()


# ---------------------------------------------------------------------------
# raw dict-level kernels


def _mask(m) -> int:
    bits = 0
    for k, e in enumerate(m):
        if e:
            bits |= 1 << k
    return bits


def _lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mdiv(a, b):
    return tuple([x - y for x, y in zip(a, b)])


def _madd(a, b):
    return tuple([x + y for x, y in zip(a, b)])


class _Reducer:
    """Leading-term data for one basis element: monomial, support mask, degree, monic dict."""

    __slots__ = ("lm", "mask", "deg", "poly")

    def __init__(self, lm, poly):
        self.lm = lm
        self.mask = _mask(lm)
        self.deg = sum(lm)
        self.poly = poly


def _find_divisor(m, mmask, mdeg, reducers):
    for r in reducers:
        if r.deg <= mdeg and not (r.mask & ~mmask) and _divides(r.lm, m):
            return r
    return None


def _reduce(p: dict, reducers: Sequence[_Reducer], order: MonomialOrder) -> dict:
    """Full normal form of ``p`` by monic ``reducers``."""
    if not p or not reducers:
        return dict(p)
    nkey = order.nkey
    p = dict(p)
    rem = {}
    heap = [(nkey(m), m) for m in p]
    heapify(heap)
    while heap:
        _, m = heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        r = _find_divisor(m, _mask(m), sum(m), reducers)
        if r is None:
            rem[m] = c
            continue
        q = _mdiv(m, r.lm)
        lm = r.lm
        for gm, gc in r.poly.items():
            if gm == lm:
                continue
            mm = _madd(gm, q)
            v = p.get(mm)
            if v is None:
                p[mm] = -c * gc
                heappush(heap, (nkey(mm), mm))
            else:
                v = v - c * gc
                if v:
                    p[mm] = v
                else:
                    del p[mm]
    return rem


def _lead(p: dict, order: MonomialOrder):
    return max(p, key=order.key)


def _monic(p: dict, lm) -> dict:
    lc = p[lm]
    if lc == 1:
        return p
    inv = 1 / lc
    return {m: c * inv for m, c in p.items()}


def _spoly(f: _Reducer, g: _Reducer, lcm) -> dict:
    qf = _mdiv(lcm, f.lm)
    qg = _mdiv(lcm, g.lm)
    out = {}
    for m, c in f.poly.items():
        if m != f.lm:
            out[_madd(m, qf)] = c
    for m, c in g.poly.items():
        if m == g.lm:
            continue
        mm = _madd(m, qg)
        v = out.get(mm)
        if v is None:
            out[mm] = -c
        else:
            v = v - c
            if v:
                out[mm] = v
            else:
                del out[mm]
    return out


def _buchberger(F: Iterable[dict], order: MonomialOrder, strategy: str = "normal") -> list[dict]:
    """Reduced Groebner basis (list of monic dicts, ascending by leading monomial)."""
    budget = _active_budget()
    budget.computations += 1
    key = order.key
    G: list[_Reducer] = []
    sugar: list[int] = []
    active: list[int] = []
    pairs: list = []  # (select_key, i, j, lcm)

    def select_key(i, j, lcm):
        if strategy == "sugar":
            s = max(sugar[i] + sum(lcm) - G[i].deg, sugar[j] + sum(lcm) - G[j].deg)
            return (s, key(lcm), i, j)
        return (key(lcm), i, j)

    def add(h: dict, s: int):
        nonlocal pairs, active
        lm = _lead(h, order)
        h = _monic(h, lm)
        hr = _Reducer(lm, h)
        n = len(G)
        G.append(hr)
        sugar.append(s)
        # Gebauer-Moeller update
        C = [(g, _lcm(G[g].lm, lm)) for g in active]
        D = []
        for idx, (g1, l1) in enumerate(C):
            disjoint = not (G[g1].mask & hr.mask)
            if disjoint or (
                    not any(_divides(l2, l1) for _, l2 in C[idx + 1:])
                    and not any(_divides(l2, l1) for _, l2 in D)):
                D.append((g1, l1))
        E = [(g, l) for g, l in D if G[g].mask & hr.mask]
        kept = []
        for pk, i, j, lij in pairs:
            if (not _divides(lm, lij) or _lcm(G[i].lm, lm) == lij
                    or _lcm(G[j].lm, lm) == lij):
                kept.append((pk, i, j, lij))
        for g, l in E:
            kept.append((select_key(g, n, l), g, n, l))
        pairs = kept
        active = [g for g in active if not _divides(lm, G[g].lm)] + [n]

    for f in F:
        if not f:
            continue
        r = _reduce(f, [G[a] for a in active], order)
        if r:
            add(r, max(sum(m) for m in r))

    while pairs:
        best = min(range(len(pairs)), key=lambda t: pairs[t][0])
        _, i, j, lcm = pairs[best]
        pairs[best] = pairs[-1]
        pairs.pop()
        budget.charge(sum(lcm))
        s = _spoly(G[i], G[j], lcm)
        if not s:
            continue
        r = _reduce(s, [G[a] for a in active], order)
        if r:
            sg = max(sugar[i] + sum(lcm) - G[i].deg, sugar[j] + sum(lcm) - G[j].deg)
            add(r, sg)

    basis = [G[a] for a in active]
    out = []
    for k, g in enumerate(basis):
        others = basis[:k] + basis[k + 1:]
        tail = {m: c for m, c in g.poly.items() if m != g.lm}
        red = _reduce(tail, others, order)
        red[g.lm] = g.poly[g.lm]
        out.append((g.lm, red))
    out.sort(key=lambda t: key(t[0]))
    return [p for _, p in out]


def _reducers(basis: Sequence[dict], order: MonomialOrder) -> list[_Reducer]:
    out = []
    for p in basis:
        lm = _lead(p, order)
        out.append(_Reducer(lm, _monic(p, lm)))
    return out


# ---------------------------------------------------------------------------
# public polynomial-level API


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of ``f`` on full division by ``basis`` (no term divisible by a leading term)."""
    for g in basis:
        if g.ctx != f.ctx:
            raise ContextMismatch("basis and polynomial contexts differ")
    reds = _reducers([g.terms for g in basis if g.terms], order)
    return Polynomial._raw(f.ctx, _reduce(f.terms, reds, order))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    rf, rg = _reducers([f.terms, g.terms], order)
    return Polynomial._raw(f.ctx, _spoly(rf, rg, _lcm(rf.lm, rg.lm)))


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    reds = _reducers([g.terms for g in basis if g.terms], order)
    for a, b in itertools.combinations(reds, 2):
        s = _spoly(a, b, _lcm(a.lm, b.lm))
        if _reduce(s, reds, order):
            return False
    return True


def is_reduced_groebner(basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    if not is_groebner(basis, order):
        return False
    lms = [g.leading_monomial(order) for g in basis]
    for g, lm in zip(basis, lms):
        if g.terms[lm] != 1:
            return False
        for m in g.terms:
            for other in lms:
                if other != lm and _divides(other, m):
                    return False
    return True


class Ideal:
    """Finitely generated ideal with a write-once Groebner cache per monomial order."""

    __slots__ = ("ctx", "generators", "_gb")

    def __init__(self, generators: Iterable[Polynomial], ctx: VariableContext | None = None):
        gens = list(generators)
        if ctx is None:
            if not gens:
                raise InputError("an ideal needs a context or at least one generator")
            ctx = gens[0].ctx
        for g in gens:
            if not isinstance(g, Polynomial):
                raise InputError(f"ideal generators must be polynomials, got {type(g).__name__}")
            if g.ctx != ctx:
                raise ContextMismatch("generators live in different contexts")
        nonzero = [g for g in gens if g.terms]
        self.ctx = ctx
        self.generators = tuple(nonzero) if nonzero else (Polynomial.zero(ctx),)
        self._gb: dict = {}

    @classmethod
    def unit(cls, ctx):
        return cls([Polynomial.one(ctx)], ctx)

    @classmethod
    def zero(cls, ctx):
        return cls([], ctx)

    def is_zero_ideal(self) -> bool:
        return all(not g.terms for g in self.generators)

    def groebner(self, order: MonomialOrder = GREVLEX, strategy: str = "normal") -> list[Polynomial]:
        gb = self._gb.get(order)
        if gb is None:
            raw = _buchberger([g.terms for g in self.generators], order, strategy)
            gb = self._gb[order] = tuple(Polynomial._raw(self.ctx, p) for p in raw)
        return list(gb)

    def _seed_groebner(self, order: MonomialOrder, basis: Sequence[Polynomial]):
        self._gb.setdefault(order, tuple(basis))

    def reduce(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        return normal_form(f, self.groebner(order), order)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f).terms

    __contains__ = contains

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant() and bool(gb[0].terms)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        """Ideal equality by mutual reduction."""
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ctx != self.ctx:
            raise ContextMismatch("ideal sum across contexts")
        return Ideal(self.generators + other.generators, self.ctx)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([f * g for f in self.generators for g in other.generators], self.ctx)

    def with_generators(self, extra: Iterable[Polynomial]) -> "Ideal":
        return Ideal(list(self.generators) + list(extra), self.ctx)

    def embed(self, target: VariableContext, mapping=None) -> "Ideal":
        return Ideal([g.embed(target, mapping) for g in self.generators], target)

    def specialize(self, values) -> "Ideal":
        return Ideal([g.specialize(values) for g in self.generators], self.ctx)

    def is_homogeneous(self, indices: Iterable[int] | None = None) -> bool:
        idx = None if indices is None else list(indices)
        return all(g.is_homogeneous(idx) for g in self.generators)

    def __repr__(self):
        return f"Ideal([{', '.join(str(g) for g in self.generators)}], vars={list(self.ctx.names)})"

    def generator_strings(self) -> list[str]:
        return [] if self.is_zero_ideal() else [str(g) for g in self.generators]


def groebner(I: Ideal, order: MonomialOrder = GREVLEX) -> list[Polynomial]:
    """Reduced Groebner basis of ``I`` (empty list for the zero ideal)."""
    return I.groebner(order)


# ---------------------------------------------------------------------------
# context surgery


def extend_context(ctx: VariableContext, names: Sequence[str], block: str | None = None,
                   front: bool = False) -> VariableContext:
    blocks = dict(ctx.blocks)
    if blocks:
        blocks[block or "_aux"] = tuple(names)
    new = tuple(names) + ctx.names if front else ctx.names + tuple(names)
    return VariableContext(new, blocks or None)


def restrict_context(ctx: VariableContext, keep: Sequence[str]) -> VariableContext:
    keep = [n for n in ctx.names if n in set(keep)]
    blocks = {}
    for b, vs in ctx.blocks.items():
        vv = tuple(v for v in vs if v in keep)
        if vv:
            blocks[b] = vv
    return VariableContext(keep, blocks or None)


def eliminate(I: Ideal, drop_vars: Iterable[str]) -> Ideal:
    """Elimination ideal ``I ∩ k[remaining variables]``, returned in the reduced context."""
    drop = list(dict.fromkeys(drop_vars))
    for v in drop:
        I.ctx.index(v)
    keep = [n for n in I.ctx.names if n not in set(drop)]
    target = restrict_context(I.ctx, keep)
    if not drop:
        return Ideal(I.generators, I.ctx)
    order = MonomialOrder("block", first=I.ctx.indices(drop))
    gb = I.groebner(order)
    didx = I.ctx.indices(drop)
    kept = [g for g in gb if not any(m[k] for m in g.terms for k in didx)]
    pos = I.ctx.indices(keep)
    out = [Polynomial._raw(target, {tuple(m[k] for k in pos): c for m, c in g.terms.items()})
           for g in kept]
    J = Ideal(out, target)
    if out:
        J._seed_groebner(GREVLEX, out)
    return J


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` via eliminating ``t`` from ``t*I + (1-t)*J``."""
    if I.ctx != J.ctx:
        raise ContextMismatch("intersection across contexts")
    if I.is_zero_ideal() or J.is_zero_ideal():
        return Ideal.zero(I.ctx)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    tname = I.ctx.fresh_name("t_")
    big = extend_context(I.ctx, [tname], front=True)
    t = Polynomial.variable(big, tname)
    gens = [t * g.embed(big) for g in I.generators]
    gens += [(1 - t) * g.embed(big) for g in J.generators]
    return _drop_ctx(eliminate(Ideal(gens, big), [tname]), I.ctx)


def _drop_ctx(J: Ideal, ctx: VariableContext) -> Ideal:
    """Re-home an ideal whose context has the same names as ``ctx`` (blocks may differ)."""
    if J.ctx == ctx:
        return J
    out = Ideal([Polynomial._raw(ctx, g.terms) for g in J.generators], ctx)
    gb = J._gb.get(GREVLEX)
    if gb is not None:
        out._seed_groebner(GREVLEX, [Polynomial._raw(ctx, g.terms) for g in gb])
    return out


def _grading_for(I: Ideal, var: int) -> list[int] | None:
    """Index set of a grading (context block or all variables) making ``I`` homogeneous with ``var`` in it."""
    candidates = [I.ctx.indices(vs) for vs in I.ctx.blocks.values() if I.ctx.names[var] in vs]
    candidates.append(list(range(len(I.ctx))))
    for idx in candidates:
        if I.is_homogeneous(idx):
            return idx
    return None


def _saturate_variable(I: Ideal, var: int) -> Ideal:
    grading = _grading_for(I, var)
    if grading is None:
        return _saturate_aux(I, Polynomial.variable(I.ctx, I.ctx.names[var]))
    n = len(I.ctx)
    row1 = [1 if k in set(grading) else 0 for k in range(n)]
    row2 = [-1 if k == var else 0 for k in range(n)]
    order = MonomialOrder("weighted", weights=[row1, row2])
    out = []
    for g in I.groebner(order):
        low = min(m[var] for m in g.terms)
        if low:
            g = Polynomial._raw(I.ctx, {m[:var] + (m[var] - low,) + m[var + 1:]: c
                                        for m, c in g.terms.items()})
        out.append(g)
    return Ideal(out, I.ctx)


def _saturate_aux(I: Ideal, g: Polynomial) -> Ideal:
    tname = I.ctx.fresh_name("t_")
    big = extend_context(I.ctx, [tname], front=True)
    t = Polynomial.variable(big, tname)
    gens = [f.embed(big) for f in I.generators] + [1 - t * g.embed(big)]
    return _drop_ctx(eliminate(Ideal(gens, big), [tname]), I.ctx)


def saturate_poly(I: Ideal, g: Polynomial) -> Ideal:
    """``I : g^∞``."""
    if g.ctx != I.ctx:
        raise ContextMismatch("saturation across contexts")
    if not g.terms:
        return Ideal.unit(I.ctx)
    if g.is_constant():
        return I
    if len(g.terms) == 1:
        (m,) = g.terms
        out = I
        for k, e in enumerate(m):
            if e:
                out = _saturate_variable(out, k)
        return out
    return _saturate_aux(I, g)


def saturate(I: Ideal, J: Ideal | Polynomial | Sequence[Polynomial]) -> Ideal:
    """``I : J^∞``, intersecting the per-generator saturations ``I : g^∞``."""
    if isinstance(J, Polynomial):
        J = Ideal([J], I.ctx)
    elif not isinstance(J, Ideal):
        J = Ideal(list(J), I.ctx)
    if J.ctx != I.ctx:
        raise ContextMismatch("saturation across contexts")
    if J.is_zero_ideal():
        return Ideal.unit(I.ctx)
    if any(g.is_constant() for g in J.generators) or J.is_unit():
        return I
    parts = []
    for g in J.generators:
        if I.contains(g):
            continue
        parts.append(saturate_poly(I, g))
    if not parts:
        return Ideal.unit(I.ctx)
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P)
    return out


def radical_membership(g: Polynomial, I: Ideal) -> bool:
    """True iff ``g`` vanishes on V(I) (Rabinowitsch: 1 ∈ I + <1 - t*g>)."""
    if g.ctx != I.ctx:
        raise ContextMismatch("radical membership across contexts")
    if I.contains(g):
        return True
    tname = I.ctx.fresh_name("t_")
    big = extend_context(I.ctx, [tname])
    t = Polynomial.variable(big, tname)
    J = Ideal([f.embed(big) for f in I.generators] + [1 - t * g.embed(big)], big)
    return J.is_unit()


def radical_contains(I: Ideal, J: Ideal) -> bool:
    """V(I) ⊆ V(J): every generator of J vanishes on V(I)."""
    return all(radical_membership(g, I) for g in J.generators)


def same_radical(I: Ideal, J: Ideal) -> bool:
    return radical_contains(I, J) and radical_contains(J, I)


# ---------------------------------------------------------------------------
# dimension, degree, counting


def _leading_monomials(I: Ideal, order: MonomialOrder = GREVLEX) -> list[tuple]:
    return [g.leading_monomial(order) for g in I.groebner(order)]


def dimension(I: Ideal) -> int:
    """Krull dimension of V(I); -1 when V(I) is empty."""
    n = len(I.ctx)
    if I.is_zero_ideal():
        return n
    lms = _leading_monomials(I)
    if any(not any(m) for m in lms):
        return -1
    masks = {_mask(m) for m in lms}
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            smask = 0
            for k in S:
                smask |= 1 << k
            if all(mk & ~smask for mk in masks):
                return size
    return 0


def standard_monomials(I: Ideal, order: MonomialOrder = GREVLEX, limit: int = 100_000) -> list[tuple]:
    lms = _leading_monomials(I, order)
    n = len(I.ctx)
    if any(not any(m) for m in lms):
        return []
    start = (0,) * n
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for k in range(n):
                mm = m[:k] + (m[k] + 1,) + m[k + 1:]
                if mm in seen or any(_divides(l, mm) for l in lms):
                    continue
                seen.add(mm)
                nxt.append(mm)
                if len(seen) > limit:
                    raise InputError("quotient ring basis is too large (positive-dimensional?)")
        frontier = nxt
    return sorted(seen, key=order.key)


def zero_dim_count(I: Ideal) -> int:
    """Vector-space dimension of k[x]/I (points counted with multiplicity)."""
    d = dimension(I)
    if d > 0:
        raise InputError(f"ideal is positive-dimensional (dim {d})")
    if d < 0:
        return 0
    return len(standard_monomials(I))


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize_monomials(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def hilbert_numerator(monomials: Sequence[tuple], nvars: int) -> list[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of k[x]/<monomials>."""
    gens = _minimalize_monomials([tuple(m) for m in monomials])
    if not gens:
        return [1]
    if any(not any(m) for m in gens):
        return [0]
    # base case: pairwise coprime generators
    masks = [_mask(m) for m in gens]
    total = 0
    coprime = True
    for mk in masks:
        if total & mk:
            coprime = False
            break
        total |= mk
    if coprime:
        out = [1]
        for m in gens:
            d = sum(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on a variable shared by the most generators
    counts = [sum(1 for m in gens if m[k]) for k in range(nvars)]
    k = max(range(nvars), key=lambda j: counts[j])
    e = 1
    pivot = tuple(e if j == k else 0 for j in range(nvars))
    plus = gens + [pivot]
    colon = [tuple(max(a - b, 0) for a, b in zip(m, pivot)) for m in gens]
    # N(I) = N(I + <p>) + t^deg(p) * N(I : p)
    a = hilbert_numerator(plus, nvars)
    b = [0] * e + hilbert_numerator(colon, nvars)
    n = max(len(a), len(b))
    out = [(a[j] if j < len(a) else 0) + (b[j] if j < len(b) else 0) for j in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple[int, ...]
    projective_dim: int
    degree: int


def hilbert_data(monomials: Sequence[tuple], nvars: int) -> HilbertData:
    """Reduce N(t)/(1-t)^n to h(t)/(1-t)^(d+1); degree = h(1)."""
    num = hilbert_numerator(monomials, nvars)
    n = nvars
    while n > 0 and sum(num) == 0 and any(num):
        # synthetic division by (1 - t)
        q, acc = [], 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q or [0]
        n -= 1
    return HilbertData(tuple(num), n - 1, sum(num))


@dataclass
class Variety:
    """An algebraic set V(ideal) ⊂ C^m with its computed dimension (and degree, lazily)."""

    ideal: Ideal
    dim: int = field(default=None)
    name: str = ""
    _degree: int | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.dim is None:
            self.dim = dimension(self.ideal)
        if not -1 <= self.dim <= self.ambient_dim:
            raise InvariantViolation(f"dimension {self.dim} outside [-1, {self.ambient_dim}]")

    @property
    def ctx(self) -> VariableContext:
        return self.ideal.ctx

    @property
    def ambient_dim(self) -> int:
        return len(self.ideal.ctx)

    @property
    def m(self) -> int:
        return self.ambient_dim

    @property
    def k(self) -> int:
        return self.dim

    @property
    def generators(self):
        return self.ideal.generators

    @property
    def degree(self) -> int:
        if self._degree is None:
            self._degree = degree(self)
        return self._degree


def projective_closure(I: Ideal, hvar: str | None = None) -> Ideal:
    """Homogenize all generators with a fresh variable, then saturate by it."""
    hname = hvar or I.ctx.fresh_name("w_")
    big = VariableContext((hname,) + I.ctx.names)
    gens = [g.embed(big).homogenize(big.names, hname) for g in I.generators]
    return saturate_poly(Ideal(gens, big), Polynomial.variable(big, hname))


def degree(X: Variety | Ideal) -> int:
    """Degree of the projective closure of V(I) ⊂ C^m, from the Hilbert series."""
    I = X.ideal if isinstance(X, Variety) else X
    if I.is_unit():
        raise InputError("degree of the empty set is undefined")
    return projective_hilbert_data(I).degree


def projective_hilbert_data(I: Ideal) -> HilbertData:
    Ih = projective_closure(I)
    lms = _leading_monomials(Ih) if not Ih.is_zero_ideal() else []
    return hilbert_data(lms, len(Ih.ctx))


# ---------------------------------------------------------------------------
# Jacobians and singular loci


def jacobian_matrix(F: Sequence[Polynomial]) -> list[list[Polynomial]]:
    if not F:
        return []
    ctx = F[0].ctx
    for f in F:
        if f.ctx != ctx:
            raise ContextMismatch("Jacobian of polynomials in different contexts")
    return [[f.diff(j) for j in range(len(ctx))] for f in F]


def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    out = None
    for j in range(n):
        if not M[0][j].terms:
            continue
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(sub)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out if out is not None else Polynomial.zero(M[0][0].ctx)


def minors(M: Sequence[Sequence[Polynomial]], size: int) -> list[Polynomial]:
    rows, cols = len(M), len(M[0]) if M else 0
    out = []
    if size == 0:
        return out
    for R in itertools.combinations(range(rows), size):
        for C in itertools.combinations(range(cols), size):
            d = determinant([[M[r][c] for c in C] for r in R])
            if d.terms:
                out.append(d)
    return out


def matmul(M: Sequence[Sequence[Polynomial]], N: Sequence[Sequence]) -> list[list[Polynomial]]:
    """Polynomial matrix times a matrix of polynomials or scalars."""
    out = []
    for row in M:
        new = []
        for j in range(len(N[0])):
            acc = Polynomial.zero(row[0].ctx)
            for k, a in enumerate(row):
                b = N[k][j]
                if isinstance(b, Polynomial):
                    acc = acc + a * b
                elif b:
                    acc = acc + a.scale(b)
            new.append(acc)
        out.append(new)
    return out


def singular_locus(X: Variety) -> Ideal:
    """X.ideal + all c×c Jacobian minors, c = m - k (Jacobian criterion)."""
    if X.dim is None:
        raise InputError("dimension of X has not been computed")
    if X.dim < 0:
        return Ideal.unit(X.ctx)
    c = X.ambient_dim - X.dim
    gens = [g for g in X.ideal.generators if g.terms]
    if c == 0:
        return Ideal.unit(X.ctx)
    J = jacobian_matrix(gens)
    return X.ideal.with_generators(minors(J, c))


def is_empty(I: Ideal) -> bool:
    return I.is_unit()


def mpq_of(x) -> mpq:
    return mpq(x)


# ---------------------------------------------------------------------------
# zero-dimensional helpers


def _univariate_quotient(f: Polynomial, g: Polynomial, k: int) -> Polynomial:
    """Exact quotient f / g for polynomials in the single variable with index ``k``."""
    ctx = f.ctx
    q: dict = {}
    r = dict(f.terms)
    dg = g.degree()
    lg = next(c for m, c in g.terms.items() if m[k] == dg)
    while r:
        dr = max(m[k] for m in r)
        if dr < dg:
            break
        lr = next(c for m, c in r.items() if m[k] == dr)
        c = lr / lg
        e = dr - dg
        mono = tuple(e if j == k else 0 for j in range(len(ctx)))
        q[mono] = c
        for m, gc in g.terms.items():
            mm = _madd(m, mono)
            v = r.get(mm, 0) - c * gc
            if v:
                r[mm] = v
            else:
                r.pop(mm, None)
    if r:
        raise InvariantViolation("inexact univariate division")
    return Polynomial._raw(ctx, q)


def univariate_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    while g.terms:
        f, g = g, normal_form(f, [g])
    return f.monic()


def squarefree_part(f: Polynomial, k: int) -> Polynomial:
    g = univariate_gcd(f, f.diff(k))
    if g.is_constant():
        return f.monic()
    return _univariate_quotient(f, g, k).monic()


def eliminant(I: Ideal, k: int) -> Polynomial:
    """Generator of I ∩ k[x_k] (zero when the elimination ideal is trivial)."""
    name = I.ctx.names[k]
    E = eliminate(I, [n for n in I.ctx.names if n != name])
    gb = E.groebner()
    if not gb:
        return Polynomial.zero(I.ctx)
    (g,) = gb
    return Polynomial._raw(I.ctx, {tuple(m[0] if j == k else 0 for j in range(len(I.ctx))): c
                                   for m, c in g.terms.items()})


def zero_dim_radical(I: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal: add the squarefree part of every eliminant."""
    if dimension(I) > 0:
        raise InputError("ideal is positive-dimensional")
    extra = []
    for k in range(len(I.ctx)):
        p = eliminant(I, k)
        if p.terms:
            extra.append(squarefree_part(p, k))
    return I.with_generators(extra)


def distinct_point_count(I: Ideal) -> int:
    """Number of distinct points of a finite V(I)."""
    if dimension(I) < 0:
        return 0
    return zero_dim_count(zero_dim_radical(I))


def finite_radius_bound(I: Ideal) -> float:
    """Upper bound on the norm of every point of a finite V(I), from Cauchy root bounds."""
    if dimension(I) < 0:
        return 0.0
    total = 0.0
    for k in range(len(I.ctx)):
        p = eliminant(I, k)
        coeffs = {m[k]: complex(c) if not isinstance(c, type(mpq(0))) else float(c)
                  for m, c in p.terms.items()}
        d = max(coeffs)
        lead = abs(coeffs[d])
        bound = 1.0 + max((abs(c) / lead for e, c in coeffs.items() if e < d), default=0.0)
        total += bound * bound
    return total ** 0.5
