"""Exact multivariate polynomials over the Gaussian rationals Q(i).

Coefficients are stored as ``gmpy2.mpq`` when real and as
:class:`GaussianRational` otherwise; every arithmetic result is normalized
back to ``mpq`` as soon as its imaginary part vanishes.  Monomials are
exponent tuples indexed by position in a :class:`VariableContext`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .errors import ContextMismatch, InputError, ParseError

Monomial = tuple  # tuple[int, ...]

_ZERO = mpq(0)
_ONE = mpq(1)


# ---------------------------------------------------------------------------
# coefficients


def _q(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def _mk(re, im):
        return re if im == 0 else GaussianRational(re, im)

    def __add__(self, o):
        if isinstance(o, GaussianRational):
            return self._mk(self.re + o.re, self.im + o.im)
        return self._mk(self.re + o, self.im)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, GaussianRational):
            return self._mk(self.re - o.re, self.im - o.im)
        return self._mk(self.re - o, self.im)

    def __rsub__(self, o):
        return self._mk(o - self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, GaussianRational):
            return self._mk(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)
        return self._mk(self.re * o, self.im * o)

    __rmul__ = __mul__

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return self._mk(self.re, -self.im)

    def __truediv__(self, o):
        if isinstance(o, GaussianRational):
            n = o.norm()
            return self._mk((self.re * o.re + self.im * o.im) / n,
                            (self.im * o.re - self.re * o.im) / n)
        return self._mk(self.re / o, self.im / o)

    def __rtruediv__(self, o):
        n = self.norm()
        return self._mk(o * self.re / n, -o * self.im / n)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return 1 / (self ** -n)
        result, base = _ONE, self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    def __eq__(self, o):
        if isinstance(o, GaussianRational):
            return self.re == o.re and self.im == o.im
        try:
            return self.im == 0 and self.re == o
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_coefficient(self)


def coerce(x):
    """Convert a scalar (int, Fraction, mpq, str, GaussianRational) to a field element."""
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    if isinstance(x, complex):
        raise InputError("floating complex numbers are not exact coefficients")
    if isinstance(x, float):
        raise InputError("floats are not exact coefficients")
    if isinstance(x, str):
        return parse_scalar(x)
    return _q(x)


def as_gaussian(x) -> GaussianRational:
    x = coerce(x)
    return x if isinstance(x, GaussianRational) else GaussianRational(x, 0)


def real_part(c) -> mpq:
    return c.re if isinstance(c, GaussianRational) else c


def imag_part(c) -> mpq:
    return c.im if isinstance(c, GaussianRational) else _ZERO


def format_coefficient(c) -> str:
    re_, im_ = real_part(c), imag_part(c)
    if im_ == 0:
        return str(re_)
    if im_ == 1:
        ipart = "i"
    elif im_ == -1:
        ipart = "-i"
    else:
        ipart = f"{im_}*i"
    if re_ == 0:
        return ipart
    sign = "-" if im_ < 0 else "+"
    ipart = ipart.lstrip("-")
    return f"{re_}{sign}{ipart}"


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational)) or type(x) is type(_ONE)


# ---------------------------------------------------------------------------
# contexts and orders

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class VariableContext:
    """Ordered variable names with an optional partition into named blocks."""

    __slots__ = ("names", "blocks", "_index")

    def __init__(self, names: Sequence[str], blocks: Mapping[str, Sequence[str]] | None = None):
        names = tuple(names)
        for n in names:
            if not isinstance(n, str) or not _NAME_RE.match(n):
                raise InputError(f"invalid variable name {n!r}")
            if n == "i":
                raise InputError("'i' is reserved for the imaginary unit")
        if len(set(names)) != len(names):
            raise InputError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: k for k, n in enumerate(names)}
        if blocks:
            blk = {str(b): tuple(vs) for b, vs in blocks.items()}
            seen = [v for vs in blk.values() for v in vs]
            if sorted(seen) != sorted(names):
                raise InputError("blocks must partition the variables exactly")
            self.blocks = blk
        else:
            self.blocks = {}

    def __len__(self):
        return len(self.names)

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    def block(self, block_id: str) -> tuple:
        try:
            return self.blocks[block_id]
        except KeyError:
            raise InputError(f"unknown block {block_id!r}") from None

    def indices(self, names: Iterable[str]) -> list[int]:
        return [self.index(n) for n in names]

    def __eq__(self, other):
        return self is other or (
            isinstance(other, VariableContext) and self.names == other.names
            and self.blocks == other.blocks)

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableContext({list(self.names)})"

    def fresh_name(self, stem: str) -> str:
        name, k = stem, 0
        while name in self._index or name == "i":
            k += 1
            name = f"{stem}{k}"
        return name


class MonomialOrder:
    """A monomial order given by an integer sort key (larger key = larger monomial).

    kinds: ``lex``, ``grevlex``, ``block`` (the variables in ``first`` are
    eliminated: compared first, grevlex inside both blocks) and ``weighted``
    (weight rows compared in turn, grevlex breaks ties).
    """

    __slots__ = ("kind", "first", "weights", "_key", "_cache", "_ncache")

    def __init__(self, kind: str = "grevlex", *, first: Iterable[int] = (),
                 weights: Sequence[Sequence[int]] = ()):
        if kind not in ("lex", "grevlex", "block", "weighted"):
            raise InputError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.first = tuple(sorted(first))
        self.weights = tuple(tuple(int(w) for w in row) for row in weights)
        if kind == "block" and not self.first:
            raise InputError("block order needs a nonempty first block")
        if kind == "weighted":
            self._check_weights()
        self._cache: dict = {}
        self._ncache: dict = {}
        self._key = self._make_key()

    def _check_weights(self):
        n = max((len(r) for r in self.weights), default=0)
        for j in range(n):
            for row in self.weights:
                w = row[j] if j < len(row) else 0
                if w > 0:
                    break
                if w < 0:
                    raise InputError("weighted order is not a well-order: variable "
                                     f"{j} has a negative leading weight")

    def _make_key(self):
        kind = self.kind
        if kind == "lex":
            return lambda m: m
        if kind == "grevlex":
            return _grevlex_key
        if kind == "block":
            first = self.first

            def key(m, first=first):
                a = [m[k] for k in first]
                b = [e for k, e in enumerate(m) if k not in first_set]
                return (sum(a), *[-e for e in reversed(a)], sum(b), *[-e for e in reversed(b)])

            first_set = frozenset(first)
            return key
        weights = self.weights

        def wkey(m):
            head = [sum(w * e for w, e in zip(row, m)) for row in weights]
            return (*head, *_grevlex_key(m))

        return wkey

    def key(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            k = self._cache[m] = self._key(m)
        return k

    def nkey(self, m: Monomial) -> tuple:
        """Negated key: ascending order of ``nkey`` is descending monomial order."""
        k = self._ncache.get(m)
        if k is None:
            k = self._ncache[m] = tuple([-x for x in self.key(m)])
        return k

    def _ident(self):
        return (self.kind, self.first, self.weights)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', first={self.first})"
        if self.kind == "weighted":
            return f"MonomialOrder('weighted', weights={self.weights})"
        return f"MonomialOrder({self.kind!r})"


def _grevlex_key(m):
    return (sum(m), *[-e for e in reversed(m)])


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def elimination_order(ctx: VariableContext, drop: Iterable[str]) -> MonomialOrder:
    return MonomialOrder("block", first=ctx.indices(drop))


# ---------------------------------------------------------------------------
# polynomials


def _madd(a, b):
    return tuple([x + y for x, y in zip(a, b)])


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VariableContext, terms: Mapping | None = None):
        self.ctx = ctx
        clean = {}
        n = len(ctx)
        if terms:
            for m, c in terms.items():
                m = tuple(int(e) for e in m)
                if len(m) != n or any(e < 0 for e in m):
                    raise InputError(f"bad exponent vector {m} for {n} variables")
                c = coerce(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ctx, terms):
        p = object.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        return p

    # constructors
    @classmethod
    def zero(cls, ctx):
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx, c):
        c = coerce(c)
        return cls._raw(ctx, {(0,) * len(ctx): c} if c else {})

    @classmethod
    def one(cls, ctx):
        return cls.constant(ctx, 1)

    @classmethod
    def variable(cls, ctx, name: str):
        k = ctx.index(name)
        return cls._raw(ctx, {tuple(1 if j == k else 0 for j in range(len(ctx))): _ONE})

    @classmethod
    def monomial(cls, ctx, exps, c=1):
        return cls(ctx, {tuple(exps): c})

    # basic queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> int:
        idx = list(indices)
        return max((sum(m[k] for k in idx) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.ctx), _ZERO)

    def is_homogeneous(self, indices: Iterable[int] | None = None) -> bool:
        if indices is None:
            degs = {sum(m) for m in self.terms}
        else:
            idx = list(indices)
            degs = {sum(m[k] for k in idx) for m in self.terms}
        return len(degs) <= 1

    def support(self) -> set[int]:
        return {k for m in self.terms for k, e in enumerate(m) if e}

    def is_real(self) -> bool:
        return not any(isinstance(c, GaussianRational) for c in self.terms.values())

    def leading_monomial(self, order: MonomialOrder = GREVLEX):
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        inv = 1 / lc
        return Polynomial._raw(self.ctx, {m: c * inv for m, c in self.terms.items()})

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # arithmetic
    def _check(self, other):
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if is_scalar(other) or isinstance(other, str):
            return Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m)
            if v is None:
                t[m] = c
            else:
                v = v + c
                if v:
                    t[m] = v
                else:
                    del t[m]
        return Polynomial._raw(self.ctx, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = coerce(c)
        if not c:
            return Polynomial.zero(self.ctx)
        return Polynomial._raw(self.ctx, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono, c=_ONE) -> "Polynomial":
        return Polynomial._raw(self.ctx, {_madd(m, mono): v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if is_scalar(other) or isinstance(other, str):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _madd(m1, m2)
                v = t.get(m)
                t[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.ctx, {m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("polynomial powers must be non-negative integers")
        result, base = Polynomial.one(self.ctx), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        if is_scalar(other):
            return self.terms == Polynomial.constant(self.ctx, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    # calculus and substitution
    def diff(self, var: int | str) -> "Polynomial":
        k = self.ctx.index(var) if isinstance(var, str) else var
        if not 0 <= k < len(self.ctx):
            raise InputError(f"variable index {k} out of range")
        t = {}
        for m, c in self.terms.items():
            e = m[k]
            if e:
                t[m[:k] + (e - 1,) + m[k + 1:]] = c * e
        return Polynomial._raw(self.ctx, t)

    def homogenize(self, block: str | Sequence[str], var: str) -> "Polynomial":
        """Homogenize in the variables of ``block`` using ``var`` (which must belong to it)."""
        names = self.ctx.block(block) if isinstance(block, str) else tuple(block)
        if var not in names:
            raise InputError(f"homogenizing variable {var!r} is not in the block")
        h = self.ctx.index(var)
        idx = self.ctx.indices(names)
        if any(m[h] for m in self.terms):
            raise InputError(f"{var!r} already occurs in the polynomial")
        if not self.terms:
            return self
        degs = {m: sum(m[k] for k in idx) for m in self.terms}
        top = max(degs.values())
        t = {}
        for m, c in self.terms.items():
            mm = list(m)
            mm[h] = top - degs[m]
            t[tuple(mm)] = c
        return Polynomial._raw(self.ctx, t)

    def specialize(self, values: Mapping) -> "Polynomial":
        """Substitute scalars for some variables (keyed by name or index); context unchanged."""
        vals = {}
        for k, v in values.items():
            k = self.ctx.index(k) if isinstance(k, str) else k
            vals[k] = coerce(v)
        t: dict = {}
        for m, c in self.terms.items():
            mm = list(m)
            for k, v in vals.items():
                e = mm[k]
                if e:
                    if not v:
                        c = None
                        break
                    c = c * v ** e
                    mm[k] = 0
            if c is None:
                continue
            mm = tuple(mm)
            acc = t.get(mm)
            t[mm] = c if acc is None else acc + c
        return Polynomial._raw(self.ctx, {m: c for m, c in t.items() if c})

    def compose(self, images: Sequence["Polynomial"], target: VariableContext | None = None) -> "Polynomial":
        """Replace variable j by ``images[j]`` (polynomials in a common target context)."""
        if len(images) != len(self.ctx):
            raise InputError("compose needs one image per variable")
        if target is None:
            if not images:
                raise InputError("empty context needs an explicit target")
            target = images[0].ctx
        for g in images:
            if g.ctx != target:
                raise ContextMismatch("images live in different contexts")
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.one(target), 1: g} for g in images]

        def pw(j, e):
            cache = powers[j]
            if e not in cache:
                cache[e] = pw(j, e - 1) * images[j]
            return cache[e]

        out = Polynomial.zero(target)
        for m, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for j, e in enumerate(m):
                if e:
                    term = term * pw(j, e)
            out = out + term
        return out

    def embed(self, target: VariableContext, mapping: Mapping[str, str] | None = None) -> "Polynomial":
        """Re-express in ``target``; variables map by name (optionally renamed via ``mapping``)."""
        mapping = mapping or {}
        pos = [target.index(mapping.get(n, n)) for n in self.ctx.names]
        n = len(target)
        t = {}
        for m, c in self.terms.items():
            mm = [0] * n
            for j, e in enumerate(m):
                if e:
                    mm[pos[j]] += e
            t[tuple(mm)] = c
        return Polynomial._raw(target, t)

    def evaluate(self, point: Sequence):
        """Exact evaluation at a point with Q(i) coordinates."""
        if len(point) != len(self.ctx):
            raise InputError("point has the wrong length")
        pt = [coerce(x) for x in point]
        acc = _ZERO
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = v * x ** e
            acc = acc + v
        return acc

    def evaluate_complex(self, point: Sequence[complex]) -> complex:
        if len(point) != len(self.ctx):
            raise InputError("point has the wrong length")
        pt = [complex(x) for x in point]
        acc = 0j
        for m, c in self.terms.items():
            v = complex(c) if isinstance(c, GaussianRational) else float(c)
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            acc += v
        return acc

    # printing
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={list(self.ctx.names)})"


def format_monomial(ctx: VariableContext, m) -> str:
    parts = []
    for name, e in zip(ctx.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    if not p.terms:
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_terms(order)):
        mono = format_monomial(p.ctx, m)
        if isinstance(c, GaussianRational):
            body = f"({format_coefficient(c)})"
            body = f"{body}*{mono}" if mono else body
            sign = "+"
        else:
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, toks = 0, []
    n = len(text)
    while pos < n:
        mt = _TOKEN_RE.match(text, pos)
        if not mt or mt.end() == pos:
            if text[pos:].strip() == "":
                break
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = mt.start(mt.lastindex)
        if mt.group(1) is not None:
            toks.append(("int", mt.group(1), start, mt.end()))
        elif mt.group(2) is not None:
            toks.append(("name", mt.group(2), start, mt.end()))
        else:
            op = "^" if mt.group(3) == "**" else mt.group(3)
            toks.append(("op", op, start, mt.end()))
        pos = mt.end()
    toks.append(("end", "", len(text), len(text)))
    return toks


class _Parser:
    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expr(self):
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.term()
                acc = acc + t if tok[1] == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "("):
                self.error("implicit multiplication is not allowed")
            else:
                return acc

    def factor(self):
        base = self.base()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                self.error("exponent must be a natural number", e)
            base = base ** int(e[1])
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "^":
                self.error("chained exponents are ambiguous")
        return base

    def base(self):
        tok = self.take()
        kind, val, start, end = tok
        if kind == "int":
            num = mpq(int(val))
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int":
                    self.error("denominator must be a natural number", den)
                if int(den[1]) == 0:
                    self.error("zero denominator", den)
                num = mpq(int(val), int(den[1]))
                end = den[3]
                nxt = self.peek()
            # a literal immediately followed by 'i' (no blank) is imaginary: 3i
            if nxt[0] == "name" and nxt[1] == "i" and nxt[2] == end:
                self.take()
                return Polynomial.constant(self.ctx, GaussianRational(0, num))
            return Polynomial.constant(self.ctx, num)
        if kind == "name":
            if val == "i":
                return Polynomial.constant(self.ctx, GaussianRational(0, 1))
            if val not in self.ctx:
                raise ParseError(f"unknown variable {val!r}", start, self.text)
            return Polynomial.variable(self.ctx, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.error("expected ')'", close)
            return inner
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected token {val!r}", tok)


def parse_polynomial(text: str, ctx: VariableContext) -> Polynomial:
    """Parse ``text`` (grammar: + - * ^ parentheses, rationals a/b, ``i``) in ``ctx``."""
    if not isinstance(text, str):
        raise InputError(f"expected a polynomial string, got {type(text).__name__}")
    p = _Parser(text, ctx)
    if p.peek()[0] == "end":
        p.error("empty expression")
    out = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected token {p.peek()[1]!r}")
    return out


_EMPTY_CTX = VariableContext([])


def parse_scalar(text: str):
    """Parse a constant such as ``"3/4"``, ``"1/2+3*i"`` or ``"-2i"``."""
    p = parse_polynomial(text, _EMPTY_CTX)
    return p.constant_term()


def poly_ring(names: Sequence[str] | str, blocks=None):
    """Convenience: ``ctx, x, y = poly_ring("x,y")``."""
    if isinstance(names, str):
        names = [n.strip() for n in names.replace(",", " ").split()]
    ctx = VariableContext(names, blocks)
    return (ctx, *[Polynomial.variable(ctx, n) for n in names])
