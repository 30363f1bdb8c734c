"""Exact multivariate polynomials over QQ and prime fields.

Monomials are packed into Python integers whose natural ``<`` is the monomial
order and whose ``+`` is monomial multiplication.  For weighted reverse
lexicographic orders (grevlex is the all-ones/var-degree case) the key of
``x^e`` is ``wdeg(e) << (W*n) - low(e)`` where ``low`` packs ``e_i`` at bit
``W*i``; for lex the key is the packed vector with ``x_1`` most significant.
Each ``W``-bit field keeps a guard bit, which makes divisibility and
field-wise max a handful of big-int operations.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    InhomogeneousError,
    ParseError,
    PreconditionError,
    RingMismatchError,
    ZeroPolynomialError,
)

DEFAULT_PRIME = 32003
INHOMOGENEOUS = "inhomogeneous"

_W = 16
_EXP_LIMIT = 1 << (_W - 2)
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: rationals when ``p`` is None, else GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (isinstance(self.p, int) and _is_prime(self.p)):
                raise PreconditionError(f"field characteristic {self.p!r} is not prime")
            if self.p >= 1 << 31:
                raise PreconditionError("prime fields are limited to p < 2**31")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, value):
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    def tag(self) -> str:
        return "q" if self.p is None else f"p:{self.p}"

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class _Codec:
    """Packs exponent vectors for one ring; see the module docstring."""

    def __init__(self, n: int, weights: Sequence[int], revlex: bool):
        self.n = n
        self.weights = tuple(weights)
        self.revlex = revlex
        self.shift = _W * n
        self.mask = (1 << self.shift) - 1
        fm = (1 << _W) - 1
        self.field_mask = fm
        self.guard = sum(1 << (_W * i + _W - 1) for i in range(n))
        # field position of variable i inside ``low``
        self.pos = [_W * i for i in range(n)] if revlex else [_W * (n - 1 - i) for i in range(n)]
        # convolution constant: coefficient n-1 of low*wpoly is the weighted degree
        self.wpoly = sum(
            w << (_W * (n - 1 - (i if revlex else n - 1 - i))) for i, w in enumerate(self.weights)
        )
        self.wshift = _W * (n - 1) if n else 0

    def low_of(self, exps: Sequence[int]) -> int:
        low = 0
        for e, b in zip(exps, self.pos):
            low |= e << b
        return low

    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise PreconditionError(f"exponent vector of length {len(exps)} in a ring with {self.n} variables")
        for e in exps:
            if e < 0 or e >= _EXP_LIMIT:
                raise PreconditionError(f"exponent {e} out of range")
        low = self.low_of(exps)
        if self.revlex:
            return (self.wdeg_low(low) << self.shift) - low
        return low

    def low(self, key: int) -> int:
        return (-key) & self.mask if self.revlex else key

    def from_low(self, low: int) -> int:
        if self.revlex:
            return (self.wdeg_low(low) << self.shift) - low
        return low

    def wdeg_low(self, low: int) -> int:
        if self.n == 0:
            return 0
        return ((low * self.wpoly) >> self.wshift) & self.field_mask

    def wdeg(self, key: int) -> int:
        if self.revlex:
            low = (-key) & self.mask
            return (key + low) >> self.shift
        return self.wdeg_low(key)

    def decode(self, key: int) -> tuple[int, ...]:
        low = self.low(key)
        fm = self.field_mask
        return tuple((low >> b) & fm for b in self.pos)

    def divides_low(self, la: int, lb: int) -> bool:
        g = self.guard
        return ((lb | g) - la) & g == g

    def lcm_low(self, la: int, lb: int) -> int:
        g = self.guard
        t = ((la | g) - lb) & g
        m = (t >> (_W - 1)) * self.field_mask
        return (la & m) | (lb & ~m)

    def coprime_low(self, la: int, lb: int) -> bool:
        return self.lcm_low(la, lb) == la + lb


@dataclass(frozen=True)
class RingDescriptor:
    """A graded polynomial ring with a fixed monomial order.

    ``order`` is ``"grevlex"`` (weights = ``var_degrees``), ``"weighted"``
    (explicit ``weights`` followed by a reverse-lex tiebreak) or ``"lex"``.
    """

    vars: tuple[str, ...]
    field: Field = QQ
    var_degrees: tuple[int, ...] = None
    order: str = "grevlex"
    weights: tuple[int, ...] | None = dc_field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars and self.order != "grevlex":
            raise PreconditionError("a ring without variables only supports grevlex")
        for v in self.vars:
            if not isinstance(v, str) or not _NAME_RE.match(v):
                raise PreconditionError(f"invalid variable name {v!r}")
        if len(set(self.vars)) != len(self.vars):
            raise PreconditionError("variable names must be unique")
        degs = self.var_degrees
        degs = (1,) * len(self.vars) if degs is None else tuple(int(d) for d in degs)
        if len(degs) != len(self.vars) or any(d < 1 for d in degs):
            raise PreconditionError("var_degrees must be positive, one per variable")
        object.__setattr__(self, "var_degrees", degs)
        if self.order not in ("grevlex", "lex", "weighted"):
            raise PreconditionError(f"unknown monomial order {self.order!r}")
        if self.order == "weighted":
            w = self.weights
            if w is None or len(w) != len(self.vars) or any(int(x) < 1 for x in w):
                raise PreconditionError("weighted order needs one positive weight per variable")
            object.__setattr__(self, "weights", tuple(int(x) for x in w))
        elif self.weights is not None:
            raise PreconditionError("weights are only meaningful for the weighted order")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def is_standard_graded(self) -> bool:
        return all(d == 1 for d in self.var_degrees)

    @cached_property
    def codec(self) -> _Codec:
        if self.order == "lex":
            return _Codec(self.nvars, self.var_degrees, revlex=False)
        w = self.weights if self.order == "weighted" else self.var_degrees
        return _Codec(self.nvars, w, revlex=True)

    @cached_property
    def _degree_codec(self) -> _Codec:
        # weighted degree by var_degrees, independent of the order weights
        return _Codec(self.nvars, self.var_degrees, revlex=True)

    def degree_of_key(self, key: int) -> int:
        c = self.codec
        if self.order != "weighted":
            return c.wdeg(key)
        return self._degree_codec.wdeg_low(self._degree_codec.low_of(c.decode(key)))

    def monomial_degree(self, exps: Sequence[int]) -> int:
        return sum(e * d for e, d in zip(exps, self.var_degrees))

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise PreconditionError(f"no variable {name!r} in ring") from None

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.vars]

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self.field(coeff)
        if not c:
            return self.zero()
        return Polynomial._raw(self, {self.codec.encode(tuple(exps)): c})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self, {})

    def constant(self, c) -> "Polynomial":
        return self.monomial((0,) * self.nvars, c)

    def __call__(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def with_field(self, field: Field) -> "RingDescriptor":
        return RingDescriptor(self.vars, field, self.var_degrees, self.order, self.weights)

    def extend(self, names: Sequence[str], degrees: Sequence[int] | None = None) -> "RingDescriptor":
        """Append variables (grevlex/lex only; weighted orders need new weights)."""
        if self.order == "weighted":
            raise PreconditionError("cannot extend a weighted-order ring without weights")
        degrees = [1] * len(names) if degrees is None else list(degrees)
        return RingDescriptor(
            self.vars + tuple(names), self.field, self.var_degrees + tuple(degrees), self.order
        )

    def fresh_name(self, base: str, taken: Iterable[str] = ()) -> str:
        used = set(self.vars) | set(taken)
        if base not in used:
            return base
        k = 1
        while f"{base}_{k}" in used:
            k += 1
        return f"{base}_{k}"

    def __str__(self):
        vs = " ".join(v if d == 1 else f"{v}:{d}" for v, d in zip(self.vars, self.var_degrees))
        return f"{self.field}[{vs}] ({self.order})"


def PolynomialRing(vars, field: Field = QQ, var_degrees=None, order="grevlex", weights=None):
    if isinstance(vars, str):
        vars = vars.replace(",", " ").split()
    return RingDescriptor(tuple(vars), field, var_degrees, order, weights)


def compare_monomials(m1: Sequence[int], m2: Sequence[int], ring: RingDescriptor) -> Cmp:
    """Compare two exponent vectors in ``ring``'s monomial order."""
    if len(m1) != len(m2):
        raise PreconditionError("monomials of different lengths")
    k1 = ring.codec.encode(tuple(m1))
    k2 = ring.codec.encode(tuple(m2))
    return Cmp((k1 > k2) - (k1 < k2))


class Polynomial:
    """Immutable polynomial; ``_t`` maps monomial keys to nonzero coefficients."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: RingDescriptor, terms=()):
        fld = ring.field
        codec = ring.codec
        acc: dict[int, object] = {}
        items = terms.items() if isinstance(terms, dict) else ((e, c) for c, e in terms)
        for exps, c in items:
            k = codec.encode(tuple(exps))
            v = acc.get(k, 0) + fld(c)
            if fld.p is not None:
                v %= fld.p
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        self.ring = ring
        self._t = acc
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingDescriptor, t: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._t = t
        obj._hash = None
        return obj

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> list[tuple[object, tuple[int, ...]]]:
        """(coefficient, exponent vector) pairs, strictly descending."""
        dec = self.ring.codec.decode
        return [(self._t[k], dec(k)) for k in sorted(self._t, reverse=True)]

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    @property
    def leading_key(self) -> int:
        if not self._t:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return max(self._t)

    @property
    def leading_monomial(self) -> tuple[int, ...]:
        return self.ring.codec.decode(self.leading_key)

    @property
    def leading_coefficient(self):
        return self._t[self.leading_key]

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def weighted_degree(self):
        """Common degree of all terms, or ``INHOMOGENEOUS``."""
        if not self._t:
            raise ZeroPolynomialError("zero polynomial has no degree")
        deg = self.ring.degree_of_key
        degs = {deg(k) for k in self._t}
        return degs.pop() if len(degs) == 1 else INHOMOGENEOUS

    def is_homogeneous(self) -> bool:
        return bool(self._t) and self.weighted_degree() != INHOMOGENEOUS

    def monic(self) -> "Polynomial":
        if not self._t:
            return self
        return self * self.ring.field.inv(self.leading_coefficient)

    def variables(self) -> set[str]:
        used = set()
        for _, e in self.terms:
            used.update(v for v, x in zip(self.ring.vars, e) if x)
        return used

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def _addsub(self, other, sign):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.field.p
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + sign * c
            if p is not None:
                v %= p
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return Polynomial._raw(self.ring, t)

    def __add__(self, other):
        return self._addsub(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other._addsub(self, -1)

    def __neg__(self):
        p = self.ring.field.p
        if p is None:
            return Polynomial._raw(self.ring, {k: -c for k, c in self._t.items()})
        return Polynomial._raw(self.ring, {k: (-c) % p for k, c in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            p = self.ring.field.p
            if p is None:
                return Polynomial._raw(self.ring, {k: v * c for k, v in self._t.items()})
            return Polynomial._raw(self.ring, {k: v * c % p for k, v in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.field.p
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, object] = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        if p is None:
            t = {k: v for k, v in t.items() if v}
        else:
            t = {k: v % p for k, v in t.items() if v % p}
        return Polynomial._raw(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return self * self.ring.monomial(exps, coeff)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == self.ring.constant(other)._t
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise PreconditionError(f"unknown operation {op!r}")


def weighted_degree(f: Polynomial):
    return f.weighted_degree()


def ring_map(f: Polynomial, target: RingDescriptor, images: Sequence[Polynomial]) -> Polynomial:
    """Apply the substitution ``x_i -> images[i]`` to ``f``."""
    if len(images) != f.ring.nvars:
        raise PreconditionError(f"expected {f.ring.nvars} images, got {len(images)}")
    for img in images:
        if img.ring != target:
            raise RingMismatchError("every image must live in the target ring")
    if f.ring.field != target.field:
        raise RingMismatchError("source and target fields differ")
    powers: list[dict[int, Polynomial]] = [{0: target.one(), 1: img} for img in images]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = images[i] ** e
        return cache[e]

    result = target.zero()
    for c, exps in f.terms:
        term = target.constant(c)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


class Ideal:
    """Ordered homogeneous generators in a graded ring."""

    __slots__ = ("ring", "gens")

    def __init__(self, ring: RingDescriptor, gens: Iterable[Polynomial]):
        gens = tuple(gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator outside the ideal's ring")
            if g.is_zero():
                raise PreconditionError("zero generator")
            if g.weighted_degree() == INHOMOGENEOUS:
                raise InhomogeneousError(f"generator {g} is not homogeneous")
        self.ring = ring
        self.gens = gens

    @property
    def degrees(self) -> list[int]:
        return [g.weighted_degree() for g in self.gens]

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.gens == other.gens

    def __hash__(self):
        return hash((self.ring, self.gens))

    def with_field(self, field: Field) -> "Ideal":
        """Same generators read over another field.

        Residues mod p are lifted to the symmetric range, so ``-1`` stays ``-1``.
        """
        ring = self.ring.with_field(field)
        p = self.ring.field.p

        def lift(c):
            if p is None:
                return c
            c = int(c)
            return c - p if c > p // 2 else c

        return Ideal(ring, [Polynomial(ring, [(lift(c), e) for c, e in g.terms]) for g in self.gens])

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"


# -- text syntax --------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))"
)


def _tokenize(text: str, line: int):
    pos = 0
    toks = []
    while True:
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip():
                col = pos + len(rest) - len(rest.lstrip()) + 1
                raise ParseError(f"unexpected character {rest.strip()[0]!r}", line, col)
            break
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


def parse_polynomial(text: str, ring: RingDescriptor, line: int = 1, col_offset: int = 0) -> Polynomial:
    """Parse ``3*a^2*y*z^2 - b^3*y^2``-style text.

    ``*`` is optional between factors, coefficients may be ``p/q`` and
    parenthesised sub-expressions are accepted.
    """
    toks = _tokenize(text, line)
    i = 0
    names = {v: k for k, v in enumerate(ring.vars)}

    def err(msg, tok):
        raise ParseError(msg, line, tok[2] + col_offset)

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        sign = 1
        t = peek()
        if t[0] == "op" and t[1] in "+-":
            take()
            sign = -1 if t[1] == "-" else 1
        acc = term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = factor()
        while True:
            t = peek()
            if t[0] == "op" and t[1] == "*":
                take()
                acc = acc * factor()
            elif t[0] in ("num", "name") or (t[0] == "op" and t[1] == "("):
                acc = acc * factor()
            else:
                return acc

    def exponent():
        t = take()
        if t[0] != "num":
            err("expected a nonnegative integer exponent", t)
        return int(t[1])

    def factor():
        t = take()
        if t[0] == "num":
            val = Fraction(int(t[1]))
            if peek()[0] == "op" and peek()[1] == "/":
                take()
                d = take()
                if d[0] != "num" or int(d[1]) == 0:
                    err("expected a nonzero integer denominator", d)
                val = val / int(d[1])
            if ring.field.p is not None and val.denominator % ring.field.p == 0:
                err("denominator vanishes in the coefficient field", t)
            base = ring.constant(val)
        elif t[0] == "name":
            if t[1] not in names:
                err(f"unknown variable {t[1]!r}", t)
            base = ring.var(t[1])
        elif t[0] == "op" and t[1] == "(":
            base = expr()
            c = take()
            if not (c[0] == "op" and c[1] == ")"):
                err("expected ')'", c)
        else:
            err(f"unexpected token {t[1] or 'end of input'!r}", t)
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            e = exponent()
            if t[0] == "name" and e >= _EXP_LIMIT:
                err("exponent too large", t)
            base = base ** e
        return base

    if toks[0][0] == "end":
        raise ParseError("empty polynomial", line, 1 + col_offset)
    try:
        result = expr()
    except PreconditionError as exc:
        raise ParseError(str(exc), line, 1 + col_offset) from None
    if peek()[0] != "end":
        err(f"unexpected token {peek()[1]!r}", peek())
    return result


def _format_coeff(c, field: Field) -> str:
    if field.p is None:
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    ring = f.ring
    p = ring.field.p
    parts = []
    for c, exps in f.terms:
        neg = False
        if p is None and c < 0:
            neg, c = True, -c
        elif p is not None and c > p // 2:
            neg, c = True, p - c
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(ring.vars, exps) if e
        )
        cs = _format_coeff(c, ring.field)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
