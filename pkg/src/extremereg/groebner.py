"""Buchberger's algorithm, normal forms and first syzygies.

The engine works on raw term dicts (monomial key -> coefficient) from
:mod:`extremereg.polyring`.  Inputs are homogeneous, so pairs are handled
degree by degree (normal strategy) with the Gebauer-Moeller criteria, and a
``degree_cap`` yields a basis that is exact through that degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from typing import Sequence

from .errors import PreconditionError, ResourceLimitError, RingMismatchError
from .polyring import INHOMOGENEOUS, Ideal, Polynomial, RingDescriptor

DEFAULT_MAX_PAIRS = 200_000
DEFAULT_MAX_BASIS = 200_000


class _Elem:
    __slots__ = ("lk", "low", "deg", "tail", "terms")

    def __init__(self, terms: dict, codec, deg: int):
        lk = max(terms)
        self.lk = lk
        self.low = codec.low(lk)
        self.deg = deg
        self.terms = terms
        self.tail = [(k, c) for k, c in terms.items() if k != lk]


def _make_monic(t: dict, p):
    lc = t[max(t)]
    if lc == 1:
        return t
    if p is None:
        inv = 1 / lc
        return {k: c * inv for k, c in t.items()}
    inv = pow(lc, -1, p)
    return {k: c * inv % p for k, c in t.items()}


def reduce_terms(f: dict, divs: Sequence[_Elem], codec, p, full: bool = True, quotients=None) -> dict:
    """Remainder of ``f`` modulo monic reducers ``divs``.

    With ``full=False`` only the leading term is reduced away.  When a list is
    passed as ``quotients`` it receives ``(index, monomial_key, coeff)``
    triples with ``f = sum coeff*x^key*divs[index] + remainder``.
    """
    f = dict(f)
    heap = [-k for k in f]
    heapify(heap)
    rem = {}
    g = codec.guard
    revlex = codec.revlex
    mask = codec.mask
    while heap:
        k = -heappop(heap)
        c = f.pop(k, None)
        if c is None:
            continue
        lg = (((-k) & mask) if revlex else k) | g
        for idx, d in enumerate(divs):
            if (lg - d.low) & g == g:
                q = k - d.lk
                if quotients is not None:
                    quotients.append((idx, q, c))
                get = f.get
                for tk, tc in d.tail:
                    nk = tk + q
                    old = get(nk)
                    if old is None:
                        v = -c * tc
                        if p is not None:
                            v %= p
                        f[nk] = v
                        heappush(heap, -nk)
                    else:
                        v = old - c * tc
                        if p is not None:
                            v %= p
                        if v:
                            f[nk] = v
                        else:
                            del f[nk]
                break
        else:
            rem[k] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _spoly(a: _Elem, b: _Elem, lcm_key: int, p) -> dict:
    qa = lcm_key - a.lk
    qb = lcm_key - b.lk
    t = {}
    for k, c in a.tail:
        t[k + qa] = c
    for k, c in b.tail:
        nk = k + qb
        v = t.get(nk, 0) - c
        if p is not None:
            v %= p
        if v:
            t[nk] = v
        else:
            t.pop(nk, None)
    return t


class _Buchberger:
    def __init__(self, ring: RingDescriptor, max_pairs, max_basis, degree_cap, track=False, ninputs=0):
        self.ring = ring
        self.codec = ring.codec
        self.p = ring.field.p
        self.G: list[_Elem] = []
        self.pairs: dict[tuple[int, int], tuple[int, int]] = {}
        self.max_pairs = max_pairs
        self.max_basis = max_basis
        self.degree_cap = degree_cap
        self.npairs = 0
        self.track = track
        self.cofactors: list[list[dict]] = []
        self.ninputs = ninputs

    def degree_of_low(self, low):
        return self.ring.degree_of_key(self.codec.from_low(low))

    def _add(self, terms: dict, deg: int, cof=None):
        if len(self.G) >= self.max_basis:
            raise ResourceLimitError(f"basis size exceeded budget of {self.max_basis}")
        p = self.p
        lc = terms[max(terms)]
        if lc != 1:
            inv = (1 / lc) if p is None else pow(lc, -1, p)
            terms = {k: (c * inv if p is None else c * inv % p) for k, c in terms.items()}
            if cof is not None:
                cof = [{k: (c * inv if p is None else c * inv % p) for k, c in v.items()} for v in cof]
        h = _Elem(terms, self.codec, deg)
        self._update(h)
        self.G.append(h)
        if self.track:
            self.cofactors.append(cof)

    def _update(self, h: _Elem):
        codec = self.codec
        lcm_low, divides = codec.lcm_low, codec.divides_low
        hl = h.low
        hidx = len(self.G)
        # drop old pairs (a, b) with LM(h) | lcm(a, b) strictly (criterion B_k)
        G = self.G
        dead = []
        for (a, b), (deg, L) in self.pairs.items():
            if divides(hl, L) and lcm_low(G[a].low, hl) != L and lcm_low(G[b].low, hl) != L:
                dead.append((a, b))
        for key in dead:
            del self.pairs[key]
        groups: dict[int, list[tuple[int, bool]]] = {}
        for i, g in enumerate(G):
            L = lcm_low(g.low, hl)
            groups.setdefault(L, []).append((i, L == g.low + hl))
        lcms = list(groups)
        for L in lcms:
            if any(L2 != L and divides(L2, L) for L2 in lcms):
                continue
            grp = groups[L]
            if any(cop for _, cop in grp):
                continue
            i = min(i for i, _ in grp)
            self.pairs[(i, hidx)] = (self.degree_of_low(L), L)

    def _reduce_tracked(self, f: dict, cof):
        if not self.track:
            return reduce_terms(f, self.G, self.codec, self.p, full=False), None
        quot = []
        r = reduce_terms(f, self.G, self.codec, self.p, full=False, quotients=quot)
        cof = [dict(v) for v in cof]
        for idx, q, c in quot:
            for j, poly in enumerate(self.cofactors[idx]):
                _axpy(cof[j], -c, q, poly, self.p)
        return r, cof

    def run(self, inputs: list[tuple[dict, int]]):
        p = self.p
        pending: dict[int, list] = {}
        for j, (t, deg) in enumerate(inputs):
            if t:
                cof = None
                if self.track:
                    cof = [{} for _ in range(self.ninputs)]
                    cof[j] = {0: 1 if p is not None else _one_q()}
                pending.setdefault(deg, []).append((t, cof))
        cap = self.degree_cap
        self.truncated = False
        while self.pairs or pending:
            degs = [d for d, _ in self.pairs.values()]
            D = min(degs + list(pending))
            if cap is not None and D > cap:
                self.truncated = True
                break
            batch = sorted((L_key, ab) for ab, (d, L) in self.pairs.items() if d == D
                           for L_key in [self.codec.from_low(L)])
            for L_key, ab in batch:
                if ab not in self.pairs:
                    continue
                del self.pairs[ab]
                self.npairs += 1
                if self.npairs > self.max_pairs:
                    raise ResourceLimitError(f"pair count exceeded budget of {self.max_pairs}")
                a, b = self.G[ab[0]], self.G[ab[1]]
                s = _spoly(a, b, L_key, p)
                cof = None
                if self.track:
                    cof = [{} for _ in range(self.ninputs)]
                    qa, qb = L_key - a.lk, L_key - b.lk
                    for j in range(self.ninputs):
                        _axpy(cof[j], 1, qa, self.cofactors[ab[0]][j], p)
                        _axpy(cof[j], -1, qb, self.cofactors[ab[1]][j], p)
                if not s:
                    continue
                r, cof = self._reduce_tracked(s, cof)
                if r:
                    self._add(r, D, cof)
            for t, cof in pending.pop(D, []):
                r, cof = self._reduce_tracked(t, cof)
                if r:
                    self._add(r, D, cof)
        return self


def _one_q():
    from fractions import Fraction

    return Fraction(1)


def _axpy(acc: dict, c, shift: int, poly: dict, p):
    """acc += c * x^shift * poly (in place)."""
    for k, v in poly.items():
        nk = k + shift
        w = acc.get(nk, 0) + c * v
        if p is not None:
            w %= p
        if w:
            acc[nk] = w
        else:
            acc.pop(nk, None)


def _interreduce(G: list[_Elem], codec, p) -> list[dict]:
    out = []
    for i, g in enumerate(G):
        others = G[:i] + G[i + 1 :]
        tail = reduce_terms(dict(g.tail), others, codec, p, full=True)
        t = dict(tail)
        t[g.lk] = g.terms[g.lk]
        out.append(_make_monic(t, p))
    return out


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis (monic, auto-reduced, sorted by descending lead)."""

    ideal: Ideal
    elements: list[Polynomial]
    order: str
    truncated_at: int | None = None
    pairs_processed: int = 0
    _elems: list = field(default=None, repr=False, compare=False)

    @property
    def ring(self) -> RingDescriptor:
        return self.ideal.ring

    @property
    def is_truncated(self) -> bool:
        return self.truncated_at is not None

    def reducers(self) -> list[_Elem]:
        if self._elems is None:
            codec = self.ring.codec
            self._elems = [_Elem(dict(g._t), codec, g.weighted_degree()) for g in self.elements]
        return self._elems

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError("polynomial outside the basis ring")
        r = reduce_terms(f._t, self.reducers(), self.ring.codec, self.ring.field.p)
        return Polynomial._raw(self.ring, r)

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial for g in self.elements]

    def verify(self) -> bool:
        """Buchberger criterion plus NF(input) = 0 (exhaustive; desk scale)."""
        codec, p = self.ring.codec, self.ring.field.p
        G = self.reducers()
        for f in self.ideal.gens:
            if reduce_terms(f._t, G, codec, p):
                return False
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                L = codec.lcm_low(G[i].low, G[j].low)
                if self.truncated_at is not None and self.ring.degree_of_key(codec.from_low(L)) > self.truncated_at:
                    continue
                s = _spoly(G[i], G[j], codec.from_low(L), p)
                if s and reduce_terms(s, G, codec, p):
                    return False
        return True

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _prepare(ideal: Ideal):
    ring = ideal.ring
    inputs = []
    for g in ideal.gens:
        deg = g.weighted_degree()
        if deg == INHOMOGENEOUS:
            raise PreconditionError("Buchberger input must be homogeneous")
        inputs.append((dict(g._t), deg))
    return ring, inputs


def buchberger(
    ideal: Ideal,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_basis: int = DEFAULT_MAX_BASIS,
    degree_cap: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of a homogeneous ideal in its ring's order."""
    ring, inputs = _prepare(ideal)
    eng = _Buchberger(ring, max_pairs, max_basis, degree_cap).run(inputs)
    codec, p = ring.codec, ring.field.p
    reduced = _interreduce(eng.G, codec, p)
    reduced.sort(key=max, reverse=True)
    elements = [Polynomial._raw(ring, t) for t in reduced]
    return GroebnerBasis(
        ideal,
        elements,
        ring.order,
        truncated_at=degree_cap if eng.truncated else None,
        pairs_processed=eng.npairs,
    )


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Multivariate division remainder of ``f`` by ``basis`` (any generating list)."""
    ring = f.ring
    elems = []
    for b in basis:
        if b.ring != ring:
            raise RingMismatchError("basis element outside the ring of f")
        if b.is_zero():
            continue
        elems.append(_Elem(_make_monic(dict(b._t), ring.field.p), ring.codec, 0))
    return Polynomial._raw(ring, reduce_terms(f._t, elems, ring.codec, ring.field.p))


def initial_ideal(gb: GroebnerBasis) -> Ideal:
    ring = gb.ring
    return Ideal(ring, [ring.monomial(m) for m in gb.leading_monomials()])


def is_member(f: Polynomial, ideal: Ideal | GroebnerBasis, **budget) -> bool:
    gb = ideal if isinstance(ideal, GroebnerBasis) else buchberger(ideal, **budget)
    if f.ring != gb.ring:
        raise RingMismatchError("polynomial outside the ideal's ring")
    if f.is_zero():
        return True
    if gb.is_truncated:
        deg = f.weighted_degree()
        if deg == INHOMOGENEOUS or deg > gb.truncated_at:
            raise PreconditionError("membership above the truncation degree is undecided")
    return gb.normal_form(f).is_zero()


# -- syzygies -------------------------------------------------------------------


@dataclass
class SyzygyBasis:
    """Generators ``c`` of the first syzygies: ``sum(c[i] * g[i]) == 0``."""

    source_gens: list[Polynomial]
    elements: list[tuple[Polynomial, ...]]
    grading: list[int]

    def degrees(self) -> list[int]:
        out = []
        for vec in self.elements:
            for c, d in zip(vec, self.grading):
                if c:
                    out.append(c.weighted_degree() + d)
                    break
        return out

    def verify(self) -> bool:
        if not self.source_gens:
            return True
        ring = self.source_gens[0].ring
        for vec in self.elements:
            acc = ring.zero()
            for c, g in zip(vec, self.source_gens):
                acc = acc + c * g
            if acc:
                return False
        return True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def syzygy_basis(gens: Sequence[Polynomial], max_pairs: int = DEFAULT_MAX_PAIRS) -> SyzygyBasis:
    """First syzygies of ``gens``: Schreyer syzygies of a tracked Groebner
    basis pulled back to the generators, plus the relations expressing each
    generator through the basis."""
    gens = list(gens)
    if not gens:
        return SyzygyBasis([], [], [])
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
        if g and g.weighted_degree() == INHOMOGENEOUS:
            raise PreconditionError("syzygy input must be homogeneous")
    codec, p = ring.codec, ring.field.p
    k = len(gens)
    grading = [g.weighted_degree() if g else 0 for g in gens]
    inputs = [(dict(g._t), grading[i]) for i, g in enumerate(gens)]
    eng = _Buchberger(ring, max_pairs, DEFAULT_MAX_BASIS, None, track=True, ninputs=k).run(inputs)
    G, A = eng.G, eng.cofactors
    one = 1 if p is not None else _one_q()
    vectors: list[list[dict]] = []

    def pull_back(svec: dict[int, dict]) -> list[dict]:
        # svec: basis index -> cofactor poly; returns the combination in gens
        out = [{} for _ in range(k)]
        for idx, poly in svec.items():
            for mk, mc in poly.items():
                for j in range(k):
                    _axpy(out[j], mc, mk, A[idx][j], p)
        return out

    # Schreyer syzygies, minimal lead monomials per basis element
    for a in range(len(G)):
        cands = {}
        for b in range(a + 1, len(G)):
            L = codec.lcm_low(G[a].low, G[b].low)
            cands.setdefault(L, b)
        lows = list(cands)
        for L in lows:
            if any(L2 != L and codec.divides_low(L2, L) for L2 in lows):
                continue
            b = cands[L]
            L_key = codec.from_low(L)
            s = _spoly(G[a], G[b], L_key, p)
            quot = []
            r = reduce_terms(s, G, codec, p, full=True, quotients=quot)
            assert not r, "S-polynomial of a Groebner basis failed to reduce to zero"
            svec: dict[int, dict] = {a: {L_key - G[a].lk: one}}
            _axpy(svec.setdefault(b, {}), -1, 0, {L_key - G[b].lk: one}, p)
            for idx, q, c in quot:
                _axpy(svec.setdefault(idx, {}), -c, 0, {q: one}, p)
            vectors.append(pull_back(svec))
    # e_j - (expression of g_j through the basis)
    for j, g in enumerate(gens):
        vec = [{} for _ in range(k)]
        vec[j] = {0: one}
        if g:
            quot = []
            r = reduce_terms(g._t, G, codec, p, full=True, quotients=quot)
            assert not r
            svec: dict[int, dict] = {}
            for idx, q, c in quot:
                _axpy(svec.setdefault(idx, {}), c, 0, {q: one}, p)
            back = pull_back(svec)
            for i in range(k):
                _axpy(vec[i], -1, 0, back[i], p)
        vectors.append(vec)
    seen = set()
    elements = []
    for vec in vectors:
        if not any(vec):
            continue
        polys = tuple(Polynomial._raw(ring, v) for v in vec)
        lead = next(c for c in polys if c)
        inv = ring.field.inv(lead.leading_coefficient)
        norm = tuple(c * inv for c in polys)
        if norm in seen:
            continue
        seen.add(norm)
        elements.append(polys)
    elements.sort(key=lambda v: _vec_degree(v, grading))
    return SyzygyBasis(gens, elements, grading)


def _vec_degree(vec, grading):
    for c, d in zip(vec, grading):
        if c:
            return c.weighted_degree() + d
    return 0
