"""Graded free resolutions by iterated Schreyer syzygies, then minimalization.

Level 1 is the reduced Groebner basis of the ideal; level ``k + 1`` consists of
the Schreyer syzygies of level ``k`` under the induced order, which form a
Groebner basis of the syzygy module again, so no module Buchberger run is
needed.  Every basis element ``e`` of level ``k`` carries the *total*
monomial ``TM(e) = LM(e) * TM(lead component)``; a term ``m * e`` of a level
vector is stored under the integer key ``(key(m * TM(e)) << bits) | rank(e)``
where ``rank`` sorts basis elements by their Schreyer tie-break.  Comparing
keys is comparing terms, and multiplying by a monomial is adding a constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heapify, heappop, heappush

import numpy as np

from ..errors import PreconditionError, ResourceLimitError
from ..groebner import DEFAULT_MAX_PAIRS, buchberger
from ..kernels import rank_mod_p
from ..polyring import Ideal, Polynomial, RingDescriptor

DEFAULT_MAX_RANK = 200_000


class _Gen:
    """A basis element of one level of the Schreyer frame."""

    __slots__ = ("vec", "lead", "tm", "tm_low", "deg", "comp", "rank", "index")

    def __init__(self, vec, lead, tm, tm_low, deg, comp):
        self.vec = vec
        self.lead = lead
        self.tm = tm
        self.tm_low = tm_low
        self.deg = deg
        self.comp = comp
        self.rank = 0
        self.index = 0


class _Level:
    __slots__ = ("gens", "bits")

    def __init__(self, gens):
        self.gens = gens
        self.bits = 0


def _rank_bits(n):
    return (n - 1).bit_length() if n > 1 else 0


def _finalize_level(level: _Level, prev: _Level | None, codec):
    """Order elements (Schreyer sort) and assign tie-break ranks."""
    gens = level.gens
    if prev is not None:

        def lead_exps(g):
            return codec.decode(g.tm - prev.gens[g.comp].tm)

        # same lead component: lex-descending lead monomials keep the frame short
        gens.sort(key=lambda g: (prev.gens[g.comp].rank, tuple(-e for e in lead_exps(g))))
    for i, g in enumerate(gens):
        g.index = i
    order = sorted(
        range(len(gens)),
        key=lambda i: ((prev.gens[gens[i].comp].rank if prev is not None else 0), -i),
    )
    for r, i in enumerate(order):
        gens[i].rank = r
    level.bits = _rank_bits(len(gens))


def _reduce_module(image, divmap, bits, codec, p, nxt_bits):
    """Reduce ``image`` (level k-1 vector) to zero by level-k elements.

    Returns the syzygy contribution ``-sum c * m * e_sigma`` as a level-k+1
    vector fragment; raises if a remainder survives.
    """
    f = dict(image)
    heap = [-k for k in f]
    heapify(heap)
    out = {}
    g = codec.guard
    mask = codec.mask
    revlex = codec.revlex
    rmask = (1 << bits) - 1
    while heap:
        k = -heappop(heap)
        c = f.pop(k, None)
        if c is None:
            continue
        comp = k & rmask
        M = k >> bits
        lg = (((-M) & mask) if revlex else M) | g
        for tm_low, tm, sig in divmap.get(comp, ()):
            if (lg - tm_low) & g == g:
                q = (M - tm) << bits
                okey = (M << nxt_bits) | sig.rank
                v = out.get(okey, 0) - c
                if p is not None:
                    v %= p
                if v:
                    out[okey] = v
                else:
                    out.pop(okey, None)
                get = f.get
                for tk, tc in sig.vec.items():
                    if tk == sig.lead:
                        continue
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
            raise AssertionError("Schreyer S-pair did not reduce to zero")
    return out


def _next_level(level: _Level, prev: _Level, ring: RingDescriptor, degree_cap, budget):
    codec = ring.codec
    p = ring.field.p
    gens = level.gens
    bits_prev = prev.bits
    bits = level.bits
    divmap: dict[int, list] = {}
    for s in gens:
        divmap.setdefault(prev.gens[s.comp].rank, []).append((s.tm_low, s.tm, s))
    by_comp: dict[int, list[_Gen]] = {}
    for s in gens:
        by_comp.setdefault(s.comp, []).append(s)
    one = 1 if p is not None else Fraction(1)
    new = []
    for comp, group in by_comp.items():
        group.sort(key=lambda s: s.index)
        for ia, a in enumerate(group):
            cands = {}
            for b in group[ia + 1 :]:
                L = codec.lcm_low(a.tm_low, b.tm_low)
                if L not in cands:
                    cands[L] = b
            lows = list(cands)
            for L in lows:
                if any(L2 != L and codec.divides_low(L2, L) for L2 in lows):
                    continue
                b = cands[L]
                Lk = codec.from_low(L)
                deg = ring.degree_of_key(Lk)
                if degree_cap is not None and deg > degree_cap:
                    continue
                budget[0] += 1
                if budget[0] > budget[1]:
                    raise ResourceLimitError(f"frame pair count exceeded budget of {budget[1]}")
                qa = (Lk - a.tm) << bits_prev
                qb = (Lk - b.tm) << bits_prev
                image = {}
                for k, c in a.vec.items():
                    if k != a.lead:
                        image[k + qa] = c
                for k, c in b.vec.items():
                    if k == b.lead:
                        continue
                    nk = k + qb
                    v = image.get(nk, 0) - c
                    if p is not None:
                        v %= p
                    if v:
                        image[nk] = v
                    else:
                        image.pop(nk, None)
                vec = _reduce_module(image, divmap, bits_prev, codec, p, bits)
                lead = (Lk << bits) | a.rank
                vec[lead] = one
                kb = (Lk << bits) | b.rank
                v = vec.get(kb, 0) - one
                if p is not None:
                    v %= p
                if v:
                    vec[kb] = v
                else:
                    vec.pop(kb, None)
                new.append(_Gen(vec, lead, Lk, L, deg, a.index))
    if len(new) > budget[2]:
        raise ResourceLimitError(f"frame rank exceeded budget of {budget[2]}")
    return _Level(new)


# -- graded maps and resolutions ----------------------------------------------


@dataclass
class GradedMap:
    """Columns of a graded free-module map with polynomial entries.

    ``columns[j]`` maps a target basis index to a dict of *total* monomial
    keys; the entry polynomial is obtained by subtracting ``target_tm``.
    """

    source_degrees: list[int]
    target_degrees: list[int]
    columns: list[dict[int, dict[int, object]]]
    source_tm: list[int]
    target_tm: list[int]

    @property
    def shape(self):
        return len(self.target_degrees), len(self.source_degrees)


@dataclass
class FreeResolution:
    """Graded free resolution; ``maps[i]`` is ``d_{i+1}: F_{i+1} -> F_i``."""

    ring: RingDescriptor
    module_tag: str
    maps: list[GradedMap]
    rank0_degrees: list[int]
    minimal: bool
    truncated_at: int | None = None
    frame_ranks: list[int] = field(default_factory=list)

    @property
    def is_truncated(self) -> bool:
        return self.truncated_at is not None

    @property
    def length(self) -> int:
        return len(self.maps)

    def degrees(self, i: int) -> list[int]:
        """Generator degrees of ``F_i``."""
        if i == 0:
            return list(self.rank0_degrees)
        return list(self.maps[i - 1].source_degrees)

    def ranks(self) -> list[int]:
        return [len(self.rank0_degrees)] + [len(m.source_degrees) for m in self.maps]

    def entry(self, i: int, r: int, c: int) -> Polynomial:
        """Entry ``(r, c)`` of ``d_i`` as a polynomial."""
        m = self.maps[i - 1]
        terms = m.columns[c].get(r, {})
        base = m.target_tm[r]
        return Polynomial._raw(self.ring, {k - base: v for k, v in terms.items()})

    def matrix(self, i: int) -> list[list[Polynomial]]:
        rows, cols = self.maps[i - 1].shape
        return [[self.entry(i, r, c) for c in range(cols)] for r in range(rows)]

    def compositions_vanish(self) -> bool:
        """Exactness certificate part one: ``d_i o d_{i+1} == 0`` for every i."""
        p = self.ring.field.p
        for i in range(1, len(self.maps)):
            lower, upper = self.maps[i - 1], self.maps[i]
            for col in upper.columns:
                acc: dict[int, dict] = {}
                for k, terms in col.items():
                    base = upper.target_tm[k]
                    target = lower.columns[k]
                    for tk, tc in terms.items():
                        q = tk - base
                        for s, sterms in target.items():
                            dst = acc.setdefault(s, {})
                            _axpy(dst, tc, q, sterms, p)
                if any(acc.values()):
                    return False
        return True

    def has_constant_entries(self) -> bool:
        for m in self.maps:
            for j, col in enumerate(m.columns):
                dj = m.source_degrees[j]
                for r, terms in col.items():
                    if terms and m.target_degrees[r] == dj:
                        return True
        return False

    def is_graded(self) -> bool:
        deg = self.ring.degree_of_key
        for m in self.maps:
            for j, col in enumerate(m.columns):
                for r, terms in col.items():
                    for k in terms:
                        if deg(k) != m.source_degrees[j]:
                            return False
                        if deg(k - m.target_tm[r]) != m.source_degrees[j] - m.target_degrees[r]:
                            return False
        return True


def _axpy(acc: dict, c, shift: int, poly: dict, p):
    for k, v in poly.items():
        nk = k + shift
        w = acc.get(nk, 0) + c * v
        if p is not None:
            w %= p
        if w:
            acc[nk] = w
        else:
            acc.pop(nk, None)


def schreyer_frame(ideal: Ideal, degree_cap=None, max_pairs=DEFAULT_MAX_PAIRS, max_rank=DEFAULT_MAX_RANK):
    """Non-minimal resolution of ``S/I`` as a list of frame levels."""
    ring = ideal.ring
    codec = ring.codec
    gb = buchberger(ideal, max_pairs=max_pairs, degree_cap=degree_cap)
    root = _Gen({0: 1}, 0, 0, 0, 0, 0)
    level0 = _Level([root])
    _finalize_level(level0, None, codec)
    gens = []
    for g in gb.elements:
        t = dict(g._t)
        lk = max(t)
        gens.append(_Gen(t, lk, lk, codec.low(lk), g.weighted_degree(), 0))
    levels = [level0, _Level(gens)]
    _finalize_level(levels[1], level0, codec)
    budget = [0, max_pairs, max_rank]
    while levels[-1].gens:
        if len(levels) > ring.nvars + 2:
            raise AssertionError("Schreyer frame longer than the number of variables allows")
        nxt = _next_level(levels[-1], levels[-2], ring, degree_cap, budget)
        if not nxt.gens:
            break
        _finalize_level(nxt, levels[-1], codec)
        levels.append(nxt)
    return levels, gb


def _level_map(level: _Level, prev: _Level) -> GradedMap:
    rb = prev.bits
    rmask = (1 << rb) - 1
    pos = {g.rank: g.index for g in prev.gens}
    cols = []
    for g in level.gens:
        col: dict[int, dict] = {}
        for k, c in g.vec.items():
            col.setdefault(pos[k & rmask], {})[k >> rb] = c
        cols.append(col)
    return GradedMap(
        [g.deg for g in level.gens],
        [g.deg for g in prev.gens],
        cols,
        [g.tm for g in level.gens],
        [g.tm for g in prev.gens],
    )


def _minimalize(maps: list[GradedMap], p):
    """Cancel unit entries; pivots go by homological index, then (row, col)."""
    alive_src = [list(range(len(m.source_degrees))) for m in maps]
    alive_tgt = [list(range(len(m.target_degrees))) for m in maps]
    dead_src = [set() for _ in maps]
    dead_tgt = [set() for _ in maps]
    for i, m in enumerate(maps):
        cols = m.columns
        rowmap: dict[int, set] = {}
        for j, col in enumerate(cols):
            if j in dead_src[i]:
                continue
            for r in col:
                if r not in dead_tgt[i]:
                    rowmap.setdefault(r, set()).add(j)
        heap = []

        def push_constants(j):
            dj = m.source_degrees[j]
            for r, terms in cols[j].items():
                if terms and m.target_degrees[r] == dj and r not in dead_tgt[i]:
                    heappush(heap, (r, j))

        for j in range(len(cols)):
            if j not in dead_src[i]:
                push_constants(j)
        while heap:
            r, c = heappop(heap)
            if r in dead_tgt[i] or c in dead_src[i]:
                continue
            ent = cols[c].get(r)
            if not ent or m.target_degrees[r] != m.source_degrees[c]:
                continue
            (u,) = ent.values()
            uinv = (1 / u) if p is None else pow(u, -1, p)
            pivot_col = cols[c]
            base = m.target_tm[r]
            for j in sorted(rowmap.get(r, ())):
                if j == c or j in dead_src[i]:
                    continue
                col = cols[j]
                entry = col.get(r)
                if not entry:
                    continue
                for tk, tc in list(entry.items()):
                    q = tk - base
                    f = -tc * uinv
                    if p is not None:
                        f %= p
                    for s, sterms in pivot_col.items():
                        dst = col.setdefault(s, {})
                        _axpy(dst, f, q, sterms, p)
                        if dst:
                            rowmap.setdefault(s, set()).add(j)
                        else:
                            del col[s]
                push_constants(j)
            # drop row r of d_i and column c of d_i
            dead_tgt[i].add(r)
            dead_src[i].add(c)
            for s in pivot_col:
                rowmap.get(s, set()).discard(c)
            rowmap.pop(r, None)
            # column r of d_{i-1} and row c of d_{i+1}
            if i > 0:
                dead_src[i - 1].add(r)
            if i + 1 < len(maps):
                dead_tgt[i + 1].add(c)
                for col in maps[i + 1].columns:
                    col.pop(c, None)
    out = []
    for i, m in enumerate(maps):
        src = [j for j in alive_src[i] if j not in dead_src[i]]
        tgt = [r for r in alive_tgt[i] if r not in dead_tgt[i]]
        tpos = {r: k for k, r in enumerate(tgt)}
        cols = []
        for j in src:
            col = {}
            for r, terms in m.columns[j].items():
                if terms:
                    if r not in tpos:
                        raise AssertionError("minimalization left an entry in a cancelled row")
                    col[tpos[r]] = terms
            cols.append(col)
        out.append(
            GradedMap(
                [m.source_degrees[j] for j in src],
                [m.target_degrees[r] for r in tgt],
                cols,
                [m.source_tm[j] for j in src],
                [m.target_tm[r] for r in tgt],
            )
        )
    f0 = [d for r, d in enumerate(maps[0].target_degrees) if r not in dead_tgt[0]] if maps else None
    while out and not out[-1].source_degrees:
        out.pop()
    return out, f0


def free_resolution(
    ideal: Ideal,
    module_tag: str = "quotient",
    degree_cap: int | None = None,
    minimize: bool = True,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_rank: int = DEFAULT_MAX_RANK,
) -> FreeResolution:
    """Graded free resolution of ``S/I`` (``quotient``) or ``I`` (``ideal``).

    With ``degree_cap`` only generators of degree <= cap are computed; Betti
    numbers ``beta_{i,j}`` with ``j <= cap`` are exact, nothing above is.
    """
    if module_tag not in ("quotient", "ideal"):
        raise PreconditionError(f"module_tag must be 'quotient' or 'ideal', not {module_tag!r}")
    levels, _ = schreyer_frame(ideal, degree_cap, max_pairs, max_rank)
    maps = [_level_map(levels[k], levels[k - 1]) for k in range(1, len(levels))]
    frame_ranks = [len(lv.gens) for lv in levels]
    p = ideal.ring.field.p
    rank0 = [0]
    if minimize:
        maps, f0 = _minimalize(maps, p)
        if f0 is not None:
            rank0 = f0
    if module_tag == "ideal":
        if maps:
            rank0 = list(maps[0].source_degrees)
            maps = maps[1:]
        else:
            rank0 = []
    return FreeResolution(
        ideal.ring,
        module_tag,
        maps,
        rank0,
        minimal=minimize,
        truncated_at=degree_cap,
        frame_ranks=frame_ranks,
    )


# -- Betti numbers of a (possibly non-minimal) resolution by constant ranks ---


def _rank_q(rows: list[list[Fraction]]) -> int:
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][c]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def constant_rank(m: GradedMap, degree: int, p) -> int:
    """Rank of the scalar block of ``m`` between generators of ``degree``."""
    cols = [j for j, d in enumerate(m.source_degrees) if d == degree]
    rows = [r for r, d in enumerate(m.target_degrees) if d == degree]
    if not cols or not rows:
        return 0
    rpos = {r: k for k, r in enumerate(rows)}
    if p is not None:
        A = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for jj, j in enumerate(cols):
            for r, terms in m.columns[j].items():
                if r in rpos and terms:
                    (v,) = terms.values()
                    A[rpos[r], jj] = int(v)
        return rank_mod_p(A, p)
    A = [[Fraction(0)] * len(cols) for _ in rows]
    for jj, j in enumerate(cols):
        for r, terms in m.columns[j].items():
            if r in rpos and terms:
                (v,) = terms.values()
                A[rpos[r]][jj] = Fraction(v)
    return _rank_q(A)


def betti_by_ranks(res: FreeResolution) -> dict[tuple[int, int], int]:
    """``beta_{i,j} = dim F_{i,j} - rk(d_i)_j - rk(d_{i+1})_j`` (homology of F (x) k)."""
    p = res.ring.field.p
    out = {}
    n = res.length
    for i in range(n + 1):
        degs = res.degrees(i)
        for j in sorted(set(degs)):
            b = degs.count(j)
            if i >= 1:
                b -= constant_rank(res.maps[i - 1], j, p)
            if i < n:
                b -= constant_rank(res.maps[i], j, p)
            if b:
                out[(i, j)] = b
    return out
