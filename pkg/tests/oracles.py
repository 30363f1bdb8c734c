"""Independent brute-force oracles: plain linear algebra mod p, no Groebner bases."""

import random
from itertools import combinations_with_replacement

from extremereg.polyring import GF, Ideal, Polynomial, PolynomialRing, ring_map


def rank_mod_p(rows, p):
    """Rank of a list of sparse rows (dict col -> int) over GF(p)."""
    pivots = {}
    rank = 0
    for row in rows:
        r = {k: v % p for k, v in row.items() if v % p}
        while r:
            col = min(r)
            if col not in pivots:
                inv = pow(r[col], -1, p)
                pivots[col] = {k: v * inv % p for k, v in r.items()}
                rank += 1
                break
            c = r[col]
            for k, v in pivots[col].items():
                nv = (r.get(k, 0) - c * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def monomials(n, D):
    out = []
    for combo in combinations_with_replacement(range(n), D):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _shift(f: Polynomial, mono):
    return {tuple(a + b for a, b in zip(e, mono)): c for c, e in f.terms}


def hilbert_function(ideal: Ideal, D: int) -> int:
    """dim_k (S/I)_D for a standard-graded ring over GF(p)."""
    ring = ideal.ring
    p = ring.field.p
    mons = monomials(ring.nvars, D)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in ideal.gens:
        d = g.weighted_degree()
        if d > D:
            continue
        for m in monomials(ring.nvars, D - d):
            rows.append({index[e]: int(c) for e, c in _shift(g, m).items()})
    return len(mons) - rank_mod_p(rows, p)


def syzygy_dimension(gens, D):
    """dim of the degree-D part of the first syzygies, by kernel size."""
    ring = gens[0].ring
    p = ring.field.p
    mons = {m: i for i, m in enumerate(monomials(ring.nvars, D))}
    # columns of the map sum S(-d_i) -> S, as rows of the transpose
    rows, ncols = [], 0
    for g in gens:
        d = g.weighted_degree()
        if d > D:
            continue
        for m in monomials(ring.nvars, D - d):
            rows.append({mons[e]: int(c) for e, c in _shift(g, m).items()})
            ncols += 1
    return ncols - rank_mod_p(rows, p)


def syzygy_span_dimension(gens, vectors, D):
    """dim of the degree-D part of the submodule spanned by ``vectors``."""
    ring = gens[0].ring
    p = ring.field.p
    degs = [g.weighted_degree() for g in gens]
    slots = {}
    for i, d in enumerate(degs):
        if d <= D:
            for m in monomials(ring.nvars, D - d):
                slots[(i, m)] = len(slots)
    rows = []
    for vec in vectors:
        vd = None
        for c, d in zip(vec, degs):
            if c:
                vd = c.weighted_degree() + d
                break
        if vd is None or vd > D:
            continue
        for m in monomials(ring.nvars, D - vd):
            row = {}
            for i, c in enumerate(vec):
                if c:
                    for e, coef in _shift(c, m).items():
                        row[slots[(i, e)]] = int(coef)
            rows.append(row)
    return rank_mod_p(rows, p)


def generic_fibre_length(J: Ideal, y: str, z: str, seed=0) -> int:
    """Length of k[y,z]/(y^s, z^t, F) at a random point of the other coordinates.

    ``J = (y^s, z^t, F)`` is supported on (y, z), so this equals deg(R/J)
    with high probability over GF(p).  The quotient by ``(y^s, z^t)`` has
    basis y^a z^b (a < s, b < t); the length is s*t minus the rank of the
    multiples of F there.
    """
    R = J.ring
    p = R.field.p
    iy, iz = R.index(y), R.index(z)
    ys, zt, F = J.gens
    s, t = ys.leading_monomial[iy], zt.leading_monomial[iz]
    rng = random.Random(seed)
    point = [rng.randrange(1, p) for _ in R.vars]
    special = {}
    for c, e in F.terms:
        val = int(c)
        for i, x in enumerate(e):
            if i not in (iy, iz):
                val = val * pow(point[i], x, p) % p
        key = (e[iy], e[iz])
        special[key] = (special.get(key, 0) + val) % p
    rows = []
    for a in range(s):
        for b in range(t):
            row = {}
            for (u, v), c in special.items():
                if c and a + u < s and b + v < t:
                    row[(a + u) * t + (b + v)] = c
            rows.append(row)
    return s * t - rank_mod_p(rows, p)


def _span_rows(ideal: Ideal, D: int, index, offset=0):
    rows = []
    for g in ideal.gens:
        d = g.weighted_degree()
        if d > D:
            continue
        for m in monomials(ideal.ring.nvars, D - d):
            rows.append({offset + index[e]: int(c) for e, c in _shift(g, m).items()})
    return rows


def socle_dimension(ideal: Ideal, D: int) -> int:
    """dim of the degree-D socle of S/I, i.e. classes killed by every variable.

    S/I has depth 0 (so pd(S/I) = #vars) iff this is nonzero for some D.
    """
    ring = ideal.ring
    n, p = ring.nvars, ring.field.p
    low = monomials(n, D)
    high = {m: i for i, m in enumerate(monomials(n, D + 1))}
    width = len(high)
    j_low = rank_mod_p(_span_rows(ideal, D, {m: i for i, m in enumerate(low)}), p)
    j_high = _span_rows(ideal, D + 1, high)
    r_high = rank_mod_p(j_high, p)
    rows = []
    for k in range(n):
        rows += [{c + k * width: v for c, v in r.items()} for r in j_high]
    for u in low:
        row = {}
        for k in range(n):
            e = list(u)
            e[k] += 1
            row[k * width + high[tuple(e)]] = 1
        rows.append(row)
    rank_phi = rank_mod_p(rows, p) - n * r_high
    return (len(low) - rank_phi) - j_low
