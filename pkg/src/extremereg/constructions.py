"""Three-generator amplifier, Rees-like primes, and the recipes built on them.

Every construction returns ``(ideal, certificate)``.  Formula values enter a
certificate as *claims*; a claim only becomes ``verified`` when the resolution
oracle in :mod:`extremereg.invariants` has recomputed both sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from . import bounds
from .errors import PreconditionError, ResourceLimitError
from .groebner import DEFAULT_MAX_PAIRS, buchberger, syzygy_basis
from .invariants import (
    betti_table,
    dimension_and_degree,
    free_resolution,
    hilbert_series,
    projective_dimension,
    projective_dimension_lower_bound,
    regularity,
    regularity_lower_bound,
)
from .polyring import INHOMOGENEOUS, Ideal, Polynomial, RingDescriptor, ring_map

VERIFIED = "verified"
REFUTED = "refuted"
TRUNCATED = "truncation-limited"
SKIPPED = "skipped"
CLAIMED = "claimed"


@dataclass
class Claim:
    name: str
    relation: str  # one of ">=", "=", "holds"
    claimed: int | None
    observed: int | None = None
    status: str = CLAIMED
    note: str = ""

    def check(self, observed, truncated=False):
        """Record an oracle value and settle the status."""
        self.observed = observed
        if self.relation == "holds":
            ok = bool(observed)
        elif self.relation == "=":
            ok = observed == self.claimed
        else:
            ok = observed >= self.claimed
        if truncated:
            # a lower bound from truncated data can confirm ">=", never "="
            if self.relation == ">=" and ok:
                self.status = VERIFIED
                self.note = (self.note + "; " if self.note else "") + "certified from truncated data"
            else:
                self.status = TRUNCATED
        else:
            self.status = VERIFIED if ok else REFUTED
        return self


@dataclass
class ConstructionCertificate:
    construction: str
    params: dict
    claims: list[Claim] = field(default_factory=list)
    stages: list["ConstructionCertificate"] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    intermediate: Ideal | None = field(default=None, repr=False)

    def claim(self, name) -> Claim | None:
        for c in self.claims:
            if c.name == name:
                return c
        return None

    def _value(self, name):
        c = self.claim(name)
        return None if c is None else c.claimed

    @property
    def claimed_reg_lower(self):
        return self._value("reg_lower")

    @property
    def claimed_pd_lower(self):
        return self._value("pd_lower")

    @property
    def claimed_degree(self):
        return self._value("degree")

    @property
    def verified(self) -> dict[str, str]:
        return {c.name: c.status for c in self.claims}

    def output(self) -> "ConstructionCertificate":
        """Certificate whose claims describe the final output ideal."""
        if self.construction in ("amplify", "rees_like_prime") or not self.stages:
            return self
        return self.stages[-1].output()

    def all_verified(self, recursive=True) -> bool:
        ok = all(c.status == VERIFIED for c in self.claims)
        if recursive:
            ok = ok and all(s.all_verified() for s in self.stages)
        return ok

    def rows(self, prefix="") -> list[tuple[str, str]]:
        """Machine-readable ``key value`` rows."""
        out = [(f"{prefix}construction", self.construction)]
        for k, v in self.params.items():
            out.append((f"{prefix}param.{k}", str(v)))
        for c in self.claims:
            base = f"{prefix}claim.{c.name}"
            out.append((f"{base}.relation", c.relation))
            out.append((f"{base}.claimed", "" if c.claimed is None else str(c.claimed)))
            out.append((f"{base}.observed", "" if c.observed is None else str(c.observed)))
            out.append((f"{base}.status", c.status))
            if c.note:
                out.append((f"{base}.note", c.note))
        for n in self.notes:
            out.append((f"{prefix}note", n))
        for k, s in enumerate(self.stages, 1):
            out.extend(s.rows(prefix=f"{prefix}stage{k}."))
        return out

    def report(self, indent="") -> str:
        lines = [f"{indent}construction: {self.construction}"]
        if self.params:
            lines.append(indent + "params: " + ", ".join(f"{k}={v}" for k, v in self.params.items()))
        for c in self.claims:
            rel = {"holds": "holds", "=": "=", ">=": ">="}[c.relation]
            claimed = "" if c.claimed is None else f" {c.claimed}"
            obs = "" if c.observed is None else f" (observed {c.observed})"
            note = f"  [{c.note}]" if c.note else ""
            lines.append(f"{indent}  {c.name} {rel}{claimed}{obs}: {c.status}{note}")
        for n in self.notes:
            lines.append(f"{indent}  note: {n}")
        for k, s in enumerate(self.stages, 1):
            lines.append(f"{indent}stage {k}:")
            lines.append(s.report(indent + "  "))
        return "\n".join(lines)


# -- oracle ---------------------------------------------------------------------


@dataclass
class OracleResult:
    betti: object
    reg: int  # reg of the ideal
    pd: int  # pd of the ideal
    truncated: bool
    degree: int | None = None
    dim: int | None = None


def oracle(ideal: Ideal, degree_cap=None, max_pairs=DEFAULT_MAX_PAIRS, want_degree=True) -> OracleResult:
    """Resolve ``S/I`` and read off reg/pd of ``I`` plus dimension and degree."""
    res = free_resolution(ideal, "quotient", degree_cap=degree_cap, max_pairs=max_pairs)
    bt = betti_table(res)
    if degree_cap is None:
        reg_q, pd_q, truncated = regularity(bt), projective_dimension(bt), False
    else:
        reg_q, pd_q, truncated = regularity_lower_bound(bt), projective_dimension_lower_bound(bt), True
    out = OracleResult(bt, reg_q + 1, pd_q - 1, truncated)
    if want_degree and degree_cap is None and ideal.ring.is_standard_graded:
        out.dim, out.degree = dimension_and_degree(hilbert_series(ideal, max_pairs=max_pairs))
    return out


# -- helpers --------------------------------------------------------------------


def _fresh(ring: RingDescriptor, base: str, taken=()) -> str:
    used = set(ring.vars) | set(taken)
    if base not in used:
        return base
    k = 2
    while f"{base}{k}" in used:
        k += 1
    return f"{base}{k}"


def _fresh_block(ring: RingDescriptor, base: str, count: int, taken=()) -> list[str]:
    used = set(ring.vars) | set(taken)
    stem = base
    k = 2
    while any(f"{stem}_{i}" in used for i in range(1, count + 1)):
        stem = f"{base}{k}"
        k += 1
    return [f"{stem}_{i}" for i in range(1, count + 1)]


def _embed(f: Polynomial, target: RingDescriptor) -> Polynomial:
    images = [target.var(v) for v in f.ring.vars]
    return ring_map(f, target, images)


def _require_standard(ideal: Ideal):
    if not ideal.ring.is_standard_graded:
        raise PreconditionError("input ideal must live in a standard-graded ring")
    if ideal.ring.order == "weighted":
        raise PreconditionError("weighted-order input rings are not supported")


def _run_oracle(cert, label, ideal, verify, degree_cap, max_pairs, want_degree=True):
    if not verify:
        return None
    try:
        return oracle(ideal, degree_cap=degree_cap, max_pairs=max_pairs, want_degree=want_degree)
    except ResourceLimitError as exc:
        cert.notes.append(f"{label}: oracle skipped ({exc})")
        return None


def sorted_generators(ideal: Ideal) -> list[Polynomial]:
    """Nondecreasing degree, ties by descending leading monomial."""
    return sorted(ideal.gens, key=lambda g: (g.weighted_degree(), -g.leading_key))


def check_amplifier_params(ideal: Ideal, s: int, t: int) -> tuple[int, int, int]:
    """Validate ``s, t`` and return ``(m, d, d0)``."""
    gens = sorted_generators(ideal)
    m = len(gens) - 1
    if m < 1:
        raise PreconditionError("amplify needs at least two generators (m >= 1)")
    d0 = gens[0].weighted_degree()
    d = gens[-1].weighted_degree()
    need = m + d - d0 + 1
    if not (isinstance(s, int) and isinstance(t, int)) or s < need or t < need:
        raise PreconditionError(f"s and t must be integers >= m + d - d0 + 1 = {need} (got s={s}, t={t})")
    return m, d, d0


def minimal_amplifier_exponent(ideal: Ideal) -> int:
    gens = sorted_generators(ideal)
    m = len(gens) - 1
    return m + gens[-1].weighted_degree() - gens[0].weighted_degree() + 1


# -- three-generator amplifier ---------------------------------------------------------


def amplify(
    ideal: Ideal,
    s: int,
    t: int,
    verify: bool = True,
    degree_cap: int | None = None,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    names: tuple[str, str] = ("y", "z"),
    input_reg: int | None = None,
    input_pd: int | None = None,
):
    """``J = (y^s, z^t, sum_i g_i y^(d-d_i+i) z^(m-i))`` in ``S[y, z]``.

    ``input_reg``/``input_pd`` (of the ideal ``I``) may be supplied when the
    seed is too large to resolve; they then enter the claims unverified.
    """
    _require_standard(ideal)
    m, d, d0 = check_amplifier_params(ideal, s, t)
    gens = sorted_generators(ideal)
    S = ideal.ring
    yname = _fresh(S, names[0])
    zname = _fresh(S, names[1], taken=[yname])
    R = S.extend([yname, zname])
    y, z = R.var(yname), R.var(zname)
    third = R.zero()
    for i, g in enumerate(gens):
        third = third + _embed(g, R) * y ** (d - g.weighted_degree() + i) * z ** (m - i)
    J = Ideal(R, [y**s, z**t, third])

    cert = ConstructionCertificate("amplify", {"s": s, "t": t, "m": m, "d": d, "d0": d0})
    degs = J.degrees
    cert.claims.append(
        Claim("generator_degrees", "holds", None, note=f"degrees {degs}, expected {[s, t, m + d]}").check(
            len(J.gens) == 3 and degs == [s, t, m + d] and third.is_homogeneous()
        )
    )
    in_yz = all(
        all(e[R.index(yname)] + e[R.index(zname)] > 0 for _, e in g.terms) for g in J.gens
    )
    cert.claims.append(Claim("support_in_yz", "holds", None, note="y^s, z^t in J; all generators in (y, z)").check(in_yz))

    res_i = _run_oracle(cert, "input", ideal, verify and (input_reg is None or input_pd is None), None, max_pairs, False)
    reg_i = input_reg if input_reg is not None else (res_i.reg if res_i else None)
    pd_i = input_pd if input_pd is not None else (res_i.pd if res_i else None)
    cert.params["reg_S(I)"] = reg_i
    cert.params["pd_S(I)"] = pd_i
    reg_claim = Claim("reg_lower", ">=", None if reg_i is None else reg_i + s + t - 2)
    pd_claim = Claim("pd_lower", ">=", None if pd_i is None else pd_i + 2)
    deg_claim = Claim("degree", "=", t * m)
    cert.claims += [reg_claim, pd_claim, deg_claim]

    res_j = _run_oracle(cert, "output", J, verify, degree_cap, max_pairs)
    if res_j is not None:
        if reg_claim.claimed is not None:
            reg_claim.check(res_j.reg, res_j.truncated)
        if pd_claim.claimed is not None:
            pd_claim.check(res_j.pd, res_j.truncated)
        if res_j.degree is not None:
            deg_claim.check(res_j.degree)
            cert.params["dim(R/J)"] = res_j.dim
        elif degree_cap is not None:
            try:
                dim, deg = dimension_and_degree(hilbert_series(J, max_pairs=max_pairs))
                deg_claim.check(deg)
            except ResourceLimitError as exc:
                cert.notes.append(f"degree skipped ({exc})")
    for c in (reg_claim, pd_claim, deg_claim):
        if c.status == CLAIMED and verify:
            c.status = SKIPPED
    return J, cert


# -- Rees-like prime ---------------------------------------------------------------------


@dataclass
class ReesLikeData:
    intermediate_ring: RingDescriptor
    intermediate: Ideal
    ring: RingDescriptor
    prime: Ideal
    syzygies: list


def rees_like_data(ideal: Ideal, max_pairs: int = DEFAULT_MAX_PAIRS) -> ReesLikeData:
    """Defining ideal of ``S[It, t^2]`` and its standard-graded homogenization.

    The defining ideal lives in ``S[y_1..y_m, z]`` with ``deg y_i = deg f_i + 1``
    and ``deg z = 2``; it is generated by ``y_i y_j - z f_i f_j`` (i <= j) and
    ``sum_i c_i y_i`` for generators ``c`` of the first syzygies of the
    ``f_i``.  Substituting ``y_i -> y_i u_i^(deg f_i)``, ``z -> z v`` gives the
    prime in ``S[y, u, z, v]`` with every variable of degree one.
    """
    _require_standard(ideal)
    f = list(ideal.gens)
    m = len(f)
    if m == 0:
        raise PreconditionError("rees_like_prime needs at least one generator")
    S = ideal.ring
    ds = [g.weighted_degree() for g in f]
    ys = _fresh_block(S, "y", m)
    zname = _fresh(S, "z", taken=ys)
    Q = RingDescriptor(
        S.vars + tuple(ys) + (zname,),
        S.field,
        S.var_degrees + tuple(d + 1 for d in ds) + (2,),
        S.order,
    )
    yq = [Q.var(v) for v in ys]
    zq = Q.var(zname)
    fq = [_embed(g, Q) for g in f]
    qgens = []
    for i in range(m):
        for j in range(i, m):
            qgens.append(yq[i] * yq[j] - zq * fq[i] * fq[j])
    syz = syzygy_basis(f, max_pairs=max_pairs)
    for vec in syz.elements:
        acc = Q.zero()
        for c, yv in zip(vec, yq):
            if c:
                acc = acc + _embed(c, Q) * yv
        if acc:
            qgens.append(acc)
    intermediate = Ideal(Q, qgens)

    us = _fresh_block(S, "u", m, taken=ys + [zname])
    vname = _fresh(S, "v", taken=ys + us + [zname])
    R = RingDescriptor(S.vars + tuple(ys) + tuple(us) + (zname, vname), S.field, None, S.order)
    images = [R.var(v) for v in S.vars]
    images += [R.var(ys[i]) * R.var(us[i]) ** ds[i] for i in range(m)]
    images += [R.var(zname) * R.var(vname)]
    P = Ideal(R, [ring_map(g, R, images) for g in qgens])
    return ReesLikeData(Q, intermediate, R, P, syz.elements)


def rees_like_prime(
    ideal: Ideal,
    verify: bool = True,
    degree_cap: int | None = None,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    input_reg: int | None = None,
):
    """Homogenized Rees-like prime ``P`` with its certificate.

    Claims ``reg(P) = reg(I) + 2 + sum deg f_i`` and
    ``deg(R/P) = 2 prod (deg f_i + 1)``; primality itself is not checked.
    """
    data = rees_like_data(ideal, max_pairs=max_pairs)
    P = data.prime
    ds = ideal.degrees
    cert = ConstructionCertificate("rees_like_prime", {"m": len(ds), "degrees": ds})
    cert.intermediate = data.intermediate
    cert.claims.append(
        Claim("intermediate_homogeneous", "holds", None, note="non-standard grading deg y_i = d_i + 1, deg z = 2").check(
            all(g.weighted_degree() != INHOMOGENEOUS for g in data.intermediate.gens)
        )
    )
    cert.claims.append(
        Claim("standard_homogeneous", "holds", None).check(all(g.is_homogeneous() for g in P.gens))
    )
    res_i = _run_oracle(cert, "input", ideal, verify and input_reg is None, None, max_pairs, False)
    reg_i = input_reg if input_reg is not None else (res_i.reg if res_i else None)
    cert.params["reg_S(I)"] = reg_i
    reg_claim = Claim("reg", "=", None if reg_i is None else reg_i + 2 + sum(ds))
    deg_claim = Claim("degree", "=", 2 * prod(d + 1 for d in ds))
    nondeg = Claim("nondegenerate", "holds", None, note="no linear form in P")
    cert.claims += [reg_claim, deg_claim, nondeg]
    cert.notes.append("primality asserted by the construction, not checked algorithmically")
    if verify:
        try:
            gb = buchberger(P, max_pairs=max_pairs, degree_cap=1)
            nondeg.check(all(g.weighted_degree() > 1 for g in gb.elements))
        except ResourceLimitError as exc:
            cert.notes.append(f"nondegeneracy skipped ({exc})")
    res_p = _run_oracle(cert, "output", P, verify, degree_cap, max_pairs)
    if res_p is not None:
        if reg_claim.claimed is not None:
            reg_claim.check(res_p.reg, res_p.truncated)
        if res_p.degree is not None:
            deg_claim.check(res_p.degree)
            cert.params["codim"] = P.ring.nvars - res_p.dim
    for c in (reg_claim, deg_claim, nondeg):
        if c.status == CLAIMED and verify:
            c.status = SKIPPED
    return P, cert


# -- recipes ----------------------------------------------------------------------------


def _check_shape(ideal: Ideal, count: int, degree: int, what: str):
    degs = ideal.degrees
    if len(degs) != count or any(d != degree for d in degs):
        raise PreconditionError(
            f"{what} must have {count} generators of degree {degree}; got {len(degs)} generators of degrees {sorted(set(degs))}"
        )


def _equal_degree_exponent(ideal: Ideal) -> int:
    # s = t = m + d makes all three amplified generators share one degree
    return len(ideal.gens) - 1 + max(ideal.degrees)


def recipe_three_gen(r: int, koh: Ideal, validate: bool = True, verify: bool = False, **kw):
    """Three forms of degree ``22r - 2`` from a Koh-type seed of ``22r - 3`` quadrics.

    ``validate=False`` accepts a small stand-in seed; the amplifier then uses
    ``s = t = m + d`` exactly as for a genuine seed.
    """
    if not isinstance(r, int) or r < 2 and validate:
        raise PreconditionError("recipe_three_gen needs r >= 2")
    if validate:
        _check_shape(koh, 22 * r - 3, 2, "Koh seed")
    st = _equal_degree_exponent(koh)
    J, stage = amplify(koh, st, st, verify=verify, **kw)
    lb = bounds.lower_bound_expressions("thm_3reg", r) if r >= 2 else None
    cert = ConstructionCertificate("recipe_three_gen", {"r": r, "s": st, "t": st, "seed_validated": validate})
    cert.stages.append(stage)
    if lb is not None and validate:
        cert.claims.append(Claim("generator_degree", "=", lb["generator_degree"].value).check(J.degrees[-1]))
        c = Claim("reg_lower", ">=", lb["reg_lower"].value, note="requires reg(seed) >= 2^(2^(r-1))")
        c.status = SKIPPED if verify else CLAIMED
        cert.claims.append(c)
    return J, cert


def recipe_prime(r: int, koh: Ideal, validate: bool = True, verify: bool = False, **kw):
    """Seed -> amplify -> amplify (m = 2, s = t = 3) -> Rees-like prime."""
    J, c1 = recipe_three_gen(r, koh, validate=validate, verify=verify, **kw)
    degs = J.degrees
    if len(set(degs)) != 1:
        raise PreconditionError("second amplification needs three generators of one degree")
    J2, c2 = amplify(J, 3, 3, verify=verify, **kw)
    P, c3 = rees_like_prime(J2, verify=verify, **{k: v for k, v in kw.items() if k != "names"})
    cert = ConstructionCertificate("recipe_prime", {"r": r, "seed_validated": validate})
    cert.stages += [c1, c2, c3]
    pipeline_degree = 2 * prod(d + 1 for d in J2.degrees)
    obs = c3.claim("degree").observed
    if validate:
        lb = bounds.lower_bound_expressions("thm_prime", r)
        stated = lb["degree"].value
        dc = Claim("degree_stated", "=", stated, note=f"Rees-like degree formula on degrees {J2.degrees} gives {pipeline_degree}")
        dc.status = CLAIMED
        if obs is not None:
            dc.check(obs)
        if stated != pipeline_degree:
            cert.notes.append(
                f"degree mismatch: stated {stated} vs 2*prod(deg+1) = {pipeline_degree} for generator degrees {J2.degrees}"
            )
        cert.claims.append(dc)
        rc = Claim("reg_lower", ">=", lb["reg_lower"].value, note="requires reg(seed) >= 2^(2^(r-1))")
        rc.status = SKIPPED if verify else CLAIMED
        cert.claims.append(rc)
    cert.claims.append(Claim("degree_formula", "=", pipeline_degree))
    if obs is not None:
        cert.claims[-1].check(obs)
    elif verify:
        cert.claims[-1].status = SKIPPED
    return P, cert


def recipe_pd(r: int, base: Ideal, validate: bool = True, verify: bool = False, **kw):
    """Three generators of degree ``4r + 1`` from a seed of ``2r + 1`` forms of degree ``2r + 1``."""
    if not isinstance(r, int) or r < 1:
        raise PreconditionError("recipe_pd needs r >= 1")
    if validate:
        _check_shape(base, 2 * r + 1, 2 * r + 1, "pd seed")
    st = _equal_degree_exponent(base)
    J, stage = amplify(base, st, st, verify=verify, **kw)
    cert = ConstructionCertificate("recipe_pd", {"r": r, "s": st, "t": st, "seed_validated": validate})
    cert.stages.append(stage)
    if validate:
        lb = bounds.lower_bound_expressions("thm_pd", r)
        cert.claims.append(Claim("generator_degree", "=", lb["generator_degree"].value).check(J.degrees[-1]))
        c = Claim("pd_lower", ">=", lb["pd_lower"].value, note="requires pd(S/seed) >= r^(2r)")
        pd_obs = stage.claim("pd_lower").observed
        if pd_obs is not None and not stage.claim("pd_lower").status == TRUNCATED:
            c.check(pd_obs)
        else:
            c.status = SKIPPED if verify else CLAIMED
        cert.claims.append(c)
    return J, cert
