"""Exact evaluation of the translation inequalities among Phi, Psi, Phi_pd, Psi_pd.

Here ``Phi(m, d)`` and ``Phi_pd(m, d)`` bound regularity and projective
dimension of ideals with ``m`` generators of degree at most ``d``, while
``Psi(e)`` and ``Psi_pd(e)`` bound them for nondegenerate primes of degree
``e``.  None of these functions is known; every evaluator here is an
upper-bound transformer that takes the needed value as an explicit input.
All arithmetic is on Python ints, so nothing overflows or rounds.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import isqrt

from .errors import PreconditionError


@dataclass(frozen=True)
class BoundExpr:
    value: int
    provenance: str = "input"

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise TypeError("BoundExpr value must be an int")
        if self.value < 0:
            raise ValueError("BoundExpr value must be nonnegative")

    @property
    def digits(self) -> int:
        return len(str(self.value))

    def __int__(self):
        return self.value


def _val(x) -> int:
    v = x.value if isinstance(x, BoundExpr) else x
    if not isinstance(v, int) or v < 0:
        raise PreconditionError(f"expected a natural number, got {v!r}")
    return v


def _nat(**kw):
    for k, v in kw.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise PreconditionError(f"{k} must be a natural number, got {v!r}")


def geometric_sum(m: int, n: int) -> int:
    """``sum_{i=0}^{n} m^(2i)`` in closed form."""
    _nat(m=m, n=n)
    if m == 0:
        return 1
    if m == 1:
        return n + 1
    q = m * m
    return (q ** (n + 1) - 1) // (q - 1)


def psi_upper_from_phi(e: int, phi_at_e_e2) -> BoundExpr:
    """``Psi(e) <= max(e^2, Phi(e, e^2) + 1)``."""
    _nat(e=e)
    phi = _val(phi_at_e_e2)
    return BoundExpr(max(e * e, phi + 1), f"max(e^2, Phi(e,e^2)+1) with e={e}, Phi={phi}")


def phi_upper_from_psi(m: int, d: int, psi_at) -> tuple[BoundExpr, BoundExpr]:
    """``Phi(m, d) <= Psi(2(d+1)^m)``; returns the argument and the bound."""
    _nat(m=m, d=d)
    arg = 2 * (d + 1) ** m
    psi = _val(psi_at)
    return (
        BoundExpr(arg, f"2(d+1)^m with m={m}, d={d}"),
        BoundExpr(psi, f"Psi({arg}) as supplied"),
    )


def phi_upper_from_phipd(m: int, d: int, phipd) -> BoundExpr:
    """``Phi(m, d) <= (2d)^(2^(Phi_pd(m, d) - 2))``; needs ``Phi_pd >= 2``."""
    _nat(m=m, d=d)
    pd = _val(phipd)
    if pd < 2:
        raise PreconditionError(f"tower exponent 2^(Phi_pd - 2) undefined for Phi_pd = {pd} < 2")
    return BoundExpr((2 * d) ** (1 << (pd - 2)), f"(2d)^(2^(Phi_pd-2)) with d={d}, Phi_pd={pd}")


def phipd_upper_from_phi(m: int, phi) -> BoundExpr:
    """``Phi_pd(m, d) <= Phi(m, d) * sum_{i=0}^{Phi} m^(2i)``."""
    _nat(m=m)
    p = _val(phi)
    return BoundExpr(p * geometric_sum(m, p), f"Phi * sum m^(2i) with m={m}, Phi={p}")


def psipd_upper_from_phipd(e: int, phipd_at) -> BoundExpr:
    """``Psi_pd(e) <= max(e, Phi_pd(e, e^2) - 1)``."""
    _nat(e=e)
    pd = _val(phipd_at)
    return BoundExpr(max(e, pd - 1), f"max(e, Phi_pd(e,e^2)-1) with e={e}, Phi_pd={pd}")


def phipd_upper_from_psipd(m: int, d: int, psipd_at) -> tuple[BoundExpr, BoundExpr]:
    """``Phi_pd(m, d) <= Psi_pd(2(d+1)^m)``."""
    _nat(m=m, d=d)
    arg = 2 * (d + 1) ** m
    v = _val(psipd_at)
    return (
        BoundExpr(arg, f"2(d+1)^m with m={m}, d={d}"),
        BoundExpr(v, f"Psi_pd({arg}) as supplied"),
    )


TRANSLATIONS = {
    "psi-from-phi": psi_upper_from_phi,
    "phi-from-psi": phi_upper_from_psi,
    "phi-from-phipd": phi_upper_from_phipd,
    "phipd-from-phi": phipd_upper_from_phi,
    "psipd-from-phipd": psipd_upper_from_phipd,
    "phipd-from-psipd": phipd_upper_from_psipd,
}

KINDS = ("thm_3reg", "thm_prime", "thm_pd", "bmnsss")


def _sqrt_power_bracket(d: int) -> tuple[int, int]:
    """Integers ``lo <= sqrt(d)^(sqrt(d) - 1) < hi`` using ``s0 = isqrt(d)``.

    Exact when ``d`` is a perfect square.
    """
    s0 = isqrt(d)
    if s0 * s0 == d:
        v = s0 ** (s0 - 1) if s0 >= 1 else 1
        return v, v + 1
    lo = s0 ** (s0 - 1) if s0 >= 1 else 0
    return lo, (s0 + 1) ** s0


def lower_bound_expressions(kind: str, r: int) -> dict[str, BoundExpr]:
    """Exact values attached to the extreme-behaviour families at parameter ``r``.

    * ``thm_3reg``: three forms of degree ``22r - 2`` with
      ``reg >= 2^(2^(r-1)) + 44r - 6`` (``r >= 2``).
    * ``thm_prime``: a nondegenerate prime of degree ``396r`` with
      ``reg >= 2^(2^(r-1)) + 66r + 6`` (``r >= 2``); the degree that the
      Rees-like formula gives for generator degrees 3, 3, 22r is included as
      ``degree_reeslike`` since the two differ.
    * ``thm_pd``: three forms of degree ``4r + 1`` with ``pd >= r^(2r) + 1``.
    * ``bmnsss``: the comparison quantity ``sqrt(d)^(sqrt(d) - 1)`` at
      ``d = 4r + 1``, bracketed by integers.
    """
    if kind not in KINDS:
        raise PreconditionError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if not isinstance(r, int) or isinstance(r, bool):
        raise PreconditionError("r must be an integer")
    if kind in ("thm_3reg", "thm_prime") and r < 2:
        raise PreconditionError(f"{kind} needs r >= 2 (got r={r})")
    if kind in ("thm_pd", "bmnsss") and r < 1:
        raise PreconditionError(f"{kind} needs r >= 1 (got r={r})")
    if kind in ("thm_3reg", "thm_prime"):
        tower = 1 << (1 << (r - 1))
    if kind == "thm_3reg":
        return {
            "generators": BoundExpr(3, "three forms"),
            "generator_degree": BoundExpr(22 * r - 2, f"22r-2 at r={r}"),
            "reg_lower": BoundExpr(tower + 44 * r - 6, f"2^(2^(r-1))+44r-6 at r={r}"),
        }
    if kind == "thm_prime":
        deg = 396 * r
        reg = tower + 66 * r + 6
        codim = 3
        eg = deg - codim + 1
        return {
            "degree": BoundExpr(deg, f"396r at r={r}"),
            "degree_reeslike": BoundExpr(2 * 4 * 4 * (22 * r + 1), f"2*4*4*(22r+1) at r={r}"),
            "reg_lower": BoundExpr(reg, f"2^(2^(r-1))+66r+6 at r={r}"),
            "codim": BoundExpr(codim, "height of P equals the number of amplified generators"),
            "eisenbud_goto": BoundExpr(eg, f"deg-codim+1 at r={r}"),
            "exceeds_eisenbud_goto": BoundExpr(int(reg > eg), "1 if reg bound > deg-codim+1"),
        }
    if kind == "thm_pd":
        return {
            "generators": BoundExpr(3, "three forms"),
            "generator_degree": BoundExpr(4 * r + 1, f"4r+1 at r={r}"),
            "pd_lower": BoundExpr(r ** (2 * r) + 1, f"r^(2r)+1 at r={r}"),
            "seed_pd_lower": BoundExpr(r ** (2 * r), f"r^(2r) at r={r}"),
        }
    d = 4 * r + 1
    lo, hi = _sqrt_power_bracket(d)
    return {
        "generator_degree": BoundExpr(d, f"4r+1 at r={r}"),
        "sqrt_power_floor": BoundExpr(lo, f"isqrt(d)^(isqrt(d)-1) with d={d}"),
        "sqrt_power_ceiling": BoundExpr(hi, f"(isqrt(d)+1)^isqrt(d) with d={d}"),
    }


def eisenbud_goto_comparison(r: int) -> dict:
    """Formula-level comparison of the prime family against ``deg - codim + 1``."""
    lb = lower_bound_expressions("thm_prime", r)
    return {
        "r": r,
        "reg_lower": lb["reg_lower"].value,
        "degree": lb["degree"].value,
        "codim": lb["codim"].value,
        "eisenbud_goto": lb["eisenbud_goto"].value,
        "exceeded": bool(lb["exceeds_eisenbud_goto"].value),
    }


_DIGIT_KEYS = ("reg_lower", "pd_lower", "sqrt_power_floor", "sqrt_power_ceiling")


def bound_table(kind: str, rs) -> list[dict]:
    """One row per ``r``; the fast-growing columns also get a digit count."""
    rows = []
    for r in rs:
        rec = lower_bound_expressions(kind, r)
        row = {"kind": kind, "r": r}
        for k, v in rec.items():
            row[k] = v.value
            if k in _DIGIT_KEYS:
                row[f"{k}_digits"] = v.digits
        rows.append(row)
    return rows


def format_table(rows: list[dict], fmt: str = "text") -> str:
    """Aligned text or CSV.  Huge values are kept exact in both."""
    if not rows:
        return ""
    cols = list(rows[0])
    for row in rows[1:]:
        cols += [c for c in row if c not in cols]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if fmt != "text":
        raise PreconditionError(f"unknown table format {fmt!r}")
    cells = [[str(row.get(c, "")) for c in cols] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    for r in cells:
        lines.append("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"
