"""Hilbert series of ``S/I`` from the initial ideal.

The numerator of a monomial ideal is computed by pivoting on a power of a
variable: ``N(I) = N(I + (x^e)) + t^(e*deg x) * N(I : x^e)``, with the
pairwise-coprime case closed as a product.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from ..errors import PreconditionError
from ..groebner import GroebnerBasis, buchberger
from ..kernels import colon_rows, divisible_rows, minimal_rows
from ..polyring import Ideal


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: list[int], b: list[int], shift: int = 0) -> list[int]:
    n = max(len(a), len(b) + shift)
    out = list(a) + [0] * (n - len(a))
    for j, y in enumerate(b):
        out[j + shift] += y
    return out


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def monomial_numerator(E: np.ndarray, weights) -> list[int]:
    """Numerator of the Hilbert series of ``S/(x^row : row in E)``."""
    w = np.asarray(weights, dtype=np.int64)
    E = np.asarray(E, dtype=np.int64).reshape(-1, len(w))
    return _trim(_numerator(E, w))


def _numerator(E, w):
    if E.shape[0] == 0:
        return [1]
    E = E[minimal_rows(E)]
    degs = E @ w
    if np.any(degs == 0):
        return [0]
    support = E > 0
    if E.shape[0] == 1 or np.all(support.sum(axis=0) <= 1):
        out = [1]
        for d in degs:
            out = _pmul(out, [1] + [0] * (int(d) - 1) + [-1])
        return out
    # pivot on the variable shared by most generators, at its median exponent
    counts = support.sum(axis=0)
    x = int(np.argmax(counts))
    col = E[:, x]
    nonpure = support.sum(axis=1) > 1
    exps = np.sort(col[(col > 0) & nonpure])
    if exps.size == 0:
        exps = np.sort(col[col > 0])
    e = int(exps[(exps.size - 1) // 2])
    v = np.zeros(E.shape[1], dtype=np.int64)
    v[x] = e
    plus = np.vstack([E[~divisible_rows(E, v)], v[None, :]])
    colon = colon_rows(E, v)
    left = _numerator(plus, w)
    right = _numerator(colon, w)
    return _padd(left, right, e * int(w[x]))


@dataclass
class HilbertSeries:
    """``numerator(t) / (1 - t)^denominator_exponent`` (ascending coefficients)."""

    numerator: list[int]
    denominator_exponent: int

    def format(self, var: str = "t") -> str:
        parts = []
        for k, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}" if mono else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def coefficient(self, D: int) -> int:
        """The Hilbert function at ``D``."""
        n = self.denominator_exponent
        if n == 0:
            return self.numerator[D] if 0 <= D < len(self.numerator) else 0
        return sum(c * comb(D - k + n - 1, n - 1) for k, c in enumerate(self.numerator) if k <= D)

    def __str__(self):
        return f"({self.format()}) / (1 - t)^{self.denominator_exponent}"


def hilbert_series(ideal: Ideal | GroebnerBasis, **budget) -> HilbertSeries:
    """Hilbert series of ``S/I`` for a standard-graded ring."""
    gb = ideal if isinstance(ideal, GroebnerBasis) else buchberger(ideal, **budget)
    if gb.is_truncated:
        raise PreconditionError("Hilbert series needs an untruncated Groebner basis")
    ring = gb.ring
    if not ring.is_standard_graded:
        raise PreconditionError("Hilbert series is implemented for standard gradings only")
    E = np.array(gb.leading_monomials(), dtype=np.int64).reshape(-1, ring.nvars)
    num = monomial_numerator(E, ring.var_degrees)
    return HilbertSeries(num, ring.nvars)


def dimension_and_degree(hs: HilbertSeries) -> tuple[int, int]:
    """Krull dimension and degree (multiplicity) of the quotient."""
    num = list(hs.numerator)
    if not any(num):
        raise PreconditionError("zero module has no dimension or degree")
    k = 0
    while sum(num) == 0:
        # synthetic division by (1 - t)
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        k += 1
    return hs.denominator_exponent - k, sum(num)
