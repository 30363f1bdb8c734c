"""Betti tables and the invariants read off them.

Regularity is ``max{j - i : beta_{i,j} != 0}``.  (The ``min`` that sometimes
appears in print is a typo for this; ``max`` is the only reading under which
``reg(I) = reg(S/I) + 1`` and the usual degree bounds hold.)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import PreconditionError
from .resolution import FreeResolution


@dataclass
class BettiTable:
    entries: dict[tuple[int, int], int]
    module_tag: str = "quotient"
    truncated_at: int | None = None
    nvars: int | None = field(default=None, compare=False)

    @property
    def is_truncated(self) -> bool:
        return self.truncated_at is not None

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def alternating_sum(self) -> list[int]:
        """Coefficients (ascending in t) of ``sum_i (-1)^i sum_j beta_{i,j} t^j``."""
        if not self.entries:
            return [0]
        top = max(j for _, j in self.entries)
        out = [0] * (top + 1)
        for (i, j), b in self.entries.items():
            out[j] += -b if i % 2 else b
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def rows(self) -> list[tuple[int, int, int]]:
        return sorted((i, j, b) for (i, j), b in self.entries.items() if b)

    def format_rows(self) -> str:
        return "\n".join(f"{i} {j} {b}" for i, j, b in self.rows())

    def format_grid(self) -> str:
        """Conventional display: columns i, rows j - i."""
        if not self.entries:
            return "(zero module)"
        imax = max(i for i, _ in self.entries)
        shifts = sorted({j - i for i, j in self.entries})
        lo, hi = shifts[0], shifts[-1]
        width = max(len(str(b)) for b in self.entries.values())
        width = max(width, len(str(imax)), 1) + 1
        lines = [" " * 6 + "".join(f"{i:>{width}}" for i in range(imax + 1))]
        lines.append("total:" + "".join(f"{self.total(i):>{width}}" for i in range(imax + 1)))
        for s in range(lo, hi + 1):
            cells = []
            for i in range(imax + 1):
                b = self.entries.get((i, i + s), 0)
                cells.append(f"{(b if b else '.'):>{width}}")
            lines.append(f"{s:>5}:" + "".join(cells))
        if self.is_truncated:
            lines.append(f"(truncated: entries with j <= {self.truncated_at} only)")
        return "\n".join(lines)

    def __str__(self):
        return self.format_grid()


def betti_table(res: FreeResolution) -> BettiTable:
    """Count generator degrees of a minimal resolution."""
    if not res.minimal:
        raise PreconditionError("betti_table needs a minimal resolution")
    entries: dict[tuple[int, int], int] = {}
    for i in range(res.length + 1):
        for d in res.degrees(i):
            entries[(i, d)] = entries.get((i, d), 0) + 1
    return BettiTable(entries, res.module_tag, res.truncated_at, res.ring.nvars)


def _check(bt: BettiTable, what: str):
    if not bt.entries:
        raise PreconditionError(f"{what} of the zero module is undefined")
    if bt.is_truncated:
        raise PreconditionError(
            f"{what} from a table truncated at degree {bt.truncated_at} is only a lower bound; "
            f"call {what}_lower_bound to acknowledge truncation"
        )


def regularity(bt: BettiTable) -> int:
    _check(bt, "regularity")
    return max(j - i for i, j in bt.entries)


def regularity_lower_bound(bt: BettiTable) -> int:
    """``reg >= value``; exact when the table is not truncated."""
    if not bt.entries:
        raise PreconditionError("regularity of the zero module is undefined")
    return max(j - i for i, j in bt.entries)


def projective_dimension(bt: BettiTable) -> int:
    _check(bt, "projective_dimension")
    return max(i for i, _ in bt.entries)


def projective_dimension_lower_bound(bt: BettiTable) -> int:
    if not bt.entries:
        raise PreconditionError("projective dimension of the zero module is undefined")
    return max(i for i, _ in bt.entries)
