"""Scripts that rebuild an ideal in an external CAS and ask for reg/pd/degree.

Output is a pure function of the input, so scripts can be diffed across runs.
"""

from __future__ import annotations

from .errors import PreconditionError
from .idealfile import dumps
from .polyring import Ideal, RingDescriptor, format_polynomial

DIALECTS = ("macaulay2", "singular", "extremereg")


def _poly_text(ideal: Ideal) -> list[str]:
    return [format_polynomial(g) for g in ideal.gens]


def _comment_block(prefix: str, lines) -> list[str]:
    return [f"{prefix} {ln}".rstrip() for ln in lines]


def _intermediate_lines(intermediate: Ideal | None) -> list[str]:
    if intermediate is None:
        return []
    ring = intermediate.ring
    degs = ", ".join(f"{v}:{d}" for v, d in zip(ring.vars, ring.var_degrees))
    out = ["non-standard intermediate ideal (reference only, not exported):", f"  degrees {degs}"]
    out += [f"  {t}" for t in _poly_text(intermediate)]
    return out


def _m2(ideal: Ideal, intermediate: Ideal | None) -> str:
    ring = ideal.ring
    coeffs = "QQ" if ring.field.p is None else f"ZZ/{ring.field.p}"
    order = {"grevlex": "GRevLex", "lex": "Lex"}.get(ring.order)
    opts = [f"Degrees => {{{', '.join(map(str, ring.var_degrees))}}}"]
    if ring.order == "weighted":
        opts.append(f"MonomialOrder => {{Weights => {{{', '.join(map(str, ring.weights))}}}, GRevLex}}")
    else:
        opts.append(f"MonomialOrder => {order}")
    lines = ["-- extremereg export 1 (Macaulay2)"]
    lines += _comment_block("--", _intermediate_lines(intermediate))
    lines.append(f"R = {coeffs}[{', '.join(ring.vars)}, {', '.join(opts)}];")
    gens = _poly_text(ideal)
    lines.append("I = ideal(" + ",\n    ".join(gens) + ");")
    lines += [
        "C = res I;",
        "print betti C;",
        'print("reg " | toString regularity I);',
        'print("pd " | toString pdim module I);',
        'print("degree " | toString degree I);',
    ]
    return "\n".join(lines) + "\n"


def _singular_order(ring: RingDescriptor) -> str:
    if ring.order == "lex":
        return "lp"
    if ring.order == "weighted":
        return f"wp({','.join(map(str, ring.weights))})"
    if ring.is_standard_graded:
        return "dp"
    return f"wp({','.join(map(str, ring.var_degrees))})"


def _singular(ideal: Ideal, intermediate: Ideal | None) -> str:
    ring = ideal.ring
    char = 0 if ring.field.p is None else ring.field.p
    lines = ["// extremereg export 1 (Singular)"]
    lines += _comment_block("//", _intermediate_lines(intermediate))
    lines.append(f"ring R = {char},({','.join(ring.vars)}),{_singular_order(ring)};")
    lines.append("ideal I = " + ",\n    ".join(_poly_text(ideal)) + ";")
    lines += [
        "def L = mres(I, 0);",
        'print(betti(L), "betti");',
        '"reg"; regularity(L);',
        "// pd: index of the last nonzero column of the Betti table",
        '"degree"; degree(std(I));',
    ]
    return "\n".join(lines) + "\n"


def export_script(ideal: Ideal, dialect: str, intermediate: Ideal | None = None, meta=()) -> str:
    """Render ``ideal`` for ``dialect`` (``macaulay2``, ``singular`` or ``extremereg``)."""
    d = dialect.lower()
    if d in ("m2", "macaulay2"):
        return _m2(ideal, intermediate)
    if d == "singular":
        return _singular(ideal, intermediate)
    if d == "extremereg":
        return dumps(ideal, meta)
    raise PreconditionError(f"unsupported dialect {dialect!r}; choose from {', '.join(DIALECTS)}")
