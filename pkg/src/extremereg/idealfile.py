"""Line-oriented ideal files.

::

    extremereg-ideal 1
    field p 32003
    vars a b y z
    order grevlex
    meta family amplifier
    gen a*z + b*y

``vars`` entries may carry a degree (``y:3``).  Blank lines and lines
starting with ``#`` are ignored.  Writing is canonical, so
``write(parse(write(x))) == write(x)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError, PreconditionError
from .polyring import _NAME_RE, GF, QQ, Field, Ideal, RingDescriptor, format_polynomial, parse_polynomial

MAGIC = "extremereg-ideal"
VERSION = 1


@dataclass
class IdealFile:
    ideal: Ideal
    meta: list[tuple[str, str]] = field(default_factory=list)

    def get(self, key, default=None):
        for k, v in self.meta:
            if k == key:
                return v
        return default

    def get_all(self, key) -> list[str]:
        return [v for k, v in self.meta if k == key]


def field_spec(f: Field) -> str:
    return "q" if f.p is None else f"p {f.p}"


def parse_field(text: str) -> Field:
    """Accepts ``q``, ``p``, ``p 101``, ``p:101``."""
    parts = text.replace(":", " ").split()
    if parts == ["q"]:
        return QQ
    if parts and parts[0] == "p":
        if len(parts) == 1:
            return GF()
        if len(parts) == 2 and parts[1].isdigit():
            return GF(int(parts[1]))
    raise PreconditionError(f"bad field spec {text!r}; use 'q' or 'p N'")


def _ring_decl(ring: RingDescriptor) -> list[str]:
    vs = " ".join(v if d == 1 else f"{v}:{d}" for v, d in zip(ring.vars, ring.var_degrees))
    lines = [f"field {field_spec(ring.field)}", f"vars {vs}".rstrip()]
    order = ring.order
    if order == "weighted":
        order += " " + " ".join(map(str, ring.weights))
    lines.append(f"order {order}")
    return lines


def dumps(ideal: Ideal, meta=()) -> str:
    lines = [f"{MAGIC} {VERSION}"]
    lines += _ring_decl(ideal.ring)
    for k, v in meta:
        if any(c.isspace() for c in k) or not k:
            raise PreconditionError(f"bad meta key {k!r}")
        if "\n" in str(v):
            raise PreconditionError("meta values must fit on one line")
        lines.append(f"meta {k} {v}".rstrip())
    for g in ideal.gens:
        lines.append(f"gen {format_polynomial(g)}")
    return "\n".join(lines) + "\n"


def _parse_vars(rest: str, lineno: int, col0: int):
    names, degs = [], []
    for mt in re.finditer(r"\S+", rest):
        tok, col = mt.group(), col0 + mt.start()
        name, sep, d = tok.partition(":")
        if sep and (not d.isdigit() or int(d) < 1):
            raise ParseError(f"bad variable degree in {tok!r}", lineno, col)
        if not _NAME_RE.match(name):
            raise ParseError(f"invalid variable name {name!r}", lineno, col)
        if name in names:
            raise ParseError(f"duplicate variable {name!r}", lineno, col)
        names.append(name)
        degs.append(int(d) if sep else 1)
    return names, degs


def loads(text: str) -> IdealFile:
    lines = text.splitlines()
    content = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
    if not content:
        raise ParseError("empty ideal file", 1, 1)
    lineno, first = content[0]
    head = first.split()
    if len(head) != 2 or head[0] != MAGIC:
        raise ParseError(f"expected header '{MAGIC} {VERSION}'", lineno, 1)
    if head[1] != str(VERSION):
        raise ParseError(f"unsupported format version {head[1]}", lineno, len(MAGIC) + 2)

    fld, names, degs, order, weights = QQ, None, None, "grevlex", None
    meta: list[tuple[str, str]] = []
    gens: list[tuple[int, int, str]] = []
    ring = None
    for lineno, raw in content[1:]:
        stripped = raw.lstrip()
        indent = len(raw) - len(stripped)
        kw, _, rest = stripped.partition(" ")
        col0 = indent + len(kw) + 2  # 1-based column of ``rest``
        if kw in ("field", "vars", "order") and gens:
            raise ParseError(f"'{kw}' must precede the generators", lineno, indent + 1)
        if kw == "field":
            try:
                fld = parse_field(rest.strip())
            except PreconditionError as exc:
                raise ParseError(str(exc), lineno, col0) from None
        elif kw == "vars":
            names, degs = _parse_vars(rest, lineno, col0)
        elif kw == "order":
            parts = rest.split()
            if not parts:
                raise ParseError("missing order name", lineno, col0)
            order = parts[0]
            if order == "weighted":
                if not all(p.isdigit() for p in parts[1:]) or len(parts) == 1:
                    raise ParseError("weighted order needs integer weights", lineno, col0)
                weights = tuple(int(p) for p in parts[1:])
            elif len(parts) > 1:
                raise ParseError(f"unexpected text after order {order!r}", lineno, col0 + len(order) + 1)
        elif kw == "meta":
            key, _, val = rest.partition(" ")
            if not key:
                raise ParseError("meta line needs a key", lineno, col0)
            meta.append((key, val.strip()))
        elif kw == "gen":
            gens.append((lineno, col0 - 1, rest))
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno, indent + 1)
    if names is None:
        raise ParseError("missing 'vars' line", content[-1][0], 1)
    try:
        ring = RingDescriptor(tuple(names), fld, tuple(degs), order, weights)
    except PreconditionError as exc:
        raise ParseError(str(exc), content[0][0] + 1, 1) from None
    polys = []
    for lineno, off, src in gens:
        f = parse_polynomial(src, ring, line=lineno, col_offset=off)
        polys.append((lineno, f))
    try:
        ideal = Ideal(ring, [f for _, f in polys])
    except PreconditionError as exc:
        bad = next((ln for ln, f in polys if f.is_zero() or not _homog(f)), polys[0][0] if polys else 1)
        raise ParseError(str(exc), bad, 1) from None
    return IdealFile(ideal, meta)


def _homog(f) -> bool:
    try:
        return f.is_homogeneous()
    except Exception:
        return False


def read(path) -> IdealFile:
    return loads(Path(path).read_text())


def write(path, ideal: Ideal, meta=()) -> None:
    Path(path).write_text(dumps(ideal, meta))
