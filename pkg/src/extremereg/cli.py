"""``extremereg`` command line.

Exit codes: 0 success, 2 usage, 3 parse error, 4 precondition or validation
failure, 5 resource limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds, constructions, export, idealfile
from .errors import ParseError, PreconditionError, ResourceLimitError
from .groebner import DEFAULT_MAX_PAIRS
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
from .polyring import Ideal, RingDescriptor, format_polynomial

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 2, 3, 4, 5

CERT_MAGIC = "extremereg-certificate 1"


class UsageError(Exception):
    pass


def _load(path) -> idealfile.IdealFile:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return idealfile.read(p)


def _emit(text: str, out=None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- construct ---------------------------------------------------------------------


def _intermediate_meta(inter: Ideal) -> list[tuple[str, str]]:
    ring = inter.ring
    vs = " ".join(f"{v}:{d}" for v, d in zip(ring.vars, ring.var_degrees))
    meta = [("intermediate.vars", vs)]
    meta += [("intermediate.gen", format_polynomial(g)) for g in inter.gens]
    return meta


def _intermediate_from_meta(f: idealfile.IdealFile) -> Ideal | None:
    vs = f.get("intermediate.vars")
    if vs is None:
        return None
    names, degs = zip(*(tok.split(":") for tok in vs.split()))
    ring = RingDescriptor(names, f.ideal.ring.field, [int(d) for d in degs], f.ideal.ring.order)
    return Ideal(ring, [ring(g) for g in f.get_all("intermediate.gen")])


def write_certificate(path, cert: constructions.ConstructionCertificate):
    rows = cert.rows()
    rows += cert.output().rows(prefix="output.")
    text = CERT_MAGIC + "\n" + "".join(f"{k} {v}".rstrip() + "\n" for k, v in rows)
    Path(path).write_text(text)


def read_certificate(path) -> dict[str, str]:
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].strip() != CERT_MAGIC:
        raise ParseError(f"expected header '{CERT_MAGIC}'", 1, 1)
    out = {}
    for ln in lines[1:]:
        if ln.strip():
            k, _, v = ln.partition(" ")
            out[k] = v
    return out


def cmd_construct(args) -> int:
    budget = {"max_pairs": args.max_pairs}
    verify = not args.no_verify
    if args.kind == "amplify":
        src = _load(args.input)
        out, cert = constructions.amplify(src.ideal, args.s, args.t, verify=verify, degree_cap=args.cap, **budget)
        meta = [("construction", "amplify"), ("s", str(args.s)), ("t", str(args.t))]
    elif args.kind == "rees-like":
        src = _load(args.input)
        out, cert = constructions.rees_like_prime(src.ideal, verify=verify, degree_cap=args.cap, **budget)
        meta = [("construction", "rees_like_prime")] + _intermediate_meta(cert.intermediate)
    else:
        seed_path = args.koh if args.recipe in ("three-gen", "prime") else args.base
        if seed_path is None:
            raise UsageError(f"recipe {args.recipe} needs --{'koh' if args.recipe != 'pd' else 'base'}")
        seed = _load(seed_path).ideal
        fn = {
            "three-gen": constructions.recipe_three_gen,
            "prime": constructions.recipe_prime,
            "pd": constructions.recipe_pd,
        }[args.recipe]
        out, cert = fn(args.r, seed, validate=not args.stand_in, verify=verify, degree_cap=args.cap, **budget)
        meta = [("construction", f"recipe_{args.recipe.replace('-', '_')}"), ("r", str(args.r))]
        if args.recipe == "prime":
            meta += _intermediate_meta(cert.stages[-1].intermediate)
    text = idealfile.dumps(out, meta)
    _emit(text, args.out)
    cert_path = args.cert or (f"{args.out}.cert" if args.out else None)
    if cert_path:
        write_certificate(cert_path, cert)
    report = cert.report() + "\n"
    (sys.stderr if not args.out else sys.stdout).write(report)
    return EXIT_OK


# -- invariants --------------------------------------------------------------------


def _field_arg(text):
    try:
        return idealfile.parse_field(text)
    except PreconditionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def compute_invariants(ideal: Ideal, module="ideal", cap=None, max_pairs=DEFAULT_MAX_PAIRS, degree=True):
    res = free_resolution(ideal, module, degree_cap=cap, max_pairs=max_pairs)
    bt = betti_table(res)
    info = {"betti": bt, "truncated": cap is not None}
    if cap is None:
        info["reg"] = regularity(bt)
        info["pd"] = projective_dimension(bt)
    else:
        info["reg"] = regularity_lower_bound(bt)
        info["pd"] = projective_dimension_lower_bound(bt)
    if degree:
        hs = hilbert_series(ideal, max_pairs=max_pairs)
        info["hilbert"] = hs
        info["dim"], info["degree"] = dimension_and_degree(hs)
    return info


def _verify_cert(cert: dict, ideal: Ideal, max_pairs) -> list[str]:
    """Recompute the output claims of a certificate file."""
    lines = []
    need_deg = "output.claim.degree.claimed" in cert
    info = compute_invariants(ideal, "ideal", None, max_pairs, degree=need_deg)
    observed = {"reg_lower": info["reg"], "reg": info["reg"], "pd_lower": info["pd"]}
    if need_deg:
        observed["degree"] = info["degree"]
    for name, obs in observed.items():
        claimed = cert.get(f"output.claim.{name}.claimed", "")
        rel = cert.get(f"output.claim.{name}.relation")
        if not claimed or rel is None:
            continue
        c = constructions.Claim(name, rel, int(claimed)).check(obs)
        lines.append(f"claim {name} {rel} {claimed}: {c.status} (observed {obs})")
    return lines


def cmd_invariants(args) -> int:
    src = _load(args.input)
    ideal = src.ideal if args.field is None else src.ideal.with_field(args.field)
    want = {k for k in ("betti", "reg", "pd", "degree", "hilbert") if getattr(args, k)}
    if not want and not args.cert:
        want = {"betti", "reg", "pd", "degree"}
    out = []
    if want & {"betti", "reg", "pd"}:
        info = compute_invariants(ideal, args.module, args.cap, args.max_pairs, degree=False)
        bt = info["betti"]
        tag = "S/I" if args.module == "quotient" else "I"
        trunc = f" (truncated at {args.cap})" if info["truncated"] else ""
        if "betti" in want:
            out.append(f"betti {tag}{trunc}")
            out.append(bt.format_grid())
        if "reg" in want:
            rel = ">=" if info["truncated"] else "="
            out.append(f"reg({tag}) {rel} {info['reg']}{trunc}")
        if "pd" in want:
            rel = ">=" if info["truncated"] else "="
            out.append(f"pd({tag}) {rel} {info['pd']}{trunc}")
    if want & {"degree", "hilbert"}:
        hs = hilbert_series(ideal, max_pairs=args.max_pairs)
        if "hilbert" in want:
            out.append(f"hilbert {hs}")
        if "degree" in want:
            dim, deg = dimension_and_degree(hs)
            out.append(f"dim(S/I) = {dim}")
            out.append(f"degree = {deg}")
    if args.cert:
        out += _verify_cert(read_certificate(args.cert), ideal, args.max_pairs)
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


# -- bounds ------------------------------------------------------------------------


def cmd_bounds(args) -> int:
    if args.action == "lower":
        rs = range(args.r, (args.r_max if args.r_max is not None else args.r) + 1)
        rows = bounds.bound_table(args.kind, rs)
        sys.stdout.write(bounds.format_table(rows, args.format))
        return EXIT_OK
    name = args.formula
    fn = bounds.TRANSLATIONS[name]
    needs_md = name in ("phi-from-psi", "phipd-from-psipd", "phi-from-phipd")
    if needs_md and (args.m is None or args.d is None):
        raise UsageError(f"{name} needs --m and --d")
    if name == "phipd-from-phi" and args.m is None:
        raise UsageError("phipd-from-phi needs --m")
    if name in ("psi-from-phi", "psipd-from-phipd") and args.e is None:
        raise UsageError(f"{name} needs --e")
    row = {"formula": name}
    for k in ("m", "d", "e"):
        if getattr(args, k) is not None:
            row[k] = getattr(args, k)
    if name in ("phi-from-psi", "phipd-from-psipd"):
        arg, bound = fn(args.m, args.d, args.value if args.value is not None else 0)
        row["argument"] = arg.value
        if args.value is not None:
            row["bound"] = bound.value
    else:
        if args.value is None:
            raise UsageError(f"{name} needs --value (the supplied function value)")
        if name == "phi-from-phipd":
            res = fn(args.m, args.d, args.value)
        elif name == "phipd-from-phi":
            res = fn(args.m, args.value)
        else:
            res = fn(args.e, args.value)
        row["value"] = args.value
        row["bound"] = res.value
        row["bound_digits"] = res.digits
    sys.stdout.write(bounds.format_table([row], args.format))
    return EXIT_OK


# -- export ------------------------------------------------------------------------


def cmd_export(args) -> int:
    src = _load(args.input)
    inter = _intermediate_from_meta(src)
    text = export.export_script(src.ideal, args.dialect, intermediate=inter, meta=src.meta)
    _emit(text, args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def _budget(p):
    p.add_argument("--cap", type=int, default=None, help="degree cap (results become lower bounds)")
    p.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="extremereg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="run a construction")
    csub = c.add_subparsers(dest="kind", required=True)
    for name in ("amplify", "rees-like"):
        p = csub.add_parser(name)
        p.add_argument("--in", dest="input", required=True)
        if name == "amplify":
            p.add_argument("--s", type=int, required=True)
            p.add_argument("--t", type=int, required=True)
        p.add_argument("--out")
        p.add_argument("--cert")
        p.add_argument("--no-verify", action="store_true")
        _budget(p)
    p = csub.add_parser("recipe")
    p.add_argument("recipe", choices=["three-gen", "prime", "pd"])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--koh")
    p.add_argument("--base")
    p.add_argument("--stand-in", action="store_true", help="skip seed shape validation")
    p.add_argument("--out")
    p.add_argument("--cert")
    p.add_argument("--no-verify", action="store_true")
    _budget(p)
    c.set_defaults(func=cmd_construct)

    p = sub.add_parser("invariants", help="Betti table, reg, pd, degree")
    p.add_argument("--in", dest="input", required=True)
    for flag in ("betti", "reg", "pd", "degree", "hilbert"):
        p.add_argument(f"--{flag}", action="store_true")
    p.add_argument("--module", choices=["ideal", "quotient"], default="ideal")
    p.add_argument("--field", type=_field_arg, default=None, help="q or p:N")
    p.add_argument("--cert", help="re-verify a certificate written by construct")
    _budget(p)
    p.set_defaults(func=cmd_invariants)

    b = sub.add_parser("bounds", help="exact bound arithmetic")
    bsub = b.add_subparsers(dest="action", required=True)
    p = bsub.add_parser("lower")
    p.add_argument("--kind", choices=list(bounds.KINDS), required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--r-max", type=int)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p = bsub.add_parser("translate")
    p.add_argument("formula", choices=list(bounds.TRANSLATIONS))
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--value", type=int, help="value of the function on the right-hand side")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    b.set_defaults(func=cmd_bounds)

    p = sub.add_parser("export", help="write a script for an external CAS")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--dialect", required=True, help=", ".join(export.DIALECTS))
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
