"""Command-line front end.

Exit codes: 0 ok, 1 bad input, 2 cap exceeded, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import _bits as B
from . import bip as bipmod
from .depcon import CLASS_CAP, congruence_summary, dep_graph, is_bounded_homomorphic_image
from .errors import CapExceeded, ConsistencyError, InputError, RegpermError
from .jirr import enumerate_jirr
from .latbuild import DEFAULT_CAP, build_clop, build_reg, hasse_dot, is_lattice
from .propcheck import (
    SD_CAP,
    check_theorem_regesd,
    check_theorem_sqfree,
    is_pseudocomplemented,
    is_semidistributive,
    random_transitive,
)
from .relcore import TransRel, generate, is_square_free, structural_condition_iv
from .relio import format_json, format_text, load


def _pairs_str(mask, n):
    pairs = B.pairs_of(mask, n)
    if not pairs:
        return "{}"
    return "{" + ", ".join(f"({i + 1},{j + 1})" for i, j in pairs) + "}"


def _load_trans(args) -> TransRel:
    r = load(args.file)
    return TransRel.of(r, close=args.close)


class Output:
    """Collects a report as ordered key/value data and renders it once."""

    def __init__(self, structured: bool):
        self.structured = structured
        self.data: dict = {}
        self.lines: list[str] = []

    def put(self, key, value, text=None):
        self.data[key] = value
        if text is not False:
            self.lines.append(text if text is not None else f"{key}: {_fmt(value)}")

    def line(self, text):
        self.lines.append(text)

    def render(self, stream):
        if self.structured:
            stream.write(json.dumps(self.data, indent=2, ensure_ascii=False) + "\n")
        else:
            stream.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _fmt(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "n/a"
    if isinstance(v, list):
        return ", ".join(str(x) for x in v) if v else "-"
    return str(v)


def _optional(fn, *a):
    try:
        return fn(*a)
    except CapExceeded:
        return None


# --- commands ---------------------------------------------------------------


def cmd_info(args, out):
    e = _load_trans(args)
    reg = build_reg(e, cap=args.cap)
    clop = build_clop(e, reg)
    ji = enumerate_jirr(e)
    out.put("n", e.n)
    out.put("pairs", len(e))
    out.put("square_free", is_square_free(e))
    out.put("reg_size", reg.size)
    out.put("clop_size", clop.size)
    out.put("clop_is_lattice", is_lattice(clop) if clop.size <= 5000 else None)
    out.put("join_irreducibles", len(ji))
    out.put("clepsydras", sum(1 for j in ji if j.clepsydra))
    small = reg.size <= SD_CAP
    out.put("semidistributive", is_semidistributive(reg) if small else None)
    out.put("pseudocomplemented", is_pseudocomplemented(reg) if small else None)
    out.put("bounded_homomorphic_image", _optional(is_bounded_homomorphic_image, reg))
    out.put("structural_iv", structural_condition_iv(e))
    summary = congruence_summary(e, reg=reg, build_factors=reg.size <= 20_000, cap=args.cap)
    if summary.class_cap_exceeded:
        out.put("congruence_count", None, f"congruence_count: not computed (more than {CLASS_CAP} classes)")
    else:
        out.put("congruence_count", summary.congruence_count)
    out.put("factor_sizes", [f.size for f in summary.factors])
    if e.is_transitive() and is_square_free(e) and reg.size != clop.size:
        raise ConsistencyError("square-free relation with Reg ≠ Clop")


def cmd_enumerate(args, out):
    e = _load_trans(args)
    if args.what == "jirr":
        items = enumerate_jirr(e)
        out.put("count", len(items))
        rows = []
        for j in items:
            rows.append({"triple": str(j.triple), "clepsydra": j.clepsydra,
                         "p": [list(p) for p in j.p.pairs()], "p_star": [list(p) for p in j.p_star.pairs()]})
            out.line(f"{j.triple} {'clepsydra' if j.clepsydra else 'bipartite'} "
                     f"p={_pairs_str(j.p.mask, e.n)} p*={_pairs_str(j.p_star.mask, e.n)}")
        out.put("elements", rows, False)
        return
    reg = build_reg(e, cap=args.cap)
    P = reg if args.what == "reg" else build_clop(e, reg)
    out.put("count", P.size)
    out.put("elements", [[list(p) for p in P.element(i).pairs()] for i in range(P.size)], False)
    for i in range(P.size):
        out.line(f"{i}: {_pairs_str(P.masks[i], e.n)}")


def cmd_check(args, out):
    e = _load_trans(args)
    reg = build_reg(e, cap=args.cap)
    if args.theorem == "sqfree":
        rep = check_theorem_sqfree(e, reg)
    else:
        rep = check_theorem_regesd(e, reg)
    d = rep.to_dict()
    out.put("theorem", d["theorem"])
    for k, v in rep.conditions.items():
        out.line(f"  {k}: {_fmt(v)}")
    out.data["conditions"] = dict(rep.conditions)
    out.put("verdict", "pass" if rep.verdict else "FAIL")
    if not rep.verdict:
        out.put("witness", rep.witness)
        return 3
    return 0


def cmd_drel(args, out):
    e = _load_trans(args)
    g = dep_graph(e)
    names = [str(v.triple) for v in g.vertices]
    out.put("join_irreducibles", names, False)
    out.put("edges", [[names[i], names[j]] for i, j in g.edges()], False)
    out.line(f"join_irreducibles: {len(names)}")
    out.line(f"edges: {len(g.edges())}")
    for i, j in g.edges():
        out.line(f"{names[i]} D {names[j]}")
    out.put("acyclic", g.is_acyclic())


def cmd_congruences(args, out):
    e = _load_trans(args)
    s = congruence_summary(e, build_factors=False, cap=args.cap)
    g = s.graph
    out.put("join_irreducibles", len(g.vertices))
    out.put("classes", len(s.class_sizes))
    out.put("class_sizes", s.class_sizes)
    out.put("minimal", [str(g.vertices[i].triple) for i in s.dstar_minimal])
    if s.class_cap_exceeded:
        out.put("congruence_count", None, f"congruence_count: not computed (more than {CLASS_CAP} classes)")
    else:
        out.put("congruence_count", s.congruence_count)


def cmd_subdirect(args, out):
    e = _load_trans(args)
    s = congruence_summary(e, cap=args.cap)
    g = s.graph
    rows = []
    for f in s.factors:
        rows.append({"representative": str(f.triple), "generators": B.popcount(f.generators), "size": f.size})
        out.line(f"{f.triple}: size {f.size}, generated by {B.popcount(f.generators)} join-irreducibles")
    out.put("factors", rows, False)
    out.put("subdirect_injective", s.injective)
    out.data["join_irreducibles"] = len(g.vertices)


def cmd_bip(args, out):
    n = args.n
    L = bipmod.bip(n, cap=args.cap)
    out.put("n", n)
    out.put("size", L.size)
    rc = 0
    if args.wagner:
        w = bipmod.wagner(n)
        out.put("wagner", w)
        out.put("wagner_agrees", w == L.size)
        if w != L.size:
            rc = 3
    if args.con_shape:
        shape = bipmod.con_bip_shape(n)
        out.put("con_shape", shape.to_dict(), False)
        if shape.status == "NOT_APPLICABLE":
            out.line("con_shape: NOT_APPLICABLE (n < 3)")
        else:
            out.line(f"con_shape: {shape.status}, {shape.atoms} atoms under one top class of "
                     f"{shape.top_class_size} bipartite join-irreducibles")
            count = shape.congruence_count if shape.congruence_count is not None else shape.count_symbolic
            out.line(f"congruence_count: {count}")
            if shape.status != "OK":
                rc = 3
    if args.factors:
        rows = bipmod.factor_census(n)
        out.put("factors", [r.to_dict() for r in rows], False)
        total = sum(r.instances for r in rows)
        out.line(f"factors: {total} (one per clepsydra)")
        for r in rows:
            out.line(f"  S({r.n},{r.k}): size {r.size}, instances {r.instances}, "
                     f"self_dual {_fmt(r.self_dual)}, isomorphic to S({r.n},{r.n - 1 - r.k}) {_fmt(r.mirror_isomorphic)}")
        out.data["factor_total"] = total
    return rc


def cmd_gen(args, out):
    spec = args.spec
    if spec.startswith("random:"):
        parts = spec.split(":")
        try:
            n, p = int(parts[1]), float(parts[2])
        except (IndexError, ValueError):
            raise InputError("random spec is random:N:DENSITY") from None
        e = random_transitive(n, p, random.Random(args.seed))
    else:
        e = generate(spec)
    structured = args.output.endswith(".json")
    text = format_json(e) if structured else format_text(e)
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc.strerror}") from None
    out.put("written", args.output)
    out.put("n", e.n)
    out.put("pairs", len(e))


def cmd_export_dot(args, out):
    e = _load_trans(args)
    if args.what == "hasse":
        reg = build_reg(e, cap=args.cap)
        text = hasse_dot(reg, mark_nonclopen=args.mark_nonclopen)
    else:
        g = dep_graph(e)
        lines = ["digraph drel {", "  node [shape=box, fontsize=9];"]
        for i, v in enumerate(g.vertices):
            shape = ", style=rounded" if v.clepsydra else ""
            lines.append(f'  j{i} [label="{v.triple}"{shape}];')
        for i, j in g.edges():
            lines.append(f"  j{i} -> j{j};")
        lines.append("}")
        text = "\n".join(lines) + "\n"
    out.structured = False
    out.lines = [text.rstrip("\n")]


# --- argument parsing ----------------------------------------------------------


def _global_flags(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--close", action="store_true", default=d(False),
                   help="take the transitive closure of the input instead of rejecting it")
    p.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="element budget for lattice construction")
    p.add_argument("--seed", type=int, default=d(0), help="seed for random generators")
    p.add_argument("--format", choices=["text", "structured"], default=d("text"))


def build_parser():
    parser = argparse.ArgumentParser(prog="regperm", description="Extended permutohedra of finite transitive relations.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        p.set_defaults(func=fn)
        return p

    p = add("info", cmd_info, "invariant report for a relation file")
    p.add_argument("file")
    p = add("enumerate", cmd_enumerate, "list elements of Reg, Clop or the join-irreducibles")
    p.add_argument("file")
    p.add_argument("--what", choices=["reg", "clop", "jirr"], required=True)
    p = add("check", cmd_check, "replay an equivalence theorem on a relation")
    p.add_argument("file")
    p.add_argument("--theorem", choices=["sqfree", "regesd"], required=True)
    p = add("drel", cmd_drel, "join-dependency relation")
    p.add_argument("file")
    p = add("congruences", cmd_congruences, "congruence classes and count")
    p.add_argument("file")
    p = add("subdirect", cmd_subdirect, "minimal subdirect decomposition factors")
    p.add_argument("file")
    p = add("bip", cmd_bip, "bipartition lattice Bip(n)")
    p.add_argument("n", type=int)
    p.add_argument("--factors", action="store_true")
    p.add_argument("--con-shape", action="store_true")
    p.add_argument("--wagner", action="store_true")
    p = add("gen", cmd_gen, "write a generated relation to a file")
    p.add_argument("spec")
    p.add_argument("-o", "--output", required=True)
    p = add("export-dot", cmd_export_dot, "DOT graph of the Hasse diagram or of D")
    p.add_argument("file")
    p.add_argument("--what", choices=["hasse", "drel"], required=True)
    p.add_argument("--mark-nonclopen", action="store_true")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    out = Output(args.format == "structured")
    try:
        rc = args.func(args, out) or 0
    except InputError as exc:
        stderr.write(f"error [{exc.code}]: {exc}\n")
        return 1
    except CapExceeded as exc:
        stderr.write(f"error [{exc.code}]: {exc}\n")
        return 2
    except ConsistencyError as exc:
        stderr.write(f"error [{exc.code}]: {exc}\n")
        return 3
    except RegpermError as exc:
        stderr.write(f"error [{exc.code}]: {exc}\n")
        return 1
    out.render(stdout)
    return rc


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
