"""Command-line front end.

Every command prints ``key: value`` lines. Exit status is 0 for a passing
verdict, 1 for a verified failure and 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import sys

from sharply import analysis, freeprod, nearfield, partial, perm, projective
from sharply.formats import (
    FormatError,
    parse_table_text,
    read_group_text,
    write_group,
    write_table,
)
from sharply.gf import FieldError

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

INPUT_ERRORS = (
    FormatError,
    perm.GroupError,
    nearfield.NearFieldError,
    FieldError,
    projective.ProjectiveError,
    freeprod.WordError,
    partial.StageError,
    OSError,
)


class UsageError(Exception):
    pass


def _kv(out, key, value):
    if isinstance(value, bool):
        value = str(value).lower()
    out.append(f"{key}: {value}")


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load_group(path):
    return read_group_text(_read(path), label=path)


def _near_field(q, dickson):
    if dickson:
        return nearfield.build_dickson_nearfield(q)
    return nearfield.build_field_nearfield(q)


def _load_structure(args):
    if args.table:
        return parse_table_text(_read(args.table))
    if args.q is not None:
        return _near_field(args.q, args.dickson)
    raise UsageError("give --table FILE or --q N")


def _emit_group(G, args, out):
    if args.output:
        _write(args.output, write_group(G))
        _kv(out, "wrote", args.output)
        _kv(out, "label", G.label)
        _kv(out, "degree", G.degree)
        _kv(out, "order", G.order)
    else:
        out.extend(write_group(G).splitlines())


# -- commands

def cmd_build(args, out):
    if args.kind == "agl":
        if args.q is None:
            raise UsageError("build agl needs --q")
        G = nearfield.build_affine_group(_near_field(args.q, args.dickson))
    elif args.kind == "pgl":
        if args.q is None:
            raise UsageError("build pgl needs --q")
        G = projective.build_pgl(args.q)
    else:
        if not args.name:
            raise UsageError("build catalog needs --name")
        G = perm.catalog(args.name)
    _emit_group(G, args, out)
    return EXIT_PASS


def cmd_verify(args, out):
    if args.group:
        if args.sharp is None:
            raise UsageError("verify --group needs --sharp N")
        G = _load_group(args.group)
        n = args.sharp
        if not 1 <= n <= G.degree:
            raise UsageError(f"--sharp must be between 1 and the degree {G.degree}")
        trans = perm.is_n_transitive(G, n)
        sharp = trans and G.order == perm.falling_factorial(G.degree, n)
        _kv(out, "degree", G.degree)
        _kv(out, "order", G.order)
        _kv(out, "n", n)
        _kv(out, f"{n}_transitive", trans)
        _kv(out, f"sharply_{n}_transitive", sharp)
        if sharp:
            _kv(out, "verdict", "pass")
            return EXIT_PASS
        reason = (f"not {n}-transitive" if not trans else
                  f"not sharply {n}-transitive: order {G.order} != "
                  f"{perm.falling_factorial(G.degree, n)}")
        _kv(out, "verdict", "fail")
        _kv(out, "reason", reason)
        return EXIT_FAIL
    if args.table:
        S = parse_table_text(_read(args.table))
        v = (nearfield.verify_near_domain(S) if args.near_domain
             else nearfield.verify_near_field(S))
        _kv(out, "order", S.order)
        _kv(out, "checked", "near-domain" if args.near_domain else "near-field")
        if v:
            _kv(out, "associative_addition", v.associative)
            _kv(out, "verdict", "pass")
            return EXIT_PASS
        _kv(out, "verdict", "fail")
        _kv(out, "axiom", v.axiom)
        _kv(out, "witness", " ".join(map(str, v.witness)))
        if v.message:
            _kv(out, "reason", v.message)
        return EXIT_FAIL
    raise UsageError("verify needs --group FILE or --table FILE")


def cmd_analyze(args, out):
    if not args.group:
        raise UsageError("analyze needs --group FILE")
    G = _load_group(args.group)
    try:
        report = analysis.analyze(G)
    except analysis.AnalysisError as exc:
        _kv(out, "verdict", "fail")
        _kv(out, "reason", str(exc))
        return EXIT_FAIL
    out.extend(report.lines())
    _kv(out, "verdict", "pass")
    return EXIT_PASS


def cmd_nearfield(args, out):
    if args.classify:
        if args.p is None or args.k is None:
            raise UsageError("nearfield --classify needs --p and --k")
        classes = nearfield.classify_regular_linear_groups(args.p, args.k)
        _kv(out, "p", args.p)
        _kv(out, "k", args.k)
        _kv(out, "classes", len(classes))
        status = EXIT_PASS
        for i, H in enumerate(classes, 1):
            S = nearfield.near_field_from_regular_group(H, args.p, args.k)
            ok = bool(nearfield.verify_near_field(S))
            status = status if ok else EXIT_FAIL
            _kv(out, f"class_{i}", f"{H.label} order={H.order} near_field={str(ok).lower()}")
        return status
    if args.q is None:
        raise UsageError("nearfield needs --q N (or --classify --p P --k K)")
    S = _near_field(args.q, args.dickson)
    v = nearfield.verify_near_field(S)
    _kv(out, "label", S.label)
    _kv(out, "order", S.order)
    _kv(out, "near_field", bool(v))
    _kv(out, "multiplication_commutative", S.is_mul_commutative())
    if args.output:
        _write(args.output, write_table(S))
        _kv(out, "wrote", args.output)
    return EXIT_PASS if v else EXIT_FAIL


def cmd_freeprod(args, out):
    if args.action == "neumann-witness":
        found = freeprod.neumann_witness_search(args.radius, args.free, args.comm)
        _kv(out, "radius", args.radius)
        if found is None:
            _kv(out, "witness", "none")
            return EXIT_FAIL
        u, v = found
        prod = freeprod.neumann_product(u, v)
        _kv(out, "u", freeprod.format_word(u))
        _kv(out, "v", freeprod.format_word(v))
        _kv(out, "product", freeprod.format_word(prod))
        _kv(out, "cyclic_length", freeprod.cyclic_length(prod))
        _kv(out, "in_tJ", freeprod.fp_in_tJ(prod))
        return EXIT_PASS
    words = [freeprod.parse_word(w) for w in args.words]
    if args.action == "multiply":
        result = freeprod.IDENTITY
        for w in words:
            result = freeprod.fp_multiply(result, w)
        _kv(out, "product", freeprod.format_word(result))
        _kv(out, "syllables", len(result))
        return EXIT_PASS
    if len(words) != 2:
        raise UsageError("conjugate takes exactly two words")
    same = freeprod.fp_conjugacy_test(*words)
    _kv(out, "u", freeprod.format_word(words[0]))
    _kv(out, "v", freeprod.format_word(words[1]))
    _kv(out, "conjugate", same)
    return EXIT_PASS if same else EXIT_FAIL


def cmd_construct(args, out):
    if args.steps < 0 or args.depth < 1 or args.every < 1:
        raise UsageError("need --steps >= 0, --depth >= 1, --every >= 1")
    S = partial.run(args.steps, seed=args.seed, every=args.every)
    report = partial.check_invariants(S, args.depth)
    _kv(out, "steps", args.steps)
    _kv(out, "seed", args.seed)
    _kv(out, "joined_pairs", len(S.joined))
    _kv(out, "commuting_generators", sum(g.kind == "c" for g in S.gens))
    _kv(out, "free_generators", sum(g.kind == "n" for g in S.gens))
    out.extend(report.lines())
    if args.snapshot:
        _write(args.snapshot, partial.write_snapshot(S))
        _kv(out, "snapshot", args.snapshot)
    return EXIT_PASS if report.ok else EXIT_FAIL


def cmd_pgl(args, out):
    if args.q is None:
        raise UsageError("pgl needs --q")
    G = projective.build_pgl(args.q)
    affine = projective.stabilizer_is_affine(args.q)
    _kv(out, "q", args.q)
    _kv(out, "degree", G.degree)
    _kv(out, "order", G.order)
    _kv(out, "sharply_3_transitive", True)
    _kv(out, "stabilizer_is_affine", affine)
    if args.emit_group:
        _write(args.emit_group, write_group(G))
        _kv(out, "wrote", args.emit_group)
    return EXIT_PASS if affine else EXIT_FAIL


def cmd_kerby(args, out):
    D = _load_structure(args)
    v = nearfield.verify_near_domain(D)
    if not v:
        raise UsageError(f"not a near-domain: {v.axiom} fails at {v.witness}")
    _kv(out, "order", D.order)
    _kv(out, "convention", args.convention)
    if args.sigma == "inversion":
        sigma = projective.inversion_sigma(D)
        res = projective.kerby_sigma_check(D, sigma, args.convention)
        _kv(out, "sigma", " ".join(map(str, sigma)))
        _kv(out, "holds", res.ok)
        _kv(out, "sides_differ", res.variants_differ)
        if not res.ok:
            _kv(out, "reason", res.reason)
            _kv(out, "witness", " ".join(map(str, res.witness)))
        return EXIT_PASS if res.ok else EXIT_FAIL
    found = projective.find_kerby_sigma(D, args.convention)
    _kv(out, "solutions", len(found))
    for i, sigma in enumerate(found, 1):
        _kv(out, f"sigma_{i}", " ".join(map(str, sigma)))
    return EXIT_PASS if found else EXIT_FAIL


def cmd_extract(args, out):
    if not args.group:
        raise UsageError("extract needs --group FILE")
    G = _load_group(args.group)
    D = nearfield.extract_near_domain(G, args.zero, args.one)
    v = nearfield.verify_near_field(D)
    _kv(out, "order", D.order)
    _kv(out, "near_field", bool(v))
    _kv(out, "addition_commutative", D.is_add_commutative())
    _kv(out, "multiplication_commutative", D.is_mul_commutative())
    if args.output:
        _write(args.output, write_table(D))
        _kv(out, "wrote", args.output)
    else:
        out.extend(write_table(D).splitlines())
    return EXIT_PASS


def build_parser():
    p = argparse.ArgumentParser(
        prog="sharply",
        description="Sharply transitive permutation groups, near-fields and "
                    "free-product constructions. Set SHARP_MAX_ORDER to change "
                    "the closure cap (default 100000).")
    sub = p.add_subparsers(dest="verb", required=True, metavar="COMMAND")

    b = sub.add_parser("build", help="write a group file")
    b.add_argument("kind", choices=["agl", "pgl", "catalog"])
    b.add_argument("--q", type=int, help="field order")
    b.add_argument("--dickson", action="store_true", help="use the Dickson near-field of order q")
    b.add_argument("--name", help="catalog name: S(n), A(n), C(n), D(2n), M11")
    b.add_argument("-o", "--output", metavar="FILE", help="group file to write")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check sharp transitivity or near-field axioms")
    v.add_argument("--group", metavar="FILE")
    v.add_argument("--sharp", type=int, metavar="N")
    v.add_argument("--table", metavar="FILE")
    v.add_argument("--near-domain", action="store_true",
                   help="check the weaker near-domain axioms")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="involution report of a sharply 2-transitive group")
    a.add_argument("--group", metavar="FILE", required=True)
    a.set_defaults(func=cmd_analyze)

    nf = sub.add_parser("nearfield", help="build, verify or classify near-fields")
    nf.add_argument("--q", type=int)
    nf.add_argument("--dickson", action="store_true")
    nf.add_argument("--classify", action="store_true",
                    help="classify fixed-point-free linear groups of GL(k,p)")
    nf.add_argument("--p", type=int)
    nf.add_argument("--k", type=int)
    nf.add_argument("-o", "--output", metavar="FILE", help="table file to write")
    nf.set_defaults(func=cmd_nearfield)

    fp = sub.add_parser("freeprod", help="words in (C2 x F(C)) * F(N)")
    fp.add_argument("action", choices=["neumann-witness", "multiply", "conjugate"])
    fp.add_argument("words", nargs="*", help="quoted words such as 't n1 c1^-1'")
    fp.add_argument("--radius", type=int, default=1)
    fp.add_argument("--free", type=int, default=1, help="number of free generators n_k")
    fp.add_argument("--comm", type=int, default=1, help="number of commuting generators c_k")
    fp.set_defaults(func=cmd_freeprod)

    c = sub.add_parser("construct", help="run the partial-action construction")
    c.add_argument("--steps", type=int, required=True)
    c.add_argument("--depth", type=int, default=3)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--every", type=int, default=1, help="totalize after this many new generators")
    c.add_argument("--snapshot", metavar="FILE")
    c.set_defaults(func=cmd_construct)

    g = sub.add_parser("pgl", help="PGL(2,q) on the projective line")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--emit-group", metavar="FILE")
    g.set_defaults(func=cmd_pgl)

    k = sub.add_parser("kerby", help="test the sharply 3-transitive functional equation")
    k.add_argument("--table", metavar="FILE")
    k.add_argument("--q", type=int)
    k.add_argument("--dickson", action="store_true")
    k.add_argument("--sigma", choices=["inversion", "search"], default="inversion")
    k.add_argument("--convention", choices=["projective", "zero"], default="projective",
                   help="value of sigma at 0: infinity on the projective line, or 0")
    k.set_defaults(func=cmd_kerby)

    e = sub.add_parser("extract", help="near-domain of a sharply 2-transitive group")
    e.add_argument("--group", metavar="FILE", required=True)
    e.add_argument("--zero", type=int, default=0)
    e.add_argument("--one", type=int, default=1)
    e.add_argument("-o", "--output", metavar="FILE")
    e.set_defaults(func=cmd_extract)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = []
    try:
        status = args.func(args, out)
    except UsageError as exc:
        parser.error(str(exc))
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write("\n".join(out) + ("\n" if out else ""))
    return status


if __name__ == "__main__":
    sys.exit(main())
