"""Command line surface for the verification workbench.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or input
error.  All sampling is seeded (default seed 0) so runs reproduce exactly;
report JSON is byte-identical across runs with equal seeds.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exact import GradedDims


def _dims_table(dims):
    inner = ", ".join("%d: %d" % (d, dims[d]) for d in sorted(dims))
    return "{%s}" % inner


def _emit(reports):
    bad = False
    for rep in reports:
        print(rep.line())
        if not rep.passed:
            bad = True
    return 1 if bad else 0


def _cmd_dims(args):
    from .gravity import gravity_basis, moduli_dimension_oracle
    from .poisson import poincare_polynomial

    b = args.bracket_degree
    if args.table == "e2":
        dims = poincare_polynomial(args.arity, b)
    elif args.table == "grav":
        dims = gravity_basis(args.arity, b).dims()
    else:
        dims = moduli_dimension_oracle(args.arity, b)
    print(_dims_table(dims))
    return 0


def _cmd_verify(args):
    from . import bv, gravity

    if args.law == "jacobi":
        return _emit([gravity.verify_generalized_jacobi(args.k, args.l)])
    if args.law == "bv":
        return _emit(bv.check_bv_relations(args.arity))
    if args.law == "free-module":
        return _emit([gravity.check_free_module(args.arity)])
    if args.law == "closure":
        return _emit([gravity.check_suboperad_closure(args.max_arity)])
    if args.law == "generation":
        return _emit([gravity.check_generation(args.max_arity)])
    if args.law == "lie":
        return _emit([gravity.check_lie_embedding(args.max_arity)])
    return _emit([gravity.grav4_table(args.max_arity)])


def _cmd_cacti_verify(args):
    from . import cacti

    fn = {
        "cocycle": cacti.check_cocycle,
        "coend": cacti.check_coend,
        "equivariance": cacti.check_rotation_equivariance,
        "associativity": cacti.check_associativity_batch,
    }[args.identity]
    return _emit([fn(args.max_arity, args.samples, args.seed, args.max_denominator)])


def _cmd_cacti_compose(args):
    from .cacti import cactus_from_dict, cactus_to_dict, compose_i

    with open(args.file1) as fh:
        c = cactus_from_dict(json.load(fh))
    with open(args.file2) as fh:
        d = cactus_from_dict(json.load(fh))
    if not 1 <= args.at <= c.arity:
        print("slot %d out of range 1..%d" % (args.at, c.arity), file=sys.stderr)
        return 2
    out = compose_i(c, d, args.at)
    print(json.dumps(cactus_to_dict(out), sort_keys=True))
    return 0


def _load_group(spec):
    from .groups import bundled_groups, group_from_dict

    lib = bundled_groups()
    if spec in lib:
        return lib[spec]
    with open(spec) as fh:
        return group_from_dict(json.load(fh), name=spec)


def _cmd_group(args):
    from . import groups

    try:
        G = _load_group(args.table)
    except (OSError, ValueError, KeyError) as err:
        print("cannot load group table %r: %s" % (args.table, err), file=sys.stderr)
        return 2
    if args.action == "fixed-points":
        for k in range(1, args.arity + 1):
            fixed = groups.fixed_point_operad(G, k)
            print("arity %d: %d fixed tuples (center^%d)" % (k, len(fixed), k))
        return 0
    if args.action == "tomdieck":
        for rec in groups.tom_dieck_summands(G):
            mark = "*" if rec.is_representative else " "
            print(
                "%s H=%s |C(H)|=%d |W(H)|=%d"
                % (mark, list(rec.elements), len(rec.centralizer), rec.weyl_order)
            )
        return 0
    reports = [
        groups.check_fixed_points(G, args.arity),
        groups.check_conjugation_equivariance(G),
    ]
    reports.extend(groups.check_group_harness(G))
    return _emit(reports)


def _cmd_string(args):
    from . import stringbr

    try:
        with open(args.data) as fh:
            raw = json.load(fh)
    except (OSError, ValueError) as err:
        print("cannot read data file %r: %s" % (args.data, err), file=sys.stderr)
        return 2
    if args.action == "validate":
        val = stringbr.validate_bv(raw)
        for line in val.lines():
            print(line)
        return 0 if val.accepted else 1
    try:
        pair = stringbr.pair_from_dict(raw)
    except ValueError as err:
        print("pair data rejected: %s" % err, file=sys.stderr)
        return 1
    if args.action == "mbar":
        index = {nm: n for n, nm in enumerate(pair.b_names)}
        try:
            picks = [index[a] for a in args.args]
        except KeyError as err:
            print("unknown basis name %s" % err, file=sys.stderr)
            return 2
        if len(picks) != args.k:
            print("need exactly k arguments", file=sys.stderr)
            return 2
        vec = stringbr.m_bar(pair, args.k, picks)
        if not vec:
            print("0")
        else:
            from .exact import format_rational

            print(
                " + ".join(
                    "%s*%s" % (format_rational(c), pair.b_names[i])
                    for i, c in sorted(vec.items())
                )
            )
        return 0
    if args.action == "gravity":
        return _emit([stringbr.verify_gravity_algebra(pair, args.k, args.l)])
    return _emit([stringbr.check_transfer_lie(pair)])


def _cmd_report(args):
    from .reports import default_suite

    doc = default_suite(seed=args.seed, fast=(args.suite == "fast"))
    text = doc.to_json() if args.format == "json" else doc.to_markdown()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        print("wrote %s (%d checks, verdict %s)" % (
            args.out, len(doc.entries), "pass" if doc.passed else "fail"))
    return 0 if doc.passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="operadkit",
        description="exact verification workbench for chord-diagram operads",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension tables")
    p.add_argument("table", choices=["e2", "grav", "moduli"])
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--bracket-degree", type=int, default=1)
    p.set_defaults(fn=_cmd_dims)

    p = sub.add_parser("verify", help="algebraic identity batteries")
    p.add_argument(
        "law",
        choices=["jacobi", "bv", "free-module", "closure", "generation", "lie", "grav4"],
    )
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--arity", type=int, default=4)
    p.add_argument("--max-arity", type=int, default=5)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("cacti", help="spineless cacti checks")
    csub = p.add_subparsers(dest="cacti_command", required=True)
    pv = csub.add_parser("verify", help="seeded identity batches")
    pv.add_argument(
        "identity", choices=["cocycle", "coend", "equivariance", "associativity"]
    )
    pv.add_argument("--samples", type=int, default=1000)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--max-arity", type=int, default=5)
    pv.add_argument("--max-denominator", type=int, default=64)
    pv.set_defaults(fn=_cmd_cacti_verify)
    pc = csub.add_parser("compose", help="splice two cactus files")
    pc.add_argument("file1")
    pc.add_argument("file2")
    pc.add_argument("--at", type=int, required=True)
    pc.set_defaults(fn=_cmd_cacti_compose)

    p = sub.add_parser("group", help="finite group operads")
    p.add_argument("action", choices=["fixed-points", "tomdieck", "verify"])
    p.add_argument(
        "--table",
        required=True,
        help="JSON table file, or the name of a bundled group (e.g. S3)",
    )
    p.add_argument("--arity", type=int, default=3)
    p.set_defaults(fn=_cmd_group)

    p = sub.add_parser("string", help="data-driven string brackets")
    p.add_argument("action", choices=["validate", "mbar", "gravity", "transfer-lie"])
    p.add_argument("--data", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--args", nargs="*", default=[])
    p.set_defaults(fn=_cmd_string)

    p = sub.add_parser("report", help="run a suite and render a report")
    p.add_argument("--suite", choices=["default", "fast"], default="default")
    p.add_argument("--format", choices=["json", "md"], default="json")
    p.add_argument("--out", default="-")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_report)
    return parser


def run_cli(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.fn(args)
    except (ValueError, OSError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
