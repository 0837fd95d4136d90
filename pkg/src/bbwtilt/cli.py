"""Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 for usage,
parsing or inconclusive-analysis errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .affine import Inconclusive
from .cohomology import cohomology_q6, cohomology_total, prove_vanishing, all_k_family
from .registry import ClaimRunner, RegistryError, load_registry
from .tensor import ExprError, StabilityFailure, parse_expr
from .weights import LatticeError, bbw_resolve, is_levi_dominant, parse_weight


def _common_options(defaults: bool) -> argparse.ArgumentParser:
    # fresh parser each time: parents share action objects, and a shared
    # default would let the subcommand clobber a value given before it
    sup = argparse.SUPPRESS
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"),
                   default="text" if defaults else sup)
    p.add_argument("--kmax", type=int, default=10 if defaults else sup,
                   help="truncation bound for cross-checks")
    p.add_argument("--registry", default=None if defaults else sup,
                   help="override the claim registry path")
    return p


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bbwtilt",
        parents=[_common_options(defaults=True)],
        description="exact cohomology on the six-quadric and tilting verification "
        "for the spinor-bundle flop",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, **kwargs):
        return sub.add_parser(name, parents=[_common_options(defaults=False)], **kwargs)

    p = cmd("bbw", help="resolve one weight")
    p.add_argument("weight", help="comma-separated coordinates, e.g. -- -1,1,0,0")

    p = cmd("decompose", help="decompose a bundle expression")
    p.add_argument("expr")

    p = cmd("cohomology", help="cohomology of a bundle expression")
    p.add_argument("expr")
    p.add_argument("--space", choices=("q6", "xplus", "xminus"), default="q6")
    p.add_argument("--all-k", action="store_true", dest="all_k",
                   help="analyse every grade at once instead of truncating")
    p.add_argument("--cutoff", type=int, default=None,
                   help="with --all-k: certify vanishing above this degree")

    p = cmd("ext", help="Ext groups between two pullback bundles")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--space", choices=("xplus", "xminus"), default="xplus")
    p.add_argument("--all-k", action="store_true", dest="all_k")
    p.add_argument("--cutoff", type=int, default=None)

    p = cmd("verify", help="replay registry claims")
    p.add_argument("claims", nargs="*", help="claim ids (see --list)")
    p.add_argument("--all", action="store_true", help="run every registered claim")
    p.add_argument("--list", action="store_true", help="list claim ids and exit")

    p = cmd("end-compare", help="graded End-algebra comparison across the flop")
    p.add_argument("--degree", type=int, default=6)
    return ap


def _print_table(table, fmt):
    if fmt == "json":
        print(table.to_json())
        return
    nz = table.nonzero()
    if not nz:
        print("all cohomology vanishes (grades up to the truncation bound)")
        return
    for (k, i), d in sorted(nz.items()):
        print("grade %d: H^%d has dim %d" % (k, i, d))


def _print_certificate(cert, fmt):
    if fmt == "json":
        print(cert.to_json())
        return
    print("certificate %s for %s on %s (cutoff %d)"
          % (cert.verdict, cert.family, cert.domain, cert.cutoff))
    for p in cert.exceptions:
        print("  exception %s" % p.describe())
    for p in cert.problems:
        print("  problem: %s" % p)


def _report_lines(rep, fmt):
    if fmt == "json":
        print(rep.to_json())
        return
    print("%s %s (%.2fs)" % (rep.verdict, rep.claim, rep.wall_time))
    for s in rep.steps:
        print("  [%s] %s: %s" % (s.verdict, s.name, s.detail))


def _all_k(family, cutoff, fmt) -> int:
    """All-grades analysis: descriptive without a cutoff, a verdict with one."""
    from .cohomology import family_profile

    if cutoff is None:
        prof = family_profile(family)
        if fmt == "json":
            out = {
                "family": family.display(),
                "survivors": [p.to_jsonable() for p in prof.points],
                "kstar": prof.kstar,
            }
            print(json.dumps(out, indent=2))
        else:
            print("family %s over all grades:" % family.display())
            if not prof.points and not prof.regular_regions:
                print("  no cohomology in positive degrees")
            for p in prof.points:
                print("  %s" % p.describe())
            for desc, degree, mult in prof.regular_regions:
                print("  surviving family in degree %d (mult %d): %s" % (degree, mult, desc))
        return 0
    cert = prove_vanishing(family, cutoff=cutoff)
    _print_certificate(cert, fmt)
    if cert.verdict == "INCONCLUSIVE":
        return 2
    return 0 if cert.passed else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (LatticeError, ExprError, RegistryError, Inconclusive, StabilityFailure) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    fmt = args.format
    if args.command == "bbw":
        w = parse_weight(args.weight)
        if not is_levi_dominant(w):
            print("error: weight %s does not index a bundle (not Levi-dominant)" % w,
                  file=sys.stderr)
            return 2
        r = bbw_resolve(w)
        if fmt == "json":
            out = {"weight": w.serialize(), "singular": r.singular}
            if not r.singular:
                out.update(degree=r.degree, dominant=r.dominant.serialize(), dim=r.dim)
            print(json.dumps(out, indent=2))
        else:
            print("%s: %s" % (w, r))
        return 0

    if args.command == "decompose":
        e = parse_expr(args.expr)
        from .tensor import decompose
        from .weights import levi_rank

        pairs = decompose(e)
        if fmt == "json":
            print(json.dumps(
                [{"weight": w.serialize(), "mult": m, "rank": levi_rank(w)}
                 for w, m in pairs], indent=2))
        else:
            for w, m in pairs:
                print("%s  x%d  (rank %d)" % (w, m, levi_rank(w)))
        return 0

    if args.command == "cohomology":
        e = parse_expr(args.expr)
        if args.all_k or e.sym is not None:
            fam = e if e.sym is not None else all_k_family(e)
            return _all_k(fam, args.cutoff, fmt)
        if args.space == "q6":
            _print_table(cohomology_q6(e), fmt)
        else:
            _print_table(cohomology_total(e, args.space, kmax=args.kmax), fmt)
        return 0

    if args.command == "ext":
        a, b = parse_expr(args.source), parse_expr(args.target)
        core = a.dual() * b
        if args.all_k:
            return _all_k(all_k_family(core), args.cutoff, fmt)
        _print_table(cohomology_total(core, args.space, kmax=args.kmax), fmt)
        return 0

    if args.command == "verify":
        registry = load_registry(args.registry)
        if args.list:
            for cid in registry.claim_ids():
                print(cid)
            return 0
        ids = registry.claim_ids() if args.all else args.claims
        if not ids:
            print("error: no claims requested (use ids, --all or --list)", file=sys.stderr)
            return 2
        unknown = [c for c in ids if c not in registry.claims]
        if unknown:
            print("error: unknown claim ids: %s" % ", ".join(unknown), file=sys.stderr)
            return 2
        runner = ClaimRunner(registry, kmax=args.kmax)
        reports = [runner.run(cid) for cid in ids]
        if fmt == "json":
            print(json.dumps([r.to_jsonable() for r in reports], indent=2))
        else:
            for r in reports:
                _report_lines(r, fmt)
            n_pass = sum(r.passed for r in reports)
            print("%d/%d claims PASS" % (n_pass, len(reports)))
        return 0 if all(r.passed for r in reports) else 1

    if args.command == "end-compare":
        registry = load_registry(args.registry)
        runner = ClaimRunner(registry, kmax=args.kmax)
        claim = registry.claims.get("endcompare")
        if claim is None:
            raise RegistryError("the registry declares no endcompare claim")
        claim.fields["degree"] = str(args.degree)
        rep = runner.run("endcompare")
        _report_lines(rep, fmt)
        return 0 if rep.passed else 1

    raise AssertionError("unhandled command")


if __name__ == "__main__":
    raise SystemExit(main())
