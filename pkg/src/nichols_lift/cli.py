"""Command-line front end.

Exit codes: 0 nonzero (and flat, where flatness applies), 1 input or
computation error, 2 usage error or unknown catalog entry, 3 zero algebra,
4 inconclusive or not flat.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import deform, groebner, isom, presdsl
from .braiding import format_diagram
from .errors import DSLError, InadmissibleParameterWarning, NicholsError, UnknownCatalogEntry
from .scalars import format_scalar

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_ZERO, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# -- input handling --------------------------------------------------------------


def load_input(arg: str) -> deform.LiftingDatum:
    """Catalog name, or a file holding a presentation or a lifting datum."""
    path = Path(arg)
    if path.is_file():
        try:
            return deform.parse_datum(path.read_text(encoding="utf-8"))
        except DSLError as e:
            raise type(e)(f"{path}: {e.message}", e.line, e.col) from None
    return deform.LiftingDatum(presdsl.catalog(arg), {})


def parse_lams(items: list[str] | None, p: presdsl.Presentation, base: dict | None = None) -> deform.ParamAssignment:
    values = dict(base or {})
    for item in items or []:
        name, eq, text = item.partition("=")
        name = name.strip()
        if not eq or not name:
            raise UsageError(f"--lam expects NAME=SCALAR, got {item!r}")
        v = presdsl.parse_scalar(text, p.field, p.matrix)
        if name == "all":
            for n in p.deformable_names:
                values[n] = v
        else:
            values[name] = v
    return deform.assignment(p, values)


def parse_order(text: str | None, theta: int) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        order = tuple(int(x) - 1 for x in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"--order expects generator numbers, got {text!r}") from None
    if sorted(order) != list(range(theta)):
        raise UsageError(f"--order must list 1..{theta} exactly once")
    return order


def parse_realization(text: str | None) -> deform.Realization | None:
    if text is None:
        return None
    try:
        return deform.Realization(tuple(int(x) for x in text.replace(",", " ").split()))
    except ValueError as e:
        raise UsageError(f"--realization: {e}") from None


def emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, ensure_ascii=False))
    else:
        print(text)


# -- commands -------------------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in presdsl.catalog_names():
            p = presdsl.catalog(name)
            print(f"{name:<20} theta={p.theta} L={p.L:<3} {p.source}")
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog show needs an entry name")
    sys.stdout.write(presdsl.catalog_source(args.name))
    return EXIT_OK


def _verify_text(rep: deform.VerifyReport, timing: bool) -> str:
    d = rep.to_dict(timing)
    lam = ", ".join(f"{k}={v}" for k, v in d["lambda"].items()) or "0"
    lines = [
        f"entry          {d['entry']}",
        f"lambda         {lam}",
        f"status         {d['status']}",
        f"dim            {d['dim'] if d['dim'] is not None else '-'}",
        f"dim undeformed {d['dim_undeformed'] if d['dim_undeformed'] is not None else '-'}",
        f"flat           {d['flat'] if d['flat'] is not None else '-'}",
        f"hilbert        {' '.join(map(str, d['hilbert']))}",
        f"rules          {d['gb_rules']}  (degree bound {d['degree_bound']})",
    ]
    if d["trace_digest"]:
        lines.append(f"trace digest   {d['trace_digest']}")
    if "confluence_checks" in d:
        lines.append(f"confluence     {d['confluence_failures']} failures in {d['confluence_checks']} random checks")
    if timing:
        lines.append(f"elapsed        {d['elapsed_ms']} ms")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    d = load_input(args.input)
    p = d.presentation
    lam = parse_lams(args.lam, p, dict(d.lam))
    order = parse_order(args.order, p.theta)
    bad = deform.inadmissible_support(p, lam)
    if bad and not args.json:
        print(f"warning: inadmissible parameters {', '.join(bad)}", file=sys.stderr)
    rep = deform.verify(p, lam, args.degree_bound, order)
    if args.check:
        rng = random.Random(args.seed)
        failures = groebner.confluence_check(rep.system, rng, args.check) if rep.nonzero else []
        rep.extra.update(confluence_checks=args.check, confluence_failures=len(failures), seed=args.seed)
    emit(rep.to_dict(args.timing), args.json, _verify_text(rep, args.timing))
    return rep.exit_code()


def _catalog_job(job):
    name, D = job
    p = presdsl.catalog(name)
    rep = deform.verify(p, {}, D)
    return name, rep.to_dict(False), rep.exit_code()


def cmd_verify_catalog(args) -> int:
    jobs = [(n, args.degree_bound) for n in presdsl.catalog_names()]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_catalog_job, jobs))
    else:
        results = [_catalog_job(j) for j in jobs]
    if args.json:
        print(json.dumps([r for _, r, _ in results], indent=2, ensure_ascii=False))
    else:
        for name, r, _ in results:
            dim = r["dim"] if r["dim"] is not None else "-"
            print(f"{name:<20} {r['status']:<12} dim={dim:<6} rules={r['gb_rules']}")
    return max((c for _, _, c in results), default=EXIT_OK)


def cmd_admissible(args) -> int:
    d = load_input(args.input)
    p = d.presentation
    real = parse_realization(args.realization) or d.realization
    adm = deform.admissible_set(p, real)
    if args.json:
        obj = {
            "entry": p.name,
            "admissible": sorted(adm.names),
            "verdicts": {n: {"admissible": ok, "reason": why} for n, (ok, why) in adm.verdicts.items()},
            "exclusions": [list(e) for e in adm.exclusions],
            "flags": {n: t for n, t in adm.flags},
        }
        print(json.dumps(obj, indent=2, ensure_ascii=False))
        return EXIT_OK
    for r in p.relations:
        if r.name in adm.verdicts:
            ok, why = adm.verdicts[r.name]
            print(f"{r.name:<10} deg={p.degree(r)}  {'admissible' if ok else 'inadmissible'}  ({why})")
        else:
            print(f"{r.name:<10} deg={p.degree(r)}  not deformable")
    for a, b in adm.exclusions:
        print(f"exclusion  lambda({a}) * lambda({b}) = 0")
    for n, t in adm.flags:
        print(f"flag       {n}: {t}")
    return EXIT_OK


def cmd_isom(args) -> int:
    a, b = load_input(args.a), load_input(args.b)
    w = isom.isom_linking(a, b)
    obj = {"isomorphic": w is not None, "witness": w.to_json() if w is not None else None}
    if args.json:
        print(json.dumps(obj, indent=2, ensure_ascii=False))
    elif w is None:
        print("not isomorphic")
    else:
        print(f"isomorphic: sigma = {w.cycles()}, s = diag({', '.join(format_scalar(x) for x in w.s)})"
              f" over Q(zeta_{w.field.order})")
    return EXIT_OK


def cmd_dim(args) -> int:
    d = load_input(args.input)
    p = d.presentation
    lam = parse_lams(args.lam, p, dict(d.lam))
    rep = deform.verify(p, lam, args.degree_bound, compare=False)
    if rep.status == "finite":
        print(rep.dim)
    elif rep.status == "infinite":
        print(f"infinite (hilbert up to {rep.degree_bound}: {' '.join(map(str, rep.gb.counts))})")
    else:
        print(rep.status)
    return {"zero": EXIT_ZERO, "inconclusive": EXIT_INCONCLUSIVE}.get(rep.status, EXIT_OK)


def cmd_lift(args) -> int:
    d = load_input(args.input)
    p = d.presentation
    real = parse_realization(args.realization) or d.realization
    lam = parse_lams(args.lam, p, dict(d.lam))
    datum = deform.LiftingDatum(p, lam, real)
    if args.show:
        sys.stdout.write(presdsl.format_presentation(deform.lifting_presentation(datum)))
        return EXIT_OK
    rep = deform.verify_lifting(datum, args.degree_bound)
    base = deform.verify(p, lam, args.degree_bound, compare=False)
    expected = base.dim * real.order if base.status == "finite" else None
    rep.flat = None if expected is None or rep.dim is None else rep.dim == expected
    rep.extra.update(group_order=real.order, dim_expected=expected)
    emit(rep.to_dict(args.timing), args.json,
         _verify_text(rep, args.timing) + f"\nexpected       {expected if expected is not None else '-'}"
                                          f" (dim E * |Gamma| = {base.dim} * {real.order})")
    if rep.status == "zero":
        return EXIT_ZERO
    return EXIT_OK if rep.flat else EXIT_INCONCLUSIVE


def cmd_diagram(args) -> int:
    print(format_diagram(load_input(args.input).presentation.matrix))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nichols-lift", description="Deformed Nichols-algebra presentations.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="list or show bundled presentations")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("name", nargs="?")
    c.set_defaults(func=cmd_catalog)

    def common(sp, lam=True):
        sp.add_argument("input", help="catalog entry or presentation/datum file")
        if lam:
            sp.add_argument("--lam", action="append", metavar="NAME=SCALAR",
                            help="deformation parameter; repeatable; all=v sets every deformable relation")
        sp.add_argument("--degree-bound", type=_positive, metavar="D")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    v = sub.add_parser("verify", help="complete the deformed ideal and compare with the undeformed algebra")
    common(v)
    v.add_argument("--order", metavar="I,J,...", help="generators in ascending order, 1-based")
    v.add_argument("--seed", type=int, default=0, help="seed for --check")
    v.add_argument("--check", type=int, default=0, metavar="N", help="run N random confluence checks")
    v.set_defaults(func=cmd_verify)

    vc = sub.add_parser("verify-catalog", help="verify every bundled entry undeformed")
    vc.add_argument("--jobs", type=_positive, default=1)
    vc.add_argument("--degree-bound", type=_positive, metavar="D")
    vc.add_argument("--json", action="store_true")
    vc.set_defaults(func=cmd_verify_catalog)

    a = sub.add_parser("admissible", help="admissibility verdict per deformable relation")
    a.add_argument("input")
    a.add_argument("--realization", metavar="M1,M2,...")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_admissible)

    i = sub.add_parser("isom", help="isomorphism of lifting data with linking parameters")
    i.add_argument("a")
    i.add_argument("b")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_isom)

    d = sub.add_parser("dim", help="dimension (or Hilbert counts) of the presented algebra")
    d.add_argument("input")
    d.add_argument("--lam", action="append", metavar="NAME=SCALAR")
    d.add_argument("--degree-bound", type=_positive, metavar="D")
    d.set_defaults(func=cmd_dim)

    lf = sub.add_parser("lift", help="verify the lifting presentation over a finite group")
    common(lf)
    lf.add_argument("--realization", metavar="M1,M2,...")
    lf.add_argument("--show", action="store_true", help="print the lifting presentation and stop")
    lf.set_defaults(func=cmd_lift)

    g = sub.add_parser("diagram", help="generalized Dynkin diagram")
    g.add_argument("input")
    g.set_defaults(func=cmd_diagram)
    return ap


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", InadmissibleParameterWarning)
            return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownCatalogEntry as e:
        print(f"error: unknown catalog entry {e.args[0] if e.args else ''}", file=sys.stderr)
        return EXIT_USAGE
    except DSLError as e:
        print(f"error: line {e.line}, column {e.col}: {e.message}", file=sys.stderr)
        return EXIT_ERROR
    except NicholsError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
