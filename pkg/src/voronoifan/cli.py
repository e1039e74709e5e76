"""Command line interface: ``voronoifan <command> ...``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog as catalog_io
from . import picard, taibound
from .conefan import PropertyViolation, extend, locate_cone
from .exactcore import (DimensionError, QuadForm, SymLatticePoint,
                        format_rational, pair)
from .perfection import (enumerate_perfect, find_class, is_perfect,
                         perfection_rank, verify_link)
from .shortvec import minimal_vectors
from .toricsing import BudgetExceeded, ToricCone, classify_singularity

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt_matrix(rows) -> list[list[str]]:
    return [[format_rational(v) for v in row] for row in rows]


def _text_matrix(rows) -> str:
    return ";".join(",".join(format_rational(v) for v in row) for row in rows)


def _form(text: str) -> QuadForm:
    try:
        return QuadForm.parse(text)
    except (ValueError, DimensionError, ZeroDivisionError) as exc:
        raise UsageError(f"bad Gram matrix {text!r}: {exc}") from None


def _point(text: str) -> SymLatticePoint:
    try:
        return SymLatticePoint.parse(text)
    except (ValueError, DimensionError, ZeroDivisionError) as exc:
        raise UsageError(f"bad symmetric integer matrix {text!r}: {exc}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _class_record(class_id: str):
    try:
        g = int(class_id.split(".")[0])
        return find_class(g, class_id)
    except (ValueError, KeyError):
        raise UsageError(f"unknown class id {class_id!r}") from None


# each handler returns (exit code, json document, text lines)

def cmd_minvec(a):
    q = _form(a.gram)
    mv = minimal_vectors(q)
    doc = {"minimum": format_rational(mv.minimum), "kissing": mv.kissing,
           "vectors": [list(x) for x in mv.reps]}
    lines = [f"minimum {doc['minimum']}", f"kissing number {mv.kissing}"]
    lines += ["  +-" + str(tuple(x)) for x in mv.reps]
    return EXIT_OK, doc, lines


def cmd_perfect_check(a):
    q = _form(a.gram)
    mv = minimal_vectors(q)
    rank = perfection_rank(q)
    full = q.g * (q.g + 1) // 2
    doc = {"perfect": rank == full, "perfection_rank": rank, "dimension": full,
           "minimum": format_rational(mv.minimum), "kissing": mv.kissing}
    verdict = "perfect" if rank == full else "not perfect"
    return EXIT_OK, doc, [f"{verdict}: perfection rank {rank} of {full}, kissing {mv.kissing}"]


def cmd_perfect_enumerate(a):
    try:
        recs = enumerate_perfect(a.g, jobs=a.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = all(verify_link(recs, r, l) for r in recs for l in r.neighbors)
    if a.out:
        catalog_io.save(catalog_io.CatalogFile(a.g, recs), a.out)
    doc = {"g": a.g, "count": len(recs), "closure_verified": ok, "classes": [
        {"id": r.class_id, "gram": _fmt_matrix(r.form.gram),
         "minimum": format_rational(r.minvecs.minimum), "kissing": r.kissing,
         "facets": len(r.cone.facets), "automorphism_order": r.aut_order} for r in recs]}
    lines = [f"g={a.g}: {len(recs)} perfect form class(es), closure "
             + ("verified" if ok else "FAILED")]
    for c in doc["classes"]:
        lines.append(f"  {c['id']}: kissing {c['kissing']}, {c['facets']} facets, "
                     f"|Aut| {c['automorphism_order']}, gram {_text_matrix(c['gram'])}")
    return (EXIT_OK if ok else EXIT_FALSE), doc, lines


def cmd_perfect_neighbors(a):
    cat = _load_catalog(a.catalog)
    rec = next((r for r in cat.records if r.class_id == a.class_id), None)
    if rec is None:
        raise UsageError(f"class {a.class_id!r} not in {a.catalog}")
    links = []
    lines = [f"{rec.class_id}: {len(rec.neighbors)} facets"]
    for l in rec.neighbors:
        links.append({"facet": l.facet, "target": l.target, "rho": None if l.rho is None
                      else format_rational(l.rho)})
        lines.append(f"  facet {l.facet}: " + ("boundary" if l.target is None
                                              else f"-> {l.target} (rho {format_rational(l.rho)})"))
    return EXIT_OK, {"id": rec.class_id, "neighbors": links}, lines


def _locate(text):
    b = _point(text)
    try:
        return b, locate_cone(b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_fan_locate(a):
    b, cert = _locate(a.matrix)
    ok = cert.verify(b)
    support = [{"vector": list(x), "coefficient": format_rational(c)}
               for x, c in cert.support().items()]
    doc = {"class": cert.record.class_id, "form": _fmt_matrix(cert.form.gram),
           "support": support, "verified": ok}
    lines = [f"cone of class {doc['class']}, form {_text_matrix(doc['form'])}"]
    lines += [f"  {format_rational(c)} * x x^T for x = {tuple(x)}" for x, c in cert.support().items()]
    lines.append("certificate " + ("verified" if ok else "FAILED"))
    return (EXIT_OK if ok else EXIT_FALSE), doc, lines


def cmd_fan_height(a):
    b, cert = _locate(a.matrix)
    form = cert.form
    h = pair(form, b) / minimal_vectors(form).minimum
    return EXIT_OK, {"height": format_rational(h)}, [f"co-core height {format_rational(h)}"]


def cmd_fan_extend(a):
    q = _form(a.gram)
    try:
        f = extend(q)
    except PropertyViolation as exc:
        return EXIT_FALSE, {"error": str(exc)}, [f"property violated: {exc}"]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK, {"gram": _fmt_matrix(f.gram)}, [_text_matrix(f.gram)]


def cmd_toric_classify(a):
    if "," in a.target or ";" in a.target:
        q = _form(a.target)
        if not is_perfect(q):
            raise UsageError("toric classify needs a perfect form")
        label = a.target
    else:
        rec = _class_record(a.target)
        q, label = rec.form, rec.class_id
    try:
        kind = classify_singularity(ToricCone.of_perfect_form(q))
    except BudgetExceeded as exc:
        return EXIT_FALSE, {"error": str(exc)}, [str(exc)]
    return EXIT_OK, {"cone": label, "class": kind}, [f"{label}: {kind}"]


def cmd_tai(a):
    if a.m is None:
        raise UsageError("tai needs --m M (or the scan subcommand)")
    try:
        val, ts = taibound.min_fractional_sum(taibound.TaiProblem(a.m, a.convention))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = {"m": a.m, "min": format_rational(val), "minimizer": ts}
    return EXIT_OK, doc, [f"m={a.m}: minimum {doc['min']} at T={{{', '.join(map(str, ts))}}}"]


def cmd_tai_scan(a):
    try:
        rows = taibound.exceptional_scan(a.max, a.convention)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = [{"m": r.m, "bound": format_rational(r.bound), "min": format_rational(r.minimum),
            "relation": r.relation, "minimizer": list(r.minimizer)} for r in rows]
    lines = [f"m={r['m']:>4}  refined bound {r['bound']:>6}  minimum {r['min']:>6}  (min {r['relation']} 1)"
             for r in doc]
    return EXIT_OK, {"max": a.max, "cases": doc}, lines


def cmd_nef(a):
    try:
        d = picard.DivisorClass(a.a, a.b, a.g, a.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK, _divisor_doc(d), _divisor_lines(d)


def cmd_canonical(a):
    try:
        d = picard.canonical_class(a.g, a.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK, _divisor_doc(d), _divisor_lines(d)


def _divisor_doc(d):
    low = picard.pullback_level(d)
    return {"a": format_rational(d.a), "b": format_rational(d.b), "g": d.g, "n": d.n,
            "nef": picard.is_nef(d), "ample": picard.is_ample(d),
            "C1": format_rational(picard.intersect_C1(low)),
            "C2_sign": picard.intersect_C2_sign(d)}


def _divisor_lines(d):
    doc = _divisor_doc(d)
    name = "D" if d.n == 1 else f"D^({d.n})"
    return [f"{doc['a']} M - {doc['b']} {name} (g={d.g}): nef={str(doc['nef']).lower()}, "
            f"ample={str(doc['ample']).lower()}",
            f"  degree on C1 (level one) {doc['C1']}, sign on C2 {doc['C2_sign']}"]


def _load_catalog(path):
    try:
        return catalog_io.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_catalog_verify(a):
    try:
        cat = catalog_io.load(a.file)
    except OSError as exc:
        raise UsageError(f"cannot read {a.file}: {exc}") from None
    except catalog_io.CatalogError as exc:
        return EXIT_FALSE, {"ok": False, "problems": [str(exc)]}, [f"FAILED: {exc}"]
    problems = catalog_io.verify(cat)
    doc = {"ok": not problems, "g": cat.g, "classes": len(cat.records), "problems": problems}
    lines = [f"g={cat.g}, {len(cat.records)} classes: " + ("verified" if not problems else "FAILED")]
    lines += ["  " + p for p in problems]
    return (EXIT_FALSE if problems else EXIT_OK), doc, lines


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="voronoifan",
                                description="Perfect forms, the perfect cone fan and related checks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("minvec", parents=[common], help="minimum and minimal vectors")
    s.add_argument("gram", help='Gram matrix, e.g. "2,1;1,2"')
    s.set_defaults(func=cmd_minvec)

    perf = sub.add_parser("perfect", help="perfect forms")
    psub = perf.add_subparsers(dest="action", required=True)
    s = psub.add_parser("check", parents=[common])
    s.add_argument("gram")
    s.set_defaults(func=cmd_perfect_check)
    s = psub.add_parser("enumerate", parents=[common])
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="write the catalog to this file")
    s.set_defaults(func=cmd_perfect_enumerate)
    s = psub.add_parser("neighbors", parents=[common])
    s.add_argument("class_id")
    s.add_argument("--catalog", required=True)
    s.set_defaults(func=cmd_perfect_neighbors)

    fan = sub.add_parser("fan", help="the perfect cone fan")
    fsub = fan.add_subparsers(dest="action", required=True)
    for name, func, arg in (("locate", cmd_fan_locate, "matrix"), ("height", cmd_fan_height, "matrix"),
                            ("extend", cmd_fan_extend, "gram")):
        s = fsub.add_parser(name, parents=[common])
        s.add_argument(arg)
        s.set_defaults(func=func)

    tor = sub.add_parser("toric", help="toric singularities of perfect cones")
    tsub = tor.add_subparsers(dest="action", required=True)
    s = tsub.add_parser("classify", parents=[common])
    s.add_argument("target", help='class id such as "4.1", or a Gram matrix')
    s.set_defaults(func=cmd_toric_classify)

    conv = dict(choices=[taibound.ZERO_AS_ONE, taibound.ZERO_AS_ZERO], default=taibound.ZERO_AS_ONE)
    tai = sub.add_parser("tai", parents=[common], help="minimal fractional-part sum")
    tai.add_argument("--m", type=int)
    tai.add_argument("--convention", **conv)
    tai.set_defaults(func=cmd_tai)
    taisub = tai.add_subparsers(dest="action")
    s = taisub.add_parser("scan", parents=[common])
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--convention", **conv)
    s.set_defaults(func=cmd_tai_scan)

    s = sub.add_parser("nef", parents=[common], help="nef and ample tests for aM - bD")
    s.add_argument("--a", type=_rational, required=True)
    s.add_argument("--b", type=_rational, required=True)
    s.add_argument("--g", type=int, default=2)
    s.add_argument("--n", type=int, default=1)
    s.set_defaults(func=cmd_nef)

    s = sub.add_parser("canonical", parents=[common], help="the canonical class (g+1)M - D")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--n", type=int, default=1)
    s.set_defaults(func=cmd_canonical)

    cat = sub.add_parser("catalog", help="catalog files")
    csub = cat.add_subparsers(dest="action", required=True)
    s = csub.add_parser("verify", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_catalog_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, doc, lines = args.func(args)
    except UsageError as exc:
        print(f"voronoifan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except catalog_io.CatalogError as exc:
        print(f"voronoifan: {exc}", file=sys.stderr)
        return EXIT_FALSE
    if args.json:
        print(json.dumps(doc, separators=(",", ":")))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
