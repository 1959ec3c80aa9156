"""Command-line front end: ``adica <command> ...``.

Exit status: 0 on success, 1 when a mathematical hypothesis is rejected,
2 on usage, parse or format errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .adic import DEFAULT_SCALE, build_bv, coding_vs_language
from .bratteli import (
    build_from_morphisms, export_dot, is_simple, min_path, orbit_coding, simple_cuts,
    unique_extrema_check,
)
from .errors import AdicaError, InputError
from .formats import format_morphism, load_directive, load_morphism
from .language import complexity, factors, morse_hedlund_witness, recurrence_probe
from .s5 import (
    CATALOG, DEFAULT_WINDOW, build_rank3_bv, complexity_harness, search_marks, validate_directive,
)
from .words import (
    apply, compose, incidence_matrix, is_primitive, left_conjugate, proper_products,
    properness, random_left_proper, right_conjugate, verify_conjugacy_identity,
)

SCHEMA = 1


class UsageError(Exception):
    pass


def _emit(args, text=None, data=None):
    if args.json and data is not None:
        print(json.dumps({"schema": SCHEMA, **data}, sort_keys=True))
    elif text is not None:
        print(text)


def _write_dot(diag, path):
    text = export_dot(diag)
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


# morphism

def cmd_morphism_apply(args):
    m = load_morphism(args.file)
    out = apply(m, args.word)
    _emit(args, out, {"word": args.word, "image": out})


def cmd_morphism_info(args):
    m = load_morphism(args.file)
    p = properness(m)
    inc = incidence_matrix(m)
    prim = is_primitive(m) if m.is_endomorphism else None
    lines = [f"morphism: {m}", f"properness: {p.kind}"
             + (f" (first letter {p.left})" if p.left else "")
             + (f" (last letter {p.right})" if p.right else "")]
    lines.append("primitive: " + ("n/a (not an endomorphism)" if prim is None else str(prim).lower()))
    lines.append("incidence (rows " + str(inc.rows) + ", columns " + str(inc.cols) + "):")
    lines += ["  " + " ".join(str(v) for v in row) for row in inc.tolist()]
    _emit(args, "\n".join(lines), {
        "rules": m.as_dict(), "properness": p.kind, "left": p.left, "right": p.right,
        "primitive": prim, "incidence": inc.tolist(),
        "rows": str(inc.rows), "columns": str(inc.cols),
    })


def cmd_morphism_compose(args):
    outer, inner = load_morphism(args.outer), load_morphism(args.inner)
    m = compose(outer, inner)
    _emit(args, format_morphism(m).rstrip("\n"), {"rules": m.as_dict()})


def cmd_morphism_conjugate(args):
    m = load_morphism(args.file)
    side = args.side or ("left" if properness(m).is_left else "right")
    tau = left_conjugate(m) if side == "left" else right_conjugate(m)
    _emit(args, format_morphism(tau).rstrip("\n"), {"side": side, "rules": tau.as_dict()})


def _identity_lines(rep):
    lines = [f"{rep.side} conjugate: {rep.conjugate}",
             f"identity on words of length <= {rep.max_len}: "
             + ("holds" if rep.holds else "FAILS at " + repr(rep.counterexample[0])),
             f"words checked: {rep.words_checked}"]
    if rep.literal_holds is None:
        lines.append("iterated form: not applicable (not an endomorphism)")
    elif rep.literal_holds:
        lines.append(f"iterated form: holds for n <= {rep.max_len}")
    else:
        n, a, lhs, rhs = rep.literal_counterexample
        lines.append(f"iterated form: fails at n={n}, letter {a}: {lhs} != {rhs}")
    return lines


def cmd_morphism_verify(args):
    m = load_morphism(args.file)
    rep = verify_conjugacy_identity(m, args.max_len, args.side)
    _emit(args, "\n".join(_identity_lines(rep)), {
        "side": rep.side, "holds": rep.holds, "words_checked": rep.words_checked,
        "counterexample": rep.counterexample, "literal_holds": rep.literal_holds,
        "literal_counterexample": rep.literal_counterexample,
    })
    return 0 if rep.holds else 1


def cmd_morphism_products(args):
    m = load_morphism(args.file)
    st, ts = proper_products(m)
    text = f"sigma tau = {st} ({properness(st).kind}, primitive)\n" \
           f"tau sigma = {ts} ({properness(ts).kind}, primitive)"
    _emit(args, text, {"sigma_tau": st.as_dict(), "tau_sigma": ts.as_dict()})


def cmd_morphism_random_check(args):
    seed = args.seed if args.seed is not None else 0
    rng = random.Random(seed)
    failures = []
    words = 0
    for _ in range(args.count):
        m = random_left_proper(rng, rng.randint(args.min_letters, args.max_letters))
        rep = verify_conjugacy_identity(m, args.max_len, "left")
        words += rep.words_checked
        if not rep.holds:
            failures.append(str(m))
    text = f"seed: {seed}\nmorphisms: {args.count}\nwords checked: {words}\nfailures: {len(failures)}"
    _emit(args, text, {"seed": seed, "morphisms": args.count, "words_checked": words,
                       "failures": failures})
    return 1 if failures else 0


# languages

def cmd_lang(args):
    d = load_directive(args.directive)
    lang = factors(d, args.max_len)
    n = args.complexity or args.max_len
    if n > args.max_len:
        raise UsageError("--complexity cannot exceed --max-len")
    prof = complexity(lang, n)
    witness = morse_hedlund_witness(prof)
    data = {"p": prof.p, "diff": prof.diff, "stabilized": lang.stabilized,
            "morse_hedlund_witness": witness, "depth_used": lang.depth_used}
    lines = [f"p: {' '.join(map(str, prof.p))}", f"diff: {' '.join(map(str, prof.diff))}",
             f"stabilized: {str(lang.stabilized).lower()} (levels used up to {lang.depth_used})",
             "morse-hedlund witness: " + ("none" if witness is None else str(witness))]
    if prof.negative_differences:
        lines.append(f"warning: negative differences at n = {prof.negative_differences}")
    if args.recurrence:
        m, window = args.recurrence
        rep = recurrence_probe(d, m, window)
        data["recurrence"] = {"m": m, "window": window, "holds": rep.holds, "gaps": rep.gaps[:20]}
        lines.append(f"recurrence m={m} window={window}: "
                     + ("holds" if rep.holds else f"{len(rep.gaps)} gaps, e.g. {rep.gaps[0]}"))
    if args.words:
        data["factors"] = sorted(lang.all(), key=lambda w: (len(w), w))
        lines.append("factors: " + " ".join(data["factors"]))
    _emit(args, "\n".join(lines), data)


# Bratteli diagrams

def _diagram(args):
    d = load_directive(args.directive)
    if d.stop < args.depth:
        raise UsageError(f"directive stops at level {d.stop} < depth {args.depth}")
    return d, build_from_morphisms([d.morphism(n) for n in range(2, args.depth + 1)])


def cmd_bv_build(args):
    d, diag = _diagram(args)
    if args.dot:
        _write_dot(diag, args.dot)
    counts = diag.vertex_counts()
    edges = [diag.edge_count(i) for i in range(1, diag.depth + 1)]
    text = f"levels: {diag.depth + 1}\nvertices per level: {counts}\nedges per level: {edges}"
    if args.dot != "-":
        _emit(args, text, {"vertices": counts, "edges": edges})


def cmd_bv_orbit(args):
    d, diag = _diagram(args)
    top = args.top or d.seed(args.depth)
    coding = orbit_coding(diag, min_path(diag, args.depth, top=top), args.steps)
    text = coding.word + ("" if coding.complete else "\n(maximal path reached: partial coding)")
    _emit(args, text, {"coding": coding.word, "complete": coding.complete, "top": top})


def cmd_bv_check(args):
    d, diag = _diagram(args)
    data, lines = {}, []
    do_all = not (args.simple or args.extrema)
    if args.simple or do_all:
        data["simple"] = is_simple(diag)
        data["simple_cuts"] = simple_cuts(diag)
        lines.append(f"simple: {str(data['simple']).lower()} (cuts {data['simple_cuts']})")
    if args.extrema or do_all:
        rep = unique_extrema_check(diag)
        data["min_paths"], data["max_paths"], data["unique_extrema"] = rep.min_paths, rep.max_paths, rep.unique
        lines.append(f"minimal paths: {rep.min_paths}, maximal paths: {rep.max_paths}, "
                     f"unique: {str(rep.unique).lower()}")
    _emit(args, "\n".join(lines), data)


# BV representation of a directive

def _coding_match(d, depth, mode, scale):
    rep = coding_vs_language(d, depth, 4000, scale, mode, scale, check_hypotheses=False)
    return rep.match_len


def cmd_build(args):
    d = load_directive(args.directive)
    diag, report = build_bv(d, args.depth, args.mode, args.scale)
    if args.dot:
        _write_dot(diag, args.dot)
    match = _coding_match(d, args.depth, args.mode, args.scale)
    data = {"rank_bound": report.max_vertices, "injectivity_scale": report.injectivity_scale,
            "periodic": False, "coding_match_len": match,
            "vertex_counts": report.vertex_counts, "verdict": report.verdict, "mode": report.mode}
    text = (f"rank bound: {report.max_vertices}\nvertices per level: {report.vertex_counts}\n"
            f"injective at scale {report.injectivity_scale}, not periodic\n"
            f"coding matches language up to length {match}\nverdict: {report.verdict}")
    if args.report == "json":
        print(json.dumps({"schema": SCHEMA, **data}, sort_keys=True))
    elif args.dot != "-":
        _emit(args, text, data)


# S5

def _s5_directive(args):
    d = load_directive(args.directive)
    marks = d.marks
    if len(marks) < 2 and args.search_marks:
        marks = search_marks(d, args.search_marks)
        if marks is None:
            raise UsageError(f"no valid marking found up to window {args.search_marks}")
    if len(marks) < 2:
        raise UsageError("the directive has no marks; add 'mark <n>' lines or use --search-marks W")
    return d, marks


def cmd_s5_catalog(args):
    lines = [f"{name}: {m}" for name, m in CATALOG.items()]
    _emit(args, "\n".join(lines), {"catalog": {n: m.as_dict() for n, m in CATALOG.items()}})


def cmd_s5_validate(args):
    d, marks = _s5_directive(args)
    vd = validate_directive(d, marks)
    lines = [f"marks: {' '.join(map(str, vd.marks))}", f"blocks: {len(vd.blocks)} (all proper, all letters in all images)"]
    lines += [f"  {b.start}..{b.stop - 1}: {b.composition}" for b in vd.blocks]
    _emit(args, "\n".join(lines), {
        "marks": list(vd.marks), "accepted": True,
        "blocks": [{"start": b.start, "stop": b.stop - 1, "rules": b.composition.as_dict()}
                   for b in vd.blocks]})


def cmd_s5_harness(args):
    d, marks = _s5_directive(args)
    rep = complexity_harness(d, args.max_n, marks)
    lines = [f"p: {' '.join(map(str, rep.p))}", f"diff: {' '.join(map(str, rep.diff))}",
             "n_min: " + ("none" if rep.n_min is None else str(rep.n_min)),
             f"bounded by 2 from n_min: {str(rep.holds).lower()}",
             "morse-hedlund witness: " + ("none" if rep.periodic_witness is None else str(rep.periodic_witness))]
    _emit(args, "\n".join(lines), {"p": rep.p, "diff": rep.diff, "n_min": rep.n_min,
                                   "holds": rep.holds, "morse_hedlund_witness": rep.periodic_witness})
    return 0 if rep.holds else 1


def cmd_s5_build(args):
    d, marks = _s5_directive(args)
    vd = validate_directive(d, marks)
    diag, report = build_rank3_bv(vd, args.depth, args.scale)
    if args.dot:
        _write_dot(diag, args.dot)
    text = f"rank bound: {report.max_vertices}\nvertices per level: {report.vertex_counts}\nverdict: {report.verdict}"
    if args.dot != "-":
        _emit(args, text, {"rank_bound": report.max_vertices, "vertex_counts": report.vertex_counts,
                           "marks": list(vd.marks)})


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="adica", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    # morphism
    mor = sub.add_parser("morphism", help="operations on a single morphism")
    msub = mor.add_subparsers(dest="action", required=True)
    p = msub.add_parser("apply", parents=[common])
    p.add_argument("--file", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_morphism_apply)
    p = msub.add_parser("info", parents=[common])
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_morphism_info)
    p = msub.add_parser("compose", parents=[common], help="print outer o inner")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)
    p.set_defaults(func=cmd_morphism_compose)
    p = msub.add_parser("conjugate", parents=[common])
    p.add_argument("--file", required=True)
    p.add_argument("--side", choices=["left", "right"])
    p.set_defaults(func=cmd_morphism_conjugate)
    p = msub.add_parser("verify", parents=[common], help="check the conjugation identity")
    p.add_argument("--file", required=True)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--side", choices=["left", "right"])
    p.set_defaults(func=cmd_morphism_verify)
    p = msub.add_parser("products", parents=[common], help="sigma tau and tau sigma")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_morphism_products)
    p = msub.add_parser("random-check", parents=[common],
                        help="conjugation identity on seeded random left-proper morphisms")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--min-letters", type=int, default=2)
    p.add_argument("--max-letters", type=int, default=4)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_morphism_random_check)

    # lang
    p = sub.add_parser("lang", parents=[common], help="factor language and complexity")
    p.add_argument("--directive", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--complexity", type=int, metavar="N")
    p.add_argument("--recurrence", type=int, nargs=2, metavar=("M", "W"))
    p.add_argument("--words", action="store_true", help="list the factors")
    p.set_defaults(func=cmd_lang)

    # bv
    bv = sub.add_parser("bv", help="Bratteli diagram of a directive")
    bsub = bv.add_subparsers(dest="action", required=True)
    diag_args = argparse.ArgumentParser(add_help=False)
    diag_args.add_argument("--directive", required=True)
    diag_args.add_argument("--depth", type=int, default=6)
    p = bsub.add_parser("build", parents=[common, diag_args])
    p.add_argument("--dot", help="write DOT here ('-' for stdout)")
    p.set_defaults(func=cmd_bv_build)
    p = bsub.add_parser("orbit", parents=[common, diag_args])
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--top", help="top vertex of the starting minimal path (default: seed)")
    p.set_defaults(func=cmd_bv_orbit)
    p = bsub.add_parser("check", parents=[common, diag_args])
    p.add_argument("--simple", action="store_true")
    p.add_argument("--extrema", action="store_true")
    p.set_defaults(func=cmd_bv_check)

    # build
    p = sub.add_parser("build", parents=[common], help="BV representation with hypothesis checks")
    p.add_argument("--directive", required=True)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--mode", choices=["strict", "alt"], default="strict")
    p.add_argument("--scale", type=int, default=DEFAULT_SCALE)
    p.add_argument("--dot")
    p.add_argument("--report", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_build)

    # s5
    s5p = sub.add_parser("s5", help="directives over D, G, E_ab, E_bc, M")
    ssub = s5p.add_subparsers(dest="action", required=True)
    p = ssub.add_parser("catalog", parents=[common])
    p.set_defaults(func=cmd_s5_catalog)
    marks_args = argparse.ArgumentParser(add_help=False)
    marks_args.add_argument("directive")
    marks_args.add_argument("--search-marks", type=int, metavar="W", nargs="?",
                            const=DEFAULT_WINDOW, default=None)
    p = ssub.add_parser("validate", parents=[common, marks_args])
    p.set_defaults(func=cmd_s5_validate)
    p = ssub.add_parser("harness", parents=[common, marks_args])
    p.add_argument("--max-n", type=int, default=20)
    p.set_defaults(func=cmd_s5_harness)
    p = ssub.add_parser("build", parents=[common, marks_args])
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--scale", type=int, default=DEFAULT_SCALE)
    p.add_argument("--dot")
    p.set_defaults(func=cmd_s5_build)
    return parser


def _describe(e: AdicaError) -> str:
    msg = f"error: {e.name}: {e}"
    witness = getattr(e, "witness", None)
    if witness is not None:
        msg += f" (witness: {witness if not isinstance(witness, tuple) else ', '.join(witness)})"
    for other in getattr(e, "also", ()):
        msg += "\n" + _describe(other).replace("error:", "also:", 1)
    return msg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e.filename}: {e.strerror}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AdicaError as e:
        print(_describe(e), file=sys.stderr)
        if getattr(args, "report", None) == "json":
            print(json.dumps({"schema": SCHEMA, "error": e.name, "message": str(e)}, sort_keys=True))
        return 2 if isinstance(e, InputError) else 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
