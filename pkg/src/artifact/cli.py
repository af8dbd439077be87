"""Command-line entry point: ``artifact <command> [flags]``.

Exit codes: 0 success or certified, 2 violation or failed check,
3 inconclusive at the given budget, 1 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import acyl, bass_serre, largest, outbs, quotient
from .bass_serre import _quote, build_ball, format_label
from .graph_of_groups import GraphOfGroups, gog_from_json, presentation_report, validate_gog
from .words import parse_word

SCHEMA = 1
OK, USAGE, VIOLATION, INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ----- inputs ---------------------------------------------------------------------

def load_gog(source: str) -> GraphOfGroups:
    """``outbs:p,q:edge``, ``outbs:p,q:ray:L`` or a path to a JSON file."""
    if source.startswith("outbs:"):
        parts = source.split(":")
        try:
            p, q = (int(x) for x in parts[1].split(","))
            kind = parts[2] if len(parts) > 2 else "edge"
            if kind == "edge":
                return outbs.build_edge_gog(p, q)
            if kind == "ray":
                return outbs.build_ray_gog(p, q, int(parts[3]) if len(parts) > 3 else 6)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, outbs.NotProperDivisor):
                raise
            raise UsageError(f"cannot parse gog source {source!r}") from exc
        raise UsageError(f"unknown outbs structure {kind!r}")
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such gog file: {source}")
    return gog_from_json(json.loads(path.read_text()))


def load_family(gog: GraphOfGroups, source: str, normalize: bool):
    if source.startswith("example:"):
        which = source.split(":", 1)[1]
        _, family = outbs.example_family(which, "normalized" if normalize else "as-written",
                                         gog.meta.get("p", 4), gog.meta.get("q", 12))
        return family
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such family file: {source}")
    data = json.loads(path.read_text())
    if normalize:
        data = dict(data, mode="normalize")
    return quotient.family_from_json(gog, data)


def emit(payload: dict) -> None:
    sys.stdout.write(json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def label_text(gog: GraphOfGroups, label) -> str:
    return format_label(gog, label)


def verdict_json(gog: GraphOfGroups, verdict) -> dict:
    if isinstance(verdict, bass_serre.Elliptic):
        return {"kind": "elliptic", "fixed_vertex": label_text(gog, verdict.fixed_vertex)}
    if isinstance(verdict, bass_serre.Hyperbolic):
        cert = dict(verdict.certificate)
        cert["vertex"] = label_text(gog, cert["vertex"])
        return {"kind": "hyperbolic", "translation_length": verdict.translation_length,
                "axis_vertex": label_text(gog, verdict.axis_vertex), "certificate": cert}
    if isinstance(verdict, quotient.QuotientElliptic):
        return {"kind": "elliptic", "fixed_class": label_text(gog, verdict.representative)}
    return {"kind": "hyperbolic", "translation_length": verdict.translation_length,
            "axis_class": label_text(gog, verdict.representative), "certificate": verdict.certificate}


# ----- DOT for graphs of groups -------------------------------------------------------

def gog_to_dot(gog: GraphOfGroups, name: str = "gog") -> str:
    lines = [f"graph {_quote(name)} {{", "  node [shape=box, fontsize=10];"]
    for v in gog.graph.vertices:
        lines.append(f"  {_quote(v)} [label={_quote(f'{v}: {gog.vertex_groups[v].describe()}')}];")
    for e in gog.graph.geometric_edges():
        bar = gog.graph.bar(e)
        images = "; ".join(
            f"{f}: " + ", ".join(gog.vertex_groups[gog.graph.t(f)].format(x) for _, x in gog.monos[f]) for f in (e, bar)
        )
        label = f"{e}: {gog.edge_groups[e].describe()}"
        lines.append(f"  {_quote(gog.graph.o(e))} -- {_quote(gog.graph.t(e))} [label={_quote(label)}, tooltip={_quote(images)}];")
    if gog.meta.get("infinite_graph"):
        last = gog.graph.vertices[-1]
        lines.append('  "..." [shape=plaintext];')
        lines.append(f"  {_quote(last)} -- \"...\" [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def figure(which: int) -> str:
    """DOT text for the six figures, computed from the live structures."""
    if which == 4:
        return gog_to_dot(outbs.build_ray_gog(4, 12, 4), "figure4")
    if which == 5:
        gog = outbs.build_edge_gog(4, 12)
        return bass_serre.ball_to_dot(build_ball(gog, radius=2, budget=4), "figure5")
    if which == 6:
        return gog_to_dot(outbs.build_edge_gog(4, 12), "figure6")
    if which in (7, 8):
        gog, family = outbs.example_family("6_9" if which == 7 else "6_10", "normalized")
        q = quotient.quotient_ball(build_ball(gog, radius=3 if which == 7 else 2, budget=6), family)
        return quotient.quotient_to_dot(q, f"figure{which}")
    if which == 9:
        gog = outbs.build_ray_gog(2, 4, 5)
        ball = build_ball(gog, radius=4, budget=None)
        text = bass_serre.ball_to_dot(ball, "figure9")
        levels = {f"n{i}": outbs.x_level(v) for i, v in enumerate(ball.vertices)}
        out = []
        for line in text.splitlines():
            head = line.strip().split(" ", 1)[0]
            if head in levels and "--" not in line:
                line = line.replace("];", f", level={levels[head]}];")
            out.append(line)
        return "\n".join(out) + "\n"
    raise UsageError(f"no figure {which}; choose from 4-9")


# ----- commands -------------------------------------------------------------------------

def cmd_build(args) -> int:
    gog = args.gog_obj
    problems = validate_gog(gog)
    if args.format == "dot":
        sys.stdout.write(gog_to_dot(gog))
        return OK if not problems else VIOLATION
    report = presentation_report(gog)
    emit({"command": "build", "valid": not problems, "diagnostics": problems, "gog": gog.to_json(),
          "presentation": {"shape": report.shape, "structure": report.structure, "stable_letters": report.stable_letters,
                           "betti_number": report.betti, "relations": report.relations, "text": report.text}})
    return OK if not problems else VIOLATION


def cmd_ball(args) -> int:
    gog = args.gog_obj
    seeds = [parse_word(gog, w) for w in args.word]
    ball = build_ball(gog, radius=args.radius, budget=args.budget, seeds=seeds)
    if args.format == "dot":
        sys.stdout.write(bass_serre.ball_to_dot(ball))
        return OK
    emit({"command": "ball", "radius": args.radius, "budget": args.budget, "size": len(ball),
          "vertices": [{"label": label_text(gog, v), "depth": len(v), "vertex": bass_serre.terminal_vertex(gog, v),
                        "truncated": v in ball.truncated} for v in ball.vertices],
          "edges": [[ball.index(a), ball.index(b)] for a, b in ball.edges()]})
    return OK


def _words(args) -> list:
    if not args.word:
        raise UsageError("--word is required")
    return [(w, parse_word(args.gog_obj, w)) for w in args.word]


def cmd_classify(args) -> int:
    gog = args.gog_obj
    results = []
    for text, g in _words(args):
        try:
            results.append({"word": text, **verdict_json(gog, bass_serre.classify(gog, g))})
        except bass_serre.CertificateUnavailable as exc:
            results.append({"word": text, "kind": "unknown", "reason": str(exc)})
    emit({"command": "classify", "results": results})
    return INCONCLUSIVE if any(r["kind"] == "unknown" for r in results) else OK


def _family(args):
    if not args.family:
        raise UsageError("--family is required")
    family = load_family(args.gog_obj, args.family, args.normalize)
    check = quotient.family_validate(args.gog_obj, family)
    return family, check


def _rejection(gog, check) -> dict:
    G = gog.vertex_groups[check.rejected_vertex]
    w = check.witness
    witness = None
    if w is not None and w.conjugator is not None:
        witness = {"conjugator": G.format(w.conjugator), "element": G.format(w.element), "conjugate": G.format(w.conjugate)}
    return {"accepted": False, "vertex": check.rejected_vertex, "message": check.message, "witness": witness}


def cmd_quotient(args) -> int:
    gog = args.gog_obj
    family, check = _family(args)
    if not check.ok:
        emit({"command": "quotient", "family": _rejection(gog, check)})
        return VIOLATION
    ball = build_ball(gog, radius=args.radius, budget=args.budget)
    q = quotient.quotient_ball(ball, check.family, args.slack)
    if args.format == "dot":
        sys.stdout.write(quotient.quotient_to_dot(q))
        return OK
    payload = {"command": "quotient", "family": {"accepted": True, **check.family.to_json(gog)},
               "radius": args.radius, "slack": args.slack, "classes": len(q.graph), "diameter": q.diameter(),
               "is_tree": q.is_tree(), "base_class_valence": q.valence(()),
               "valences": {label_text(gog, q.representatives[c]): q.graph.degree(c) for c in sorted(q.graph.nodes)}}
    if args.word:
        results = []
        for text, g in _words(args):
            try:
                results.append({"word": text, **verdict_json(gog, quotient.quotient_classify(ball, check.family, g, args.slack))})
            except bass_serre.CertificateUnavailable as exc:
                results.append({"word": text, "kind": "unknown", "reason": str(exc)})
        payload["classify"] = results
    emit(payload)
    return OK


def cmd_acyl(args) -> int:
    gog = args.gog_obj
    cert = acyl.check_kc(gog, args.k, args.C, radius=args.radius, budget=args.budget)
    emit({"command": "acyl", "certificate": cert.to_json(gog)})
    return OK if cert.passed else VIOLATION


def cmd_theorem_a(args) -> int:
    gog = args.gog_obj
    family, check = _family(args)
    if not check.ok:
        emit({"command": "theorem-a", "family": _rejection(gog, check)})
        return VIOLATION
    report = quotient.theorem_a_check(gog, check.family)
    emit({"command": "theorem-a", **report.to_json()})
    return {"pass": OK, "fail": VIOLATION}.get(report.verdict, INCONCLUSIVE)


def cmd_largest(args) -> int:
    gog = args.gog_obj
    cert = None
    if args.k is not None and args.C is not None:
        cert = acyl.check_kc(gog, args.k, args.C, radius=args.radius, budget=args.budget)
    else:
        try:
            cert = acyl.amalgam_criterion(gog).certificate
        except acyl.NotApplicable:
            cert = None
    report = largest.largest_report(gog, cert)
    payload = {"command": "largest", **report.to_json()}
    if args.equivalence:
        payload["equivalence"] = largest.equivalence_check(gog, args.samples).to_json()
    emit(payload)
    return OK if report.verdict == "Largest-certified" else INCONCLUSIVE


def cmd_wpd(args) -> int:
    gog = args.gog_obj
    (text, h), *_ = _words(args)
    try:
        report = acyl.wpd_enumerate(gog, h, args.epsilon, args.M, args.budget)
    except acyl.InfiniteStabilizerAtBase as exc:
        emit({"command": "wpd", "error": str(exc)})
        return INCONCLUSIVE
    emit({"command": "wpd", "word": text, "epsilon": args.epsilon, "M": args.M,
          "candidate_count": len(report.candidates), "count": len(report.exact),
          "finite_certificate": report.finite_certificate, "reasons": report.reasons})
    return OK if report.finite_certificate else INCONCLUSIVE


def cmd_figures(args) -> int:
    which = args.which or [4, 5, 6, 7, 8, 9]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for n in which:
            (out / f"figure{n}.dot").write_text(figure(n))
        emit({"command": "figures", "written": [str(out / f"figure{n}.dot") for n in which]})
    else:
        for n in which:
            sys.stdout.write(figure(n))
    return OK


COMMANDS = {
    "build": cmd_build,
    "ball": cmd_ball,
    "classify": cmd_classify,
    "quotient": cmd_quotient,
    "acyl": cmd_acyl,
    "theorem-a": cmd_theorem_a,
    "largest": cmd_largest,
    "wpd": cmd_wpd,
    "figures": cmd_figures,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="artifact", description="Bass-Serre trees, acylindricity and quotients for graphs of groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--gog", default="outbs:4,12:edge", help="outbs:p,q:edge | outbs:p,q:ray:L | JSON file")
        p.add_argument("--p", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("--radius", type=int, default=2)
        p.add_argument("--budget", type=int, default=6)
        p.add_argument("--slack", type=int, default=2)
        p.add_argument("--family")
        p.add_argument("--normalize", action="store_true")
        p.add_argument("--word", action="append", default=[])
        p.add_argument("--format", choices=["json", "dot"], default="json")
        if name in ("acyl", "largest"):
            p.add_argument("--k", type=int, default=1 if name == "acyl" else None)
            p.add_argument("--C", type=int, default=None)
        if name == "largest":
            p.add_argument("--equivalence", action="store_true")
            p.add_argument("--samples", type=int, default=500)
        if name == "wpd":
            p.add_argument("--epsilon", type=int, default=0)
            p.add_argument("--M", type=int, default=1)
        if name == "figures":
            p.add_argument("--which", type=int, action="append", choices=[4, 5, 6, 7, 8, 9])
            p.add_argument("--out")
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.budget is not None and args.budget <= 0:
            args.budget = None
        if args.p is not None or args.q is not None:
            if args.p is None or args.q is None:
                raise UsageError("--p and --q go together")
            args.gog = f"outbs:{args.p},{args.q}:edge"
        if args.command == "acyl" and args.C is None:
            raise UsageError("--C is required")
        if args.radius < 0:
            raise UsageError("--radius must be non-negative")
        args.gog_obj = load_gog(args.gog)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"artifact: {exc}\n")
        return USAGE
    except outbs.NotProperDivisor as exc:
        sys.stderr.write(f"artifact: {exc}\n")
        emit({"error": "not-proper-divisor", "isomorphism_type": exc.isomorphism_type})
        return VIOLATION
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"artifact: {exc}\n")
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
