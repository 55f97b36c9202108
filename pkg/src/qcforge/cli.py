"""Command-line front end.

Every subcommand writes a deterministic JSON or CSV artifact (stdout by
default, `--out` for a file).  Exit codes: 0 on success, 2 when a verdict
subcommand fails its check, 1 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis, cantor, export, frozen, homeo, qcmaps
from .errors import QCForgeError


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; reserve 2 for failed verdicts
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _parse_gauge(text: str) -> cantor.GaugeSequence:
    kind, _, param = text.partition(":")
    nu = float(param) if param else None
    return cantor.make_gauge(kind, nu)


def _parse_case(text: str) -> tuple[str, float]:
    name, _, param = text.partition(":")
    name = name.replace("-", "_")
    if name in ("theoremB", "theorem_b"):
        return "theoremB", 1.0
    if name not in analysis.THEOREM_A_CASES:
        raise QCForgeError(
            f"unknown case {text!r}; choose slow-to-geometric[:nu], "
            "geometric-to-fast[:nu], slow-to-fast, or theoremB")
    return name, float(param) if param else 1.0


def _case_map(case: str, nu: float, depth: int,
              direction: str) -> homeo.HierarchicalMap:
    if case == "theoremB":
        m = homeo.theoremB_homeo(depth)
    else:
        src, dst = analysis.THEOREM_A_CASES[case][0](nu)
        m = homeo.standard_homeo(src, dst, depth)
    return homeo.invert(m) if direction == "inverse" else m


def _emit(text: str, out: str | None):
    if out:
        export.write_text(out, text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcforge",
                description="Cantor constructions, piecewise-affine "
                            "homeomorphisms, and dilatation statistics.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        return sp

    sp = add("cantor", "materialize one level of a square-nest construction")
    sp.add_argument("--gauge", required=True, type=_parse_gauge)
    sp.add_argument("--depth", required=True, type=int)

    sp = add("sigma", "materialize one level of the linear 8-adic set")
    sp.add_argument("--depth", required=True, type=int)

    sp = add("dims", "dimension bounds, box counting, and Frostman ratios")
    sp.add_argument("--gauge", type=_parse_gauge)
    sp.add_argument("--family", choices=("lambda", "sigma"), default="lambda")
    sp.add_argument("--levels", type=int, default=50)
    sp.add_argument("--box-depths", type=lambda s: [int(x) for x in s.split(",")])
    sp.add_argument("--frostman-s", type=float)
    sp.add_argument("--frostman-level", type=int, default=8)
    sp.add_argument("--samples", type=int, default=32)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("annulus", "concentric-annulus extension template")
    sp.add_argument("--a", required=True, type=float)
    sp.add_argument("--b", required=True, type=float)

    sp = add("twist", "two-hole twist extension template")
    sp.add_argument("--a", required=True, type=float)

    sp = add("homeo", "hierarchical map summary")
    sp.add_argument("--src", type=_parse_gauge)
    sp.add_argument("--dst", type=_parse_gauge)
    sp.add_argument("--depth", required=True, type=int)
    sp.add_argument("--theorem-b", action="store_true")

    sp = add("profile", "dilatation exceedance profile")
    sp.add_argument("--case", required=True)
    sp.add_argument("--depth", required=True, type=int)
    sp.add_argument("--side", choices=("domain", "image"), default="domain")
    sp.add_argument("--direction", choices=("forward", "inverse"),
                    default="forward")

    sp = add("david", "exponential exceedance-decay verdict")
    sp.add_argument("--case", required=True)
    sp.add_argument("--depth", required=True, type=int)
    sp.add_argument("--direction", choices=("forward", "inverse"),
                    default="forward")
    sp.add_argument("--C", type=float, default=1.0)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--K0", type=float, help="override the frozen cutoff")

    sp = add("curve", "image polyline of the horizontal midline")
    sp.add_argument("--depth", required=True, type=int)

    sp = add("report", "scenario report: rates, exceedance checks, bounds")
    sp.add_argument("--case", required=True)
    sp.add_argument("--depth", required=True, type=int)

    return p


def _run_cantor(args) -> int:
    if args.cmd == "sigma":
        level = cantor.build_sigma_level(args.depth)
    else:
        level = cantor.build_level(args.gauge, args.depth)
    if args.format == "csv":
        text = export.rows_to_csv(
            ("cx", "cy"), ((x, y) for x, y in level.centers))
    else:
        text = export.json_dumps(level.to_json_obj())
    _emit(text, args.out)
    return 0


def _run_dims(args) -> int:
    obj = {}
    if args.family == "lambda":
        if args.gauge is None:
            raise QCForgeError("--gauge is required for the square family")
        est = cantor.dimension_bounds(args.gauge, args.levels)
        obj["bounds"] = est.to_json_obj()
    if args.box_depths:
        if args.family == "sigma":
            source = cantor.build_sigma_level
        else:
            def source(n, g=args.gauge):
                return cantor.build_level(g, n)
        est = cantor.box_dimension(source, args.box_depths)
        obj["box"] = est.to_json_obj()
    if args.frostman_s is not None:
        if args.gauge is None:
            raise QCForgeError("--gauge is required for Frostman ratios")
        prof = cantor.frostman_profile(args.gauge, args.frostman_level,
                                       args.frostman_s, args.samples,
                                       args.seed)
        obj["frostman"] = {
            "s": args.frostman_s,
            "level": args.frostman_level,
            "seed": args.seed,
            "max_ratio": max(r for _, r in prof),
            "ratios": [{"eps": e, "ratio": r} for e, r in prof],
        }
    _emit(export.json_dumps(obj), args.out)
    return 0


def _run_template(args) -> int:
    if args.cmd == "annulus":
        pmap = qcmaps.annulus_extension_any(args.a, args.b)
        target = 1.0 - (1.0 - 2.0 * args.b) ** 2
    else:
        pmap = qcmaps.twist_extension(args.a)
        target = 0.5 - 2.0 * (0.5 - 2.0 * args.a) ** 2
    report = qcmaps.validate(pmap, target_area=target)
    obj = pmap.to_json_obj()
    obj["max_K"] = pmap.max_dilatation
    obj["valid"] = report.ok
    _emit(export.json_dumps(obj), args.out)
    return 0 if report.ok else 2


def _run_homeo(args) -> int:
    if args.theorem_b:
        m = homeo.theoremB_homeo(args.depth)
    else:
        if args.src is None or args.dst is None:
            raise QCForgeError("--src and --dst are required without "
                               "--theorem-b")
        m = homeo.standard_homeo(args.src, args.dst, args.depth)
    _emit(export.json_dumps(m.summary_json_obj()), args.out)
    return 0


def _run_profile(args) -> int:
    case, nu = _parse_case(args.case)
    m = _case_map(case, nu, args.depth, args.direction)
    prof = analysis.dilatation_profile(m, args.side)
    k0 = frozen.FROZEN_K0[(case, args.direction)]
    params = analysis.DavidParams(1.0, 1.0, k0)
    if args.format == "csv":
        text = export.profile_csv(prof, params)
    else:
        text = export.json_dumps({
            "side": prof.side,
            "classified_area": prof.classified_area,
            "truncation_bound": prof.truncation_bound,
            "entries": [{"K": k, "exceedance_area": a,
                         "bound": params.bound(k)}
                        for k, a in prof.entries],
        })
    _emit(text, args.out)
    return 0


def _run_david(args) -> int:
    case, nu = _parse_case(args.case)
    m = _case_map(case, nu, args.depth, args.direction)
    k0 = args.K0 if args.K0 is not None \
        else frozen.FROZEN_K0[(case, args.direction)]
    params = analysis.DavidParams(args.C, args.alpha, k0)
    prof = analysis.dilatation_profile(m, "domain")
    passed, margin = analysis.check_david(prof, params)
    _emit(export.json_dumps({
        "case": case,
        "direction": args.direction,
        "depth": args.depth,
        "C": params.C,
        "alpha": params.alpha,
        "K0": params.K0,
        "passed": passed,
        "margin": margin,
    }), args.out)
    return 0 if passed else 2


def _run_curve(args) -> int:
    m = homeo.theoremB_homeo(args.depth)
    pl = homeo.curve_polyline(m)
    if args.format == "json":
        text = export.json_dumps({
            "depth": args.depth,
            "vertices": [{"t": t, "x": v.x, "y": v.y}
                         for t, v in zip(pl.params, pl.vertices)],
        })
    else:
        text = export.polyline_csv(pl)
    _emit(text, args.out)
    return 0


def _run_report(args) -> int:
    case, nu = _parse_case(args.case)
    if case == "theoremB":
        obj = analysis.theoremB_report(args.depth)
    else:
        obj = analysis.theoremA_report(case, args.depth, nu)
    _emit(export.json_dumps(obj), args.out)
    ok = all(c["passed"]
             for d in obj["david"].values() for c in d["checks"])
    return 0 if ok else 2


_RUNNERS = {
    "cantor": _run_cantor,
    "sigma": _run_cantor,
    "dims": _run_dims,
    "annulus": _run_template,
    "twist": _run_template,
    "homeo": _run_homeo,
    "profile": _run_profile,
    "david": _run_david,
    "curve": _run_curve,
    "report": _run_report,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _RUNNERS[args.cmd](args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    except QCForgeError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


def main():  # console-script entry point
    raise SystemExit(run())


if __name__ == "__main__":
    main()
