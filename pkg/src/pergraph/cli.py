"""Command-line front end.

Exit codes: 0 success or `holds`, 1 `fails`, 2 `inconclusive`, 64 parse
error, 65 semantic error, 70 internal tolerance failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import DimensionError
from .certify import (
    band_separation_scan,
    certify_flower_schrodinger,
    certify_isthmus,
    certify_minimally_sparse_sec,
    jsonable,
    random_trials,
    verify_isthmus_identities,
    verify_parallel_theorem,
)
from .floquet import (
    NotMinimallySparse,
    SymmetryError,
    dispersion,
    flat_band_gcd,
    flat_bands,
    sparse_form,
)
from .graph import (
    FlowerSpec,
    GraphError,
    IsthmusSpec,
    PeriodicGraph,
    bounded_components,
    coordinate_projection,
    enumerate_projections,
    is_connected,
    parallel_extension,
)
from .io import ParallelSpec, SpecParseError, dump_graph, load, to_graph
from .spectral import (
    FlatBandError,
    HermitianError,
    JacobiConvergenceError,
    Tolerances,
    ToleranceFailure,
    algebraic_non_corner_search,
    band_grid,
    corner_spectrum,
    cpe_residual,
    morse_census,
    witness_bands,
)

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_TOLERANCE = 0, 64, 65, 70


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None


def _tolerances(args) -> Tolerances:
    kw = {}
    for f in fields(Tolerances):
        v = getattr(args, f"tol_{f.name}", None)
        if v is not None:
            kw[f.name] = v
    return Tolerances(**kw)


def _graph(args) -> PeriodicGraph:
    obj = load(args.input)
    return to_graph(obj, name=Path(args.input.split(":")[-1]).stem)


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# verbs ------------------------------------------------------------------


def cmd_build(args) -> int:
    obj = load(args.input)
    if args.family == "flower":
        if not isinstance(obj, FlowerSpec):
            raise CliError("build flower expects a flower spec", EXIT_SEMANTIC)
        g = to_graph(obj, name=Path(args.input).stem)
    elif args.family == "isthmus":
        if not isinstance(obj, IsthmusSpec):
            raise CliError("build isthmus expects an isthmus spec", EXIT_SEMANTIC)
        g = to_graph(obj, name=Path(args.input).stem)
    else:
        if isinstance(obj, ParallelSpec):
            g = to_graph(obj)
        else:
            if args.a is None:
                raise CliError("build parallel needs --a", EXIT_SEMANTIC)
            g = parallel_extension(to_graph(obj), args.a)
    _emit(args, dump_graph(g))
    return EXIT_OK


def cmd_dispersion(args) -> int:
    D = dispersion(_graph(args))
    _emit(args, (D.to_latex() if args.format == "latex" else D.to_text()) + "\n")
    return EXIT_OK


def cmd_bands(args) -> int:
    grid = band_grid(_graph(args), args.grid, args.threads)
    _emit(args, grid.to_tsv())
    return EXIT_OK


def cmd_corners(args) -> int:
    g = _graph(args)
    D = dispersion(g)
    lines = [f"# {len(corner_spectrum(D))} corner pairs (2^{g.dimension} x {g.size})"]
    for pair in corner_spectrum(D):
        res = max(cpe_residual(D, pair.k, pair.energy))
        signs = " ".join(f"{s:+d}" for s in pair.corner.signs)
        lines.append(f"{signs}\t{pair.energy}\t{float(pair.energy):.12g}\tresidual={res:.2e}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_critical(args) -> int:
    g = _graph(args)
    tol = _tolerances(args)
    D = dispersion(g)
    out, record = [], {"graph": g.name}
    witnesses = None
    if args.mode in ("algebraic", "both"):
        try:
            sf = sparse_form(D)
        except NotMinimallySparse as exc:
            out.append(f"algebraic: not minimally sparse (monomial {list(exc.monomial)})")
            record["algebraic"] = {"minimallySparse": False, "monomial": list(exc.monomial)}
        else:
            if flat_bands(D):
                out.append(f"algebraic: flat band, gcd {flat_band_gcd(D)}")
            witnesses = algebraic_non_corner_search(sf)
            recs = [{**w.record(), "bands": witness_bands(g, w)} for w in witnesses]
            record["algebraic"] = {"minimallySparse": True, "witnesses": recs}
            if witnesses:
                for r in recs:
                    out.append(
                        f"algebraic witness: I={r['I']} signs={r['signs']} lambda0={r['lambda0']} bands={r['bands']}"
                    )
            else:
                out.append("algebraic: no non-corner critical families")
    report = None
    if args.mode in ("numeric", "both"):
        try:
            report = morse_census(g, args.grid, tol, args.threads)
        except FlatBandError as exc:
            out.append(f"numeric: aborted, flat band at {', '.join(str(r) for r in exc.roots)}")
            record["numeric"] = {"flatBand": [str(r) for r in exc.roots]}
            _emit_critical(args, out, record)
            return EXIT_SEMANTIC
        out.append(report.summary())
        record["numeric"] = report.record()
        if report.max_fd_deviation > tol.fd_agreement:
            out.append(f"finite-difference Hessian check deviates by {report.max_fd_deviation:.2e}")
            _emit_critical(args, out, record)
            return EXIT_TOLERANCE
    code = EXIT_OK
    if report is not None and witnesses is not None:
        agree = (not witnesses) == report.all_at_corners
        record["agreement"] = agree
        if agree:
            out.append("agreement: algebraic and numeric results match")
        else:
            out.append(
                "discrepancy: algebraic search "
                + ("found no families" if not witnesses else f"found {len(witnesses)} families")
                + " but numeric census reports "
                + ("all points at corners" if report.all_at_corners else "non-corner points")
            )
            code = EXIT_TOLERANCE
    _emit_critical(args, out, record)
    return code


def _emit_critical(args, lines, record):
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output:
        Path(args.output).write_text(json.dumps(jsonable(record), indent=2) + "\n")


def cmd_flatband(args) -> int:
    g = _graph(args)
    D = dispersion(g)
    roots = flat_bands(D)
    lines = [f"gcd: {flat_band_gcd(D)}", "flat bands: " + (", ".join(map(str, roots)) or "none")]
    if args.projections:
        for p in enumerate_projections(g.dimension):
            gp = coordinate_projection(g, p)
            pr = flat_bands(dispersion(gp))
            comps = [[gp.names[i] for i in c] for c in bounded_components(gp)]
            lines.append(f"{p}: flat bands {', '.join(map(str, pr)) or 'none'}; bounded components {comps or 'none'}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_projections(args) -> int:
    g = _graph(args)
    lines = []
    for p in enumerate_projections(g.dimension):
        gp = coordinate_projection(g, p)
        lines.append(
            f"{p}: connected={is_connected(gp)} edges={len(gp.edges)} dispersion={dispersion(gp).to_text()}"
        )
    _emit(args, "\n".join(lines) + ("\n" if lines else ""))
    return EXIT_OK


def cmd_certify(args) -> int:
    tol = _tolerances(args)
    seed = args.seed
    if args.pipeline == "flower-schrodinger":
        obj = load(args.input)
        if not isinstance(obj, FlowerSpec):
            raise CliError("flower-schrodinger needs a flower spec", EXIT_SEMANTIC)
        cert = certify_flower_schrodinger(obj, tol, seed)
    else:
        g = _graph(args)
        if args.pipeline == "sec":
            fn = lambda h: certify_minimally_sparse_sec(h, tol, args.threads, seed)
        elif args.pipeline == "isthmus":
            fn = lambda h: certify_isthmus(h, tol, seed)
        else:
            if args.a is None:
                raise CliError("certify parallel needs --a", EXIT_SEMANTIC)
            fn = lambda h: verify_parallel_theorem(h, args.a, tol, args.grid, args.grid, threads=args.threads, seed=seed)
        cert = random_trials(g, fn, args.random_trials, seed, f"{args.pipeline}-trials") if args.random_trials else fn(g)
    _emit(args, cert.to_json())
    return cert.exit_code


def cmd_verify_identities(args) -> int:
    cert = verify_isthmus_identities(_graph(args), _tolerances(args), args.seed)
    _emit(args, cert.to_json())
    return cert.exit_code


def cmd_parallel(args) -> int:
    args.pipeline = "parallel"
    args.random_trials = 0
    return cmd_certify(args)


def cmd_scan_t(args) -> int:
    rep = band_separation_scan(_graph(args), args.t, args.grid or 16, args.threads)
    _emit(args, rep.to_json())
    return EXIT_OK


# parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the result to a file instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None)
    for f in fields(Tolerances):
        kind = int if f.type in ("int", int) else float
        common.add_argument(f"--tol-{f.name.replace('_', '-')}", dest=f"tol_{f.name}", type=kind, default=None)

    p = argparse.ArgumentParser(prog="pergraph", description="Spectral analysis of periodic graphs.")
    p.add_argument("--version", action="version", version=f"pergraph {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(fn=fn)
        return s

    s = verb("build", cmd_build, "build a graph from a flower, isthmus or parallel spec")
    s.add_argument("family", choices=["flower", "isthmus", "parallel"])
    s.add_argument("input")
    s.add_argument("--a", type=_fraction)

    s = verb("dispersion", cmd_dispersion, "print the dispersion polynomial")
    s.add_argument("input")
    s.add_argument("--format", choices=["canonical", "latex"], default="canonical")

    s = verb("bands", cmd_bands, "tab-separated band values on a grid")
    s.add_argument("input")
    s.add_argument("--grid", type=int, default=None)
    s.add_argument("--format", choices=["tsv"], default="tsv")

    s = verb("corners", cmd_corners, "list the corner critical pairs")
    s.add_argument("input")

    s = verb("critical", cmd_critical, "algebraic and/or numeric critical point analysis")
    s.add_argument("input")
    s.add_argument("--mode", choices=["algebraic", "numeric", "both"], default="both")
    s.add_argument("--grid", type=int, default=None)

    s = verb("flatband", cmd_flatband, "exact flat-band detection")
    s.add_argument("input")
    s.add_argument("--projections", action="store_true")

    s = verb("projections", cmd_projections, "list coordinate projections")
    s.add_argument("input")

    s = verb("certify", cmd_certify, "run a certification pipeline")
    s.add_argument("pipeline", choices=["sec", "isthmus", "flower-schrodinger", "parallel"])
    s.add_argument("input")
    s.add_argument("--a", type=_fraction)
    s.add_argument("--grid", type=int, default=None)
    s.add_argument("--random-trials", type=int, default=0)

    s = verb("verify-identities", cmd_verify_identities, "symbolic isthmus identity checks")
    s.add_argument("input")

    s = verb("parallel", cmd_parallel, "check the parallel-extension claims")
    s.add_argument("input")
    s.add_argument("--a", type=_fraction, required=True)
    s.add_argument("--grid", type=int, default=None)

    s = verb("scan-t", cmd_scan_t, "band separation under scaled edge weights")
    s.add_argument("input")
    s.add_argument("--t", type=_fraction, nargs="+", required=True)
    s.add_argument("--grid", type=int, default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SpecParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GraphError, SymmetryError, DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except (ToleranceFailure, HermitianError, JacobiConvergenceError) as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
