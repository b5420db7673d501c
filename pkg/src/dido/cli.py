"""Command-line front end.

Exit codes: 0 success, 2 infeasible or failed verification (the report is
still printed), 1 input error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .extremal import (
    CurrentHyperplaneCertificate,
    FlatteningCertificate,
    UrysohnCertificate,
    arc_centers,
    bulge_body,
    isoperimetric_scan,
    pareto_vector_isoperimetric,
    solve_external_urysohn_triangle,
    stadium,
    verify_current_hyperplane,
    verify_external_optimality,
    verify_flattening_optimality,
)
from .geometry import DirectionGrid, equilateral_triangle, integral_breadth, minkowski_sum, segment, square
from .io import (
    InputError,
    dumps,
    figure_from_json,
    figure_to_json,
    round_figure,
    load_json,
    measure_from_json,
    measure_to_json,
    point_measure_from_json,
)
from .majorization import affinely_majorizes, linear_majorization_residual
from .measures import blaschke_sum, figure_measure, mixed_volume_with, surface_measure
from .render import OVERLAYS, RenderStyle, render_svg

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--grid", type=int, default=360, help="number of grid directions (even, >= 8)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("-o", "--output", help="write the result here instead of standard output")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="dido", description="Convex figures, surface measures, majorization and extremal problems.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("body", parents=[common], help="canonical form and basic quantities of a figure")
    p.add_argument("figure")
    p = sub.add_parser("measure", parents=[common], help="surface measure of a figure")
    p.add_argument("figure")
    p = sub.add_parser("sum", parents=[common], help="Minkowski (or Blaschke) sum of two figures")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--blaschke", action="store_true", help="add surface measures instead of point sets")
    p = sub.add_parser("mixedvol", parents=[common], help="mixed area V1(a, b)")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("majorize", parents=[common], help="decide whether the first measure majorizes the second")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--linear", action="store_true", help="measures on the circle (default)")
    kind.add_argument("--affine", action="store_true", help="point measures, Choquet order")
    p.add_argument("mu")
    p.add_argument("nu")

    p = sub.add_parser("solve", parents=[common], help="closed-form solution with its certificate")
    p.add_argument("problem", choices=["urysohn-triangle", "lens", "stadium"])
    p.add_argument("--side", type=float, default=1.0, help="triangle side")
    p.add_argument("--breadth", type=float, help="target integral breadth")
    p.add_argument("--a", type=float, help="lens half-width")
    p.add_argument("--r", type=float, help="lens or stadium radius")
    p.add_argument("--l", type=float, help="stadium segment length")

    p = sub.add_parser("verify", parents=[common], help="check a certificate file")
    p.add_argument("problem", choices=["urysohn", "flattening", "current-hyperplane"])
    p.add_argument("certificate")
    p.add_argument("--supp-y", action="store_true",
                   help="current-hyperplane: check ybar contact on supp(y) instead of supp(x)")

    p = sub.add_parser("pareto", parents=[common], help="Pareto-optimal body of the vector isoperimetric problem")
    p.add_argument("figures", nargs="+")
    p.add_argument("--weights", help="comma-separated positive weights (default all 1)")
    p.add_argument("--area", type=float, required=True)
    p.add_argument("--scan", type=int, default=0, help="run a perturbation scan with this many samples")

    p = sub.add_parser("render", parents=[common], help="SVG drawing of a figure or a solve result")
    p.add_argument("input")
    p.add_argument("--overlay", default=",".join(OVERLAYS),
                   help=f"comma-separated subset of {','.join(OVERLAYS)} (empty for the body only)")
    p.add_argument("--no-fill", action="store_true")
    return ap


# ------------------------------------------------------------------ helpers


def _grid(args) -> DirectionGrid:
    try:
        return DirectionGrid(args.grid)
    except ValueError as exc:
        raise InputError(f"--grid: {exc}") from None


def _figure(path: str, grid: DirectionGrid):
    return figure_from_json(load_json(path), grid)


def _circle_measure(path: str, grid: DirectionGrid):
    """A measure file, or a figure file read as its surface measure."""
    obj = load_json(path)
    if isinstance(obj, dict) and "atoms" in obj:
        return measure_from_json(obj)
    return figure_measure(figure_from_json(obj, grid))


def _need(value, flag: str, problem: str):
    if value is None:
        raise InputError(f"solve {problem}: {flag} is required")
    return value


def _body_doc(x, grid: DirectionGrid) -> dict:
    # derived numbers come from the coordinates as written, so re-reading the output is a fixed point
    x = round_figure(x)
    doc = figure_to_json(x)
    doc.update(area=x.area(), perimeter=x.perimeter(), integral_breadth=integral_breadth(x, grid))
    return doc


# ------------------------------------------------------------------ commands


def cmd_body(args):
    grid = _grid(args)
    return _body_doc(_figure(args.figure, grid), grid), EXIT_OK


def cmd_measure(args):
    grid = _grid(args)
    x = _figure(args.figure, grid)
    if x.dim < 2:
        raise InputError("measure: figure is not full-dimensional")
    return measure_to_json(surface_measure(x)), EXIT_OK


def cmd_sum(args):
    grid = _grid(args)
    a, b = _figure(args.a, grid), _figure(args.b, grid)
    if args.blaschke:
        if a.dim < 2 or b.dim < 2:
            raise InputError("sum --blaschke: both figures must be full-dimensional")
        s = blaschke_sum(a, b)
    else:
        s = minkowski_sum(a, b)
    return _body_doc(s, grid), EXIT_OK


def cmd_mixedvol(args):
    grid = _grid(args)
    a, b = _figure(args.a, grid), _figure(args.b, grid)
    # segments and points pair through their (degenerate) surface measures
    return {"V1": mixed_volume_with(figure_measure(a), b)}, EXIT_OK


def cmd_majorize(args):
    grid = _grid(args)
    if args.affine:
        mu = point_measure_from_json(load_json(args.mu))
        nu = point_measure_from_json(load_json(args.nu))
        if mu.points.shape[1:] != nu.points.shape[1:]:
            raise InputError("majorize: point measures live in different dimensions")
        cert = affinely_majorizes(mu, nu, tol=args.tol)
        doc = {"feasible": cert is not None, "order": "affine"}
    else:
        mu = _circle_measure(args.mu, grid)
        nu = _circle_measure(args.nu, grid)
        cert, resid = linear_majorization_residual(mu, nu, tol=args.tol)
        doc = {"feasible": cert is not None, "order": "linear"}
        if cert is None:
            doc["residual"] = max(resid, 0.0)
    if cert is not None:
        doc["certificate"] = cert.to_dict()
    return doc, EXIT_OK if cert is not None else EXIT_FAIL


def cmd_solve(args):
    grid = _grid(args)
    try:
        if args.problem == "urysohn-triangle":
            B = _need(args.breadth, "--breadth", args.problem)
            container = equilateral_triangle(args.side)
            body, cert = solve_external_urysohn_triangle(args.side, B, grid)
            rep = verify_external_optimality(body, container, cert, grid, args.tol)
            doc = {"problem": "urysohn", "body": _body_doc(body, grid), "container": figure_to_json(container),
                   "certificate": cert.to_dict(), "report": rep.to_dict()}
        elif args.problem == "lens":
            a = _need(args.a, "--a", args.problem)
            r = _need(args.r, "--r", args.problem)
            if not a > 0:
                raise InputError("solve lens: --a must be positive")
            if r < a:
                raise ValueError(f"infeasible radius: r={r!r} is below a={a!r}")
            if grid.n % 4:
                raise InputError("solve lens: --grid must be divisible by 4")
            container = segment((-a, 0.0), (a, 0.0))
            body, mu = bulge_body(container, r, grid)
            cert = UrysohnCertificate(mu, r)
            rep = verify_external_optimality(body, container, cert, grid, args.tol)
            doc = {"problem": "urysohn", "body": _body_doc(body, grid), "container": figure_to_json(container),
                   "certificate": cert.to_dict(), "report": rep.to_dict()}
        else:
            r = _need(args.r, "--r", args.problem)
            ell = _need(args.l, "--l", args.problem)
            if not (r > 0 and ell > 0):
                raise InputError("solve stadium: need --r > 0 and --l > 0")
            body = stadium(r, ell, grid)
            # any box well around the stadium works: the contact set is empty
            side = 2.0 * body.diameter
            container = square(side, (-side / 2, -side / 2))
            cert = FlatteningCertificate(r, ell)
            rep = verify_flattening_optimality(body, container, cert, grid, args.tol)
            doc = {"problem": "flattening", "body": _body_doc(body, grid), "container": figure_to_json(container),
                   "certificate": cert.to_dict(), "report": rep.to_dict()}
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        return {"problem": args.problem, "feasible": False, "error": str(exc)}, EXIT_FAIL
    return doc, EXIT_OK if doc["report"]["passed"] else EXIT_FAIL


def _field(doc: dict, key: str):
    if key not in doc:
        raise InputError(f"certificate file: missing field {key!r}")
    return doc[key]


def cmd_verify(args):
    grid = _grid(args)
    doc = load_json(args.certificate)
    if not isinstance(doc, dict):
        raise InputError("certificate file: expected a JSON object")
    c = _field(doc, "certificate")
    try:
        if args.problem == "urysohn":
            body = figure_from_json(_field(doc, "body"), grid)
            container = figure_from_json(_field(doc, "container"), grid)
            cert = UrysohnCertificate(measure_from_json(c.get("mu", {"atoms": []})), float(_field(c, "alpha")))
            rep = verify_external_optimality(body, container, cert, grid, args.tol)
        elif args.problem == "flattening":
            body = figure_from_json(_field(doc, "body"), grid)
            container = figure_from_json(_field(doc, "container"), grid)
            cert = FlatteningCertificate(float(_field(c, "alpha")), float(_field(c, "beta")),
                                         measure_from_json(c.get("residual", {"atoms": []})),
                                         float(c.get("zbar", math.pi / 2)))
            rep = verify_flattening_optimality(body, container, cert, grid, args.tol)
        else:
            xbar = figure_from_json(_field(doc, "xbar"), grid)
            ybar = figure_from_json(_field(doc, "ybar"), grid)
            container = figure_from_json(_field(doc, "container"), grid)
            cert = CurrentHyperplaneCertificate(float(_field(c, "alpha")), float(_field(c, "beta")),
                                                figure_from_json(_field(c, "x"), grid),
                                                figure_from_json(_field(c, "y"), grid),
                                                float(c.get("z0", 0.0)))
            rep = verify_current_hyperplane(xbar, ybar, container, cert, grid, args.tol, literal=not args.supp_y)
    except (TypeError, AttributeError):
        raise InputError("certificate file: malformed certificate fields") from None
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"certificate: {exc}") from None
    out = rep.to_dict()
    return out, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_pareto(args):
    grid = _grid(args)
    ys = [_figure(f, grid) for f in args.figures]
    if args.weights:
        try:
            w = [float(v) for v in args.weights.split(",")]
        except ValueError:
            raise InputError("--weights: expected comma-separated numbers") from None
    else:
        w = [1.0] * len(ys)
    if len(w) != len(ys):
        raise InputError("--weights: one weight per figure")
    try:
        body, pt = pareto_vector_isoperimetric(ys, w, args.area)
    except ValueError as exc:
        raise InputError(f"pareto: {exc}") from None
    doc = {"problem": "vector-isoperimetric", "body": _body_doc(body, grid)}
    doc.update(pt.to_dict())
    code = EXIT_OK
    if args.scan > 0:
        res = isoperimetric_scan(body, ys, grid, samples=args.scan, seed=args.seed, tol=args.tol)
        doc["scan"] = res.to_dict()
        code = EXIT_OK if res.passed else EXIT_FAIL
    return doc, code


def cmd_render(args):
    grid = _grid(args)
    doc = load_json(args.input)
    overlays = [o for o in args.overlay.split(",") if o]
    try:
        style = RenderStyle(fill=not args.no_fill, overlays=overlays)
    except ValueError as exc:
        raise InputError(f"--overlay: {exc}") from None
    container = centers = atoms = None
    if isinstance(doc, dict) and "body" in doc:
        body = figure_from_json(doc["body"], grid)
        if "container" in doc:
            container = figure_from_json(doc["container"], grid)
        cert = doc.get("certificate") or {}
        if "mu" in cert:
            atoms = measure_from_json(cert["mu"])
        if doc.get("problem") == "urysohn" and container is not None and container.dim == 2 and "alpha" in cert:
            try:
                centers = arc_centers(container, float(cert["alpha"]))
            except ValueError:
                centers = None
        if atoms is not None and len(atoms) == 0:
            atoms = None
    else:
        body = figure_from_json(doc, grid)
    try:
        svg = render_svg(body, style, container=container, centers=centers, atoms=atoms)
    except ValueError as exc:
        raise InputError(f"render: {exc}") from None
    return svg, EXIT_OK


COMMANDS = {
    "body": cmd_body,
    "measure": cmd_measure,
    "sum": cmd_sum,
    "mixedvol": cmd_mixedvol,
    "majorize": cmd_majorize,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "pareto": cmd_pareto,
    "render": cmd_render,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        result, code = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"dido {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = result if isinstance(result, str) else dumps(result)
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"dido {args.command}: cannot write {args.output}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
