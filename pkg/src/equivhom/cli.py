"""Command-line front end: one JSON scenario per invocation.

Exit status: 0 on success, 1 when the input is well formed but fails
validation, 2 for unreadable files, malformed JSON or schema violations.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from typing import Any, Callable

import jsonschema

from . import equiv_homology as eh
from . import gcw
from . import invariants as inv
from .groups import FiniteGroup, GroupOrderError, HomomorphismError, group_from_json
from .resolutions import ResolutionBudgetError, standard_resolution, verify_resolution
from .series import TruncSeries
from .vps import ScenarioError, evaluate, scenario_from_json

EXIT_OK, EXIT_INVALID, EXIT_SCHEMA = 0, 1, 2


class ValidationFailure(Exception):
    """Raised by a command whose checks did not pass; carries the report."""

    def __init__(self, report: dict, text: list[str]):
        super().__init__("validation failed")
        self.report = report
        self.text = text


def load_schema() -> dict:
    with resources.files("equivhom").joinpath("schemas/scenario.schema.json").open() as fh:
        return json.load(fh)


def _row(label: str, values, width: int) -> str:
    return label + " ".join(str(v).rjust(width) for v in values)


def dims_table(*rows: tuple[str, list[int]]) -> list[str]:
    """``k:`` header plus one aligned line per ``(label, dims)`` pair."""
    ks = list(range(len(rows[0][1])))
    width = max(len(str(v)) for v in ks + [d for _, dims in rows for d in dims])
    pad = max(len(label) for label, _ in rows + (("k", []),)) + 2
    return [_row("k:".ljust(pad), ks, width)] + [_row(f"{label}:".ljust(pad), dims, width) for label, dims in rows]


def _group_line(g: FiniteGroup) -> str:
    return f"group: {g.name or 'G'} (order {g.order})"


def _complex_and_group(sc: dict) -> tuple[gcw.GCWComplex, FiniteGroup]:
    g = group_from_json(sc["group"]) if "group" in sc else None
    x = gcw.from_json(sc["complex"], g)
    return x, x.group


def _resolution_kind(g: FiniteGroup, choice: str) -> str:
    return standard_resolution(g, 1, choice).kind


def cmd_homology(sc: dict, opts: argparse.Namespace) -> tuple[dict, list[str]]:
    x, g = _complex_and_group(sc)
    dims = eh.equivariant_homology_dims(g, x, opts.cutoff, opts.resolution)
    report: dict[str, Any] = {
        "command": "homology", "group_order": g.order, "cutoff": opts.cutoff,
        "resolution": _resolution_kind(g, opts.resolution), "homology": dims,
    }
    text = [_group_line(g), f"resolution: {report['resolution']}", f"cutoff: {opts.cutoff}"]
    rows = [("dim", dims)]
    if sc.get("cohomology"):
        co = eh.cohomology_dims(g, x, opts.cutoff, opts.resolution)
        report["cohomology"] = co
        rows.append(("codim", co))
    return report, text + dims_table(*rows)


def _page_lines(page: eh.SpectralPage) -> list[str]:
    nq = len(page.dims[0]) if page.dims else 0
    cells = [[("." if v is None else str(v)) for v in page.row(q)] for q in range(nq)]
    width = max((len(c) for row in cells for c in row), default=1)
    width = max(width, len(str(len(page.dims) - 1)))
    lab = len(f"q={nq - 1}")
    out = [f"E^{page.r}"]
    for q in reversed(range(nq)):
        out.append(f"q={q}".ljust(lab) + " | " + " ".join(c.rjust(width) for c in cells[q]))
    out.append(" " * lab + " + " + " ".join(str(p).rjust(width) for p in range(len(page.dims))))
    return out


def cmd_spectral(sc: dict, opts: argparse.Namespace) -> tuple[dict, list[str]]:
    x, g = _complex_and_group(sc)
    pages = eh.spectral_pages(g, x, opts.pages, opts.cutoff, opts.resolution)
    stable = eh.stable_page_index(x)
    report = {
        "command": "spectral", "cutoff": opts.cutoff, "stable_page": stable,
        "resolution": _resolution_kind(g, opts.resolution),
        "pages": {str(p.r): [list(p.row(q)) for q in range(x.dim + 1)] for p in pages},
    }
    text = [_group_line(g), f"resolution: {report['resolution']}",
            f"pages E^1..E^{len(pages)}; E^{stable} = E^infinity; rows q, columns p"]
    for p in pages:
        text += [""] + _page_lines(p)
    return report, text


def cmd_series(sc: dict, opts: argparse.Namespace) -> tuple[dict, list[str]]:
    expr, g, _ = scenario_from_json(sc)
    s: TruncSeries = evaluate(expr, g, opts.cutoff, opts.resolution)
    report = {"command": "series", "cutoff": opts.cutoff, "series": s.to_json(), "text": s.render()}
    return report, [_group_line(g), f"beta = {s.render()}", "coefficients: " + " ".join(map(str, s))]


def _action(desc: dict, sc: dict) -> inv.LinearGroupAction:
    d = dict(desc)
    if "group" not in d:
        if "group" not in sc:
            raise ScenarioError("quotient scenario needs a group")
        d["group"] = sc["group"]
    return inv.action_from_json(d)


def _q(v: Fraction) -> str:
    return str(v)


def cmd_quotient(sc: dict, opts: argparse.Namespace) -> tuple[dict, list[str]]:
    a = _action(sc["action"], sc)
    gs = inv.invariant_generators(a)
    names = [f"x{i + 1}" for i in range(a.dim)]
    znames = [f"z{i + 1}" for i in range(len(gs.gens))]
    report: dict[str, Any] = {
        "command": "quotient", "dim": a.dim, "group_order": a.group.order,
        "generators": [g.render(names) for g in gs.gens],
        "certificate": {str(k): list(v) for k, v in sorted(gs.certificate.items())},
        "complete": gs.complete,
    }
    text = [_group_line(a.group), f"dimension: {a.dim}", "generators:"]
    text += [f"  {line}" for line in gs.lines(names)]
    text.append(f"complete up to degree {gs.bound}: {'yes' if gs.complete else 'NO'}")
    failed = not gs.complete
    D = sc.get("relations_degree")
    if D is not None:
        rels = inv.relations(gs, int(D))
        report["relations_degree"] = int(D)
        report["relations"] = [r.render(znames) for r in rels]
        text.append(f"relations up to weighted degree {D}:")
        text += [f"  {r.render(znames)} = 0" for r in rels] or ["  none"]
    if "sample" in sc:
        rep = inv.orbit_separation_check(gs, a, sc["sample"])
        report["separation"] = {"pairs": rep.pairs_checked, "violations": [list(v) for v in rep.violations]}
        text.append(f"orbit separation: {rep.pairs_checked} pairs, {len(rep.violations)} violations")
        failed |= not rep.ok
    if "points" in sc:
        rows = []
        for pt in sc["points"]:
            img = inv.quotient_eval(gs, pt)
            rank = inv.jacobian_rank_at(gs, pt)
            stab = len(a.stabilizer(pt))
            rows.append({"point": [_q(Fraction(v)) for v in pt], "image": [_q(v) for v in img],
                         "jacobian_rank": rank, "stabilizer_order": stab})
            text.append(f"pi({', '.join(_q(Fraction(v)) for v in pt)}) = ({', '.join(_q(v) for v in img)}); "
                        f"jacobian rank {rank}; stabilizer order {stab}")
        report["points"] = rows
    if "target" in sc:
        b = _action(sc["target"], sc)
        gb = inv.invariant_generators(b)
        psi = [inv.RatPoly.from_json(a.dim, p) for p in sc.get("psi", [])]
        rho = inv.induced_quotient_map(psi, a, b, gs, gb)
        report["target_generators"] = [g.render() for g in gb.gens]
        report["induced_map"] = [r.render(znames) for r in rho]
        text.append("target generators: " + ", ".join(g.render() for g in gb.gens))
        text.append("induced map: (" + ", ".join(r.render(znames) for r in rho) + ")")
    if failed:
        raise ValidationFailure(report, text)
    return report, text


def cmd_group_homology(sc: dict, opts: argparse.Namespace) -> tuple[dict, list[str]]:
    g = group_from_json(sc.get("group", {"kind": "cyclic", "n": 2}))
    dims = eh.group_homology_dims(g, opts.cutoff, opts.resolution)
    report = {"command": "group-homology", "group_order": g.order, "cutoff": opts.cutoff,
              "resolution": _resolution_kind(g, opts.resolution), "homology": dims}
    return report, [_group_line(g), f"resolution: {report['resolution']}"] + dims_table(("dim", dims))


def cmd_verify(sc: dict, opts: argparse.Namespace) -> tuple[dict, list[str]]:
    report: dict[str, Any] = {"command": "verify"}
    text: list[str] = []
    ok = True
    if "complex" in sc:
        x, g = _complex_and_group(sc)
        crep = gcw.validate(x)
        report["complex"] = {"ok": crep.ok, "failures": crep.failures}
        text += ["complex:"] + [f"  {line}" for line in crep.lines()]
        ok &= crep.ok
    else:
        g = group_from_json(sc.get("group", {"kind": "cyclic", "n": 2}))
    f = standard_resolution(g, opts.cutoff + 1, opts.resolution)
    rrep = verify_resolution(f)
    report["resolution"] = {"kind": f.kind, "ranks": list(f.ranks), "valid": rrep.valid,
                            "d_squared_zero": rrep.d_squared_zero, "defects": rrep.defects}
    text += [f"resolution: {f.kind}, ranks {' '.join(map(str, f.ranks))}"]
    text += [f"  {line}" for line in rrep.lines()]
    ok &= rrep.valid
    text.append("all checks passed" if ok else "CHECKS FAILED")
    if not ok:
        raise ValidationFailure(report, text)
    return report, text


COMMANDS: dict[str, Callable[[dict, argparse.Namespace], tuple[dict, list[str]]]] = {
    "homology": cmd_homology,
    "spectral": cmd_spectral,
    "series": cmd_series,
    "quotient": cmd_quotient,
    "group-homology": cmd_group_homology,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equivhom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="action", required=True)
    run = sub.add_parser("run", help="run one scenario file")
    run.add_argument("scenario", help="path to a JSON scenario ('-' reads standard input)")
    run.add_argument("--cutoff", type=int, default=None, help="highest degree computed (default 16)")
    run.add_argument("--resolution", choices=["auto", "bar", "periodic"], default=None)
    run.add_argument("--format", choices=["text", "json"], default=None)
    run.add_argument("--pages", type=int, default=None, help="last spectral page to print")
    sub.add_parser("schema", help="print the scenario JSON schema")
    return parser


def _emit(report: dict, text: list[str], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(text) + "\n")


def run(path: str, cutoff: int | None = None, resolution: str | None = None, fmt: str | None = None,
        pages: int | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        raw = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        sc = json.loads(raw)
    except OSError as exc:
        err.write(f"error: cannot read {path}: {exc}\n")
        return EXIT_SCHEMA
    except json.JSONDecodeError as exc:
        err.write(f"error: malformed JSON: {exc}\n")
        return EXIT_SCHEMA
    try:
        jsonschema.validate(sc, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(map(str, exc.absolute_path)) or "<root>"
        err.write(f"error: schema violation at {where}: {exc.message}\n")
        return EXIT_SCHEMA
    opts = argparse.Namespace(
        cutoff=cutoff if cutoff is not None else sc.get("cutoff", eh.DEFAULT_CUTOFF),
        resolution=resolution or sc.get("resolution", "auto"),
        pages=pages if pages is not None else sc.get("pages"),
    )
    fmt = fmt or sc.get("format", "text")
    if opts.cutoff < 0:
        err.write("error: cutoff must be non-negative\n")
        return EXIT_SCHEMA
    sc = dict(sc, cutoff=opts.cutoff)
    try:
        report, text = COMMANDS[sc["command"]](sc, opts)
    except ValidationFailure as exc:
        _emit(exc.report, exc.text, fmt, out)
        return EXIT_INVALID
    except (gcw.DescriptorError, ScenarioError) as exc:
        if isinstance(exc.__cause__, HomomorphismError):
            err.write(f"invalid: {exc}\n")
            return EXIT_INVALID
        err.write(f"error: {exc}\n")
        return EXIT_SCHEMA
    except (eh.InvalidComplex, gcw.NonFreeAction, inv.ActionError, inv.QuotientMapError,
            HomomorphismError, GroupOrderError, ResolutionBudgetError, ValueError) as exc:
        err.write(f"invalid: {exc}\n")
        return EXIT_INVALID
    _emit(report, text, fmt, out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.action == "schema":
        sys.stdout.write(json.dumps(load_schema(), indent=2) + "\n")
        return EXIT_OK
    return run(args.scenario, args.cutoff, args.resolution, args.format, args.pages)


if __name__ == "__main__":
    sys.exit(main())
