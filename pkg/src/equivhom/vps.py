"""Equivariant virtual Poincare series of scenario expressions.

Expressions are trees over six node kinds. Leaves are finite G-CW models;
inner nodes encode the additivity, affine-factor and quotient rules, so the
value of a tree is fixed by the values on compact nonsingular leaves.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .equiv_homology import InvalidComplex, equivariant_homology_dims, group_homology_dims
from .gcw import GCWComplex, from_json as complex_from_json, homology_dims, quotient_free, validate
from .groups import FiniteGroup, group_from_json, trivial_group
from .series import DEFAULT_CUTOFF, TruncSeries


class ScenarioError(ValueError):
    """Malformed expression or scenario descriptor."""


@dataclass(frozen=True, eq=False)
class CompactNonsingular:
    x: GCWComplex


@dataclass(frozen=True, eq=False)
class Difference:
    whole: "GasExpr"
    sub: "GasExpr"


@dataclass(frozen=True, eq=False)
class DisjointUnion:
    parts: tuple["GasExpr", ...]


@dataclass(frozen=True, eq=False)
class AffineFactor:
    base: "GasExpr"
    d: int


@dataclass(frozen=True, eq=False)
class TrivialAction:
    y: GCWComplex


@dataclass(frozen=True, eq=False)
class FreeQuotient:
    x: GCWComplex


GasExpr = Union[CompactNonsingular, Difference, DisjointUnion, AffineFactor, TrivialAction, FreeQuotient]


def _poly(dims: list[int], cutoff: int) -> TruncSeries:
    return TruncSeries.from_dims(dims, cutoff)


def _checked(x: GCWComplex) -> GCWComplex:
    rep = validate(x)
    if not rep.ok:
        raise InvalidComplex("invalid leaf complex: " + "; ".join(rep.failures))
    return x


def evaluate(e: GasExpr, g: FiniteGroup, cutoff: int = DEFAULT_CUTOFF, resolution: str = "auto") -> TruncSeries:
    """``beta(e; G)`` truncated after ``u^cutoff``.

    Shared sub-expressions (the same node object reached twice) are
    evaluated once per call.
    """
    memo: dict[int, TruncSeries] = {}
    group_dims: list[int] = []

    def group_series() -> TruncSeries:
        if not group_dims:
            group_dims.extend(group_homology_dims(g, cutoff, resolution))
        return _poly(group_dims, cutoff)

    def leaf_group(x: GCWComplex) -> None:
        if not g.same_table(x.group):
            raise ScenarioError("leaf complex is not over the scenario group")

    def go(node: GasExpr) -> TruncSeries:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, CompactNonsingular):
            leaf_group(node.x)
            val = _poly(equivariant_homology_dims(g, _checked(node.x), cutoff, resolution), cutoff)
        elif isinstance(node, Difference):
            val = go(node.whole) - go(node.sub)
        elif isinstance(node, DisjointUnion):
            val = TruncSeries.zero(cutoff)
            for part in node.parts:
                val = val + go(part)
        elif isinstance(node, AffineFactor):
            if node.d < 0:
                raise ScenarioError("affine factor dimension must be non-negative")
            val = go(node.base).shift(node.d)
        elif isinstance(node, TrivialAction):
            val = _poly(homology_dims(_checked(node.y)), cutoff) * group_series()
        elif isinstance(node, FreeQuotient):
            leaf_group(node.x)
            val = _poly(homology_dims(quotient_free(_checked(node.x))), cutoff)
        else:
            raise ScenarioError(f"unknown expression node {type(node).__name__}")
        memo[key] = val
        return val

    return go(e)


def evaluate_nonequivariant(e: GasExpr, cutoff: int = DEFAULT_CUTOFF) -> TruncSeries:
    """Virtual Poincare polynomial: ``evaluate`` over the trivial group."""
    return evaluate(e, trivial_group(), cutoff)


# -- JSON ---------------------------------------------------------------------

def expr_from_json(desc: dict, group: FiniteGroup, definitions: dict | None = None) -> GasExpr:
    """Parse an expression node.

    Kinds: ``compact_nonsingular``/``trivial_action``/``free_quotient``
    (with ``complex``), ``difference`` (``whole``, ``sub``),
    ``disjoint_union`` (``parts``), ``affine`` (``base``, ``d``) and
    ``ref`` (``name`` from ``definitions``). Each name is built once, so
    repeated references share a node.
    """
    raw_defs = dict(definitions or {})
    built: dict[str, GasExpr] = {}
    active: set[str] = set()

    def leaf(d: dict, g: FiniteGroup | None) -> GCWComplex:
        try:
            return complex_from_json(d["complex"], g)
        except KeyError as exc:
            raise ScenarioError(f"leaf node needs a 'complex': {d}") from exc

    def go(d) -> GasExpr:
        if not isinstance(d, dict) or "kind" not in d:
            raise ScenarioError(f"expression node must be an object with a 'kind': {d!r}")
        kind = d["kind"]
        try:
            if kind == "compact_nonsingular":
                return CompactNonsingular(leaf(d, group))
            if kind == "free_quotient":
                return FreeQuotient(leaf(d, group))
            if kind == "trivial_action":
                y = leaf(d, trivial_group())
                return TrivialAction(y.forget_action())
            if kind == "difference":
                return Difference(go(d["whole"]), go(d["sub"]))
            if kind == "disjoint_union":
                return DisjointUnion(tuple(go(p) for p in d["parts"]))
            if kind == "affine":
                return AffineFactor(go(d["base"]), int(d["d"]))
            if kind == "ref":
                name = d["name"]
                if name in built:
                    return built[name]
                if name not in raw_defs:
                    raise ScenarioError(f"undefined reference {name!r}")
                if name in active:
                    raise ScenarioError(f"cyclic reference {name!r}")
                active.add(name)
                built[name] = go(raw_defs[name])
                active.discard(name)
                return built[name]
        except KeyError as exc:
            raise ScenarioError(f"node of kind {kind!r} is missing {exc}") from exc
        raise ScenarioError(f"unknown node kind {kind!r}")

    return go(desc)


def scenario_from_json(desc: dict) -> tuple[GasExpr, FiniteGroup, int]:
    group = group_from_json(desc.get("group", {"kind": "cyclic", "n": 2}))
    cutoff = int(desc.get("cutoff", DEFAULT_CUTOFF))
    expr = expr_from_json(desc["expr"], group, desc.get("definitions"))
    return expr, group, cutoff


# -- worked scenarios -----------------------------------------------------------

@dataclass(frozen=True)
class RecordedExpectation:
    name: str
    expected: tuple[int, ...]  # leading coefficients; the tail repeats the last one
    disputed: bool = False
    note: str = ""

    def series(self, cutoff: int) -> TruncSeries:
        c = list(self.expected[: cutoff + 1])
        c += [self.expected[-1]] * (cutoff + 1 - len(c))
        return TruncSeries(tuple(c))


def _z2_nodes():
    from .gcw import circle_two_fixed, free_orbit_points, point_trivial, sphere_antipodal
    from .groups import cyclic

    g = cyclic(2)
    return g, {
        "point": CompactNonsingular(point_trivial(g)),
        "circle_two_fixed": CompactNonsingular(circle_two_fixed(g)),
        "swapped_pair": FreeQuotient(free_orbit_points(g)),
        "antipodal_circle": FreeQuotient(sphere_antipodal(1, g)),
    }


def worked_scenarios() -> dict[str, tuple[GasExpr, FiniteGroup]]:
    """Hand-built decompositions of the affine line, hyperbolas and the figure-eight over ``Z/2``."""
    g, n = _z2_nodes()
    pt = n["point"]
    return {
        "affine_line": (AffineFactor(pt, 1), g),
        "affine_plane": (AffineFactor(pt, 2), g),
        "affine_space_3": (AffineFactor(pt, 3), g),
        "hyperbola_antipodal": (Difference(n["circle_two_fixed"], DisjointUnion((pt, pt))), g),
        "hyperbola_swap": (Difference(n["circle_two_fixed"], n["swapped_pair"]), g),
        # node fixed, lobes swapped: two free open arcs plus the node
        "figure_eight_sigma1": (
            DisjointUnion((Difference(n["antipodal_circle"], n["swapped_pair"]), pt)),
            g,
        ),
        # normalization circle with two fixed points, node preimages swapped, node fixed
        "figure_eight_sigma2": (
            DisjointUnion((Difference(n["circle_two_fixed"], n["swapped_pair"]), pt)),
            g,
        ),
        # both node preimages fixed, glued to one fixed node
        "figure_eight_sigma3": (
            DisjointUnion((Difference(n["circle_two_fixed"], DisjointUnion((pt, pt))), pt)),
            g,
        ),
    }


RECORDED = {
    "affine_line": RecordedExpectation("affine_line", (0, 1)),
    "affine_plane": RecordedExpectation("affine_plane", (0, 0, 1)),
    "affine_space_3": RecordedExpectation("affine_space_3", (0, 0, 0, 1)),
    "hyperbola_antipodal": RecordedExpectation("hyperbola_antipodal", (-1, 0)),
    "hyperbola_swap": RecordedExpectation("hyperbola_swap", (0, 2)),
    "figure_eight_sigma1": RecordedExpectation("figure_eight_sigma1", (1, 2, 1)),
    "figure_eight_sigma3": RecordedExpectation("figure_eight_sigma3", (0, 1)),
    "figure_eight_sigma2": RecordedExpectation(
        "figure_eight_sigma2", (1, 3),
        note="from the decomposition above: (1+2u)/(1-u)",
    ),
    "figure_eight_sigma2_published": RecordedExpectation(
        "figure_eight_sigma2", (1, 2), disputed=True,
        note="published value 1 + sum 2u^q; disagrees with the decomposition",
    ),
}
