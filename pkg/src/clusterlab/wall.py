"""The rank-3 skew-symmetric pattern whose exchange graph is a two-layer brick wall.

Cluster variables are y_m (m in Z), attached to bricks, plus w and z for the
two unbounded regions.  Starting from t0 with cluster (y1, y2, y3), the median
of the wall is walked by exchanging positions 0, 1, 2, 0, ... (giving y4, y5,
...) and 2, 1, 0, 2, ... (giving y0, y-1, ...).  w replaces y2 at t0 and z
replaces y3 at t1 = mu_0(t0).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .explorer import ExchangeGraph, explore
from .laurent import LaurentPoly, denominator_vector
from .matrix import ExchangeMatrix
from .seed import initial_seed, mutate_seed

__all__ = [
    "brick_wall_matrix",
    "wall_variables",
    "closed_form_denominator",
    "WallReport",
    "verify_wall",
    "wall_table",
]


def brick_wall_matrix() -> ExchangeMatrix:
    return ExchangeMatrix.from_rows([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])


def _name(m: int) -> str:
    return f"y{m}"


def wall_variables(lo: int = -4, hi: int = 8) -> dict[str, LaurentPoly]:
    """y_lo..y_hi, w and z expanded in the initial cluster (y1, y2, y3)."""
    if lo > 1 or hi < 3:
        raise ValueError("range must contain 1..3")
    t0 = initial_seed(brick_wall_matrix(), names=("y1", "y2", "y3"))
    out = {_name(m): t0.cluster[m - 1] for m in (1, 2, 3)}
    s = t0
    for m in range(4, hi + 1):
        k = (m - 4) % 3
        s = mutate_seed(s, k)
        out[_name(m)] = s.cluster[k]
    s = t0
    for m in range(0, lo - 1, -1):
        k = 2 - (-m) % 3
        s = mutate_seed(s, k)
        out[_name(m)] = s.cluster[k]
    out["w"] = mutate_seed(t0, 1).cluster[1]
    out["z"] = mutate_seed(mutate_seed(t0, 0), 2).cluster[2]
    return out


def closed_form_denominator(name: str) -> tuple[int, int, int]:
    if name == "w":
        return (0, 1, 0)
    if name == "z":
        return (1, 0, 1)
    m = int(name[1:])
    if m in (1, 2, 3):
        return tuple(-1 if i == m - 1 else 0 for i in range(3))  # type: ignore[return-value]
    if m % 2:
        if m >= 3:
            k = (m - 3) // 2
            return (k, k, k - 1)
        k = (1 - m) // 2
        return (k - 1, k, k)
    if m >= 4:
        k = (m - 4) // 2
        return (k + 1, k, k)
    k = -m // 2
    return (k, k, k + 1)


def _relations(lo: int, hi: int) -> list[tuple[str, str, tuple, tuple]]:
    """The five relation shapes instantiated for every m with all names in lo..hi.

    Each entry is (shape, label, lhs factors, rhs terms); a term is a tuple of
    factor names, the empty tuple meaning 1.
    """
    out = []
    ok = lambda *ms: all(lo <= m <= hi for m in ms)  # noqa: E731
    y = _name
    for m in range(-20, 20):
        if ok(2 * m, 2 * m - 1, 2 * m + 1):
            out.append(("w*y2m", f"m={m}", ("w", y(2 * m)), ((y(2 * m - 1),), (y(2 * m + 1),))))
        if ok(2 * m - 1, 2 * m + 3, 2 * m + 1):
            out.append(("y2m-1*y2m+3", f"m={m}", (y(2 * m - 1), y(2 * m + 3)), ((y(2 * m + 1), y(2 * m + 1)), ("w",))))
        if ok(m, m + 3):
            out.append(("ym*ym+3", f"m={m}", (y(m), y(m + 3)), ((y(m + 1), y(m + 2)), ())))
        if ok(2 * m - 2, 2 * m + 2):
            out.append(("y2m-2*y2m+2", f"m={m}", (y(2 * m - 2), y(2 * m + 2)), ((y(2 * m), y(2 * m)), ("z",))))
        if ok(2 * m - 1, 2 * m - 2, 2 * m):
            out.append(("y2m-1*z", f"m={m}", (y(2 * m - 1), "z"), ((y(2 * m - 2),), (y(2 * m),))))
    return out


def _product(vs: dict[str, LaurentPoly], names: tuple) -> LaurentPoly:
    out = LaurentPoly.constant(3, 1)
    for n in names:
        out = out * vs[n]
    return out


def _tropical(ds: dict[str, tuple[int, ...]], names: tuple) -> tuple[int, ...]:
    out = (0, 0, 0)
    for n in names:
        out = tuple(a + b for a, b in zip(out, ds[n]))
    return out


@dataclass
class WallReport:
    denominators: dict[str, tuple[int, ...]]
    denominator_mismatches: list[str] = field(default_factory=list)
    relation_counts: dict[str, int] = field(default_factory=dict)
    relation_failures: list[str] = field(default_factory=list)
    tropical_failures: list[str] = field(default_factory=list)
    distinct: bool = True
    graph_vertices: int = 0
    missing_from_graph: list[str] = field(default_factory=list)
    bad_vertices: list[int] = field(default_factory=list)
    bad_edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            not self.denominator_mismatches
            and not self.relation_failures
            and not self.tropical_failures
            and self.distinct
            and not self.missing_from_graph
            and not self.bad_vertices
            and not self.bad_edges
            and len(self.relation_counts) == 5
        )

    def to_dict(self) -> dict:
        return {
            "denominators": {k: list(v) for k, v in self.denominators.items()},
            "denominator_mismatches": self.denominator_mismatches,
            "relation_counts": self.relation_counts,
            "relation_failures": self.relation_failures,
            "tropical_failures": self.tropical_failures,
            "distinct": self.distinct,
            "graph_vertices": self.graph_vertices,
            "missing_from_graph": self.missing_from_graph,
            "bad_vertices": self.bad_vertices,
            "bad_edges": [list(e) for e in self.bad_edges],
            "ok": self.ok,
        }


def _wall_shape(regions: frozenset[str]) -> bool:
    ms = sorted(int(r[1:]) for r in regions if r.startswith("y"))
    if "w" in regions:
        return len(ms) == 2 and ms[0] % 2 == 1 and ms[1] == ms[0] + 2
    if "z" in regions:
        return len(ms) == 2 and ms[0] % 2 == 0 and ms[1] == ms[0] + 2
    return len(ms) == 3 and ms[1] == ms[0] + 1 and ms[2] == ms[0] + 2


def verify_wall(lo: int = -4, hi: int = 8, depth: int = 5) -> WallReport:
    """Denominators against the closed forms, the five relation shapes (exact and
    tropical), and the wall structure of the explored graph around t0.
    """
    vs = wall_variables(lo, hi)
    ds = {k: denominator_vector(v) for k, v in vs.items()}
    report = WallReport(ds)
    report.denominator_mismatches = [k for k in vs if ds[k] != closed_form_denominator(k)]
    report.distinct = len(set(ds.values())) == len(ds)
    for shape, label, lhs, rhs in _relations(lo, hi):
        report.relation_counts[shape] = report.relation_counts.get(shape, 0) + 1
        left = _product(vs, lhs)
        right = _product(vs, rhs[0]) + _product(vs, rhs[1])
        if left != right:
            report.relation_failures.append(f"{shape} {label}")
        a, b = _tropical(ds, rhs[0]), _tropical(ds, rhs[1])
        if a != b and _tropical(ds, lhs) != tuple(max(x, y) for x, y in zip(a, b)):
            report.tropical_failures.append(f"{shape} {label}")
    g = explore(brick_wall_matrix(), max_depth=depth, max_vertices=10_000)
    _check_graph(g, vs, report)
    return report


def _check_graph(g: ExchangeGraph, vs: dict[str, LaurentPoly], report: WallReport) -> None:
    """Every explored vertex whose cluster is fully named sits on the wall, and two
    such vertices are adjacent iff they share two regions.
    """
    report.graph_vertices = len(g.seeds)
    census = g.cluster_variables()
    report.missing_from_graph = [k for k, v in vs.items() if v not in census]
    names = {v: k for k, v in vs.items()}
    regions: dict[int, frozenset[str]] = {}
    for v, s in enumerate(g.seeds):
        if all(x in names for x in s.cluster):
            regions[v] = frozenset(names[x] for x in s.cluster)
            if not _wall_shape(regions[v]):
                report.bad_vertices.append(v)
    adjacent = {(min(e.source, e.target), max(e.source, e.target)) for e in g.edges}
    named = sorted(regions)
    for a_i, a in enumerate(named):
        for b in named[a_i + 1 :]:
            shares = len(regions[a] & regions[b]) == 2
            if shares != ((a, b) in adjacent):
                report.bad_edges.append((a, b))


def wall_table(lo: int = -4, hi: int = 8) -> list[tuple[str, tuple[int, ...], tuple[int, ...]]]:
    """(region, engine denominator, closed-form denominator), bricks left to right then w, z."""
    vs = wall_variables(lo, hi)
    order = [_name(m) for m in range(lo, hi + 1)] + ["w", "z"]
    return [(k, denominator_vector(vs[k]), closed_form_denominator(k)) for k in order]
