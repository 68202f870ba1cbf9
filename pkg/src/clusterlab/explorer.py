"""Breadth-first exploration of exchange graphs modulo seed equivalence.

Two seeds are equivalent when their clusters agree up to a relabeling sigma
of the exchangeable indices and the exchange data (matrix columns/rows within
the index set, frozen rows, coefficient tuple) agree under the same sigma.
The canonical key sorts the cluster, which fixes sigma uniquely because the
entries of a cluster are pairwise distinct.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .laurent import LaurentPoly, denominator_vector
from .matrix import ExchangeMatrix
from .seed import ExchangeRelationRecord, Seed, apply_sequence, coeffs_to_json, exchange_relation, initial_seed, mutate_seed
from .semifield import SemifieldElem

__all__ = [
    "CanonicalSeedKey",
    "Equivalence",
    "Edge",
    "ExchangeGraph",
    "CycleReport",
    "canonical_key",
    "seeds_equivalent",
    "explore",
    "export_dot",
    "export_json",
    "import_json",
    "alternating_cycle",
]

GRAPH_FORMAT = "clusterlab-graph-v1"


@dataclass(frozen=True, eq=False)
class CanonicalSeedKey:
    """Sorted cluster plus exchange data relabeled by sigma.

    ``sigma[p]`` is the original index of the cluster entry at sorted
    position p.  Equality compares digests first and then the full key.
    """

    cluster: tuple[LaurentPoly, ...]
    matrix: ExchangeMatrix
    coeffs: tuple[SemifieldElem, ...] | None
    sigma: tuple[int, ...]

    @property
    def digest(self) -> str:
        d = self.__dict__.get("_digest")
        if d is None:
            payload = {
                "cluster": [x.to_json() for x in self.cluster],
                "matrix": [list(r) for r in self.matrix.rows],
                "coeffs": coeffs_to_json(self.coeffs) if self.coeffs is not None else None,
            }
            d = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
            object.__setattr__(self, "_digest", d)
        return d

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalSeedKey):
            return NotImplemented
        return (
            self.digest == other.digest
            and self.cluster == other.cluster
            and self.matrix == other.matrix
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return int(self.digest[:16], 16)


def _sort_order(cluster: Sequence[LaurentPoly]) -> tuple[int, ...]:
    return tuple(sorted(range(len(cluster)), key=lambda i: cluster[i].sort_key()))


def canonical_key(s: Seed) -> CanonicalSeedKey:
    sigma = _sort_order(s.cluster)
    coeffs = tuple(s.coeffs[i] for i in sigma) if s.coeffs is not None else None
    return CanonicalSeedKey(tuple(s.cluster[i] for i in sigma), s.matrix.permuted(sigma), coeffs, sigma)


class Equivalence(NamedTuple):
    equivalent: bool
    sigma: tuple[int, ...] | None
    condition2: bool | None
    anomaly: bool


def seeds_equivalent(s1: Seed, s2: Seed) -> Equivalence:
    """Compare two seeds; sigma satisfies x_i(s2) = x_sigma(i)(s1).

    ``equivalent`` reflects the cluster condition.  If it holds but the
    exchange data disagree under sigma, ``anomaly`` is set.
    """
    if s1.n != s2.n or s1.nvars != s2.nvars:
        return Equivalence(False, None, None, False)
    pos = {x: i for i, x in enumerate(s1.cluster)}
    try:
        sigma = tuple(pos[x] for x in s2.cluster)
    except KeyError:
        return Equivalence(False, None, None, False)
    cond2 = s1.matrix.permuted(sigma) == s2.matrix
    if s1.coeffs is not None or s2.coeffs is not None:
        cond2 = cond2 and s1.coeffs is not None and s2.coeffs is not None
        cond2 = cond2 and all(s2.coeffs[i] == s1.coeffs[sigma[i]] for i in range(s1.n))  # type: ignore[index]
    return Equivalence(True, sigma, cond2, not cond2)


@dataclass(frozen=True)
class Edge:
    """An exchange between ``(source, source_index)`` and ``(target, target_index)``.

    Indices are positions in the representative seeds of the two vertices.
    """

    source: int
    source_index: int
    target: int
    target_index: int


@dataclass
class ExchangeGraph:
    matrix: ExchangeMatrix
    seeds: list[Seed] = field(default_factory=list)
    keys: list[CanonicalSeedKey] = field(default_factory=list)
    depth: list[int] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)
    status: str = "complete"
    boundary: list[int] = field(default_factory=list)
    anomalies: list[dict] = field(default_factory=list)
    max_vertices: int | None = None
    max_depth: int | None = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExchangeGraph):
            return NotImplemented
        return (
            self.matrix == other.matrix
            and self.keys == other.keys
            and self.depth == other.depth
            and sorted(self.edges, key=_edge_order) == sorted(other.edges, key=_edge_order)
            and self.status == other.status
            and self.boundary == other.boundary
            and self.anomalies == other.anomalies
        )

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def degrees(self) -> list[int]:
        deg = [0] * len(self.seeds)
        for e in self.edges:
            deg[e.source] += 1
            deg[e.target] += 1
        return deg

    def is_regular(self) -> bool:
        """Every non-boundary vertex has exactly n incident edges."""
        skip = set(self.boundary)
        return all(d == self.n for v, d in enumerate(self.degrees()) if v not in skip)

    def relation(self, e: Edge) -> ExchangeRelationRecord:
        s = self.seeds[e.source]
        rec = exchange_relation(s, e.source_index)
        new = self.seeds[e.target].cluster[e.target_index]
        return ExchangeRelationRecord(rec.k, rec.lhs_old, new, rec.m1, rec.m2)

    def cluster_variables(self) -> set[LaurentPoly]:
        return {x for s in self.seeds for x in s.cluster}

    def neighbors(self, v: int) -> list[int]:
        out = []
        for e in self.edges:
            if e.source == v:
                out.append(e.target)
            elif e.target == v:
                out.append(e.source)
        return sorted(out)

    def is_cycle(self) -> bool:
        """Connected, 2-regular and complete."""
        if not self.complete or any(d != 2 for d in self.degrees()):
            return False
        seen = {0}
        stack = [0]
        while stack:
            for w in self.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.seeds)

    def vertex_of(self, s: Seed) -> int | None:
        key = canonical_key(s)
        for v, k in enumerate(self.keys):
            if k == key:
                return v
        return None


def _edge_order(e: Edge) -> tuple[int, int, int, int]:
    return (e.source, e.source_index, e.target, e.target_index)


def _cluster_only(key: CanonicalSeedKey) -> tuple[LaurentPoly, ...]:
    return key.cluster


def explore(
    B: ExchangeMatrix,
    max_vertices: int = 1000,
    max_depth: int | None = None,
    threads: int = 1,
    coeffs: Sequence[SemifieldElem] | None = None,
    names: Sequence[str] | None = None,
) -> ExchangeGraph:
    """Breadth-first search from the initial seed of ``B``.

    Vertex ids follow discovery order (depth, then parent id, then
    direction), so the result does not depend on ``threads``.  A vertex whose
    neighbor could not be added because of a limit is a boundary vertex and
    the status becomes "truncated".  Mutations of one BFS layer may run in
    parallel; merging is sequential.
    """
    if max_vertices < 1 or (max_depth is not None and max_depth < 0):
        raise ValueError("limits must be positive")
    root = initial_seed(B, names=names, coeffs=coeffs)
    g = ExchangeGraph(B, max_vertices=max_vertices, max_depth=max_depth)
    index: dict[CanonicalSeedKey, int] = {}
    by_cluster: dict[tuple[LaurentPoly, ...], int] = {}
    half_edges: set[tuple[int, int]] = set()
    boundary: set[int] = set()

    def add_vertex(s: Seed, key: CanonicalSeedKey, depth: int) -> int:
        v = len(g.seeds)
        g.seeds.append(s)
        g.keys.append(key)
        g.depth.append(depth)
        index[key] = v
        by_cluster.setdefault(_cluster_only(key), v)
        return v

    add_vertex(root, canonical_key(root), 0)
    layer = [0]
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while layer:
            jobs = [(v, k) for v in layer for k in range(B.n) if (v, k) not in half_edges]

            def work(job: tuple[int, int]) -> tuple[Seed, CanonicalSeedKey]:
                s = mutate_seed(g.seeds[job[0]], job[1])
                return s, canonical_key(s)

            results = list(pool.map(work, jobs)) if pool else [work(j) for j in jobs]
            nxt = []
            for (v, k), (s, key) in zip(jobs, results):
                if (v, k) in half_edges:
                    continue
                w = index.get(key)
                if w is None:
                    other = by_cluster.get(_cluster_only(key))
                    if other is not None:
                        g.anomalies.append({"vertex": other, "history": list(s.history)})
                    too_deep = max_depth is not None and g.depth[v] + 1 > max_depth
                    if too_deep or len(g.seeds) >= max_vertices:
                        boundary.add(v)
                        continue
                    w = add_vertex(s, key, g.depth[v] + 1)
                    nxt.append(w)
                # position of the new variable in w's representative
                p = key.sigma.index(k)
                kw = g.keys[w].sigma[p]
                half_edges.add((v, k))
                if (w, kw) in half_edges:
                    continue
                half_edges.add((w, kw))
                g.edges.append(Edge(v, k, w, kw))
            layer = nxt
    finally:
        if pool:
            pool.shutdown()
    g.edges.sort(key=_edge_order)
    g.boundary = sorted(boundary)
    g.status = "truncated" if boundary else "complete"
    if g.complete and not g.is_regular():
        raise AssertionError("complete exchange graph is not n-regular")
    return g


def _vertex_label(s: Seed) -> str:
    dens = sorted(denominator_vector(x, s.n) for x in s.cluster)
    return " ".join("(" + ",".join(map(str, d)) + ")" for d in dens)


def export_dot(g: ExchangeGraph) -> str:
    """DOT text; vertices labeled by sorted denominator vectors, edges by 1-based index."""
    lines = ["graph exchange {", f"  // status: {g.status}; vertices: {len(g.seeds)}; edges: {len(g.edges)}"]
    for v, s in enumerate(g.seeds):
        extra = ", style=dashed" if v in g.boundary else ""
        lines.append(f'  v{v} [label="{_vertex_label(s)}"{extra}];')
    for e in sorted(g.edges, key=_edge_order):
        label = str(e.source_index + 1)
        if e.target_index != e.source_index:
            label += f"/{e.target_index + 1}"
        lines.append(f'  v{e.source} -- v{e.target} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(g: ExchangeGraph) -> str:
    root = g.seeds[0]
    data = {
        "format": GRAPH_FORMAT,
        "matrix": g.matrix.to_dict(),
        "names": list(root.names),
        "coeffs": coeffs_to_json(root.coeffs) if root.coeffs is not None else None,
        "status": g.status,
        "limits": {"max_vertices": g.max_vertices, "max_depth": g.max_depth},
        "vertices": [
            {
                "id": v,
                "depth": g.depth[v],
                "key": g.keys[v].digest,
                "history": list(s.history),
                "cluster": [x.to_json() for x in s.cluster],
                "denominators": [list(denominator_vector(x, s.n)) for x in s.cluster],
            }
            for v, s in enumerate(g.seeds)
        ],
        "edges": [
            {"source": e.source, "source_index": e.source_index, "target": e.target, "target_index": e.target_index}
            for e in sorted(g.edges, key=_edge_order)
        ],
        "boundary": g.boundary,
        "anomalies": g.anomalies,
    }
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def import_json(text: str) -> ExchangeGraph:
    """Rebuild a graph from :func:`export_json` output; seeds are replayed from histories."""
    data = json.loads(text)
    if data.get("format") != GRAPH_FORMAT:
        raise ValueError(f"unsupported graph format {data.get('format')!r}")
    B = ExchangeMatrix.from_dict(data["matrix"])
    from .seed import coeffs_from_json

    coeffs = coeffs_from_json(data["coeffs"]) if data.get("coeffs") else None
    root = initial_seed(B, names=data["names"], coeffs=coeffs)
    limits = data.get("limits", {})
    g = ExchangeGraph(B, status=data["status"], max_vertices=limits.get("max_vertices"), max_depth=limits.get("max_depth"))
    for vert in sorted(data["vertices"], key=lambda d: d["id"]):
        s = apply_sequence(root, vert["history"])
        stored = tuple(LaurentPoly.from_json(s.nvars, t) for t in vert["cluster"])
        if stored != s.cluster:
            raise ValueError(f"vertex {vert['id']} does not match its replayed history")
        key = canonical_key(s)
        if key.digest != vert["key"]:
            raise ValueError(f"vertex {vert['id']} key mismatch")
        g.seeds.append(s)
        g.keys.append(key)
        g.depth.append(vert["depth"])
    g.edges = [Edge(e["source"], e["source_index"], e["target"], e["target_index"]) for e in data["edges"]]
    g.boundary = list(data["boundary"])
    g.anomalies = list(data["anomalies"])
    return g


@dataclass
class CycleReport:
    i: int
    j: int
    h: int
    path: tuple[int, ...]
    sigma_expected: tuple[int, ...]
    sigma_found: tuple[int, ...] | None
    cluster_ok: bool
    exchange_ok: bool
    anomaly: bool
    d_recurrence_ok: bool
    d_periodic: bool

    @property
    def ok(self) -> bool:
        return (
            self.cluster_ok
            and self.exchange_ok
            and not self.anomaly
            and self.sigma_found == self.sigma_expected
            and self.d_recurrence_ok
            and self.d_periodic
        )


_COXETER = {0: 2, 1: 3, 2: 4, 3: 6}


def alternating_cycle(s: Seed, i: int, j: int) -> CycleReport:
    """Walk the path i, j, i, ... of length h + 2 from ``s`` and compare endpoints.

    Requires |b_ij b_ji| <= 3 at ``s``.  The expected relabeling is the
    identity for even h and the transposition of i and j for h = 3.  Also
    checks, for every other exchangeable l, that d_m = b_{i_m, l}(t_m) obeys
    d_m + d_{m+2} = b_<m> max(d_{m+1}, 0) (min for the opposite orientation)
    and is periodic with period h + 2.
    """
    if i == j or not (0 <= i < s.n and 0 <= j < s.n):
        raise ValueError("need two distinct exchangeable indices")
    bij, bji = s.matrix[i, j], s.matrix[j, i]
    prod = abs(bij * bji)
    if prod > 3:
        raise ValueError(f"|b_ij b_ji| = {prod} > 3: no finite alternating cycle")
    h = _COXETER[prod]
    path = tuple(i if m % 2 == 0 else j for m in range(h + 2))
    seeds = [s]
    for k in path:
        seeds.append(mutate_seed(seeds[-1], k))
    end = seeds[-1]
    sigma = list(range(s.n))
    if h % 2:
        sigma[i], sigma[j] = j, i
    sigma_expected = tuple(sigma)
    eq = seeds_equivalent(s, end)
    cluster_ok = all(end.cluster[a] == s.cluster[sigma[a]] for a in range(s.n))
    exchange_ok = end.matrix == s.matrix.permuted(sigma_expected) and (
        s.coeffs is None or all(end.coeffs[a] == s.coeffs[sigma[a]] for a in range(s.n))  # type: ignore[index]
    )
    b = (abs(bij), abs(bji))
    use_max = bij <= 0
    rec_ok = True
    periodic = True
    for l in range(s.n):
        if l in (i, j):
            continue
        d = [seeds[m].matrix[i if m % 2 == 0 else j, l] for m in range(h + 3)]
        for m in range(h + 1):
            mid = max(d[m + 1], 0) if use_max else min(d[m + 1], 0)
            if d[m] + d[m + 2] != b[m % 2] * mid:
                rec_ok = False
        if d[h + 2] != d[0]:
            periodic = False
    return CycleReport(i, j, h, path, sigma_expected, eq.sigma, cluster_ok, exchange_ok, eq.anomaly, rec_ok, periodic)
