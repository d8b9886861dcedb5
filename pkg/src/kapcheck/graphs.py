"""Simple graphs and multigraphs: canonical forms, generation, subgraph search,
figure catalogs and the degree bookkeeping transforms."""
from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

MAX_VERTICES = 16


class GraphError(ValueError):
    pass


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} out of range")
        es = frozenset(_norm_edge(u, v) for u, v in self.edges)
        for u, v in es:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {(u, v)} outside vertex range")
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        es = [tuple(e) for e in edges]
        if len({_norm_edge(*e) for e in es}) != len(es):
            raise GraphError("parallel edges in a simple graph")
        return cls(n, frozenset(es))

    @property
    def masks(self) -> tuple[int, ...]:
        return _masks(self)

    def neighbors(self, v: int) -> list[int]:
        m = self.masks[v]
        return [u for u in range(self.n) if m >> u & 1]

    def degree(self, v: int) -> int:
        return bin(self.masks[v]).count("1")

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def degree_sequence(self) -> list[int]:
        return sorted(self.degrees(), reverse=True)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        masks = self.masks
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return SimpleGraph(self.n, frozenset(_norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "SimpleGraph":
        index = {v: i for i, v in enumerate(sorted(g.nodes))}
        return cls(len(index), frozenset(_norm_edge(index[u], index[v]) for u, v in g.edges))

    def to_graph6(self) -> str:
        return nx.to_graph6_bytes(self.to_networkx(), header=False).decode().strip()

    @classmethod
    def from_graph6(cls, text: str) -> "SimpleGraph":
        return cls.from_networkx(nx.from_graph6_bytes(text.strip().encode()))


@lru_cache(maxsize=4096)
def _masks(g: SimpleGraph) -> tuple[int, ...]:
    m = [0] * g.n
    for u, v in g.edges:
        m[u] |= 1 << v
        m[v] |= 1 << u
    return tuple(m)


@dataclass(frozen=True)
class Multigraph:
    n: int
    multiplicity: tuple = ()  # sorted ((u, v), k) pairs with u < v, k >= 1

    def __post_init__(self):
        merged: Counter = Counter()
        for (u, v), k in self.multiplicity:
            if k < 0:
                raise GraphError("negative multiplicity")
            if k:
                merged[_norm_edge(u, v)] += k
        object.__setattr__(self, "multiplicity", tuple(sorted(merged.items())))

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[Sequence[int]]) -> "Multigraph":
        c = Counter(_norm_edge(*e) for e in edges)
        return cls(n, tuple(c.items()))

    def degree(self, v: int) -> int:
        return sum(k for (a, b), k in self.multiplicity if v in (a, b))

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def max_multiplicity(self) -> int:
        return max((k for _, k in self.multiplicity), default=0)

    def text(self) -> str:
        """Vertex count on the first line, then one ``u v multiplicity`` line per edge."""
        lines = [str(self.n)] + [f"{u} {v} {k}" for (u, v), k in self.multiplicity]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Multigraph":
        rows = [ln.split() for ln in text.strip().splitlines() if ln.strip() and not ln.startswith("#")]
        if not rows:
            raise GraphError("empty multigraph text")
        n = int(rows[0][0])
        return cls(n, tuple(((int(r[0]), int(r[1])), int(r[2])) for r in rows[1:]))


def simplify_multigraph(m: Multigraph | SimpleGraph) -> SimpleGraph:
    if isinstance(m, SimpleGraph):
        return m
    return SimpleGraph(m.n, frozenset(e for e, k in m.multiplicity if k))


@dataclass(frozen=True)
class AnnotatedGraph:
    """A graph (simple or multi) with a per-vertex requirement label."""

    name: str
    graph: SimpleGraph | Multigraph
    annotations: tuple[str, ...]
    caption_annotation: str = ""

    @property
    def simple(self) -> SimpleGraph:
        return simplify_multigraph(self.graph)


# -- canonical labeling ------------------------------------------------------------


def _refine(masks: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement, splitting cells in a label-independent order."""
    changed = True
    while changed:
        changed = False
        out: list[list[int]] = []
        cell_masks = [sum(1 << v for v in c) for c in cells]
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple(bin(masks[v] & cm).count("1") for cm in cell_masks) for v in cell}
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) > 1:
                changed = True
                for key in sorted(groups):
                    out.append(groups[key])
            else:
                out.append(cell)
        cells = out
    return cells


def _certificate(masks: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        m = masks[v]
        row = 0
        while m:
            low = m & -m
            row |= 1 << pos[low.bit_length() - 1]
            m ^= low
        rows.append(row)
    return tuple(rows)


def canonical_labeling(g: SimpleGraph) -> tuple[tuple[int, ...], list[int]]:
    """Certificate and the vertex order achieving it (individualize and refine)."""
    masks = g.masks
    degs = g.degrees()
    init: dict[int, list[int]] = {}
    for v in range(g.n):
        init.setdefault(degs[v], []).append(v)
    cells = _refine(masks, [init[d] for d in sorted(init)])
    best: list = [None, None]

    def search(cells: list[list[int]]):
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            cert = _certificate(masks, order)
            if best[0] is None or cert > best[0]:
                best[0], best[1] = cert, order
            return
        for v in cells[target]:
            rest = [u for u in cells[target] if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(masks, split))

    search(cells)
    return best[0] if best[0] is not None else (), best[1] or []


def canonical_form(g: SimpleGraph) -> tuple[int, tuple[int, ...]]:
    """Equal for two graphs exactly when they are isomorphic."""
    return (g.n, canonical_labeling(g)[0])


def canonical_graph(g: SimpleGraph) -> SimpleGraph:
    _, order = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def are_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges) or g.degree_sequence() != h.degree_sequence():
        return False
    return canonical_form(g) == canonical_form(h)


def brute_force_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    """Test oracle: try every permutation (n <= 8)."""
    from itertools import permutations

    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    return any(g.relabel(p).edges == h.edges for p in permutations(range(g.n)))


# -- generation ---------------------------------------------------------------------


def is_graphical(seq: Sequence[int]) -> bool:
    """Erdos-Gallai test."""
    d = sorted(seq, reverse=True)
    n = len(d)
    if any(x < 0 or x >= max(n, 1) for x in d) or sum(d) % 2:
        return n == 0 or (sum(d) % 2 == 0 and all(x == 0 for x in d))
    for k in range(1, n + 1):
        lhs = sum(d[:k])
        rhs = k * (k - 1) + sum(min(x, k) for x in d[k:])
        if lhs > rhs:
            return False
    return True


def _realizations(targets: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Labeled realizations of ``targets`` (non-increasing), up to swaps of
    vertices that are indistinguishable at the time of each choice."""
    n = len(targets)
    masks = [0] * n
    need = list(targets)

    def rec(i: int):
        if i == n:
            yield tuple(masks)
            return
        r = need[i]
        if r == 0:
            yield from rec(i + 1)
            return
        later = [j for j in range(i + 1, n) if need[j] > 0]
        if len(later) < r:
            return
        classes: dict[tuple, list[int]] = {}
        for j in later:
            classes.setdefault((targets[j], masks[j], need[j]), []).append(j)
        groups = list(classes.values())
        ranges = [range(min(len(gr), r) + 1) for gr in groups]
        for counts in product(*ranges):
            if sum(counts) != r:
                continue
            chosen = [j for gr, c in zip(groups, counts) for j in gr[:c]]
            for j in chosen:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
                need[j] -= 1
            need[i] = 0
            # every later vertex must still be able to reach its target
            ok = all(need[j] <= n - 1 - (i + 1) for j in range(i + 2, n)) and (
                i + 1 >= n or need[i + 1] <= n - 1 - (i + 1)
            )
            if ok:
                yield from rec(i + 1)
            need[i] = r
            for j in chosen:
                masks[i] &= ~(1 << j)
                masks[j] &= ~(1 << i)
                need[j] += 1

    yield from rec(0)


def _graph_from_masks(masks: Sequence[int]) -> SimpleGraph:
    n = len(masks)
    return SimpleGraph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1))


def generate_connected_by_degseq(seq: Sequence[int]) -> list[SimpleGraph]:
    """One canonical representative per isomorphism class, sorted by certificate."""
    seq = sorted(seq, reverse=True)
    if not is_graphical(seq):
        raise GraphError(f"degree sequence {seq} is not graphical")
    found: dict = {}
    for masks in _realizations(seq):
        g = _graph_from_masks(masks)
        if not g.is_connected():
            continue
        key = canonical_form(g)
        if key not in found:
            found[key] = canonical_graph(g)
    return [found[k] for k in sorted(found)]


def generate_connected_regular(k: int, n: int) -> list[SimpleGraph]:
    if k * n % 2 or not 0 <= k < n:
        raise GraphError(f"no {k}-regular graph on {n} vertices")
    return generate_connected_by_degseq([k] * n)


def brute_force_connected_regular(k: int, n: int) -> list[SimpleGraph]:
    """Test oracle: all labeled edge subsets, deduplicated by brute-force isomorphism."""
    pairs = list(combinations(range(n), 2))
    m = k * n // 2
    reps: list[SimpleGraph] = []
    for es in combinations(pairs, m):
        deg = [0] * n
        for u, v in es:
            deg[u] += 1
            deg[v] += 1
        if any(d != k for d in deg):
            continue
        g = SimpleGraph(n, frozenset(es))
        if not g.is_connected():
            continue
        if not any(brute_force_isomorphic(g, r) for r in reps):
            reps.append(g)
    return reps


# -- subgraph search --------------------------------------------------------------------


def degree_dominates(g: SimpleGraph, h: SimpleGraph) -> bool:
    """Sorted degrees of ``g`` dominate those of ``h`` position by position."""
    dg, dh = g.degree_sequence(), h.degree_sequence()
    return len(dg) >= len(dh) and all(a >= b for a, b in zip(dg, dh))


def find_subgraph(g: SimpleGraph, h: SimpleGraph, induced: bool = False) -> dict[int, int] | None:
    """Embedding of ``h`` into ``g`` (vertex of h -> vertex of g), non-induced by default."""
    if h.n > g.n or len(h.edges) > len(g.edges):
        return None
    matcher = GraphMatcher(g.to_networkx(), h.to_networkx())
    it = matcher.subgraph_isomorphisms_iter() if induced else matcher.subgraph_monomorphisms_iter()
    for mapping in it:
        emb = {hv: gv for gv, hv in mapping.items()}
        if not all(_norm_edge(emb[u], emb[v]) in g.edges for u, v in h.edges):
            raise AssertionError("subgraph matcher returned a non-embedding")
        if not degree_dominates(g, h):
            raise AssertionError("embedding found but degree domination fails")
        return emb
    return None


def contains_subgraph(g: SimpleGraph, h: SimpleGraph) -> bool:
    return find_subgraph(g, h) is not None


# -- figure catalogs ------------------------------------------------------------------------


def _load_figures() -> dict:
    raw = resources.files("kapcheck.data").joinpath("figures.json").read_text()
    data = json.loads(raw)
    body = json.dumps(data["catalogs"], sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(body.encode()).hexdigest()
    if digest != data["sha256"]:
        raise GraphError("figure fixture checksum mismatch")
    return data["catalogs"]


@lru_cache(maxsize=None)
def _figures() -> dict:
    return _load_figures()


def catalog_ids() -> list[str]:
    return sorted(_figures()) + ["multicycle(n)"]


def multicycle(n: int) -> AnnotatedGraph:
    """Cycle of length ``n`` with every edge doubled (n >= 3); vertex degrees are unconstrained."""
    if n < 3:
        raise GraphError("multicycle needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n) for _ in range(2)]
    return AnnotatedGraph(f"multicycle({n})", Multigraph.from_edge_list(n, edges), ("free",) * n)


def forbidden_catalog(catalog_id: str) -> list[AnnotatedGraph]:
    if catalog_id.startswith("multicycle(") and catalog_id.endswith(")"):
        return [multicycle(int(catalog_id[len("multicycle("):-1]))]
    figs = _figures()
    if catalog_id not in figs:
        raise GraphError(f"unknown catalog id {catalog_id!r}")
    out = []
    for item in figs[catalog_id]["graphs"]:
        n = item["n"]
        if item.get("multi"):
            graph: SimpleGraph | Multigraph = Multigraph.from_edge_list(n, item["edges"])
        else:
            graph = SimpleGraph.from_edges(n, item["edges"])
        out.append(AnnotatedGraph(item["name"], graph, tuple(item["annotations"]), figs[catalog_id]["annotation"]))
    return out


# -- regular reduction --------------------------------------------------------------------


def reduce_to_regular(g: SimpleGraph | Multigraph, cliques: Sequence[Sequence[int]]) -> SimpleGraph:
    """Inside each marked K4 keep only two disjoint edges and drop the other four."""
    s = simplify_multigraph(g)
    sets = [tuple(sorted(c)) for c in cliques]
    for c in sets:
        if len(set(c)) != 4:
            raise GraphError(f"clique {c} does not have 4 vertices")
        if any(_norm_edge(u, v) not in s.edges for u, v in combinations(c, 2)):
            raise GraphError(f"vertex set {c} does not span a K4")
    for a, b in combinations(sets, 2):
        if len(set(a) & set(b)) > 1:
            raise GraphError(f"cliques {a} and {b} share more than one vertex")
    edges = set(s.edges)
    for a, b, c, d in sets:
        for e in ((a, c), (a, d), (b, c), (b, d)):
            edges.discard(_norm_edge(*e))
    return SimpleGraph(s.n, frozenset(edges))


__all__ = [
    "AnnotatedGraph",
    "GraphError",
    "Multigraph",
    "SimpleGraph",
    "are_isomorphic",
    "brute_force_connected_regular",
    "brute_force_isomorphic",
    "canonical_form",
    "canonical_graph",
    "canonical_labeling",
    "catalog_ids",
    "contains_subgraph",
    "degree_dominates",
    "find_subgraph",
    "forbidden_catalog",
    "generate_connected_by_degseq",
    "generate_connected_regular",
    "is_graphical",
    "multicycle",
    "reduce_to_regular",
    "simplify_multigraph",
]
