"""Label tuples on cycles and labeling systems on whole graphs.

A cycle ``g_1 ... g_n`` carries ``[h_1, h'_1, ..., h_n, h'_n]`` with support
labels, one pair per edge, meaning ``h_i g_i = h'_i g_{i+1}``.  The edge
quotient is ``h_i^-1 h'_i`` and the cycle relation is their product.

Labels are small integers indexing the support template:
S12 uses ``(1, x, y, z)`` and S10 uses ``(1, x, X, y)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .word import FreeWord, cyclic_normal_form, cyclic_reduce, invert, primitive_root, rotations

TEMPLATES = {
    "S12": ("1", "x", "y", "z"),
    "S10": ("1", "x", "X", "y"),
}
RANKS = {"S12": 3, "S10": 2}

# vertex annotations
DEG4 = "deg4"
DEG4_I = "deg4-i"
DEG4_II = "deg4-ii"
DEG3 = "deg3"
FREE = "free"
ANNOTATIONS = (DEG4, DEG4_I, DEG4_II, DEG3, FREE)


@dataclass(frozen=True)
class Regime:
    template: str = "S12"
    mode: str = "zero-divisor"

    def __post_init__(self):
        if self.template not in TEMPLATES:
            raise ValueError(f"unknown support template {self.template!r}")
        if self.mode not in ("zero-divisor", "unit"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def rank(self) -> int:
        return RANKS[self.template]

    @property
    def symbols(self) -> tuple[str, ...]:
        return TEMPLATES[self.template]

    def element(self, label: int) -> FreeWord:
        return FreeWord.parse(self.symbols[label], self.rank)

    def quotient(self, h: int, hp: int) -> FreeWord:
        return _quotient_table(self.template)[h][hp]


@lru_cache(maxsize=None)
def _quotient_table(template: str) -> tuple[tuple[FreeWord, ...], ...]:
    rank = RANKS[template]
    els = [FreeWord.parse(s, rank) for s in TEMPLATES[template]]
    return tuple(tuple(invert(a) * b for b in els) for a in els)


S12 = Regime("S12")
S10 = Regime("S10")


@dataclass(frozen=True)
class CycleTuple:
    regime: Regime
    labels: tuple[int, ...]
    annotations: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.labels) % 2 or len(self.labels) < 4:
            raise ValueError("a cycle tuple needs an even number (at least 4) of labels")
        k = len(self.regime.symbols)
        if any(not 0 <= h < k for h in self.labels):
            raise ValueError("label outside the support template")
        if self.annotations and len(self.annotations) != self.n:
            raise ValueError("one annotation per vertex is required")

    @property
    def n(self) -> int:
        return len(self.labels) // 2

    @property
    def heads(self) -> tuple[int, ...]:
        return self.labels[0::2]

    @property
    def tails(self) -> tuple[int, ...]:
        return self.labels[1::2]

    def text(self) -> str:
        return "[" + ",".join(self.regime.symbols[h] for h in self.labels) + "]"

    @classmethod
    def parse(cls, text: str, regime: Regime, annotations: Sequence[str] = ()) -> "CycleTuple":
        body = text.strip().strip("[]")
        idx = {s: i for i, s in enumerate(regime.symbols)}
        labels = tuple(idx[s.strip()] for s in body.split(","))
        return cls(regime, labels, tuple(annotations))

    def __str__(self) -> str:
        return self.text()


def relation_word(t: CycleTuple) -> FreeWord:
    """Freely reduced product of the edge quotients ``h_i^-1 h'_i``."""
    q = _quotient_table(t.regime.template)
    codes: list[int] = []
    for i in range(t.n):
        codes.extend(q[t.labels[2 * i]][t.labels[2 * i + 1]].codes)
    return FreeWord(codes, t.regime.rank)


def relation_class(t: CycleTuple) -> FreeWord:
    """Relation word up to rotation and inversion."""
    return cyclic_normal_form(relation_word(t))


# -- constraint tables ------------------------------------------------------------
# Each rule is checked at vertex g_i, which sits between edge i-1 (far label
# h'_{i-1}) and edge i (near label h_i).  Indices are taken cyclically.


def _h(t, i):
    return t[2 * (i % (len(t) // 2))]


def _hp(t, i):
    return t[2 * (i % (len(t) // 2)) + 1]


def _separated(t, i) -> bool:
    return _hp(t, i - 1) != _h(t, i)


def _s10_double(t, k) -> int:
    """+1 if edge k has quotient x, -1 for x^-1, 0 otherwise (S10 labels)."""
    pair = (_h(t, k), _hp(t, k))
    if pair in ((0, 1), (2, 0)):
        return 1
    if pair in ((1, 0), (0, 2)):
        return -1
    return 0


_S10_ONE, _S10_X, _S10_XI = 0, 1, 2


def _s10_after(t, k) -> bool:
    """Labels next to a double edge k at its far end and near end."""
    d = _s10_double(t, k)
    if d == 1:
        return _h(t, k + 1) not in (_S10_ONE, _S10_X) and _hp(t, k - 1) not in (_S10_ONE, _S10_XI)
    if d == -1:
        return _h(t, k + 1) not in (_S10_ONE, _S10_XI) and _hp(t, k - 1) not in (_S10_ONE, _S10_X)
    return True


def _s10_far_only(t, k) -> bool:
    d = _s10_double(t, k)
    if d == 1:
        return _hp(t, k - 1) not in (_S10_ONE, _S10_XI)
    if d == -1:
        return _hp(t, k - 1) not in (_S10_ONE, _S10_X)
    return True


def _s10_near_only(t, k) -> bool:
    d = _s10_double(t, k)
    if d == 1:
        return _h(t, k + 1) not in (_S10_ONE, _S10_X)
    if d == -1:
        return _h(t, k + 1) not in (_S10_ONE, _S10_XI)
    return True


def _rule_s12_deg4(t, i) -> bool:
    return _separated(t, i)


def _rule_s10_deg4(t, i) -> bool:
    if not (_separated(t, i - 1) and _separated(t, i) and _separated(t, i + 1)):
        return False
    if not (_s10_after(t, i) and _s10_after(t, i - 1)):
        return False
    if not (_s10_far_only(t, i + 1) and _s10_near_only(t, i - 2)):
        return False
    # two double edges meeting at g_i would both use near label 1 there
    return not (_s10_double(t, i - 1) and _s10_double(t, i))


def _rule_s10_type_ii(t, i) -> bool:
    a, b = _h(t, i), _hp(t, i - 1)
    if {a, b} == {_S10_X, _S10_XI}:
        hp_i, h_prev = _hp(t, i), _h(t, i - 1)
        if hp_i == h_prev or _S10_ONE not in (hp_i, h_prev):
            return False
    if a == _S10_ONE and _hp(t, i) not in (_S10_X, _S10_XI):
        return False
    if b == _S10_ONE and _h(t, i - 1) not in (_S10_X, _S10_XI):
        return False
    return True


def _rule_s10_type_i(t, i) -> bool:
    y = 3
    if _h(t, i) in (_S10_X, _S10_XI) and _hp(t, i) == _S10_ONE:
        return False
    if _hp(t, i - 1) in (_S10_X, _S10_XI) and _h(t, i - 1) == _S10_ONE:
        return False
    if _h(t, i) == _S10_ONE and _hp(t, i) != y:
        return False
    if _hp(t, i - 1) == _S10_ONE and _h(t, i - 1) != y:
        return False
    return True


def _rule_unit_s10(t, i) -> bool:
    return _rule_s10_deg4(t, i)


RULES: dict[tuple[str, str, str], tuple[Callable, ...]] = {
    ("S12", "zero-divisor", DEG4): (_rule_s12_deg4,),
    ("S12", "unit", DEG4): (_rule_s12_deg4,),
    ("S12", "unit", DEG3): (_rule_s12_deg4,),
    ("S10", "zero-divisor", DEG4): (_rule_s10_deg4,),
    ("S10", "zero-divisor", DEG4_I): (_rule_s10_deg4, _rule_s10_type_i),
    ("S10", "zero-divisor", DEG4_II): (_rule_s10_deg4, _rule_s10_type_ii),
    ("S10", "unit", DEG4): (_rule_unit_s10,),
    ("S10", "unit", DEG3): (_rule_unit_s10,),
}


def _global_ok(regime: Regime, t: Sequence[int]) -> bool:
    n = len(t) // 2
    if any(t[2 * i] == t[2 * i + 1] for i in range(n)):
        return False
    if regime.template == "S10" and regime.mode == "unit":
        # at most one double edge on a unit cycle
        if sum(1 for k in range(n) if _s10_double(t, k)) > 1:
            return False
    return True


def satisfies(t: CycleTuple, annotations: Sequence[str] | None = None) -> bool:
    """Check the regime constraints at every annotated vertex."""
    ann = tuple(annotations) if annotations is not None else (t.annotations or (DEG4,) * t.n)
    labels = t.labels
    if not _global_ok(t.regime, labels):
        return False
    key = (t.regime.template, t.regime.mode)
    for i, a in enumerate(ann):
        if a == FREE:
            continue
        rules = RULES.get(key + (a,))
        if rules is None:
            raise ValueError(f"no rule table for {key + (a,)}")
        if not all(rule(labels, i) for rule in rules):
            return False
    return True


# -- equivalence ----------------------------------------------------------------

_SUBSTITUTION = {(0, 1): (2, 0), (2, 0): (0, 1), (1, 0): (0, 2), (0, 2): (1, 0)}


def dihedral_images(labels: Sequence[int]) -> Iterator[tuple[int, ...]]:
    n = len(labels) // 2
    pairs = [(labels[2 * i], labels[2 * i + 1]) for i in range(n)]
    for r in range(n):
        rot = pairs[r:] + pairs[:r]
        yield tuple(x for p in rot for x in p)
        rev = [(b, a) for a, b in reversed(rot)]
        yield tuple(x for p in rev for x in p)


def substitution_images(labels: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All tuples reached by swapping parallel-edge pairs (S10 only)."""
    n = len(labels) // 2
    opts = []
    for i in range(n):
        p = (labels[2 * i], labels[2 * i + 1])
        opts.append([p, _SUBSTITUTION[p]] if p in _SUBSTITUTION else [p])
    for choice in itertools.product(*opts):
        yield tuple(x for p in choice for x in p)


def canonicalize(t: CycleTuple, substitutions: bool | None = None) -> CycleTuple:
    """Least tuple under rotation, reversal and (S10) parallel-edge swaps."""
    if substitutions is None:
        substitutions = t.regime.template == "S10"
    seeds = list(substitution_images(t.labels)) if substitutions else [t.labels]
    best = min(img for s in seeds for img in dihedral_images(s))
    return CycleTuple(t.regime, best, t.annotations and _rotate_annotations(t, best))


def _rotate_annotations(t: CycleTuple, _best) -> tuple[str, ...]:
    # annotations are class-level in every enumeration here (uniform per cycle)
    return t.annotations


# -- enumeration ----------------------------------------------------------------


@dataclass
class CycleEnumeration:
    regime: Regime
    n: int
    classes: list[CycleTuple]
    raw_count: int
    convention: str
    annotation_spec: str

    def __len__(self) -> int:
        return len(self.classes)


def _annotation_patterns(n: int, spec: str) -> list[tuple[str, ...]]:
    """Vertex annotation patterns for specs like ``all-deg4`` or ``min2-deg4``."""
    if spec in ("all", "all-deg4"):
        return [(DEG4,) * n]
    if spec.startswith("min") and spec.endswith("-deg4"):
        k = int(spec[3:-5])
        out = []
        for subset in itertools.combinations(range(n), k):
            out.append(tuple(DEG4 if i in subset else FREE for i in range(n)))
        return out
    if spec.startswith("all-"):
        return [(spec[4:],) * n]
    parts = tuple(spec.split(","))
    if len(parts) != n or any(p not in ANNOTATIONS for p in parts):
        raise ValueError(f"bad annotation spec {spec!r}")
    return [parts]


def admissible(regime: Regime, labels: Sequence[int], patterns: Sequence[tuple[str, ...]]) -> bool:
    t = CycleTuple(regime, tuple(labels))
    return any(satisfies(t, p) for p in patterns)


def _s10_normalized(labels: Sequence[int]) -> bool:
    # left translation lets the first near label be 1 or y
    return labels[0] in (0, 3)


def enumerate_cycle_classes(
    regime: Regime,
    n: int,
    annotations: str = "all-deg4",
    substitutions: bool = False,
) -> CycleEnumeration:
    """One representative per class of admissible tuples on an n-cycle.

    Classes are orbits under rotation and reversal (and parallel-edge swaps when
    ``substitutions``).  For S10 the class representative is the least orbit
    member that is itself admissible and starts with label 1 or y.
    """
    if n < 3:
        raise ValueError("cycles have length at least 3")
    if regime.template == "S10" and annotations.startswith("min"):
        # a rule violation anywhere forces a vertex of degree at least 5, so the
        # degree-4 rules hold at every vertex once any vertex is constrained
        annotations = "all-deg4"
    patterns = _annotation_patterns(n, annotations)
    k = len(regime.symbols)
    valid = [t for t in _proper_tuples(k, n) if admissible(regime, t, patterns)]
    valid_set = set(valid)
    reps: set[tuple[int, ...]] = set()
    normalize = regime.template == "S10"
    for t in valid:
        if normalize and not _s10_normalized(t):
            continue
        seeds = substitution_images(t) if substitutions else [t]
        orbit = {img for s in seeds for img in dihedral_images(s)}
        members = [u for u in orbit if u in valid_set and (not normalize or _s10_normalized(u))]
        reps.add(min(members))
    classes = [CycleTuple(regime, r) for r in sorted(reps)]
    conv = "dihedral" + ("+substitution" if substitutions else "") + ("+h1-in-{1,y}" if normalize else "")
    return CycleEnumeration(regime, n, classes, len(valid), conv, annotations)


def _proper_tuples(k: int, n: int) -> Iterator[tuple[int, ...]]:
    """Tuples with h_i != h'_i, by depth-first extension."""
    pairs = [(a, b) for a in range(k) for b in range(k) if a != b]
    for choice in itertools.product(pairs, repeat=n):
        yield tuple(x for p in choice for x in p)


def burnside_class_count(k: int, n: int) -> int:
    """Orbits of proper k-colourings of C_2n under the pair-preserving dihedral group.

    Counts fixed colourings of each group element by brute force; independent of
    the canonical-form enumeration.
    """
    m = 2 * n
    perms = []
    for r in range(n):
        perms.append([(j + 2 * r) % m for j in range(m)])
        # reversal maps position j to (2r - 1 - j) mod m: pair (h_i, h'_i) goes to (h'_{r-i}, h_{r-i})
        perms.append([(2 * r - 1 - j) % m for j in range(m)])
    total = 0
    for coloring in itertools.product(range(k), repeat=m):
        if any(coloring[j] == coloring[(j + 1) % m] for j in range(m)):
            continue
        for p in perms:
            if all(coloring[p[j]] == coloring[j] for j in range(m)):
                total += 1
    assert total % len(perms) == 0
    return total // len(perms)


# -- screening ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _protected_cores(template: str) -> tuple[frozenset, frozenset]:
    from .oracle import ProtectedSet

    ps = ProtectedSet.for_regime(template)
    powers: set[tuple[int, ...]] = set()
    pairs: set[tuple[int, ...]] = set()
    for s in ps.words:
        core, _ = cyclic_reduce(s)
        powers.add(core.codes)
        for s2 in ps.words:
            if s2 == s:
                continue
            w = s * invert(s2)
            if not w:
                continue
            c, _ = cyclic_reduce(w)
            pairs.update(rotations(c.codes))
    return frozenset(powers), frozenset(pairs)


def torsion_root(w: FreeWord, regime: Regime) -> tuple[FreeWord, int] | None:
    """``(s, k)`` when ``w`` is conjugate to ``s^k`` for a protected word ``s``."""
    from .oracle import ProtectedSet

    core, _ = cyclic_reduce(w)
    L = len(core)
    if not L:
        return None
    for s in ProtectedSet.for_regime(regime.template).words:
        sc, _ = cyclic_reduce(s)
        if not sc or L % len(sc):
            continue
        k = L // len(sc)
        target = (sc ** k).codes
        if core.codes in set(rotations(target)):
            return s, k
    return None


def detect_support_degeneracy(w: FreeWord, regime: Regime) -> bool:
    """True when ``w = 1`` literally states ``s = s'`` for distinct protected words.

    A proper power ``u^k`` counts through its root, since ``u^k = 1`` forces
    ``u = 1`` without torsion.  Only the relator itself (up to rotation and
    inversion) is inspected.
    """
    if regime.template != "S12":
        raise ValueError("support degeneracy is defined for the S12 template")
    _, pairs = _protected_cores(regime.template)
    root, _ = primitive_root(w.with_rank(regime.rank))
    return root.codes in pairs or invert(root).codes in pairs


# -- graph labeling systems ---------------------------------------------------------

Dart = tuple[int, int]  # (edge index, +1 along the stored orientation or -1 against it)


@dataclass
class LabelingSystem:
    """Edge labels on a (multi)graph: ``edges[k] = (u, v)`` carries ``labels[k] = (h, h')``,
    meaning ``h g_u = h' g_v``.  ``cycles`` are closed dart sequences."""

    regime: Regime
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[Dart, ...], ...] = ()

    def relators(self) -> list[FreeWord]:
        return [self.cycle_relation(c) for c in self.cycles]

    def cycle_relation(self, cycle: Sequence[Dart]) -> FreeWord:
        q = _quotient_table(self.regime.template)
        codes: list[int] = []
        for k, d in cycle:
            h, hp = self.labels[k]
            codes.extend((q[h][hp] if d == 1 else q[hp][h]).codes)
        return FreeWord(codes, self.regime.rank)

    def cycle_labels(self, cycle: Sequence[Dart]) -> tuple[int, ...]:
        out: list[int] = []
        for k, d in cycle:
            h, hp = self.labels[k]
            out.extend((h, hp) if d == 1 else (hp, h))
        return tuple(out)

    def cycle_vertices(self, cycle: Sequence[Dart]) -> tuple[int, ...]:
        return tuple(self.edges[k][0] if d == 1 else self.edges[k][1] for k, d in cycle)

    def key(self) -> str:
        sym = self.regime.symbols
        return ";".join(f"{u}-{v}:{sym[h]}{sym[hp]}" for (u, v), (h, hp) in zip(self.edges, self.labels))


def cycle_basis(n: int, edges: Sequence[tuple[int, int]]) -> list[tuple[Dart, ...]]:
    """Fundamental cycles of a BFS spanning tree as dart sequences.

    Each non-tree edge (including every extra copy of a parallel edge) closes one
    cycle that starts by traversing that edge forwards.
    """
    adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(n)}
    for k, (u, v) in enumerate(edges):
        adj[u].append((v, k, 1))
        adj[v].append((u, k, -1))
    root = edges[0][0] if edges else 0
    parent: dict[int, tuple[int, int, int] | None] = {root: None}
    depth = {root: 0}
    order = [root]
    tree: set[int] = set()
    for u in order:
        for v, k, d in sorted(adj[u]):
            if v not in parent:
                parent[v] = (u, k, d)
                depth[v] = depth[u] + 1
                order.append(v)
                tree.add(k)

    def path_up(v: int) -> list[tuple[int, Dart]]:
        out = []
        while parent[v] is not None:
            u, k, d = parent[v]
            out.append((v, (k, -d)))  # dart from v towards its parent
            v = u
        return out

    cycles = []
    for k, (u, v) in enumerate(edges):
        if k in tree:
            continue
        # walk u -> v along the edge, then v up to the common ancestor and down to u
        up_v = path_up(v)
        up_u = path_up(u)
        anc_v = [v] + [parent[x][0] for x, _ in up_v]
        anc_u = [u] + [parent[x][0] for x, _ in up_u]
        common = next(a for a in anc_v if a in set(anc_u))
        darts: list[Dart] = [(k, 1)]
        for x, dart in up_v:
            if x == common:
                break
            darts.append(dart)
        down = []
        for x, (kk, dd) in up_u:
            if x == common:
                break
            down.append((kk, -dd))
        darts.extend(reversed(down))
        cycles.append(tuple(darts))
    return cycles


def _segments_nontrivial(sysm: LabelingSystem, cycle: Sequence[Dart]) -> bool:
    """Distinct vertices of a simple cycle: no proper segment has a freely trivial product."""
    if len(cycle) < 3:
        return True
    q = _quotient_table(sysm.regime.template)
    parts = []
    for k, d in cycle:
        h, hp = sysm.labels[k]
        parts.append(q[h][hp] if d == 1 else q[hp][h])
    length = len(parts)
    for a in range(length):
        w = parts[a]
        for b in range(a + 1, a + length - 1):
            w = w * parts[b % length]
            if not w:
                return False
    return True


def _system_rule(regime: Regime):
    if regime.template != "S10":
        return None

    def ok(sysm: LabelingSystem, ann, cycles) -> bool:
        for c in cycles:
            if len(c) < 3:
                continue
            verts = sysm.cycle_vertices(c)
            t = CycleTuple(regime, sysm.cycle_labels(c))
            if not satisfies(t, tuple(ann[v] for v in verts)):
                return False
        return True

    return ok


def enumerate_graph_systems(
    n_vertices: int,
    edges: Sequence[tuple[int, int]],
    regime: Regime,
    annotations: Sequence[str] | None = None,
    cycles: Sequence[Sequence[Dart]] | None = None,
    prefilter: Callable[[LabelingSystem], bool] | None = None,
    normalize_first_label: bool = False,
    fixed: Sequence[tuple[int, int]] = (),
    check_cycle_rules: bool = True,
) -> Iterator[LabelingSystem]:
    """Stream every consistent labeling of the graph.

    At an annotated vertex the near labels of all incident edge ends are
    pairwise distinct; every edge has distinct end labels.  ``fixed`` pins the
    labels of the first ``len(fixed)`` edges (extension of a partial system).
    ``normalize_first_label`` pins the near label of edge 0 to 1.
    ``prefilter`` returning True drops a complete system as already disposed.
    """
    edges = tuple(tuple(e) for e in edges)
    ann = tuple(annotations) if annotations is not None else (DEG4,) * n_vertices
    cyc = tuple(tuple(c) for c in (cycles if cycles is not None else cycle_basis(n_vertices, edges)))
    k = len(regime.symbols)
    pairs = [(a, b) for a in range(k) for b in range(k) if a != b]
    used: list[list[int]] = [[] for _ in range(n_vertices)]
    chosen: list[tuple[int, int]] = []
    extra = _system_rule(regime) if check_cycle_rules else None
    # S10 cycle rules are checked as soon as a cycle is fully labeled
    closing: dict[int, list[tuple[Dart, ...]]] = {}
    for c in cyc:
        closing.setdefault(max(e for e, _ in c), []).append(c)

    def place(i: int, h: int, hp: int) -> bool:
        u, v = edges[i]
        if h == hp:
            return False
        # parallel edges are distinct pairs, so their labels differ at both ends
        for j in range(i):
            if edges[j] == edges[i] and (chosen[j][0] == h or chosen[j][1] == hp):
                return False
        if ann[u] != FREE and h in used[u]:
            return False
        if ann[v] != FREE and hp in used[v]:
            return False
        return True

    def partial_ok(i: int) -> bool:
        if i not in closing:
            return True
        probe = LabelingSystem(regime, n_vertices, edges, tuple(chosen) + ((0, 0),) * (len(edges) - len(chosen)), cyc)
        if not all(_segments_nontrivial(probe, c) for c in closing[i]):
            return False
        return extra is None or extra(probe, ann, closing[i])

    def rec(i: int):
        if i == len(edges):
            sysm = LabelingSystem(regime, n_vertices, edges, tuple(chosen), cyc)
            if prefilter is not None and prefilter(sysm):
                return
            yield sysm
            return
        u, v = edges[i]
        options = [tuple(fixed[i])] if i < len(fixed) else pairs
        for h, hp in options:
            if normalize_first_label and i == 0 and h != 0:
                continue
            if not place(i, h, hp):
                continue
            used[u].append(h)
            used[v].append(hp)
            chosen.append((h, hp))
            if partial_ok(i):
                yield from rec(i + 1)
            chosen.pop()
            used[u].pop()
            used[v].pop()

    yield from rec(0)


def label_relabelings(regime: Regime) -> list[tuple[int, ...]]:
    """Label permutations that preserve the support template up to isomorphism.

    S12: any permutation (left translation picks the identity, renaming the rest).
    S10: identity and the swap x <-> x^-1.
    """
    if regime.template == "S12":
        return [tuple(p) for p in itertools.permutations(range(4))]
    return [(0, 1, 2, 3), (0, 2, 1, 3)]


def system_orbit_key(
    edges: Sequence[tuple[int, int]],
    labels: Sequence[tuple[int, int]],
    vertex_maps: Sequence[Sequence[int]],
    relabelings: Sequence[Sequence[int]],
) -> tuple:
    """Least image of a labeling under vertex automorphisms and label relabelings.

    Parallel edges are unordered, so each vertex pair carries a sorted tuple of
    oriented label pairs.
    """
    best = None
    for vm in vertex_maps:
        for pi in relabelings:
            slots: dict[tuple[int, int], list[tuple[int, int]]] = {}
            for (u, v), (h, hp) in zip(edges, labels):
                a, b = vm[u], vm[v]
                if a < b:
                    slots.setdefault((a, b), []).append((pi[h], pi[hp]))
                else:
                    slots.setdefault((b, a), []).append((pi[hp], pi[h]))
            img = tuple((e, tuple(sorted(slots[e]))) for e in sorted(slots))
            if best is None or img < best:
                best = img
    return best


__all__ = [
    "ANNOTATIONS",
    "CycleEnumeration",
    "CycleTuple",
    "DEG3",
    "DEG4",
    "DEG4_I",
    "DEG4_II",
    "FREE",
    "LabelingSystem",
    "Regime",
    "RULES",
    "S10",
    "S12",
    "burnside_class_count",
    "canonicalize",
    "cycle_basis",
    "detect_support_degeneracy",
    "dihedral_images",
    "enumerate_cycle_classes",
    "enumerate_graph_systems",
    "relation_class",
    "relation_word",
    "label_relabelings",
    "satisfies",
    "system_orbit_key",
    "substitution_images",
    "torsion_root",
]
