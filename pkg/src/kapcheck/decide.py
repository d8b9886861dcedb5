"""Budgeted Knuth-Bendix completion and Todd-Coxeter coset enumeration.

Every rewrite rule produced by completion carries a derivation: a list of
``(position, rule_id, direction)`` steps that turns its left side into its
right side using only earlier rules.  Rules seeded from relators and from free
cancellation are axioms.  This lets callers export self-contained proofs that
an independent checker can replay letter by letter.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .present import Presentation, abelianize
from .word import FreeWord, invert

try:  # compiled kernel, built from _tc_core.pyx
    from . import _tc_core as _tc_kernel  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    _tc_kernel = None

TC_BACKEND = "cython" if _tc_kernel is not None else "python"


@dataclass(frozen=True)
class Budget:
    max_rewrite_rules: int = 20_000
    max_word_length: int = 64
    max_cosets: int = 1_000_000
    max_steps: int = 10_000
    max_power: int = 64

    def __post_init__(self):
        for name in ("max_rewrite_rules", "max_word_length", "max_cosets", "max_steps", "max_power"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def text(self) -> str:
        return (
            f"rules={self.max_rewrite_rules},len={self.max_word_length},"
            f"cosets={self.max_cosets},steps={self.max_steps},power={self.max_power}"
        )


DEFAULT_BUDGET = Budget()

# -- string helpers ------------------------------------------------------------
# Inside the rewriting engine words are str with chr(97 + code); slicing and
# substring search on str run in C.


def _enc(codes: Iterable[int]) -> str:
    return "".join(chr(97 + c) for c in codes)


def _dec(s: str) -> tuple[int, ...]:
    return tuple(ord(ch) - 97 for ch in s)


_INV = {chr(97 + c): chr(97 + (c ^ 1)) for c in range(6)}


def _inv(s: str) -> str:
    return "".join(_INV[ch] for ch in reversed(s))


def _shortlex_less(a: str, b: str) -> bool:
    return (len(a), a) < (len(b), b)


def _reverse_steps(steps: Sequence[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    return [(p, r, -d) for (p, r, d) in reversed(steps)]


@dataclass
class Lemma:
    lhs: str
    rhs: str
    steps: list[tuple[int, int, int]] | None  # None marks an axiom


@dataclass
class Derivation:
    """Literal replay: apply ``steps`` to ``start`` and arrive at ``end``.

    ``lemmas`` is a self-contained table; lemma ``i`` only cites lemmas ``< i``.
    """

    start: tuple[int, ...]
    end: tuple[int, ...]
    steps: list[tuple[int, int, int]]
    lemmas: list[tuple[tuple[int, ...], tuple[int, ...], list[tuple[int, int, int]] | None]]

    def to_json(self) -> dict:
        return {
            "start": list(self.start),
            "end": list(self.end),
            "steps": [list(s) for s in self.steps],
            "lemmas": [
                {"lhs": list(l), "rhs": list(r), "steps": None if st is None else [list(s) for s in st]}
                for l, r, st in self.lemmas
            ],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Derivation":
        return cls(
            tuple(d["start"]),
            tuple(d["end"]),
            [tuple(s) for s in d["steps"]],
            [
                (tuple(l["lhs"]), tuple(l["rhs"]), None if l["steps"] is None else [tuple(s) for s in l["steps"]])
                for l in d["lemmas"]
            ],
        )


class RewriteSystem:
    """Shortlex rewriting system over the doubled alphabet with proof tracking."""

    def __init__(self, rank: int):
        self.rank = rank
        self.lemmas: list[Lemma] = []
        self.active: dict[str, int] = {}
        self._trie: dict = {}  # reversed left sides; key None marks a full left side
        self.confluent = False
        self.exhausted: str | None = None
        for c in range(0, 2 * rank):
            self._add_rule(chr(97 + c) + chr(97 + (c ^ 1)), "", None)

    # rules
    @property
    def rules(self) -> list[tuple[FreeWord, FreeWord]]:
        out = []
        for lhs, rid in sorted(self.active.items(), key=lambda kv: (len(kv[0]), kv[0])):
            rhs = self.lemmas[rid].rhs
            out.append((FreeWord(_dec(lhs), self.rank, reduced=True), FreeWord(_dec(rhs), self.rank)))
        return out

    def __len__(self) -> int:
        return len(self.active)

    def _add_rule(self, lhs: str, rhs: str, steps) -> int:
        rid = len(self.lemmas)
        self.lemmas.append(Lemma(lhs, rhs, steps))
        if lhs not in self.active:
            node = self._trie
            for ch in reversed(lhs):
                node = node.setdefault(ch, {})
            node[None] = lhs
        self.active[lhs] = rid
        return rid

    def _drop_rule(self, lhs: str) -> int:
        rid = self.active.pop(lhs)
        node = self._trie
        path = []
        for ch in reversed(lhs):
            path.append((node, ch))
            node = node[ch]
        del node[None]
        for parent, ch in reversed(path):
            if parent[ch]:
                break
            del parent[ch]
        return rid

    def axiom(self, lhs: str, rhs: str) -> int:
        """Register an axiom lemma without activating it as a rule."""
        rid = len(self.lemmas)
        self.lemmas.append(Lemma(lhs, rhs, None))
        return rid

    # rewriting
    def reduce(self, word: str, trace: list | None = None) -> str:
        out: list[str] = []
        pending = list(reversed(word))
        rules = self.active
        trie = self._trie
        lemmas = self.lemmas
        while pending:
            out.append(pending.pop())
            node = trie
            i = len(out) - 1
            while i >= 0:
                node = node.get(out[i])
                if node is None:
                    break
                hit = node.get(None)
                if hit is not None:
                    rid = rules[hit]
                    if trace is not None:
                        trace.append((i, rid, 1))
                    del out[i:]
                    pending.extend(reversed(lemmas[rid].rhs))
                    break
                i -= 1
        return "".join(out)

    def normal_form(self, w: FreeWord) -> FreeWord:
        return FreeWord(_dec(self.reduce(_enc(w.codes))), self.rank)

    def derivation(self, word: Sequence[int], steps: list[tuple[int, int, int]], end: Sequence[int]) -> Derivation:
        """Package ``steps`` (turning ``word`` into ``end``) with the lemmas they cite."""
        needed: set[int] = set()
        stack = [rid for _, rid, _ in steps]
        while stack:
            rid = stack.pop()
            if rid in needed:
                continue
            needed.add(rid)
            lem = self.lemmas[rid]
            if lem.steps:
                stack.extend(r for _, r, _ in lem.steps if r not in needed)
        order = sorted(needed)
        remap = {rid: i for i, rid in enumerate(order)}
        table = []
        for rid in order:
            lem = self.lemmas[rid]
            st = None if lem.steps is None else [(p, remap[r], d) for p, r, d in lem.steps]
            table.append((_dec(lem.lhs), _dec(lem.rhs), st))
        return Derivation(tuple(word), tuple(end), [(p, remap[r], d) for p, r, d in steps], table)

    def prove_trivial(self, w: Sequence[int]) -> Derivation | None:
        trace: list = []
        if self.reduce(_enc(w), trace):
            return None
        return self.derivation(tuple(w), trace, ())

    def prove_equal(self, a: Sequence[int], b: Sequence[int]) -> Derivation | None:
        """Derivation of ``a`` into ``b`` through a common normal form."""
        ta: list = []
        tb: list = []
        na = self.reduce(_enc(a), ta)
        nb = self.reduce(_enc(b), tb)
        if na != nb:
            return None
        return self.derivation(tuple(a), ta + _reverse_steps(tb), tuple(b))


_GRAM = 3


class _Completion:
    """Completion loop; rules are processed shortest first.

    Substring indexes keep interreduction and overlap search close to linear in
    the number of affected rules instead of the total rule count.
    """

    def __init__(self, system: RewriteSystem, budget: Budget):
        self.kb = system
        self.budget = budget
        self.heap: list[tuple[int, int, str]] = []
        self.queue: list[tuple[str, str, list]] = []
        self.dropped = False
        self.steps = 0
        self.lhs_gram: dict[str, set[str]] = {}
        self.rhs_gram: dict[str, set[str]] = {}
        self.prefix: dict[str, set[str]] = {}
        self.suffix: dict[str, set[str]] = {}
        self.processed: set[str] = set()
        for lhs, rid in system.active.items():
            self._index(lhs, system.lemmas[rid].rhs)
            heapq.heappush(self.heap, (len(lhs), rid, lhs))

    # index maintenance
    @staticmethod
    def _grams(s: str) -> set[str]:
        return {s[i : i + _GRAM] for i in range(len(s) - _GRAM + 1)}

    def _index(self, lhs: str, rhs: str) -> None:
        for g in self._grams(lhs):
            self.lhs_gram.setdefault(g, set()).add(lhs)
        for g in self._grams(rhs):
            self.rhs_gram.setdefault(g, set()).add(lhs)

    def _unindex_rhs(self, lhs: str, rhs: str) -> None:
        for g in self._grams(rhs):
            self.rhs_gram[g].discard(lhs)

    def _remove(self, lhs: str) -> None:
        kb = self.kb
        rid = kb._drop_rule(lhs)
        for g in self._grams(lhs):
            self.lhs_gram[g].discard(lhs)
        self._unindex_rhs(lhs, kb.lemmas[rid].rhs)
        if lhs in self.processed:
            self.processed.discard(lhs)
            for k in range(1, len(lhs)):
                self.prefix[lhs[:k]].discard(lhs)
                self.suffix[lhs[-k:]].discard(lhs)

    def _mark_processed(self, lhs: str) -> None:
        self.processed.add(lhs)
        for k in range(1, len(lhs)):
            self.prefix.setdefault(lhs[:k], set()).add(lhs)
            self.suffix.setdefault(lhs[-k:], set()).add(lhs)

    # equations
    def push_equation(self, u: str, v: str, chain: list) -> None:
        self.queue.append((u, v, chain))
        self._drain()

    def _drain(self) -> None:
        kb = self.kb
        maxlen = self.budget.max_word_length
        while self.queue:
            u, v, chain = self.queue.pop()
            tu: list = []
            tv: list = []
            u2 = kb.reduce(u, tu)
            v2 = kb.reduce(v, tv)
            if u2 == v2:
                continue
            chain2 = _reverse_steps(tu) + list(chain) + tv
            if _shortlex_less(u2, v2):
                u2, v2 = v2, u2
                chain2 = _reverse_steps(chain2)
            if len(u2) > maxlen:
                self.dropped = True
                continue
            self._insert(u2, v2, chain2)

    def _insert(self, lhs: str, rhs: str, chain: list) -> None:
        kb = self.kb
        if len(lhs) >= _GRAM:
            grams = self._grams(lhs)
            empty: set[str] = set()
            gl = min((self.lhs_gram.get(g, empty) for g in grams), key=len)
            gr = min((self.rhs_gram.get(g, empty) for g in grams), key=len)
            hit_lhs = [o for o in gl if lhs in o]
            hit_rhs = [o for o in gr if lhs in kb.lemmas[kb.active[o]].rhs]
        else:
            hit_lhs = [o for o in kb.active if lhs in o]
            hit_rhs = [o for o, r in kb.active.items() if lhs in kb.lemmas[r].rhs]
        rid = kb._add_rule(lhs, rhs, chain)
        self._index(lhs, rhs)
        heapq.heappush(self.heap, (len(lhs), rid, lhs))
        for other in hit_lhs:
            if other == lhs or other not in kb.active:
                continue
            oid = kb.active[other]
            self._remove(other)
            self.queue.append((other, kb.lemmas[oid].rhs, [(0, oid, 1)]))
        for other in hit_rhs:
            if other == lhs or other not in kb.active:
                continue
            oid = kb.active[other]
            orhs = kb.lemmas[oid].rhs
            t: list = []
            new_rhs = kb.reduce(orhs, t)
            self._unindex_rhs(other, orhs)
            nid = len(kb.lemmas)
            kb.lemmas.append(Lemma(other, new_rhs, [(0, oid, 1)] + t))
            kb.active[other] = nid
            for gr in self._grams(new_rhs):
                self.rhs_gram.setdefault(gr, set()).add(other)

    def _critical(self, a: str, b: str, k: int) -> None:
        """Resolve the overlap where the last ``k`` letters of ``a`` start ``b``."""
        kb = self.kb
        ra = kb.active.get(a)
        rb = kb.active.get(b)
        if ra is None or rb is None:
            return
        self.steps += 1
        la = len(a)
        p = kb.lemmas[ra].rhs + b[k:]
        q = a[: la - k] + kb.lemmas[rb].rhs
        self.push_equation(p, q, [(0, ra, -1), (la - k, rb, 1)])

    def run(self) -> RewriteSystem:
        kb = self.kb
        b = self.budget
        while self.heap:
            if len(kb.active) > b.max_rewrite_rules:
                kb.exhausted = "rules"
                return kb
            if self.steps > b.max_steps:
                kb.exhausted = "steps"
                return kb
            _, rid, lhs = heapq.heappop(self.heap)
            if kb.active.get(lhs) != rid and lhs not in kb.active:
                continue
            if lhs in self.processed:
                continue
            self._mark_processed(lhs)
            n = len(lhs)
            pairs = []
            for k in range(1, n):
                for other in self.prefix.get(lhs[n - k :], ()):
                    if len(other) > k:
                        pairs.append((lhs, other, k))
                for other in self.suffix.get(lhs[:k], ()):
                    if len(other) > k and other != lhs:
                        pairs.append((other, lhs, k))
            for a, c, k in pairs:
                if lhs not in kb.active:
                    break
                self._critical(a, c, k)
        if self.dropped:
            kb.exhausted = "length"
        else:
            kb.confluent = True
        return kb


def knuth_bendix(p: Presentation, budget: Budget = DEFAULT_BUDGET) -> RewriteSystem:
    """Shortlex completion of ``p`` (letter order x < X < y < Y < z < Z)."""
    kb = RewriteSystem(p.rank)
    comp = _Completion(kb, budget)
    for r in p.relators:
        s = _enc(r.codes)
        aid = kb.axiom(s, "")
        comp.push_equation(s, "", [(0, aid, 1)])
    return comp.run()


# -- coset enumeration --------------------------------------------------------


@dataclass
class CosetTable:
    rank: int
    rows: list[list[int]]
    complete: bool
    status: str = "complete"
    defined: int = 0

    @property
    def index(self) -> int | None:
        return len(self.rows) if self.complete else None

    def act(self, coset: int, word: Sequence[int]) -> int:
        for c in word:
            coset = self.rows[coset][c]
            if coset < 0:
                return -1
        return coset

    def permutation(self, code: int) -> list[int]:
        return [row[code] for row in self.rows]


def validate_coset_table(table: CosetTable, p: Presentation, subgroup: Sequence[FreeWord] = ()) -> bool:
    """Independent closure check of a completed table."""
    if not table.complete:
        return False
    n = len(table.rows)
    cols = 2 * p.rank
    for i, row in enumerate(table.rows):
        if len(row) != cols:
            return False
        for c, j in enumerate(row):
            if not 0 <= j < n or table.rows[j][c ^ 1] != i:
                return False
    for r in p.relators:
        for i in range(n):
            if table.act(i, r.codes) != i:
                return False
    for h in subgroup:
        if table.act(0, h.codes) != 0:
            return False
    # connectivity from coset 0
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in table.rows[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _tc_python(ncols: int, relators: list[list[int]], subgroup: list[list[int]], max_cosets: int):
    """HLT enumeration with lookahead and compaction; returns (status, rows)."""
    table: list[list[int]] = [[-1] * ncols]
    forward: list[int] = [0]  # forward[c] == c while c is alive
    inv = [c ^ 1 for c in range(ncols)]

    def rep(c: int) -> int:
        root = c
        while forward[root] != root:
            root = forward[root]
        while forward[c] != root:
            forward[c], c = root, forward[c]
        return root

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []

        def merge(k: int, l: int) -> None:
            k, l = rep(k), rep(l)
            if k == l:
                return
            if k > l:
                k, l = l, k
            forward[l] = k
            queue.append(l)

        merge(a, b)
        qi = 0
        while qi < len(queue):
            e = queue[qi]
            qi += 1
            row = table[e]
            for x in range(ncols):
                f = row[x]
                if f < 0:
                    continue
                xi = inv[x]
                if table[f][xi] == e:
                    table[f][xi] = -1
                e1 = rep(e)
                f1 = rep(f)
                t = table[e1][x]
                if t >= 0:
                    merge(f1, t)
                else:
                    t2 = table[f1][xi]
                    if t2 >= 0:
                        merge(e1, t2)
                    else:
                        table[e1][x] = f1
                        table[f1][xi] = e1

    state = {"count": 1}

    def define(c: int, x: int) -> bool:
        if len(table) >= max_cosets:
            return False
        d = len(table)
        table.append([-1] * ncols)
        forward.append(d)
        table[c][x] = d
        table[d][inv[x]] = c
        state["count"] += 1
        return True

    def scan(c: int, w: list[int], fill: bool) -> bool:
        """Scan ``w`` from ``c``; returns False only when ``fill`` runs out of space."""
        while True:
            f = c
            i = 0
            j = len(w) - 1
            while i <= j:
                t = table[f][w[i]]
                if t < 0:
                    break
                f = t
                i += 1
            if i > j:
                if f != c:
                    coincidence(f, c)
                return True
            b = c
            while j >= i:
                t = table[b][inv[w[j]]]
                if t < 0:
                    break
                b = t
                j -= 1
            if j < i:
                coincidence(f, b)
                return True
            if i == j:
                table[f][w[i]] = b
                table[b][inv[w[i]]] = f
                return True
            if not fill:
                return True
            if not define(f, w[i]):
                return False
            # the restart walks straight through the new coset

    def compact() -> int:
        alive = [c for c in range(len(table)) if forward[c] == c]
        new = {c: i for i, c in enumerate(alive)}
        rows = []
        for c in alive:
            rows.append([new[rep(t)] if t >= 0 else -1 for t in table[c]])
        table[:] = rows
        forward[:] = list(range(len(rows)))
        return len(rows)

    for h in subgroup:
        if not scan(0, h, True):
            return "exhausted", None
    c = 0
    while c < len(table):
        if forward[c] == c:
            ok = True
            for r in relators:
                if forward[c] != c:
                    break
                if not scan(c, r, True):
                    ok = False
                    break
            if ok and forward[c] == c:
                for x in range(ncols):
                    if table[c][x] < 0 and not define(c, x):
                        ok = False
                        break
            if not ok:
                # lookahead: scan every live coset without defining
                for d in range(len(table)):
                    if forward[d] != d:
                        continue
                    for r in relators:
                        if forward[d] != d:
                            break
                        scan(d, r, False)
                before = sum(1 for d in range(c) if forward[d] == d)
                alive_c = forward[c] == c
                size = compact()
                if size >= max_cosets:
                    return "exhausted", None
                c = before if alive_c else before
                continue
        c += 1
    compact()
    rows = [list(r) for r in table]
    if any(t < 0 for row in rows for t in row):
        return "exhausted", None
    return "complete", rows


def _run_tc(ncols, relators, subgroup, max_cosets, backend):
    if backend == "cython" and _tc_kernel is not None:
        return _tc_kernel.enumerate_cosets(ncols, relators, subgroup, max_cosets)
    return _tc_python(ncols, relators, subgroup, max_cosets)


def todd_coxeter(
    p: Presentation,
    subgroup: Sequence[FreeWord] = (),
    budget: Budget = DEFAULT_BUDGET,
    backend: str | None = None,
) -> CosetTable:
    """Coset enumeration; ``table.complete`` is False when the budget ran out."""
    backend = backend or TC_BACKEND
    rels = [list(r.codes) for r in p.relators]
    # relators for each generator's inverse pair are implicit in the table
    subs = [list(h.codes) for h in subgroup if h]
    status, rows = _run_tc(2 * p.rank, rels, subs, budget.max_cosets, backend)
    if status != "complete":
        return CosetTable(p.rank, [], False, "exhausted")
    table = CosetTable(p.rank, [list(r) for r in rows], True)
    if not validate_coset_table(table, p, subgroup):
        raise AssertionError("coset enumeration produced an invalid table")
    return table


# -- group-level queries ------------------------------------------------------


class GroupSolver:
    """Caches completion and enumeration results for one presentation."""

    def __init__(self, p: Presentation, budget: Budget = DEFAULT_BUDGET):
        self.p = p
        self.budget = budget
        self._kb: RewriteSystem | None = None
        self._tc: CosetTable | None = None
        self._tc_done = False

    @property
    def kb(self) -> RewriteSystem:
        if self._kb is None:
            self._kb = knuth_bendix(self.p, self.budget)
        return self._kb

    def abelian_invariants(self):
        return abelianize(self.p)

    def coset_table(self) -> CosetTable | None:
        """Regular representation, skipped when the abelianization is infinite."""
        if not self._tc_done:
            self._tc_done = True
            if abelianize(self.p).free_rank == 0:
                t = todd_coxeter(self.p, (), self.budget)
                self._tc = t if t.complete else None
        return self._tc

    def equal(self, a: FreeWord, b: FreeWord) -> str:
        kb = self.kb
        na = kb.reduce(_enc(a.codes))
        nb = kb.reduce(_enc(b.codes))
        if na == nb:
            return "yes"
        if kb.confluent:
            return "no"
        t = self.coset_table()
        if t is not None:
            return "yes" if t.act(0, a.codes) == t.act(0, b.codes) else "no"
        return "unknown"

    def order_of(self, w: FreeWord) -> int | None:
        kb = self.kb
        base = _enc(w.codes)
        cur = ""
        for n in range(1, self.budget.max_power + 1):
            cur = kb.reduce(cur + base)
            if cur == "":
                return n
        t = self.coset_table()
        if t is not None:
            c = 0
            for n in range(1, self.budget.max_power + 1):
                c = t.act(c, w.codes)
                if c == 0:
                    return n
        return None


def equal_in_group(p: Presentation, a: FreeWord, b: FreeWord, budget: Budget = DEFAULT_BUDGET) -> str:
    """``'yes'``, ``'no'`` or ``'unknown'``."""
    return GroupSolver(p, budget).equal(a, b)


def order_of(p: Presentation, w: FreeWord, budget: Budget = DEFAULT_BUDGET) -> int | None:
    return GroupSolver(p, budget).order_of(w)


def permutation_group_order(perms: Sequence[Sequence[int]], limit: int = 5000) -> int | None:
    """Order of the group generated by ``perms`` by closure, or None past ``limit``."""
    if not perms:
        return 1
    n = len(perms[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in perms]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[i]] for i in range(n))
                if h not in seen:
                    seen.add(h)
                    if len(seen) > limit:
                        return None
                    nxt.append(h)
        frontier = nxt
    return len(seen)


__all__ = [
    "Budget",
    "CosetTable",
    "DEFAULT_BUDGET",
    "Derivation",
    "GroupSolver",
    "RewriteSystem",
    "TC_BACKEND",
    "equal_in_group",
    "invert",
    "knuth_bendix",
    "order_of",
    "permutation_group_order",
    "todd_coxeter",
    "validate_coset_table",
]
