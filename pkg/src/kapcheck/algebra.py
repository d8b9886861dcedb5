"""Group-algebra arithmetic over small prime fields and the graphs built from it.

Group elements of a finite model are integers ``0..N-1``.  An algebra element
stores only nonzero coefficients.  The zero-divisor graph of ``(alpha, beta)``
has vertex set ``supp(beta)``; two coefficients ``h g`` and ``h' g'`` of the
product that land on the same group element give one edge ``g -- g'``.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Hashable, Iterable, Sequence

from .graphs import Multigraph
from .word import FreeWord, invert

MAX_CHARACTERISTIC = 7


class AlgebraError(ValueError):
    pass


# -- finite group models -----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroupModel:
    """A finite group on ``0..order-1``; ``table=None`` means cyclic with ``g_i = a^i``."""

    order: int
    table: tuple[tuple[int, ...], ...] | None = None
    name: str = ""

    def __post_init__(self):
        if self.order < 1:
            raise AlgebraError("group order must be positive")
        if self.table is not None:
            self._validate()
        if not self.name:
            object.__setattr__(self, "name", f"cyclic:{self.order}" if self.table is None else f"table:{self.order}")

    @classmethod
    def cyclic(cls, order: int) -> "FiniteGroupModel":
        return cls(order)

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]], name: str = "") -> "FiniteGroupModel":
        return cls(len(rows), tuple(tuple(int(x) for x in r) for r in rows), name)

    @classmethod
    def load(cls, path: str | Path) -> "FiniteGroupModel":
        """JSON file ``{"table": [[...], ...]}``."""
        data = json.loads(Path(path).read_text())
        return cls.from_table(data["table"], data.get("name", f"table:{Path(path).name}"))

    @classmethod
    def parse(cls, text: str) -> "FiniteGroupModel":
        kind, _, arg = text.strip().partition(":")
        if kind == "cyclic":
            return cls.cyclic(int(arg))
        if kind == "table":
            return cls.load(arg)
        raise AlgebraError(f"unknown group model {text!r}")

    def _validate(self) -> None:
        n, t = self.order, self.table
        if len(t) != n or any(len(r) != n for r in t):
            raise AlgebraError("multiplication table must be square")
        if any(sorted(r) != list(range(n)) for r in t):
            raise AlgebraError("table rows must be permutations")
        if any(sorted(t[i][j] for i in range(n)) != list(range(n)) for j in range(n)):
            raise AlgebraError("table columns must be permutations")
        ids = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
        if not ids:
            raise AlgebraError("table has no identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise AlgebraError(f"table is not associative at ({a},{b},{c})")

    @cached_property
    def identity(self) -> int:
        if self.table is None:
            return 0
        return next(e for e in range(self.order) if all(self.table[e][x] == x for x in range(self.order)))

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        if self.table is None:
            return tuple((-i) % self.order for i in range(self.order))
        e = self.identity
        return tuple(next(j for j in range(self.order) if self.table[i][j] == e) for i in range(self.order))

    def mul(self, a: int, b: int) -> int:
        if self.table is None:
            return (a + b) % self.order
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]


# -- algebra elements --------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraElement:
    model: FiniteGroupModel
    characteristic: int
    coefficients: tuple[tuple[int, int], ...] = ()  # sorted (group element, residue) pairs

    def __post_init__(self):
        p = self.characteristic
        if p not in (2, 3, 5, 7):
            raise AlgebraError(f"characteristic must be a prime <= {MAX_CHARACTERISTIC}, got {p}")
        merged: Counter = Counter()
        for g, c in self.coefficients:
            if not 0 <= g < self.model.order:
                raise AlgebraError(f"group element {g} outside the model")
            merged[g] = (merged[g] + c) % p
        object.__setattr__(self, "coefficients", tuple(sorted((g, c) for g, c in merged.items() if c)))

    @classmethod
    def from_dict(cls, model: FiniteGroupModel, p: int, coeffs: dict[int, int]) -> "AlgebraElement":
        return cls(model, p, tuple(coeffs.items()))

    @classmethod
    def from_support(cls, model: FiniteGroupModel, p: int, support: Iterable[int]) -> "AlgebraElement":
        return cls(model, p, tuple((g, 1) for g in support))

    @classmethod
    def parse(cls, text: str) -> "AlgebraElement":
        """``char; model; term(+term)*`` with terms ``coeff*gN`` or ``gN``."""
        parts = [s.strip() for s in text.split(";")]
        if len(parts) != 3:
            raise AlgebraError(f"expected 'char; model; terms', got {text!r}")
        p = int(parts[0])
        model = FiniteGroupModel.parse(parts[1])
        terms = []
        body = parts[2]
        if body not in ("", "0"):
            for term in body.split("+"):
                coeff, _, g = term.strip().rpartition("*")
                g = g.strip()
                if not g.startswith("g"):
                    raise AlgebraError(f"bad term {term!r}")
                terms.append((int(g[1:]), int(coeff) if coeff else 1))
        return cls(model, p, tuple(terms))

    def text(self) -> str:
        terms = "+".join(f"g{g}" if c == 1 else f"{c}*g{g}" for g, c in self.coefficients) or "0"
        return f"{self.characteristic}; {self.model.name}; {terms}"

    def __str__(self) -> str:
        return self.text()

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.coefficients)

    def coefficient(self, g: int) -> int:
        return dict(self.coefficients).get(g, 0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_one(self) -> bool:
        return self.coefficients == ((self.model.identity, 1),)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)


def multiply(alpha: AlgebraElement, beta: AlgebraElement) -> AlgebraElement:
    if alpha.model != beta.model:
        raise AlgebraError("elements live in different group models")
    if alpha.characteristic != beta.characteristic:
        raise AlgebraError("elements have different characteristics")
    out: Counter = Counter()
    for h, a in alpha.coefficients:
        for g, b in beta.coefficients:
            out[alpha.model.mul(h, g)] += a * b
    return AlgebraElement(alpha.model, alpha.characteristic, tuple(out.items()))


# -- zero-divisor and unit graphs -----------------------------------------------------------


@dataclass(frozen=True)
class SupportGraph:
    """Vertices are group elements; each edge ``(h, h', g, g')`` means ``h g = h' g'``."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int, int], ...]

    @cached_property
    def multigraph(self) -> Multigraph:
        idx = {g: i for i, g in enumerate(self.vertices)}
        return Multigraph.from_edge_list(len(self.vertices), [(idx[g], idx[gp]) for _, _, g, gp in self.edges])

    def degree(self, g: int) -> int:
        return sum((e[2] == g) + (e[3] == g) for e in self.edges)

    def degrees(self) -> dict[int, int]:
        return {g: self.degree(g) for g in self.vertices}

    def components(self) -> list[tuple[int, ...]]:
        parent = {g: g for g in self.vertices}

        def find(g):
            while parent[g] != g:
                parent[g] = parent[parent[g]]
                g = parent[g]
            return g

        for _, _, g, gp in self.edges:
            parent[find(g)] = find(gp)
        groups: dict[int, list[int]] = {}
        for g in self.vertices:
            groups.setdefault(find(g), []).append(g)
        return sorted(tuple(sorted(c)) for c in groups.values())

    def multiplicity(self, g: int, gp: int) -> int:
        return sum(1 for e in self.edges if {e[2], e[3]} == {g, gp})


def _representations(model: FiniteGroupModel, left: Sequence[int], right: Sequence[int]) -> dict[int, list[tuple[int, int]]]:
    reps: dict[int, list[tuple[int, int]]] = {}
    for h in left:
        for g in right:
            reps.setdefault(model.mul(h, g), []).append((h, g))
    return reps


def _support_graph(alpha: AlgebraElement, beta: AlgebraElement) -> SupportGraph:
    edges = []
    for _, pairs in sorted(_representations(alpha.model, alpha.support, beta.support).items()):
        for (h, g), (hp, gp) in itertools.combinations(pairs, 2):
            edges.append((h, hp, g, gp))
    return SupportGraph(beta.support, tuple(edges))


def build_zero_divisor_graph(alpha: AlgebraElement, beta: AlgebraElement) -> SupportGraph:
    if alpha.is_zero() or beta.is_zero():
        raise AlgebraError("zero-divisor graph needs nonzero elements")
    if not multiply(alpha, beta).is_zero():
        raise AlgebraError("alpha * beta is not zero")
    return _support_graph(alpha, beta)


def build_unit_graph(a: AlgebraElement, b: AlgebraElement) -> SupportGraph:
    if not multiply(a, b).is_one():
        raise AlgebraError("a * b is not one")
    return _support_graph(a, b)


# -- support statistics ------------------------------------------------------------------------


@dataclass(frozen=True)
class SupportStats:
    """``r[s]`` counts representations of ``s`` in ``BC``; ``theta[g][i]`` and ``delta[i]`` are the level sets."""

    b_size: int
    c_size: int
    r: dict[int, int]
    theta_sets: dict[int, dict[int, tuple[int, ...]]]
    delta_sets: dict[int, tuple[int, ...]]

    @property
    def bc_size(self) -> int:
        return len(self.r)

    def theta(self, g: int, i: int) -> int:
        return len(self.theta_sets[g].get(i, ()))

    def delta(self, i: int) -> int:
        return len(self.delta_sets.get(i, ()))

    def check_identities(self) -> None:
        for g in self.theta_sets:
            if sum(len(v) for v in self.theta_sets[g].values()) != self.b_size:
                raise AlgebraError(f"theta counts at {g} do not sum to |B|")
        if sum(len(v) for v in self.delta_sets.values()) != self.bc_size:
            raise AlgebraError("delta counts do not sum to |BC|")
        if sum(i * len(v) for i, v in self.delta_sets.items()) != self.b_size * self.c_size:
            raise AlgebraError("weighted delta counts do not sum to |B||C|")

    def predicted_degree(self, g: int) -> int:
        """Each ``h`` in ``B`` contributes ``r(hg) - 1`` edges at ``g``."""
        return sum((i - 1) * len(hs) for i, hs in self.theta_sets[g].items())


def statistics(alpha: AlgebraElement, beta: AlgebraElement) -> SupportStats:
    model = alpha.model
    reps = _representations(model, alpha.support, beta.support)
    r = {s: len(p) for s, p in sorted(reps.items())}
    theta: dict[int, dict[int, tuple[int, ...]]] = {}
    for g in beta.support:
        levels: dict[int, list[int]] = {}
        for h in alpha.support:
            levels.setdefault(r[model.mul(h, g)], []).append(h)
        theta[g] = {i: tuple(hs) for i, hs in sorted(levels.items())}
    delta: dict[int, list[int]] = {}
    for s, k in r.items():
        delta.setdefault(k, []).append(s)
    stats = SupportStats(
        len(alpha.support), len(beta.support), r, theta, {i: tuple(v) for i, v in sorted(delta.items())}
    )
    stats.check_identities()
    return stats


# -- support profiles in a group -----------------------------------------------------------------

FAMILIES = ("{a,a^-1,b}", "{a,a^2,b}", "{a,b,ab^-1a}", "{a,b,ab}")


@dataclass(frozen=True)
class _Ops:
    mul: Callable[[Hashable, Hashable], Hashable]
    inv: Callable[[Hashable], Hashable]
    one: Hashable


def _free_ops(rank: int) -> _Ops:
    return _Ops(lambda a, b: a * b, invert, FreeWord((), rank))


def _model_ops(model: FiniteGroupModel) -> _Ops:
    return _Ops(model.mul, model.inv, model.identity)


@dataclass(frozen=True)
class SupportProfile:
    size: int
    families: tuple[str, ...]


def support_profile(support: Sequence, model: FiniteGroupModel | None = None) -> SupportProfile:
    """Size of ``(X^-1 X) minus 1`` and the coincidence families of ``{x, y, z}``.

    ``support`` is four free words (identity included) or, with ``model``, four
    model elements.
    """
    ops = _model_ops(model) if model is not None else _free_ops(max(w.rank for w in support))
    items = list(support)
    if len(items) != 4 or len(set(items)) != 4:
        raise AlgebraError("support must have four distinct elements")
    if ops.one not in items:
        raise AlgebraError("support must contain the identity")
    others = [w for w in items if w != ops.one]
    quotients = {ops.mul(ops.inv(u), v) for u in items for v in items if u != v}
    found = []
    for a, b in itertools.permutations(others, 2):
        c = next(w for w in others if w not in (a, b))
        if c == ops.inv(a):
            found.append(FAMILIES[0])
        if c == ops.mul(a, a):
            found.append(FAMILIES[1])
        if c == ops.mul(ops.mul(a, ops.inv(b)), a):
            found.append(FAMILIES[2])
        if c == ops.mul(a, b):
            found.append(FAMILIES[3])
    return SupportProfile(len(quotients), tuple(f for f in FAMILIES if f in found))


# -- delta profiles ------------------------------------------------------------------------------


def delta_feasibility(c_size: int, regime: str = "S10", mode: str = "zero-divisor", field_name: str = "general"):
    """Integer level-set profiles compatible with the counting identities.

    Zero-divisor mode returns ``(|BC|, (d2, d3, d4))``; unit mode returns
    ``(|BC|, (d1, d2, d3, d4))`` with ``d1`` in {0, 1}.  Over F2 the number of
    odd levels is fixed: none for a zero divisor, exactly one (the identity) for
    a unit.  ``regime`` is accepted for symmetry with the other entry points;
    both support regimes share these bounds.
    """
    if c_size < 1:
        raise AlgebraError("|C| must be positive")
    if regime not in ("S10", "S12"):
        raise AlgebraError(f"unknown regime {regime!r}")
    if mode not in ("zero-divisor", "unit"):
        raise AlgebraError(f"unknown mode {mode!r}")
    if field_name not in ("general", "F2"):
        raise AlgebraError(f"unknown field {field_name!r}")
    b_size = 4
    total = b_size * c_size
    out = []
    for bc in range(c_size + 5, 2 * c_size + 1):
        for d1 in (0, 1) if mode == "unit" else (0,):
            for d4 in range(bc + 1):
                for d3 in range(bc + 1 - d4):
                    d2 = bc - d1 - d3 - d4
                    if d2 < 0 or d1 + 2 * d2 + 3 * d3 + 4 * d4 != total:
                        continue
                    if field_name == "F2" and d1 + d3 != (1 if mode == "unit" else 0):
                        continue
                    out.append((bc, (d1, d2, d3, d4) if mode == "unit" else (d2, d3, d4)))
    return sorted(out, key=lambda t: (-t[0], tuple(-x for x in t[1])))


__all__ = [
    "AlgebraElement",
    "AlgebraError",
    "FAMILIES",
    "FiniteGroupModel",
    "SupportGraph",
    "SupportProfile",
    "SupportStats",
    "build_unit_graph",
    "build_zero_divisor_graph",
    "delta_feasibility",
    "multiply",
    "statistics",
    "support_profile",
]
