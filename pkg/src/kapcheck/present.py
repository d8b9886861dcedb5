"""Finite presentations, Tietze substitutions and abelian invariants."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .word import FreeWord, WordError, cyclic_reduce, invert, substitute


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    rank: int
    relators: tuple[FreeWord, ...] = ()

    def __post_init__(self):
        if not 1 <= self.rank <= 3:
            raise PresentationError(f"rank {self.rank} out of range")
        rels = []
        for r in self.relators:
            if r.rank != self.rank:
                r = FreeWord(r.codes, self.rank)
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def parse(cls, rank: int, text: str | Iterable[str]) -> "Presentation":
        parts = text.split(",") if isinstance(text, str) else list(text)
        return cls(rank, tuple(FreeWord.parse(p, rank) for p in parts if p.strip()))

    def __str__(self) -> str:
        gens = "xyz"[: self.rank]
        return f"<{','.join(gens)} | {', '.join(str(r) for r in self.relators)}>"

    def text(self) -> str:
        return ",".join(str(r) for r in self.relators)

    def with_relators(self, extra: Iterable[FreeWord]) -> "Presentation":
        return Presentation(self.rank, self.relators + tuple(extra))


@dataclass(frozen=True)
class AbelianInvariants:
    torsion_factors: tuple[int, ...]
    free_rank: int

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion_factors:
            out *= d
        return out


def tietze_substitute(p: Presentation, gen: int, image: FreeWord) -> Presentation:
    """Rewrite every relator under ``gen -> image``.

    The image must contain ``gen`` exactly once (with either sign) so the move is
    an automorphism of the free group.  Rewritten relators are cyclically
    reduced, since conjugating a relator does not change the normal closure.
    """
    if image.rank != p.rank:
        image = FreeWord(image.codes, p.rank)
    occ = [c for c in image.codes if c // 2 + 1 == gen]
    if len(occ) != 1:
        raise PresentationError(f"substitution for generator {gen} is not invertible: {image}")
    return Presentation(p.rank, tuple(cyclic_reduce(substitute(r, gen, image))[0] for r in p.relators))


def eliminate_generator(p: Presentation) -> tuple[Presentation, dict[int, FreeWord]] | None:
    """Drop one generator pinned by a relator in which it occurs exactly once.

    Returns the smaller presentation (generators renumbered) and, for every old
    generator, its expression in the new generators.
    """
    for r in p.relators:
        core, _ = cyclic_reduce(r)
        for g in range(1, p.rank + 1):
            pos = [i for i, c in enumerate(core.codes) if c // 2 + 1 == g]
            if len(pos) != 1:
                continue
            i = pos[0]
            rot = core.codes[i:] + core.codes[:i]
            rest = FreeWord(rot[1:], p.rank)
            # rot = g^s * rest = 1  =>  g = rest^-1 (s=+1) or g = rest (s=-1)
            expr = invert(rest) if rot[0] % 2 == 0 else rest
            remaining = [h for h in range(1, p.rank + 1) if h != g]
            renum = {old: new for new, old in enumerate(remaining, start=1)}
            new_rank = p.rank - 1
            if new_rank == 0:
                return None

            def translate(w: FreeWord) -> FreeWord:
                out = []
                for c in w.codes:
                    h = c // 2 + 1
                    out.append(2 * (renum[h] - 1) + (c & 1))
                return FreeWord(out, new_rank)

            new_rels = []
            for other in p.relators:
                if other is r:
                    continue
                new_rels.append(translate(substitute(other, g, expr)))
            exprs = {h: FreeWord((2 * (renum[h] - 1),), new_rank) for h in remaining}
            exprs[g] = translate(expr)
            return Presentation(new_rank, tuple(new_rels)), exprs
    return None


def exponent_matrix(p: Presentation) -> list[list[int]]:
    return [[r.exponent_sum(g) for g in range(1, p.rank + 1)] for r in p.relators]


# -- Smith normal form -------------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass
class SmithForm:
    diagonal: list[int]
    left: list[list[int]] = field(repr=False)
    right: list[list[int]] = field(repr=False)
    matrix: list[list[int]] = field(repr=False)

    def check(self) -> bool:
        rows = len(self.matrix)
        cols = len(self.matrix[0]) if rows else len(self.right)
        prod = matmul(matmul(self.left, self.matrix), self.right) if rows else []
        for i in range(rows):
            for j in range(cols):
                want = self.diagonal[i] if i == j and i < len(self.diagonal) else 0
                if prod[i][j] != want:
                    return False
        nz = [d for d in self.diagonal if d]
        if any(d < 0 for d in self.diagonal):
            return False
        if any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)):
            return False
        return abs(det(self.left)) == 1 and abs(det(self.right)) == 1


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form ``U A V = D`` over the integers with unimodular ``U``, ``V``."""
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k*row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        done = False
            if done:
                # enforce divisibility of the trailing block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % a[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (t, t)
            for i in range(t, m):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, n):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = [a[i][i] for i in range(min(m, n))]
    return SmithForm(diag, u, v, [list(map(int, row)) for row in matrix])


def abelianize(p: Presentation) -> AbelianInvariants:
    mat = exponent_matrix(p)
    if not mat:
        return AbelianInvariants((), p.rank)
    snf = smith_normal_form(mat, p.rank)
    if not snf.check():
        raise AssertionError("Smith normal form transform check failed")
    nonzero = [d for d in snf.diagonal if d]
    torsion = tuple(d for d in nonzero if d > 1)
    return AbelianInvariants(torsion, p.rank - len(nonzero))


def minor_gcds(matrix: Sequence[Sequence[int]]) -> list[int]:
    """gcd of all k x k minors for k = 1..min(m, n); independent check of SNF."""
    from itertools import combinations

    m = len(matrix)
    n = len(matrix[0]) if m else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det([[matrix[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


__all__ = [
    "AbelianInvariants",
    "Presentation",
    "PresentationError",
    "SmithForm",
    "WordError",
    "abelianize",
    "det",
    "eliminate_generator",
    "exponent_matrix",
    "minor_gcds",
    "smith_normal_form",
    "tietze_substitute",
]
