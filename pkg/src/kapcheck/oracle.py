"""Contradiction oracle: certified disposals of presentations.

A disposal is sound when the ambient group is torsion-free and the protected
words are nontrivial and pairwise distinct in it.  Every verdict other than
``Inconclusive`` carries derivations that :func:`verify_certificate` replays
without touching the rewriting engine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .decide import (
    DEFAULT_BUDGET,
    Budget,
    CosetTable,
    Derivation,
    GroupSolver,
    validate_coset_table,
)
from .present import Presentation, eliminate_generator, exponent_matrix, smith_normal_form
from .word import (
    FreeWord,
    apply_map,
    cyclic_normal_form,
    cyclic_reduce,
    free_reduce,
    invert,
    primitive_root,
    rotations,
)


# -- protected sets -------------------------------------------------------------


@dataclass(frozen=True)
class ProtectedSet:
    regime: str
    rank: int
    words: tuple[FreeWord, ...]

    @classmethod
    def s12(cls) -> "ProtectedSet":
        base = ["x", "y", "z", "Xy", "Xz", "Yz"]
        ws = [FreeWord.parse(t, 3) for t in base]
        return cls("S12", 3, tuple(ws + [invert(w) for w in ws]))

    @classmethod
    def s10(cls) -> "ProtectedSet":
        base = ["x", "xx", "y", "Xy", "xy"]
        ws = [FreeWord.parse(t, 2) for t in base]
        return cls("S10", 2, tuple(ws + [invert(w) for w in ws]))

    @classmethod
    def for_regime(cls, regime: str) -> "ProtectedSet":
        if regime.upper().startswith("S12"):
            return cls.s12()
        if regime.upper().startswith("S10"):
            return cls.s10()
        raise ValueError(f"unknown regime {regime!r}")

    def __contains__(self, w: FreeWord) -> bool:
        return w.with_rank(self.rank) in self.words

    def representatives(self) -> list[FreeWord]:
        """One word per inverse pair."""
        out: list[FreeWord] = []
        for w in self.words:
            if w not in out and invert(w) not in out:
                out.append(w)
        return out


# -- verdicts -------------------------------------------------------------------


@dataclass
class Torsion:
    word: FreeWord
    order: int
    proof: Derivation
    kind: str = field(default="Torsion", init=False)
    via_roots: bool = False  # certificate refers to root_presentation(p)


@dataclass
class Collision:
    first: FreeWord
    second: FreeWord
    proof: Derivation
    kind: str = field(default="Collision", init=False)
    via_roots: bool = False  # certificate refers to root_presentation(p)


@dataclass
class Abelian:
    proofs: dict[tuple[int, int], Derivation]
    kind: str = field(default="Abelian", init=False)
    via_roots: bool = False  # certificate refers to root_presentation(p)


@dataclass
class Finite:
    order: int
    table: CosetTable
    kind: str = field(default="Finite", init=False)
    via_roots: bool = False  # certificate refers to root_presentation(p)


@dataclass
class BSQuotient:
    m: int
    n: int
    a_word: FreeWord
    b_word: FreeWord
    expressions: dict[int, FreeWord]  # generator -> word in A (x) and B (y)
    relation_proof: Derivation
    expression_proofs: dict[int, Derivation]
    kind: str = field(default="BSQuotient", init=False)
    via_roots: bool = False  # certificate refers to root_presentation(p)

    @property
    def label(self) -> str:
        return f"BS({self.m},{self.n})"


@dataclass
class Inconclusive:
    budget: str
    notes: tuple[str, ...] = ()
    kind: str = field(default="Inconclusive", init=False)


Verdict = Torsion | Collision | Abelian | Finite | BSQuotient | Inconclusive

CONTRADICTION_KINDS = ("Torsion", "Collision", "Abelian", "Finite", "BSQuotient")


# -- certificate replay (independent of the rewriting engine) ---------------------


def _is_relator_consequence(lhs: Sequence[int], rhs: Sequence[int], relator_cores: set[tuple[int, ...]]) -> bool:
    """True when ``lhs = rhs`` follows from one relator or free cancellation alone."""
    w = free_reduce(tuple(lhs) + tuple(c ^ 1 for c in reversed(rhs)))
    if not w:
        return True
    i, j = 0, len(w) - 1
    while i < j and w[i] == w[j] ^ 1:
        i += 1
        j -= 1
    return tuple(w[i : j + 1]) in relator_cores


def _relator_cores(p: Presentation) -> set[tuple[int, ...]]:
    cores: set[tuple[int, ...]] = set()
    for r in p.relators:
        core, _ = cyclic_reduce(r)
        for w in (core, invert(core)):
            cores.update(rotations(w.codes))
    return cores


class CertificateError(Exception):
    pass


def _apply(word: tuple[int, ...], step, lemmas, limit: int) -> tuple[int, ...]:
    pos, idx, direction = step
    if not 0 <= idx < limit:
        raise CertificateError(f"step cites lemma {idx} outside allowed range {limit}")
    lhs, rhs, _ = lemmas[idx]
    src, dst = (lhs, rhs) if direction == 1 else (rhs, lhs)
    if direction not in (1, -1):
        raise CertificateError(f"bad direction {direction}")
    if word[pos : pos + len(src)] != tuple(src) or pos < 0:
        raise CertificateError(f"step {step} does not match word at position {pos}")
    return word[:pos] + tuple(dst) + word[pos + len(src) :]


def replay_derivation(p: Presentation, d: Derivation, start: Sequence[int] | None = None) -> None:
    """Raise :class:`CertificateError` unless ``d`` proves ``start = end`` in ``p``."""
    cores = _relator_cores(p)
    lemmas = d.lemmas
    for i, (lhs, rhs, steps) in enumerate(lemmas):
        if steps is None:
            if not _is_relator_consequence(lhs, rhs, cores):
                raise CertificateError(f"axiom {i} is not a relator instance")
            continue
        w = tuple(lhs)
        for st in steps:
            w = _apply(w, st, lemmas, i)
        if w != tuple(rhs):
            raise CertificateError(f"lemma {i} derivation ends at the wrong word")
    w = tuple(d.start)
    if start is not None and free_reduce(w) != free_reduce(tuple(start)):
        raise CertificateError("derivation starts from an unexpected word")
    for st in d.steps:
        w = _apply(w, st, lemmas, len(lemmas))
    if w != tuple(d.end):
        raise CertificateError("derivation ends at the wrong word")


def _proves_trivial(p: Presentation, d: Derivation, word: FreeWord) -> None:
    if d.end:
        raise CertificateError("derivation does not end at the identity")
    replay_derivation(p, d, word.codes)


def verify_certificate(p: Presentation, v, ps: ProtectedSet | None = None) -> tuple[bool, str]:
    """Independent audit; returns ``(accepted, reason)``."""
    if getattr(v, "via_roots", False):
        p = root_presentation(p)
    try:
        if isinstance(v, Inconclusive):
            raise CertificateError("inconclusive verdicts carry no certificate")
        if isinstance(v, Torsion):
            if ps is not None and v.word not in ps:
                raise CertificateError(f"{v.word} is not a protected word")
            if v.order < 1:
                raise CertificateError("order must be positive")
            _proves_trivial(p, v.proof, v.word ** v.order)
        elif isinstance(v, Collision):
            if ps is not None and (v.first not in ps or v.second not in ps):
                raise CertificateError("collision cites a word outside the protected set")
            if v.first == v.second:
                raise CertificateError("collision words must be distinct")
            _proves_trivial(p, v.proof, v.first * invert(v.second))
        elif isinstance(v, Abelian):
            for i in range(1, p.rank + 1):
                for j in range(i + 1, p.rank + 1):
                    d = v.proofs.get((i, j))
                    if d is None:
                        raise CertificateError(f"missing commutator proof for ({i},{j})")
                    gi, gj = FreeWord.gen(i, p.rank), FreeWord.gen(j, p.rank)
                    _proves_trivial(p, d, gi * gj * invert(gi) * invert(gj))
        elif isinstance(v, Finite):
            if not validate_coset_table(v.table, p, ()):
                raise CertificateError("coset table fails validation")
            if v.table.index != v.order:
                raise CertificateError("coset table size differs from the claimed order")
        elif isinstance(v, BSQuotient):
            if min(abs(v.m), abs(v.n)) != 1:
                raise CertificateError("only quotients of BS(1,n) are accepted")
            a, b = v.a_word.with_rank(p.rank), v.b_word.with_rank(p.rank)
            rel = b * a ** v.m * invert(b) * a ** (-v.n)
            _proves_trivial(p, v.relation_proof, rel)
            for g in range(1, p.rank + 1):
                expr = v.expressions.get(g)
                d = v.expression_proofs.get(g)
                if expr is None or d is None:
                    raise CertificateError(f"generator {g} lacks an expression")
                image = _substitute_ab(expr, a, b)
                _proves_trivial(p, d, invert(FreeWord.gen(g, p.rank)) * image)
        else:
            raise CertificateError(f"unknown verdict {type(v).__name__}")
    except CertificateError as exc:
        return False, str(exc)
    return True, "ok"


def root_presentation(p: Presentation) -> Presentation:
    """Replace each relator ``u^k`` by its primitive root ``u``.

    In a torsion-free group ``u^k = 1`` forces ``u = 1``, so the ambient group
    is still a quotient of the result.
    """
    return Presentation(p.rank, tuple(primitive_root(r)[0] for r in p.relators))


def _substitute_ab(expr: FreeWord, a: FreeWord, b: FreeWord) -> FreeWord:
    """Evaluate a word in A (letter x) and B (letter y) at ``a``, ``b``."""
    out: list[int] = []
    ia, ib = invert(a).codes, invert(b).codes
    for c in expr.codes:
        out.extend({0: a.codes, 1: ia, 2: b.codes, 3: ib}[c])
    return FreeWord(out, a.rank)


# -- checkers -------------------------------------------------------------------


def _prove(solver: GroupSolver, w: FreeWord) -> Derivation | None:
    return solver.kb.prove_trivial(w.codes)


def check_finite(solver: GroupSolver) -> Finite | None:
    t = solver.coset_table()
    if t is None:
        return None
    return Finite(t.index, t)


def check_torsion(solver: GroupSolver, ps: ProtectedSet) -> Torsion | None:
    for w in ps.representatives():
        n = solver.order_of(w)
        if n is None:
            continue
        d = _prove(solver, w ** n)
        if d is not None:
            return Torsion(w, n, d)
    return None


def check_collision(solver: GroupSolver, ps: ProtectedSet) -> Collision | None:
    words = list(ps.words)
    for i, s in enumerate(words):
        for t in words[i + 1 :]:
            d = _prove(solver, s * invert(t))
            if d is not None:
                return Collision(s, t, d)
    return None


def check_abelian(solver: GroupSolver) -> Abelian | None:
    p = solver.p
    proofs = {}
    for i in range(1, p.rank + 1):
        for j in range(i + 1, p.rank + 1):
            gi, gj = FreeWord.gen(i, p.rank), FreeWord.gen(j, p.rank)
            d = _prove(solver, gi * gj * invert(gi) * invert(gj))
            if d is None:
                return None
            proofs[(i, j)] = d
    return Abelian(proofs)


# -- Baumslag-Solitar witnesses ----------------------------------------------------


@dataclass(frozen=True)
class BSBounds:
    max_length: int = 6
    max_exponent: int = 6


@lru_cache(maxsize=None)
def nielsen_bases(max_length: int) -> list[tuple[FreeWord, FreeWord, FreeWord, FreeWord]]:
    """Free bases ``(a, b)`` of F(x, y) with both lengths bounded.

    Each entry also records x and y as words in A (letter x) and B (letter y).
    Breadth-first over elementary Nielsen moves, shortest bases first.
    """
    x, y = FreeWord.parse("x", 2), FreeWord.parse("y", 2)
    start = (x, y, x, y)
    seen = {(x, y)}
    order = [start]
    frontier = [start]
    A, B = x, y
    iA, iB = invert(A), invert(B)
    while frontier:
        nxt = []
        for a, b, ex, ey in frontier:
            moves = []
            # a <- a b^e or b^e a; the old A equals new A with the factor removed
            for e in (1, -1):
                be = b if e == 1 else invert(b)
                Bc = B if e == 1 else iB
                moves.append((a * be, b, {1: A * invert(Bc)}))
                moves.append((be * a, b, {1: invert(Bc) * A}))
                ae = a if e == 1 else invert(a)
                Ac = A if e == 1 else iA
                moves.append((a, b * ae, {2: B * invert(Ac)}))
                moves.append((a, ae * b, {2: invert(Ac) * B}))
            moves.append((invert(a), b, {1: iA}))
            moves.append((a, invert(b), {2: iB}))
            moves.append((b, a, "swap"))
            for na, nb, sub in moves:
                if len(na) > max_length or len(nb) > max_length or (na, nb) in seen:
                    continue
                seen.add((na, nb))
                if sub == "swap":
                    sw = {1: B, 2: A}
                    nex, ney = apply_map(ex, sw), apply_map(ey, sw)
                else:
                    nex, ney = apply_map(ex, sub), apply_map(ey, sub)
                entry = (na, nb, nex, ney)
                order.append(entry)
                nxt.append(entry)
        frontier = nxt
    order.sort(key=lambda e: (len(e[0]) + len(e[1]), e[0].codes, e[1].codes))
    return order


def _abelian_kernel_test(p: Presentation):
    """Return a predicate ``v -> bool`` telling whether exponent vector v dies in G^ab."""
    mat = exponent_matrix(p)
    if not mat:
        return lambda v: not any(v)
    snf = smith_normal_form(mat, p.rank)
    # v in row lattice  <=>  v V = y D for integer y
    V = snf.right
    diag = snf.diagonal

    def dies(v: Sequence[int]) -> bool:
        w = [sum(v[k] * V[k][j] for k in range(p.rank)) for j in range(p.rank)]
        for j, c in enumerate(w):
            d = diag[j] if j < len(diag) else 0
            if d == 0:
                if c:
                    return False
            elif c % d:
                return False
        return True

    return dies


def _bs_fast_path(p: Presentation, bounds: BSBounds):
    """Relators that literally read ``b a^m b^-1 a^-n`` for generator letters."""
    for r in p.relators:
        core, _ = cyclic_reduce(r)
        for w in rotations(core.codes) + rotations(invert(core).codes):
            if len(w) < 4:
                continue
            b = w[0]
            if w[-1] == b:
                continue
            # b a^m b^-1 a^-n with a a single generator letter pair
            i = 1
            a_gen = w[1] // 2
            if a_gen == b // 2:
                continue
            while i < len(w) and w[i] // 2 == a_gen:
                i += 1
            if i >= len(w) or w[i] != b ^ 1:
                continue
            seg1 = w[1:i]
            seg2 = w[i + 1 :]
            if not seg2 or any(c // 2 != a_gen for c in seg2):
                continue
            if len(set(seg1)) != 1 or len(set(seg2)) != 1:
                continue
            m = len(seg1) * (1 if seg1[0] % 2 == 0 else -1)
            n = -len(seg2) * (1 if seg2[0] % 2 == 0 else -1)
            if max(abs(m), abs(n)) > bounds.max_exponent or min(abs(m), abs(n)) != 1:
                continue
            yield FreeWord((2 * a_gen,), p.rank), FreeWord((b,), p.rank), m, n


def search_bs_witness(
    p: Presentation,
    bounds: BSBounds = BSBounds(),
    budget: Budget = DEFAULT_BUDGET,
    solver: GroupSolver | None = None,
) -> BSQuotient | None:
    """Find a certified surjection BS(m, n) -> G with min(|m|, |n|) = 1."""
    solver = solver or GroupSolver(p, budget)
    if p.rank == 2:
        return _search_rank2(p, solver, bounds, None)
    if p.rank == 3:
        red = eliminate_generator(p)
        if red is None:
            return None
        small, exprs = red
        if small.rank != 2:
            return None
        return _search_rank2(small, GroupSolver(small, budget), bounds, (p, solver, exprs))
    return None


def _lift(w: FreeWord, exprs: dict[int, FreeWord], target_rank: int) -> FreeWord:
    """Map a word in the reduced generators back to the original ones."""
    # exprs[g] is original generator g written in reduced generators; invert the
    # renumbering for the surviving generators (their expressions are single letters)
    back: dict[int, FreeWord] = {}
    for g, e in exprs.items():
        if len(e) == 1 and e.codes[0] % 2 == 0:
            back[e.codes[0] // 2 + 1] = FreeWord.gen(g, target_rank)
    out: list[int] = []
    for c in w.codes:
        img = back[c // 2 + 1]
        out.extend(img.codes if c % 2 == 0 else invert(img).codes)
    return FreeWord(out, target_rank)


def _search_rank2(p2: Presentation, solver2: GroupSolver, bounds: BSBounds, lift):
    dies = _abelian_kernel_test(p2)
    kb = solver2.kb
    from .decide import _enc

    def nf(w: FreeWord) -> str:
        return kb.reduce(_enc(w.codes))

    candidates = list(_bs_fast_path(p2, bounds))
    for a, b, m, n in candidates:
        res = _certify(p2, solver2, a, b, m, n, None, lift)
        if res is not None:
            return res
    E = bounds.max_exponent
    # m == n would make a and b commute, so G abelian: that case belongs to the
    # abelian checker and is skipped here.
    pairs = [
        (m, n)
        for m in range(-E, E + 1)
        for n in range(-E, E + 1)
        if m and n and m != n and min(abs(m), abs(n)) == 1
    ]
    for a, b, ex, ey in nielsen_bases(bounds.max_length):
        va = [a.exponent_sum(1), a.exponent_sum(2)]
        live = [(m, n) for m, n in pairs if dies([(m - n) * va[0], (m - n) * va[1]])]
        if not live:
            continue
        powers: dict[int, str] = {}
        conj: dict[int, str] = {}
        for m, n in live:
            if m not in conj:
                conj[m] = nf(b * a ** m * invert(b))
            if n not in powers:
                powers[n] = nf(a ** n)
            if conj[m] == powers[n]:
                    res = _certify(p2, solver2, a, b, m, n, (ex, ey), lift)
                    if res is not None:
                        return res
    return None


def _certify(p2, solver2, a, b, m, n, exprs_ab, lift) -> BSQuotient | None:
    if exprs_ab is None:
        # fast path: a and b are generator letters (b possibly inverted)
        A, B = FreeWord.parse("x", 2), FreeWord.parse("y", 2)
        exprs_ab = [None, None]
        for g in (1, 2):
            if a.codes[0] // 2 + 1 == g:
                exprs_ab[g - 1] = A
            else:
                exprs_ab[g - 1] = B if b.codes[0] % 2 == 0 else invert(B)
    if lift is None:
        p, solver = p2, solver2
        aw, bw = a, b
        expressions = {1: exprs_ab[0], 2: exprs_ab[1]}
    else:
        p, solver, tz = lift
        aw = _lift(a, tz, p.rank)
        bw = _lift(b, tz, p.rank)
        # original generator g = tz[g](reduced gens) = tz[g](ex, ey) in A, B
        sub = {1: exprs_ab[0], 2: exprs_ab[1]}
        expressions = {g: apply_map(e, sub, 2) for g, e in tz.items()}
    rel = bw * aw ** m * invert(bw) * aw ** (-n)
    d = solver.kb.prove_trivial(rel.codes)
    if d is None:
        return None
    proofs = {}
    for g, e in expressions.items():
        w = invert(FreeWord.gen(g, p.rank)) * _substitute_ab(e, aw, bw)
        dg = solver.kb.prove_trivial(w.codes)
        if dg is None:
            return None
        proofs[g] = dg
    return BSQuotient(m, n, aw, bw, expressions, d, proofs)


def presentation_key(p: Presentation) -> str:
    return f"{p.rank}:" + ",".join(sorted(str(cyclic_normal_form(r)) for r in p.relators))


# -- classification ----------------------------------------------------------------


def _checkers(solver: GroupSolver, ps: ProtectedSet, bounds: BSBounds):
    yield "Finite", lambda: check_finite(solver)
    yield "Torsion", lambda: check_torsion(solver, ps)
    yield "Collision", lambda: check_collision(solver, ps)
    yield "Abelian", lambda: check_abelian(solver)
    yield "BSQuotient", lambda: search_bs_witness(solver.p, bounds, solver.budget, solver)


def classify(
    p: Presentation,
    ps: ProtectedSet,
    budget: Budget = DEFAULT_BUDGET,
    bounds: BSBounds = BSBounds(),
):
    """First successful checker in the order finite, torsion, collision, abelian, BS.

    When all fail and some relator is a proper power, the checkers run again on
    :func:`root_presentation` and the verdict is marked ``via_roots``.
    """
    if p.rank != ps.rank:
        raise ValueError(f"presentation rank {p.rank} does not match regime {ps.regime}")
    solver = GroupSolver(p, budget)
    for _, run in _checkers(solver, ps, bounds):
        v = run()
        if v is not None:
            return v
    rooted = root_presentation(p)
    if rooted != p:
        root_solver = GroupSolver(rooted, budget)
        for _, run in _checkers(root_solver, ps, bounds):
            v = run()
            if v is not None:
                v.via_roots = True
                return v
    return _inconclusive(solver)


def classify_all(
    p: Presentation,
    ps: ProtectedSet,
    budget: Budget = DEFAULT_BUDGET,
    bounds: BSBounds = BSBounds(),
) -> list:
    """Every checker that succeeds, in checker order, then the same on the root presentation."""
    if p.rank != ps.rank:
        raise ValueError(f"presentation rank {p.rank} does not match regime {ps.regime}")
    solver = GroupSolver(p, budget)
    out = [v for _, run in _checkers(solver, ps, bounds) if (v := run()) is not None]
    rooted = root_presentation(p)
    if rooted != p:
        root_solver = GroupSolver(rooted, budget)
        for _, run in _checkers(root_solver, ps, bounds):
            v = run()
            if v is not None:
                v.via_roots = True
                out.append(v)
    return out or [_inconclusive(solver)]


def _inconclusive(solver: GroupSolver) -> Inconclusive:
    notes = []
    if solver._kb is not None:
        kb = solver._kb
        notes.append(f"rules={len(kb)}")
        notes.append("confluent" if kb.confluent else f"completion stopped: {kb.exhausted}")
    if solver._tc_done:
        notes.append("cosets: finite table" if solver._tc is not None else "cosets: skipped or exhausted")
    return Inconclusive(solver.budget.text(), tuple(notes))


# -- serialization ------------------------------------------------------------------


def verdict_to_json(v) -> dict:
    d = _verdict_body(v)
    if getattr(v, "via_roots", False):
        d["via_roots"] = True
    return d


def _verdict_body(v) -> dict:
    if isinstance(v, Torsion):
        return {"kind": v.kind, "word": str(v.word), "order": v.order, "proof": v.proof.to_json()}
    if isinstance(v, Collision):
        return {"kind": v.kind, "first": str(v.first), "second": str(v.second), "proof": v.proof.to_json()}
    if isinstance(v, Abelian):
        return {"kind": v.kind, "proofs": {f"{i},{j}": d.to_json() for (i, j), d in v.proofs.items()}}
    if isinstance(v, Finite):
        return {"kind": v.kind, "order": v.order, "rank": v.table.rank, "rows": v.table.rows}
    if isinstance(v, BSQuotient):
        return {
            "kind": v.kind,
            "m": v.m,
            "n": v.n,
            "a": str(v.a_word),
            "b": str(v.b_word),
            "expressions": {str(g): str(e) for g, e in v.expressions.items()},
            "relation_proof": v.relation_proof.to_json(),
            "expression_proofs": {str(g): d.to_json() for g, d in v.expression_proofs.items()},
        }
    return {"kind": "Inconclusive", "budget": v.budget, "notes": list(v.notes)}


def verdict_from_json(d: dict, rank: int):
    v = _verdict_from_body(d, rank)
    if d.get("via_roots"):
        v.via_roots = True
    return v


def _verdict_from_body(d: dict, rank: int):
    k = d["kind"]
    if k == "Torsion":
        return Torsion(FreeWord.parse(d["word"], rank), d["order"], Derivation.from_json(d["proof"]))
    if k == "Collision":
        return Collision(
            FreeWord.parse(d["first"], rank), FreeWord.parse(d["second"], rank), Derivation.from_json(d["proof"])
        )
    if k == "Abelian":
        return Abelian({tuple(map(int, key.split(","))): Derivation.from_json(v) for key, v in d["proofs"].items()})
    if k == "Finite":
        return Finite(d["order"], CosetTable(d["rank"], [list(r) for r in d["rows"]], True))
    if k == "BSQuotient":
        return BSQuotient(
            d["m"],
            d["n"],
            FreeWord.parse(d["a"], rank),
            FreeWord.parse(d["b"], rank),
            {int(g): FreeWord.parse(e, 2) for g, e in d["expressions"].items()},
            Derivation.from_json(d["relation_proof"]),
            {int(g): Derivation.from_json(x) for g, x in d["expression_proofs"].items()},
        )
    return Inconclusive(d.get("budget", ""), tuple(d.get("notes", ())))


__all__ = [
    "Abelian",
    "BSBounds",
    "BSQuotient",
    "CONTRADICTION_KINDS",
    "CertificateError",
    "Collision",
    "Finite",
    "Inconclusive",
    "ProtectedSet",
    "Torsion",
    "check_abelian",
    "check_collision",
    "check_finite",
    "check_torsion",
    "classify",
    "classify_all",
    "nielsen_bases",
    "presentation_key",
    "replay_derivation",
    "root_presentation",
    "search_bs_witness",
    "verdict_from_json",
    "verdict_to_json",
    "verify_certificate",
]
