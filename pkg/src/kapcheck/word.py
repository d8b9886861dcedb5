"""Free-group words over at most three generators.

Letters are small integers: generator ``g`` (1-based) maps to ``2*(g-1)`` and
its inverse to ``2*(g-1)+1``.  Numeric order of the codes is the shortlex
letter order x < X < y < Y < z < Z, and ``code ^ 1`` inverts a letter.
"""
from __future__ import annotations

from typing import Iterable, Sequence

ASCII = "xXyYzZ"
MAX_RANK = 3

_CODE = {ch: i for i, ch in enumerate(ASCII)}


class WordError(ValueError):
    pass


def letter(gen: int, sign: int = 1) -> int:
    """Letter code of generator ``gen`` (1-based) raised to ``sign``."""
    if not 1 <= gen <= MAX_RANK:
        raise WordError(f"generator index {gen} out of range")
    if sign not in (1, -1):
        raise WordError(f"sign must be +1 or -1, got {sign}")
    return 2 * (gen - 1) + (0 if sign == 1 else 1)


def free_reduce(codes: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


class FreeWord:
    """Freely reduced word; immutable and hashable."""

    __slots__ = ("codes", "rank")

    def __init__(self, codes: Iterable[int] = (), rank: int = MAX_RANK, *, reduced: bool = False):
        codes = tuple(codes)
        if not 1 <= rank <= MAX_RANK:
            raise WordError(f"rank {rank} out of range")
        for c in codes:
            if not 0 <= c < 2 * rank:
                raise WordError(f"letter code {c} outside rank {rank}")
        self.codes = codes if reduced else free_reduce(codes)
        self.rank = rank

    # construction helpers
    @classmethod
    def parse(cls, text: str, rank: int = MAX_RANK) -> "FreeWord":
        text = text.strip()
        if text in ("", "1"):
            return cls((), rank)
        try:
            return cls((_CODE[ch] for ch in text), rank)
        except KeyError as exc:
            raise WordError(f"bad letter {exc.args[0]!r} in {text!r}") from None

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[int, int]], rank: int = MAX_RANK) -> "FreeWord":
        """Build from ``(generator, sign)`` pairs, generators 1-based."""
        return cls((letter(g, s) for g, s in letters), rank)

    @classmethod
    def gen(cls, g: int, rank: int = MAX_RANK) -> "FreeWord":
        return cls((letter(g),), rank)

    # views
    def letters(self) -> list[tuple[int, int]]:
        return [(c // 2 + 1, -1 if c & 1 else 1) for c in self.codes]

    def __str__(self) -> str:
        return "".join(ASCII[c] for c in self.codes) or "1"

    def __repr__(self) -> str:
        return f"FreeWord({str(self)!r})"

    def __len__(self) -> int:
        return len(self.codes)

    def __bool__(self) -> bool:
        return bool(self.codes)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeWord) and self.codes == other.codes

    def __hash__(self) -> int:
        return hash(self.codes)

    def __lt__(self, other: "FreeWord") -> bool:
        return shortlex_key(self.codes) < shortlex_key(other.codes)

    # arithmetic
    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return concat(self, other)

    def __pow__(self, n: int) -> "FreeWord":
        base = self if n >= 0 else invert(self)
        return FreeWord(base.codes * abs(n), self.rank)

    def inverse(self) -> "FreeWord":
        return invert(self)

    def exponent_sum(self, g: int) -> int:
        pos, neg = 2 * (g - 1), 2 * (g - 1) + 1
        return sum(1 if c == pos else -1 if c == neg else 0 for c in self.codes)

    def generators_used(self) -> set[int]:
        return {c // 2 + 1 for c in self.codes}

    def with_rank(self, rank: int) -> "FreeWord":
        return FreeWord(self.codes, rank, reduced=True)


def shortlex_key(codes: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return (len(codes), tuple(codes))


def reduce(raw: Iterable[tuple[int, int]], rank: int = MAX_RANK) -> FreeWord:
    """Freely reduce a sequence of ``(generator, sign)`` pairs."""
    return FreeWord.from_letters(raw, rank)


def invert(w: FreeWord) -> FreeWord:
    return FreeWord(tuple(c ^ 1 for c in reversed(w.codes)), w.rank, reduced=True)


def concat(a: FreeWord, b: FreeWord) -> FreeWord:
    if a.rank != b.rank:
        raise WordError(f"rank mismatch {a.rank} vs {b.rank}")
    return FreeWord(a.codes + b.codes, a.rank)


def product(words: Iterable[FreeWord], rank: int = MAX_RANK) -> FreeWord:
    codes: list[int] = []
    for w in words:
        codes.extend(w.codes)
    return FreeWord(codes, rank)


def cyclic_reduce(w: FreeWord) -> tuple[FreeWord, FreeWord]:
    """Return ``(core, conjugator)`` with ``w = conjugator * core * conjugator^-1``."""
    c = w.codes
    i, j = 0, len(c) - 1
    while i < j and c[i] == c[j] ^ 1:
        i += 1
        j -= 1
    core = FreeWord(c[i : j + 1], w.rank, reduced=True)
    conj = FreeWord(c[:i], w.rank, reduced=True)
    return core, conj


def rotations(codes: Sequence[int]) -> list[tuple[int, ...]]:
    t = tuple(codes)
    return [t[i:] + t[:i] for i in range(len(t))] or [()]


def primitive_root(w: FreeWord) -> tuple[FreeWord, int]:
    """``(u, k)`` with the cyclic core of ``w`` equal to ``u^k`` and ``k`` maximal."""
    core, _ = cyclic_reduce(w)
    codes = core.codes
    n = len(codes)
    for d in range(1, n + 1):
        if n % d == 0 and codes == codes[:d] * (n // d):
            return FreeWord(codes[:d], w.rank, reduced=True), n // d
    return core, 1


def cyclic_normal_form(w: FreeWord, allow_inverse: bool = True) -> FreeWord:
    """Shortlex-least rotation of the cyclic core of ``w`` (or of its inverse)."""
    core, _ = cyclic_reduce(w)
    cands = rotations(core.codes)
    if allow_inverse:
        cands += rotations(invert(core).codes)
    best = min(cands, key=shortlex_key)
    return FreeWord(best, w.rank, reduced=True)


def substitute(w: FreeWord, gen: int, image: FreeWord) -> FreeWord:
    """Replace every occurrence of ``gen`` by ``image`` (and its inverse likewise)."""
    if image.rank != w.rank:
        raise WordError("rank mismatch in substitution")
    pos = letter(gen)
    inv_img = invert(image).codes
    out: list[int] = []
    for c in w.codes:
        if c == pos:
            out.extend(image.codes)
        elif c == pos ^ 1:
            out.extend(inv_img)
        else:
            out.append(c)
    return FreeWord(out, w.rank)


def apply_map(w: FreeWord, images: dict[int, FreeWord], rank: int | None = None) -> FreeWord:
    """Simultaneous substitution: generator ``g`` goes to ``images[g]``."""
    rank = rank if rank is not None else w.rank
    out: list[int] = []
    inv_cache: dict[int, tuple[int, ...]] = {}
    for c in w.codes:
        g = c // 2 + 1
        img = images.get(g)
        if img is None:
            out.append(c)
        elif c & 1:
            if g not in inv_cache:
                inv_cache[g] = invert(img).codes
            out.extend(inv_cache[g])
        else:
            out.extend(img.codes)
    return FreeWord(out, rank)


def parse_tex(text: str, rank: int = MAX_RANK) -> FreeWord:
    """Parse TeX-style words such as ``(y^{-1}x)^2y^{-1}x^{-1}``.

    A trailing ``=1`` and ``$``/``*`` decorations are ignored.
    """
    s = text.replace("$", "").replace(" ", "").replace("\\", "")
    s = s.split("=")[0]
    s = s.replace("^{*}", "").replace("*", "")
    pos = 0

    def read_exp() -> int:
        nonlocal pos
        if pos < len(s) and s[pos] == "^":
            pos += 1
            if s[pos] == "{":
                end = s.index("}", pos)
                val = int(s[pos + 1 : end])
                pos = end + 1
            else:
                j = pos + 1 if s[pos] in "+-" else pos
                while j < len(s) and s[j].isdigit():
                    j += 1
                val = int(s[pos:j])
                pos = j
            return val
        return 1

    def read_seq() -> list[int]:
        nonlocal pos
        out: list[int] = []
        while pos < len(s) and s[pos] != ")":
            ch = s[pos]
            if ch == "(":
                pos += 1
                inner = read_seq()
                if pos >= len(s) or s[pos] != ")":
                    raise WordError(f"unbalanced parentheses in {text!r}")
                pos += 1
                e = read_exp()
                block = inner if e > 0 else [c ^ 1 for c in reversed(inner)]
                out.extend(block * abs(e))
            elif ch in "xyz":
                pos += 1
                e = read_exp()
                c = _CODE[ch]
                out.extend([c if e > 0 else c ^ 1] * abs(e))
            elif ch == "1" and not out:
                pos += 1
            else:
                raise WordError(f"unexpected {ch!r} in {text!r}")
        return out

    codes = read_seq()
    if pos != len(s):
        raise WordError(f"trailing input in {text!r}")
    return FreeWord(codes, rank)
