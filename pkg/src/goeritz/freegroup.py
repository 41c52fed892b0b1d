"""Rank-2 free group words and a Whitehead primitivity test.

Letters are stored as signed integers: ``1`` and ``-1`` for x1 and its
inverse, ``2`` and ``-2`` for x2 and its inverse.  The text encoding uses
``x X y Y``.

Examples
--------
>>> w = reduce("xyYx")
>>> str(w)
'xx'
>>> is_primitive(reduce("xy")).primitive
True
>>> is_primitive(reduce("xYxyXy")).obstruction
'mixed-sign letter pair'
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

_FROM_TEXT = {"x": 1, "X": -1, "y": 2, "Y": -2}
_TO_TEXT = {v: k for k, v in _FROM_TEXT.items()}
# x1 < x1^-1 < x2 < x2^-1
_RANK = {1: 0, -1: 1, 2: 2, -2: 3}

NON_UNIMODULAR = "non-unimodular abelianization"
MIXED_SIGN = "mixed-sign letter pair"
STUCK = "reduction stuck"

ORACLE_LIMIT = 12


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _parse_letters(letters) -> list[int]:
    if isinstance(letters, str):
        out = []
        for i, ch in enumerate(letters):
            if ch.isspace():
                continue
            if ch not in _FROM_TEXT:
                raise ValueError(f"unknown letter {ch!r} at position {i}")
            out.append(_FROM_TEXT[ch])
        return out
    out = list(letters)
    for a in out:
        if a not in _RANK:
            raise ValueError(f"unknown letter {a!r}")
    return out


@dataclass(frozen=True)
class F2Word:
    """A freely reduced word; the empty tuple is the identity."""

    letters: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(_TO_TEXT[a] for a in self.letters)

    def __mul__(self, other: "F2Word") -> "F2Word":
        return F2Word(_free_reduce(self.letters + other.letters))

    def inverse(self) -> "F2Word":
        return F2Word(tuple(-a for a in reversed(self.letters)))


@dataclass(frozen=True)
class CyclicF2Word:
    """Cyclically reduced word stored in its lexicographically least rotation."""

    letters: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(_TO_TEXT[a] for a in self.letters)

    @classmethod
    def from_letters(cls, letters: Sequence[int]) -> "CyclicF2Word":
        letters = tuple(letters)
        k = _least_rotation(letters)
        return cls(letters[k:] + letters[:k])


def _least_rotation(letters: Sequence[int]) -> int:
    n = len(letters)
    if n == 0:
        return 0
    ranked = [_RANK[a] for a in letters]
    return min(range(n), key=lambda i: ranked[i:] + ranked[:i])


def reduce(letters) -> F2Word:
    """Freely reduce a raw letter sequence (text or signed integers)."""
    return F2Word(_free_reduce(_parse_letters(letters)))


def cyclic_reduce(w: F2Word) -> tuple[CyclicF2Word, F2Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator * core * conjugator^-1``."""
    letters = w.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    prefix = letters[:i]
    core = letters[i:j]
    if not core:
        return CyclicF2Word(()), F2Word(())
    k = _least_rotation(core)
    # core = u v and the canonical rotation v u equals u^-1 core u
    conj = F2Word(_free_reduce(prefix)) * F2Word(core[:k])
    return CyclicF2Word(core[k:] + core[:k]), conj


def _cyclic_core(letters: Sequence[int]) -> tuple[int, ...]:
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return tuple(letters[i:j])


def abelianize(w: F2Word) -> tuple[int, int]:
    p = sum(1 if a == 1 else -1 for a in w.letters if abs(a) == 1)
    q = sum(1 if a == 2 else -1 for a in w.letters if abs(a) == 2)
    return p, q


@dataclass(frozen=True)
class WhiteheadMove:
    """Automorphism of F2 given by the images of x1 and x2."""

    name: str
    image1: tuple[int, ...]
    image2: tuple[int, ...]

    def apply(self, letters: Sequence[int]) -> tuple[int, ...]:
        out: list[int] = []
        for a in letters:
            img = self.image1 if abs(a) == 1 else self.image2
            if a < 0:
                img = tuple(-b for b in reversed(img))
            out.extend(img)
        return _cyclic_core(_free_reduce(out))


def _whitehead_moves() -> list[WhiteheadMove]:
    moves = []
    for z in (1, 2):
        for m in (1, -1, 2, -2):
            if abs(m) == z:
                continue
            zt, mt, mi = _TO_TEXT[z], _TO_TEXT[m], _TO_TEXT[-m]
            for img, label in (
                ((z, m), f"{zt}->{zt}{mt}"),
                ((-m, z), f"{zt}->{mi}{zt}"),
                ((-m, z, m), f"{zt}->{mi}{zt}{mt}"),
            ):
                if z == 1:
                    moves.append(WhiteheadMove(label, img, (2,)))
                else:
                    moves.append(WhiteheadMove(label, (1,), img))
    return moves


WHITEHEAD_MOVES = _whitehead_moves()
_MOVES_BY_NAME = {m.name: m for m in WHITEHEAD_MOVES}


@dataclass(frozen=True)
class PrimitivityResult:
    primitive: bool
    moves: tuple[str, ...] = ()
    obstruction: str | None = None

    def replay(self, w: F2Word) -> list[tuple[int, ...]]:
        """Cyclic words visited when the certificate moves are applied to ``w``."""
        cur = _cyclic_core(w.letters)
        path = [cur]
        for name in self.moves:
            cur = _MOVES_BY_NAME[name].apply(cur)
            path.append(cur)
        return path


def _mixed_sign(letters: Sequence[int]) -> bool:
    s = set(letters)
    return (1 in s and -1 in s) or (2 in s and -2 in s)


def is_primitive(w: F2Word) -> PrimitivityResult:
    """Decide whether ``w`` is part of a free basis of F2.

    Cheap obstructions are tried first; otherwise Whitehead reduction runs
    greedily and the word is primitive exactly when it reaches length one.
    """
    core = _cyclic_core(w.letters)
    p, q = abelianize(w)
    if gcd(p, q) != 1:
        return PrimitivityResult(False, obstruction=NON_UNIMODULAR)
    if _mixed_sign(core):
        return PrimitivityResult(False, obstruction=MIXED_SIGN)
    moves: list[str] = []
    while len(core) > 1:
        best = None
        for mv in WHITEHEAD_MOVES:
            img = mv.apply(core)
            if len(img) < len(core) and (best is None or len(img) < len(best[1])):
                best = (mv, img)
        if best is None:
            return PrimitivityResult(False, obstruction=STUCK)
        moves.append(best[0].name)
        core = best[1]
    return PrimitivityResult(True, moves=tuple(moves))


def _christoffel_words(maxlen: int) -> list[tuple[int, ...]]:
    # Stern-Brocot recursion on standard pairs (u, v) -> (u, uv), (uv, v)
    words = [(1,), (2,)]
    stack = [((1,), (2,))]
    while stack:
        u, v = stack.pop()
        uv = u + v
        if len(uv) > maxlen:
            continue
        words.append(uv)
        stack.append((u, uv))
        stack.append((uv, v))
    return words


def primitive_oracle(maxlen: int, limit: int = ORACLE_LIMIT) -> set[CyclicF2Word]:
    """All primitive cyclic words of length at most ``maxlen``.

    Built from positive Christoffel words and sign changes of the two
    generators; shares no code with the Whitehead path.
    """
    if maxlen > limit:
        raise ValueError(f"maxlen {maxlen} exceeds oracle limit {limit}")
    out = set()
    for word in _christoffel_words(maxlen):
        for s1 in (1, -1):
            for s2 in (1, -1):
                signed = tuple(a * (s1 if a == 1 else s2) for a in word)
                out.add(CyclicF2Word.from_letters(signed))
    return out
