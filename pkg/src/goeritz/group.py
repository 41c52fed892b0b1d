"""Exact arithmetic in the genus-2 Goeritz group.

The group is handled as the amalgam ``A *_C B`` with

* ``A = <a, g, b>``: the Klein four group ``C = <a, g>`` extended by ``b``,
  where ``b g b^-1 = a g`` and ``a`` commutes with ``b``;
* ``B = <a, g, d>``: ``<a>`` times the order-6 dihedral group ``<g, d>``
  (``d^3 = (g d)^2 = 1``).

Words use the letters ``a b B g d D`` (``B`` and ``D`` are inverses).  An
element is stored as a head ``a^x g^y`` followed by alternating syllables
``b^n`` (``n != 0``) and ``d^e`` (``e`` in ``{1, 2}``).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

LETTERS = "abBgdD"
INVERSE_LETTER = {"a": "a", "g": "g", "b": "B", "B": "b", "d": "D", "D": "d"}

# a and g are self-inverse, so [a, b] is written a b a B
RELATORS = ("aa", "gg", "ddd", "gdgd", "abaB", "agag", "adaD", "bgBga")


def parse(text: str) -> str:
    """Validate a word and strip whitespace.

    >>> parse("b d B d")
    'bdBd'
    """
    out = []
    for i, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch not in LETTERS:
            raise ValueError(f"unknown letter {ch!r} at position {i}")
        out.append(ch)
    return "".join(out)


def invert_word(word: str) -> str:
    return "".join(INVERSE_LETTER[ch] for ch in reversed(word))


@dataclass(frozen=True, order=True)
class NormalForm:
    a: int = 0
    g: int = 0
    syllables: tuple[tuple[str, int], ...] = ()

    def __str__(self) -> str:
        return self.word() or "e"

    def word(self) -> str:
        parts = ["a" * self.a, "g" * self.g]
        for gen, n in self.syllables:
            if gen == "b":
                parts.append("b" * n if n > 0 else "B" * -n)
            else:
                parts.append("d" if n == 1 else "D")
        return "".join(parts)

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        st = _State(self)
        for ch in other.word():
            st.push(ch)
        return st.freeze()

    def inverse(self) -> "NormalForm":
        return normal_form(invert_word(self.word()))

    def __pow__(self, k: int) -> "NormalForm":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj(self, k: "NormalForm") -> "NormalForm":
        """``k * self * k^-1``."""
        return k * self * k.inverse()

    @property
    def is_identity(self) -> bool:
        return not (self.a or self.g or self.syllables)

    @property
    def length(self) -> int:
        return len(self.syllables)

    def key(self) -> tuple:
        return (len(self.syllables), self.a, self.g, self.syllables)

    def to_dict(self) -> dict:
        return {
            "head": {"a": self.a, "g": self.g},
            "syllables": [{"gen": s, "exp": n} for s, n in self.syllables],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "NormalForm":
        syl = tuple((s["gen"], int(s["exp"])) for s in data["syllables"])
        nf = cls(int(data["head"]["a"]), int(data["head"]["g"]), syl)
        if normal_form(nf.word()) != nf:
            raise ValueError("not a normal form")
        return nf


class _State:
    """Mutable normal form used while pushing letters in from the right."""

    __slots__ = ("a", "g", "syl")

    def __init__(self, start: NormalForm | None = None):
        if start is None:
            self.a, self.g, self.syl = 0, 0, []
        else:
            self.a, self.g, self.syl = start.a, start.g, [list(s) for s in start.syllables]

    def push(self, ch: str) -> None:
        if ch == "a":
            self.a ^= 1
        elif ch == "g":
            # move g leftwards: b^n g = a^n g b^n and d^e g = g d^-e
            for s in self.syl:
                if s[0] == "b":
                    self.a ^= s[1] & 1
                else:
                    s[1] = 3 - s[1]
            self.g ^= 1
        elif ch in "bB":
            step = 1 if ch == "b" else -1
            if self.syl and self.syl[-1][0] == "b":
                self.syl[-1][1] += step
                if self.syl[-1][1] == 0:
                    self.syl.pop()
            else:
                self.syl.append(["b", step])
        elif ch in "dD":
            step = 1 if ch == "d" else 2
            if self.syl and self.syl[-1][0] == "d":
                self.syl[-1][1] = (self.syl[-1][1] + step) % 3
                if self.syl[-1][1] == 0:
                    self.syl.pop()
            else:
                self.syl.append(["d", step])
        else:
            raise ValueError(f"unknown letter {ch!r}")

    def freeze(self) -> NormalForm:
        return NormalForm(self.a, self.g, tuple((s, n) for s, n in self.syl))


IDENTITY = NormalForm()


def normal_form(word: str | Iterable[str]) -> NormalForm:
    st = _State()
    for ch in word:
        if ch.isspace():
            continue
        st.push(ch)
    return st.freeze()


def nf(word: str) -> NormalForm:
    """Shorthand for ``normal_form(parse(word))``."""
    return normal_form(parse(word))


ALPHA, BETA, GAMMA, DELTA = nf("a"), nf("b"), nf("g"), nf("d")
EDGE_GROUP = (IDENTITY, ALPHA, GAMMA, nf("ag"))


def multiply(u: NormalForm, v: NormalForm) -> NormalForm:
    return u * v


def invert(u: NormalForm) -> NormalForm:
    return u.inverse()


def _syllable_nf(gen: str, n: int) -> NormalForm:
    return NormalForm(0, 0, ((gen, n),))


# --- cyclic reduction and orders -------------------------------------------


def cyclic_reduce(g: NormalForm) -> tuple[NormalForm, NormalForm]:
    """Return ``(core, k)`` with ``g = k * core * k^-1`` and ``core`` cyclically reduced.

    The core has zero or one syllable (elliptic) or an even number of
    syllables (hyperbolic).
    """
    core, k = g, IDENTITY
    while core.length >= 3 and core.length % 2 == 1:
        s = _syllable_nf(*core.syllables[-1])
        core = core.conj(s)
        k = k * s.inverse()
    return core, k


def is_elliptic(g: NormalForm) -> bool:
    return cyclic_reduce(g)[0].length <= 1


def translation_length(g: NormalForm) -> int:
    core = cyclic_reduce(g)[0]
    return 0 if core.length <= 1 else core.length


INFINITE = None


def order_of(g: NormalForm) -> int | None:
    """Exact order, or ``None`` for infinite order."""
    core = cyclic_reduce(g)[0]
    if core.length >= 2:
        return INFINITE
    if core.length == 1 and core.syllables[0][0] == "b":
        return INFINITE
    x, n = core, 1
    while not x.is_identity:
        x = x * core
        n += 1
    return n


# --- quotients ---------------------------------------------------------------

Perm = tuple[int, int, int]
S3_ID: Perm = (0, 1, 2)
S3_S: Perm = (1, 0, 2)  # image of g
S3_R: Perm = (1, 2, 0)  # image of d


def compose(p: Perm, q: Perm) -> Perm:
    """``p * q`` acting as ``i -> p[q[i]]``."""
    return (p[q[0]], p[q[1]], p[q[2]])


def perm_inverse(p: Perm) -> Perm:
    out = [0, 0, 0]
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)  # type: ignore[return-value]


def is_three_cycle(p: Perm) -> bool:
    return all(p[i] != i for i in range(3))


def is_transposition(p: Perm) -> bool:
    return sum(p[i] == i for i in range(3)) == 1


_S3_LETTER = {"a": S3_ID, "b": S3_ID, "B": S3_ID, "g": S3_S,
              "d": S3_R, "D": perm_inverse(S3_R)}


def quotient_s3(g: NormalForm | str) -> Perm:
    word = g.word() if isinstance(g, NormalForm) else g
    out = S3_ID
    for ch in word:
        out = compose(out, _S3_LETTER[ch])
    return out


def abelianization(g: NormalForm | str) -> tuple[int, int]:
    """Image in ``Z/2 x Z``: (parity of g letters, exponent sum of b)."""
    word = g.word() if isinstance(g, NormalForm) else g
    return word.count("g") % 2, word.count("b") - word.count("B")


# --- conjugacy ---------------------------------------------------------------


@dataclass(frozen=True)
class CyclicClass:
    """Canonical conjugacy representative.

    ``kind`` is ``"hyperbolic"`` (canonical cyclic rotation up to edge-group
    conjugation), ``"edge"`` (conjugate into ``<a, g>``), ``"A"`` or ``"B"``
    (elliptic, conjugate into that vertex group but not into the edge group).
    """

    kind: str
    rep: NormalForm

    def __str__(self) -> str:
        return f"{self.kind}:{self.rep}"


_EDGE_CANON = {IDENTITY: IDENTITY, ALPHA: ALPHA, GAMMA: GAMMA, nf("ag"): GAMMA}
# b (a g) b^-1 = g
_EDGE_CONJ = {IDENTITY: IDENTITY, ALPHA: IDENTITY, GAMMA: IDENTITY, nf("ag"): BETA}

_A_CONJUGATORS = tuple(c * t for c in EDGE_GROUP for t in (IDENTITY, BETA))


def _b_group() -> tuple[NormalForm, ...]:
    out = {normal_form("a" * x + "g" * y + "d" * e) for x, y, e in product(range(2), range(2), range(3))}
    return tuple(sorted(out, key=NormalForm.key))


B_GROUP = _b_group()


def cyclic_orbit(g: NormalForm) -> Iterator[tuple[NormalForm, NormalForm]]:
    """Cyclic permutations of a hyperbolic element up to edge-group conjugation.

    Yields ``(h, k)`` with ``h = k g k^-1``; ``4 * translation_length(g)``
    pairs in total.  Every cyclically reduced conjugate of ``g`` is among them.
    """
    core, k0 = cyclic_reduce(g)
    if core.length < 2:
        raise ValueError("cyclic_orbit needs a hyperbolic element")
    rot, r = core, k0.inverse()
    for _ in range(core.length):
        for c in EDGE_GROUP:
            yield rot.conj(c), c * r
        s = _syllable_nf(*rot.syllables[-1])
        rot = rot.conj(s)
        r = s * r


def _canonical(g: NormalForm) -> tuple[CyclicClass, NormalForm]:
    """Canonical class of ``g`` and ``k`` with ``k g k^-1 = rep``."""
    core, k0 = cyclic_reduce(g)
    kin = k0.inverse()  # kin g kin^-1 = core
    if core.length >= 2:
        best, best_k = min(cyclic_orbit(g), key=lambda pair: pair[0].key())
        return CyclicClass("hyperbolic", best), best_k
    if core.length == 0:
        c = _EDGE_CONJ[core]
        return CyclicClass("edge", _EDGE_CANON[core]), c * kin
    if core.syllables[0][0] == "b":
        best, best_k = None, None
        for c in _A_CONJUGATORS:
            cand = core.conj(c)
            if best is None or cand.key() < best.key():
                best, best_k = cand, c
        return CyclicClass("A", best), best_k * kin
    # finite vertex group B: land in the edge group when possible
    best, best_k = None, None
    for c in B_GROUP:
        cand = core.conj(c)
        if cand.length == 0:
            c2 = _EDGE_CONJ[cand]
            return CyclicClass("edge", _EDGE_CANON[cand]), c2 * c * kin
        if best is None or cand.key() < best.key():
            best, best_k = cand, c
    return CyclicClass("B", best), best_k * kin


def cyclic_class(g: NormalForm) -> CyclicClass:
    return _canonical(g)[0]


def is_conjugate(g: NormalForm, h: NormalForm) -> NormalForm | None:
    """Return ``k`` with ``k g k^-1 = h``, or ``None`` when not conjugate."""
    cg, kg = _canonical(g)
    ch, kh = _canonical(h)
    if cg != ch:
        return None
    return kh.inverse() * kg


def random_word(rng, length: int) -> str:
    return "".join(rng.choice(LETTERS) for _ in range(length))


# --- presentation validation -------------------------------------------------


def _alternating_words(max_syllables: int) -> Iterator[str]:
    b_parts = ["b", "bb", "B", "BB"]
    d_parts = ["d", "D"]
    for n in range(1, max_syllables + 1):
        for first in ("b", "d"):
            pools = [b_parts if (i % 2 == 0) == (first == "b") else d_parts for i in range(n)]
            for parts in product(*pools):
                yield "".join(parts)


def presentation_checks(max_syllables: int = 8) -> list[tuple[str, bool]]:
    """Identities the pinned presentation must satisfy, as ``(name, ok)`` pairs."""
    f = nf("bdBd")
    t = nf("gd")
    checks = [(f"relator {r} is trivial", nf(r).is_identity) for r in RELATORS]
    checks.append(("g b g = a b", nf("gbg") == nf("ab")))
    checks.append(("(gd) f (gd)^-1 = f^-1 for f = bdBd", f.conj(t) == f.inverse()))
    checks.append(("a is central", all(nf("a" + x) == nf(x + "a") for x in "bBgdD")))
    free = all(not normal_form(w).is_identity for w in _alternating_words(max_syllables))
    checks.append((f"<b, d> alternating words up to {max_syllables} syllables are nontrivial", free))
    return checks
