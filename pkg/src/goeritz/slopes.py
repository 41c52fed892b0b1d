"""Vertical primitive disks in the two genus-one fibered splittings of S3.

Slopes of arcs on the once-punctured torus are acted on by the monodromy
through SL(2, Z).  Each slope outside the primitive orbits is moved into a
fundamental interval, where the boundary of the corresponding vertical disk
is written as a word in the free basis ``r = x``, ``b = y`` and tested for
primitivity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable

from .freegroup import F2Word, is_primitive, reduce

SCAN_CAP = 1000


@dataclass(frozen=True, order=True)
class Slope:
    """Reduced fraction ``p/q`` with ``q >= 0``; ``(1, 0)`` is infinity."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        g = gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        if text in ("inf", "oo", "∞", "infinity"):
            return INFINITY
        if "/" in text:
            p, q = text.split("/")
            return cls(int(p), int(q))
        return cls(int(text), 1)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def value(self) -> Fraction:
        if self.is_infinite:
            raise ValueError("infinite slope has no rational value")
        return Fraction(self.p, self.q)

    def sort_key(self) -> tuple:
        return (1, 0) if self.is_infinite else (0, self.value())

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"

    def __repr__(self) -> str:
        return f"Slope({self})"


INFINITY = Slope(1, 0)
ZERO = Slope(0, 1)


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def identity(cls) -> "SL2Matrix":
        return cls(1, 0, 0, 1)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __mul__(self, o: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "SL2Matrix":
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> "SL2Matrix":
        base = self if k >= 0 else self.inverse()
        out = SL2Matrix.identity()
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def trace(self) -> int:
        return self.a + self.d

    def act(self, s: Slope) -> Slope:
        """Projective action on the column vector ``(p, q)``."""
        return Slope(self.a * s.p + self.b * s.q, self.c * s.p + self.d * s.q)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def _flip_conjugate(m: SL2Matrix) -> SL2Matrix:
    # diag(1,-1) m diag(1,-1) stays in SL2
    return SL2Matrix(m.a, -m.b, -m.c, m.d)


class Monodromy(enum.Enum):
    TREFOIL = "trefoil"
    FIG8 = "fig8"

    @property
    def matrix(self) -> SL2Matrix:
        if self is Monodromy.TREFOIL:
            return SL2Matrix(0, 1, -1, 1)
        return SL2Matrix(2, 1, 1, 1)

    @property
    def orientation(self) -> int:
        # sign relating the arc slope to the homology coordinates
        return 1 if self is Monodromy.TREFOIL else -1

    @property
    def slope_action(self) -> SL2Matrix:
        m = self.matrix
        return m if self.orientation == 1 else _flip_conjugate(m)

    @classmethod
    def parse(cls, text: str) -> "Monodromy":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown monodromy {text!r}; use trefoil or fig8") from None


def slope_orbit(m: SL2Matrix, s: Slope, steps: int) -> list[Slope]:
    if steps < 0:
        raise ValueError("steps must be non-negative")
    out = [s]
    for _ in range(steps):
        s = m.act(s)
        out.append(s)
    return out


# --- boundary words ----------------------------------------------------------

R, RI, B, BI = 1, -1, 2, -2


def _balanced(major: int, n: int, minor: int, m: int) -> list[int]:
    """``n`` copies of ``major`` split into ``m + 1`` near-equal runs by ``minor``."""
    if n < m + 1:
        raise ValueError("not enough majority letters to separate the minority")
    out: list[int] = []
    for i in range(m + 1):
        run = (n * (i + 1)) // (m + 1) - (n * i) // (m + 1)
        out.extend([major] * run)
        if i < m:
            out.append(minor)
    return out


def _in_open(s: Slope, lo: Fraction | None, hi: Fraction | None) -> bool:
    if s.is_infinite:
        return False
    v = s.value()
    return (lo is None or v > lo) and (hi is None or v < hi)


# primitive dual-disk boundaries; any single letter works for the exceptional slopes
_EXCEPTIONAL = {
    Monodromy.TREFOIL: {INFINITY: (R,), ZERO: (B,), Slope(1, 1): (R,)},
    Monodromy.FIG8: {INFINITY: (R,), ZERO: (B,)},
}


def boundary_word(mono: Monodromy, s: Slope) -> F2Word:
    """Boundary word of the vertical disk with slope ``s``.

    The slope must already be normalized: trefoil slopes in ``(0, 1)``,
    figure-8 slopes in ``(1, inf)`` or ``(-1, 0)``, or one of the
    exceptional slopes of the monodromy.
    """
    if s in _EXCEPTIONAL[mono]:
        return F2Word(_EXCEPTIONAL[mono][s])
    p, q = s.p, s.q
    if mono is Monodromy.TREFOIL:
        if not _in_open(s, Fraction(0), Fraction(1)):
            raise ValueError(f"trefoil slope {s} is outside (0, 1)")
        bottom = _balanced(R, q - 1, BI, p - 1)
        top = _balanced(B, q - 1, RI, q - 1 - p)
    elif _in_open(s, Fraction(1), None):
        bottom = _balanced(BI, p - 1, R, q - 1)
        top = [R, B] * (2 * p - q - 1) + [R]
    elif _in_open(s, Fraction(-1), Fraction(0)):
        bottom = _balanced(R, q - 1, BI, -p - 1)
        top = [BI, RI] * (-p + q - 1) + [BI]
    else:
        raise ValueError(f"figure-8 slope {s} is outside (-1, 0) and (1, inf)")
    return reduce(bottom + top)


def letter_counts(w: F2Word) -> dict[str, int]:
    names = {R: "r", RI: "R", B: "b", BI: "B"}
    counts = dict.fromkeys(names.values(), 0)
    for a in w.letters:
        counts[names[a]] += 1
    return counts


def _normalize_trefoil(s: Slope) -> Slope:
    m = Monodromy.TREFOIL.slope_action
    for t in slope_orbit(m, s, 2):
        if t in _EXCEPTIONAL[Monodromy.TREFOIL] or _in_open(t, Fraction(0), Fraction(1)):
            return t
    raise AssertionError("order-3 action always reaches (0, 1)")


def _in_fig8_domain(s: Slope) -> bool:
    return (
        s in _EXCEPTIONAL[Monodromy.FIG8]
        or _in_open(s, Fraction(1), None)
        or _in_open(s, Fraction(-1), Fraction(0))
    )


def _normalize_fig8(s: Slope) -> Slope:
    m = Monodromy.FIG8.slope_action
    inv = m.inverse()
    fwd = back = s
    # heights grow geometrically away from the domain, so this is generous
    limit = 4 * (abs(s.p).bit_length() + s.q.bit_length()) + 8
    for _ in range(limit):
        if _in_fig8_domain(fwd):
            return fwd
        if _in_fig8_domain(back):
            return back
        fwd, back = m.act(fwd), inv.act(back)
    raise AssertionError(f"no fundamental-domain representative found for {s}")


def normalize(mono: Monodromy, s: Slope) -> Slope:
    """Representative of the monodromy orbit of ``s`` handled by ``boundary_word``."""
    if mono is Monodromy.TREFOIL:
        return _normalize_trefoil(s)
    return _normalize_fig8(s)


def is_vertical_primitive(mono: Monodromy, s: Slope) -> bool:
    w = boundary_word(mono, normalize(mono, s))
    return is_primitive(w).primitive


def candidate_slopes(bound: int) -> Iterable[Slope]:
    yield INFINITY
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if gcd(p, q) == 1:
                yield Slope(p, q)


def vertical_primitive_scan(mono: Monodromy, bound: int, cap: int = SCAN_CAP) -> set[Slope]:
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if bound > cap:
        raise ValueError(f"bound {bound} exceeds cap {cap}")
    return {s for s in candidate_slopes(bound) if is_vertical_primitive(mono, s)}


def closed_form_set(mono: Monodromy, bound: int) -> set[Slope]:
    """Orbits of the primitive seed slopes under the slope action, within ``bound``.

    Used as a test oracle; it never looks at boundary words.
    """
    m = mono.slope_action
    if mono is Monodromy.TREFOIL:
        # the action has order 3, so each orbit is three slopes
        orbit = slope_orbit(m, ZERO, 2) + slope_orbit(m, Slope(1, 2), 2)
        return {t for t in orbit if abs(t.p) <= bound and t.q <= bound}
    out = set()
    for seed in (ZERO, INFINITY):
        for step in (m, m.inverse()):
            t = seed
            # heights grow monotonically along a hyperbolic orbit
            while abs(t.p) <= bound and t.q <= bound:
                out.add(t)
                t = step.act(t)
    return out


# --- Farey graph -------------------------------------------------------------


def farey_adjacent(s1: Slope, s2: Slope) -> bool:
    return abs(s1.p * s2.q - s1.q * s2.p) == 1


def ext_gcd(a: int, b: int) -> tuple[int, int]:
    """``(x, y)`` with ``a x + b y = gcd(a, b)``, the gcd taken non-negative."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        return -x0, -y0
    return x0, y0


@lru_cache(maxsize=None)
def _distance_from_infinity(s: Slope) -> int:
    if s.is_infinite:
        return 0
    if s.q == 1:
        return 1
    v = s.value()
    lo = v.numerator // v.denominator
    best = None
    for n in (lo, lo + 1):
        # y -> -1/(y - n) sends n to infinity
        image = Slope(-s.q, s.p - n * s.q)
        d = _distance_from_infinity(image)
        best = d if best is None else min(best, d)
    return 1 + best


def farey_distance(s1: Slope, s2: Slope) -> int:
    """Graph distance in the Farey graph."""
    if s1.is_infinite:
        return _distance_from_infinity(s2)
    # g = [[x, y], [-q, p]] with x p + y q = 1 sends s1 to infinity
    x, y = ext_gcd(s1.p, s1.q)
    g = SL2Matrix(x, y, -s1.q, s1.p)
    return _distance_from_infinity(g.act(s2))


def farey_dot(slopes: Iterable[Slope], name: str = "farey") -> str:
    ordered = sorted(set(slopes), key=Slope.sort_key)
    lines = [f"graph {name} {{"]
    for s in ordered:
        lines.append(f'  "{s}";')
    for i, s in enumerate(ordered):
        for t in ordered[i + 1:]:
            if farey_adjacent(s, t):
                lines.append(f'  "{s}" -- "{t}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
