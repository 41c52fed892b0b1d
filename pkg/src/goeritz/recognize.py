"""Recognize S3 among mapping tori of once-punctured torus monodromies.

Words use ``t T`` for the twist about ``a`` and its inverse, ``u U`` for the
twist about ``b``, ``z Z`` for the boundary twist.  A monodromy gives S3
exactly when it is conjugate to one of three model words; conjugacy is
decided from the homology matrix together with the exponent sum, since the
kernel of the homology action is generated by the boundary twist.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from math import gcd, isqrt

from .slopes import SL2Matrix, ext_gcd

TWIST_A = SL2Matrix(1, 1, 0, 1)
TWIST_B = SL2Matrix(1, 0, -1, 1)

_LETTER_MATRIX = {
    "t": TWIST_A,
    "T": TWIST_A.inverse(),
    "u": TWIST_B,
    "U": TWIST_B.inverse(),
    "z": SL2Matrix.identity(),
    "Z": SL2Matrix.identity(),
}
# the boundary twist is (t u)^6
_LETTER_EXPSUM = {"t": 1, "T": -1, "u": 1, "U": -1, "z": 12, "Z": -12}

# Laurent coefficients {power: coefficient}
ALEXANDER = {
    "Figure8": {-1: -1, 0: 3, 1: -1},
    "Trefoil": {-1: 1, 0: -1, 1: 1},
}


@dataclass(frozen=True)
class Model:
    name: str
    word: str
    knot: str


MODELS = (
    Model("Figure8Knot", "tU", "Figure8"),
    Model("TrefoilClass", "tu", "Trefoil"),
    Model("MirrorTrefoilClass", "UT", "Trefoil"),
)
MODEL_BY_KNOT = {"Figure8": MODELS[0], "Trefoil": MODELS[1], "MirrorTrefoil": MODELS[2]}


class OutsideTableError(RuntimeError):
    """A homology sphere whose matrix matches none of the model matrices."""


def parse_monodromy(text: str) -> str:
    out = []
    for i, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch not in _LETTER_MATRIX:
            raise ValueError(f"unknown letter {ch!r} at position {i}")
        out.append(ch)
    return "".join(out)


def invert_monodromy(word: str) -> str:
    return word[::-1].swapcase()


def mcg_matrix(word: str) -> SL2Matrix:
    m = SL2Matrix.identity()
    for ch in parse_monodromy(word):
        m = m * _LETTER_MATRIX[ch]
    return m


def expsum(word: str) -> int:
    return sum(_LETTER_EXPSUM[ch] for ch in parse_monodromy(word))


def central_exponent(word: str, model: Model) -> int:
    diff = expsum(word) - expsum(model.word)
    if diff % 12:
        raise ValueError(f"exponent sum differs from {model.word!r} by {diff}, not a multiple of 12")
    return diff // 12


def is_homology_sphere(word: str) -> bool:
    return abs(2 - mcg_matrix(word).trace) == 1


def alexander_second_derivative_at_one(knot: str) -> int:
    return sum(c * k * (k - 1) for k, c in ALEXANDER[knot].items())


def casson_obstruction(knot: str, n: int) -> int:
    """Magnitude of the Casson invariant after ``n`` boundary twists."""
    return abs(n) * abs(alexander_second_derivative_at_one(knot)) // 2


# --- SL(2, Z) conjugacy -----------------------------------------------------

STEP_R = SL2Matrix(1, 1, 0, 1)
STEP_L = SL2Matrix(1, 0, 1, 1)


def _is_nonnegative(m: SL2Matrix) -> bool:
    return min(m.a, m.b, m.c, m.d) >= 0


def rl_word(m: SL2Matrix) -> str:
    """Factor a nonnegative matrix as a word in ``R`` and ``L``."""
    if not _is_nonnegative(m):
        raise ValueError(f"{m} has a negative entry")
    letters = []
    while m != SL2Matrix.identity():
        a, b, c, d = m.a, m.b, m.c, m.d
        if a >= b and c >= d:
            letters.append("L")
            m = SL2Matrix(a - b, b, c - d, d)
        elif b >= a and d >= c:
            letters.append("R")
            m = SL2Matrix(a, b - a, c, d - c)
        else:
            raise AssertionError(f"cannot peel a factor from {m}")
    return "".join(reversed(letters))


def rl_matrix(word: str) -> SL2Matrix:
    m = SL2Matrix.identity()
    for ch in word:
        m = m * (STEP_R if ch == "R" else STEP_L)
    return m


def _least_rotation(word: str) -> int:
    n = len(word)
    return min(range(n), key=lambda i: word[i:] + word[:i]) if n else 0


def _cf_floor(p: int, q: int, root: int) -> int:
    # floor((p + sqrt(D)) / q) with sqrt(D) irrational and root = isqrt(D)
    if q > 0:
        return (p + root) // q
    return -((p + root) // -q) - 1


def _mat_mul(x: tuple, y: tuple) -> tuple:
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def _positive_conjugate(m: SL2Matrix) -> tuple[SL2Matrix, SL2Matrix]:
    """For trace > 2 return ``(P, P m P^-1)`` with nonnegative entries.

    Expands the attracting fixed point ``(p + sqrt(D)) / q`` as a continued
    fraction until it is purely periodic; the product of the step matrices
    conjugates ``m`` to a matrix whose fixed points straddle zero.
    """
    disc = m.trace ** 2 - 4
    root = isqrt(disc)
    p, q = m.a - m.d, 2 * m.c
    # each step x = k + 1/x' is [[k, 1], [1, 0]] with det -1, so stop on even counts
    steps = (1, 0, 0, 1)
    count = 0
    seen = set()
    while not ((p, q) in seen and count % 2 == 0):
        seen.add((p, q))
        k = _cf_floor(p, q, root)
        steps = _mat_mul(steps, (k, 1, 1, 0))
        count += 1
        p = k * q - p
        q = (disc - p * p) // q
    back = SL2Matrix(*steps)
    conj = back.inverse()
    return conj, conj * m * back


def _hyperbolic_canon(m: SL2Matrix) -> tuple[tuple, SL2Matrix]:
    sign = 1 if m.trace > 0 else -1
    pos = m if sign == 1 else -m
    conj, reduced = _positive_conjugate(pos)
    word = rl_word(reduced)
    k = _least_rotation(word)
    # rotating word = U V to V U conjugates by U^-1
    conj = rl_matrix(word[:k]).inverse() * conj
    return ("hyperbolic", sign, word[k:] + word[:k]), conj


def _parabolic_canon(m: SL2Matrix) -> tuple[tuple, SL2Matrix]:
    sign = 1 if m.trace > 0 else -1
    if m.b == 0 and m.c == 0:
        return ("central", sign), SL2Matrix.identity()
    s = m if sign == 1 else -m
    x, y = (s.a - 1, s.b) if (s.a - 1, s.b) != (0, 0) else (s.c, s.d - 1)
    g = gcd(x, y)
    v1, v2 = -y // g, x // g
    # complete (v1, v2) to a basis with det [v | w] = 1
    e, f = ext_gcd(v1, v2)
    basis = SL2Matrix(v1, -f, v2, e)
    conj = basis.inverse()
    canon = conj * s * basis
    return ("parabolic", sign, canon.b), conj


def _elliptic_canon(m: SL2Matrix) -> tuple[tuple, SL2Matrix]:
    key = ("elliptic", m.trace, 1 if m.c > 0 else -1)
    gens = (STEP_R, STEP_R.inverse(), STEP_L, STEP_L.inverse())

    def norm(x: SL2Matrix) -> int:
        return x.a ** 2 + x.b ** 2 + x.c ** 2 + x.d ** 2

    conj, cur = SL2Matrix.identity(), m
    while True:
        better = min(((g * cur * g.inverse(), g) for g in gens), key=lambda t: norm(t[0]))
        if norm(better[0]) >= norm(cur):
            break
        cur, conj = better[0], better[1] * conj
    target = _ELLIPTIC_REPS[key[1:]]
    # finitely many minimal-norm matrices per class; a short search links them
    queue = deque([(cur, conj)])
    seen = {cur}
    while queue:
        x, c = queue.popleft()
        if x == target:
            return key, c
        for g in gens:
            y = g * x * g.inverse()
            if y not in seen and norm(y) <= norm(cur) + 4:
                seen.add(y)
                queue.append((y, g * c))
    raise AssertionError(f"elliptic reduction of {m} did not reach {target}")


_ELLIPTIC_REPS = {
    (0, 1): SL2Matrix(0, -1, 1, 0),
    (0, -1): SL2Matrix(0, 1, -1, 0),
    (1, 1): SL2Matrix(1, -1, 1, 0),
    (1, -1): SL2Matrix(0, 1, -1, 1),
    (-1, 1): SL2Matrix(-1, -1, 1, 0),
    (-1, -1): SL2Matrix(0, 1, -1, -1),
}


def sl2_canonical(m: SL2Matrix) -> tuple[tuple, SL2Matrix]:
    """Conjugacy invariant of ``m`` and a ``P`` with ``P m P^-1`` canonical."""
    t = abs(m.trace)
    if t > 2:
        return _hyperbolic_canon(m)
    if t == 2:
        return _parabolic_canon(m)
    return _elliptic_canon(m)


def sl2_conjugacy(m1: SL2Matrix, m2: SL2Matrix) -> SL2Matrix | None:
    """``P`` with ``P m1 P^-1 = m2``, or ``None`` if not conjugate in SL(2, Z)."""
    if m1.trace != m2.trace:
        return None
    k1, p1 = sl2_canonical(m1)
    k2, p2 = sl2_canonical(m2)
    if k1 != k2:
        return None
    p = p2.inverse() * p1
    assert p * m1 * p.inverse() == m2
    return p


# --- recognition ------------------------------------------------------------


@dataclass(frozen=True)
class RecognitionResult:
    verdict: str
    trace: int
    reason: str | None = None
    central_exponent: int | None = None
    casson: int | None = None
    model: str | None = None

    @property
    def is_s3(self) -> bool:
        return self.verdict != "NotS3"

    def to_dict(self) -> dict:
        out: dict = {"verdict": self.verdict, "trace": self.trace}
        for key in ("reason", "central_exponent", "casson", "model"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def __str__(self) -> str:
        if self.verdict != "NotS3":
            return self.verdict
        if self.reason == "homology":
            return f"NotS3(homology, trace={self.trace})"
        return f"NotS3(casson, n={self.central_exponent}, |lambda|={self.casson})"


def recognize(word: str) -> RecognitionResult:
    word = parse_monodromy(word)
    m = mcg_matrix(word)
    if abs(2 - m.trace) != 1:
        return RecognitionResult("NotS3", m.trace, reason="homology")
    for model in MODELS:
        if sl2_conjugacy(m, mcg_matrix(model.word)) is None:
            continue
        n = central_exponent(word, model)
        if n == 0:
            return RecognitionResult(model.name, m.trace, central_exponent=0, model=model.word)
        return RecognitionResult("NotS3", m.trace, reason="casson", central_exponent=n,
                                 casson=casson_obstruction(model.knot, n), model=model.word)
    raise OutsideTableError(f"homology sphere with matrix {m} matches no model")
