"""Nielsen-Thurston type of Goeritz elements, with replayable certificates.

An element is pseudo-Anosov exactly when it is not conjugate into any of
four subgroups.  Each subgroup is given by named generators; certificates
are written as words in those names (an upper-case name is the inverse).
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .group import (
    IDENTITY,
    NormalForm,
    cyclic_orbit,
    cyclic_reduce,
    invert_word,
    is_conjugate,
    is_three_cycle,
    normal_form,
    order_of,
    parse,
    quotient_s3,
    translation_length,
)

SUBGROUPS: dict[str, dict[str, str]] = {
    "DiskStab": {"a": "a", "b": "b", "t": "gd"},
    "SphereStab": {"a": "a", "b": "b", "g": "g"},
    "PantsStab": {"a": "a", "g": "g", "d": "d"},
    "Fig8Stab": {"a": "a", "f": "bdBd", "t": "gd"},
}

CRS_LABELS = {
    "DiskStab": "(i) weakly reducing pair",
    "SphereStab": "(ii) reducing curve",
    "Fig8Stab": "(iii) figure-8 curve",
}

VERTEX_SUBGROUP = {"A": "SphereStab", "B": "PantsStab"}

BUDGET_ENV = "GOERITZ_BUDGET"
DEFAULT_BUDGET = 4096


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


def expand_witness(subgroup: str, witness: str) -> str:
    """Goeritz word spelled by a word in the subgroup's generator names."""
    gens = SUBGROUPS[subgroup]
    out = []
    for ch in witness:
        if ch in gens:
            out.append(gens[ch])
        elif ch.lower() in gens and ch.isupper():
            out.append(invert_word(gens[ch.lower()]))
        else:
            raise ValueError(f"{ch!r} is not a generator of {subgroup}")
    return "".join(out)


def _power(name: str, n: int) -> str:
    return name * n if n >= 0 else name.upper() * -n


# --- vertex groups -----------------------------------------------------------


@dataclass(frozen=True)
class VertexHit:
    conjugator: NormalForm
    vertex: str
    element: NormalForm

    @property
    def witness(self) -> str:
        # normal-form letters coincide with the vertex generator names
        return self.element.word()


def conjugate_into_vertex(g: NormalForm) -> VertexHit | None:
    """Conjugate an elliptic element into ``A`` or ``B``; ``None`` if hyperbolic."""
    core, k = cyclic_reduce(g)
    if core.length >= 2:
        return None
    vertex = "B" if core.length == 1 and core.syllables[0][0] == "d" else "A"
    return VertexHit(k.inverse(), vertex, core)


# --- figure-8 knot stabilizer ------------------------------------------------

FIG8_MONODROMY = normal_form("bdBd")


@dataclass(frozen=True)
class Decision:
    """Outcome of a subgroup test: ``yes``, ``no`` or ``unknown``."""

    status: str
    conjugator: NormalForm | None = None
    witness: str | None = None
    reason: str = ""
    tested: int = 0


def conjugate_into_fig8(g: NormalForm) -> Decision:
    """Exact test for hyperbolic ``g``.

    Infinite-order elements of the stabilizer are ``a^x f^m`` with
    ``f = b d B d``, whose translation length is ``4|m|``.
    """
    length = translation_length(g)
    if length == 0:
        raise ValueError("conjugate_into_fig8 expects a hyperbolic element")
    if length % 4:
        return Decision("no", reason=f"translation length {length} is not a multiple of 4")
    m = length // 4
    for x, sign in product((0, 1), (1, -1)):
        witness = "a" * x + _power("f", sign * m)
        target = normal_form(expand_witness("Fig8Stab", witness))
        k = is_conjugate(g, target)
        if k is not None:
            return Decision("yes", conjugator=k, witness=witness)
    return Decision("no", reason=f"not conjugate to a^x f^(+-{m})")


# --- primitive-disk stabilizer -----------------------------------------------


def disk_stab_member(h: NormalForm) -> str | None:
    """Exact membership in ``<a, b, g d>``; returns a witness word or ``None``.

    An element of the subgroup alternates powers of ``b`` with ``t = g d``, so
    its normal form has the same syllable pattern and ``b``-exponents; the
    candidate word is forced and only needs to be compared.
    """
    parts = []
    for gen, n in h.syllables:
        parts.append(_power("b", n) if gen == "b" else "t")
    body = "".join(parts)
    cand = normal_form(expand_witness("DiskStab", body))
    if cand.g != h.g or cand.syllables != h.syllables:
        return None
    return "a" * (cand.a ^ h.a) + body


def conjugate_into_disk_stab(g: NormalForm, budget: int | None = None) -> Decision:
    """Three-valued test for hyperbolic ``g``.

    A 3-cycle image in the S3 quotient excludes the subgroup outright.
    Otherwise the cyclic forms of ``g`` are checked for membership; a
    cyclically reduced conjugate inside the subgroup must appear among them,
    so a full scan is an exact exclusion.  ``budget`` caps the number of
    cyclic forms examined.
    """
    if budget is None:
        budget = default_budget()
    if is_three_cycle(quotient_s3(g)):
        return Decision("no", reason="S3 image is a 3-cycle")
    total = 4 * translation_length(g)
    tested = 0
    for cand, k in cyclic_orbit(g):
        if tested >= budget:
            return Decision("unknown", reason=f"scanned {tested} of {total} cyclic forms", tested=tested)
        tested += 1
        witness = disk_stab_member(cand)
        if witness is not None:
            return Decision("yes", conjugator=k, witness=witness, tested=tested)
    return Decision("no", reason=f"none of {total} cyclic forms lies in the subgroup", tested=tested)


# --- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    type: str
    order: int | None = None
    subgroup: str | None = None
    conjugator: str | None = None
    evidence: dict = field(default_factory=dict, hash=False)
    budget: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"type": self.type}
        for key in ("order", "subgroup", "conjugator", "budget"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if self.evidence:
            out["evidence"] = self.evidence
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Verdict":
        data = json.loads(text)
        return cls(
            type=data["type"],
            order=data.get("order"),
            subgroup=data.get("subgroup"),
            conjugator=data.get("conjugator"),
            evidence=data.get("evidence", {}),
            budget=data.get("budget"),
        )

    @property
    def definite(self) -> bool:
        return self.type != "Unknown"

    def __str__(self) -> str:
        if self.type == "FiniteOrder":
            return f"FiniteOrder({self.order})"
        if self.type == "Reducible":
            return f"Reducible({self.subgroup}, conjugator={self.conjugator or 'e'})"
        if self.type == "Unknown":
            return f"Unknown(budget={self.budget})"
        return "PseudoAnosov"


def replay(verdict: Verdict, g: NormalForm | str) -> bool:
    """Check a FiniteOrder/Reducible certificate from scratch."""
    if isinstance(g, str):
        g = normal_form(parse(g))
    if verdict.type not in ("FiniteOrder", "Reducible"):
        return False
    k = normal_form(verdict.conjugator or "")
    witness = verdict.evidence["witness"]
    target = normal_form(expand_witness(verdict.subgroup, witness))
    return g.conj(k) == target


def classify_element(g: NormalForm, budget: int | None = None) -> Verdict:
    if budget is None:
        budget = default_budget()
    hit = conjugate_into_vertex(g)
    if hit is not None:
        subgroup = VERTEX_SUBGROUP[hit.vertex]
        evidence = {"vertex": hit.vertex, "witness": hit.witness}
        order = order_of(hit.element)
        if order is not None:
            return Verdict("FiniteOrder", order=order, subgroup=subgroup,
                           conjugator=hit.conjugator.word(), evidence=evidence)
        evidence["crs"] = CRS_LABELS[subgroup]
        return Verdict("Reducible", subgroup=subgroup,
                       conjugator=hit.conjugator.word(), evidence=evidence)

    length = translation_length(g)
    fig8 = conjugate_into_fig8(g)
    if fig8.status == "yes":
        return Verdict("Reducible", subgroup="Fig8Stab", conjugator=fig8.conjugator.word(),
                       evidence={"witness": fig8.witness, "crs": CRS_LABELS["Fig8Stab"]})
    disk = conjugate_into_disk_stab(g, budget)
    if disk.status == "yes":
        return Verdict("Reducible", subgroup="DiskStab", conjugator=disk.conjugator.word(),
                       evidence={"witness": disk.witness, "crs": CRS_LABELS["DiskStab"]})
    vertex_reason = f"hyperbolic, translation length {length}"
    exclusions = {
        "SphereStab": vertex_reason,
        "PantsStab": vertex_reason,
        "Fig8Stab": fig8.reason,
        "DiskStab": disk.reason,
    }
    if disk.status == "unknown":
        return Verdict("Unknown", budget=budget,
                       evidence={"inconclusive": ["DiskStab"], "exclusions": exclusions})
    return Verdict("PseudoAnosov", evidence=exclusions)


def classify(word: str, budget: int | None = None) -> Verdict:
    return classify_element(normal_form(parse(word)), budget)


# --- subgroup scans ----------------------------------------------------------

MAX_SCAN_WORDS = 500_000


def _reduced_words(ngens: int, maxlen: int) -> Iterator[tuple[int, ...]]:
    letters = [i for k in range(1, ngens + 1) for i in (k, -k)]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(maxlen):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        yield from nxt
        frontier = nxt


def _count_reduced(ngens: int, maxlen: int) -> int:
    k = 2 * ngens
    return sum(k * (k - 1) ** (n - 1) for n in range(1, maxlen + 1))


def format_gen_word(w: Sequence[int]) -> str:
    return " ".join(f"g{abs(a)}" + ("" if a > 0 else "^-1") for a in w)


@dataclass
class ScanReport:
    total: int = 0
    counts: dict = field(default_factory=dict)
    hits: list = field(default_factory=list)
    unknown: list = field(default_factory=list)

    @property
    def unknown_rate(self) -> float:
        return self.counts.get("Unknown", 0) / self.total if self.total else 0.0

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "counts": dict(sorted(self.counts.items())),
            "unknown_rate": self.unknown_rate,
            "hits": self.hits,
            "unknown": self.unknown,
        }


def scan_subgroup(generators: Sequence[str], maxlen: int, budget: int | None = None) -> ScanReport:
    """Classify every nonempty reduced word of length <= maxlen in the generators."""
    if not generators:
        raise ValueError("at least one generator is required")
    gens = [parse(g) for g in generators]
    if _count_reduced(len(gens), maxlen) > MAX_SCAN_WORDS:
        raise ValueError(f"scan would exceed {MAX_SCAN_WORDS} words")
    inv = [invert_word(g) for g in gens]
    report = ScanReport()
    for w in _reduced_words(len(gens), maxlen):
        word = "".join(gens[a - 1] if a > 0 else inv[-a - 1] for a in w)
        verdict = classify(word, budget)
        report.total += 1
        report.counts[verdict.type] = report.counts.get(verdict.type, 0) + 1
        entry = {"word": format_gen_word(w), "goeritz": word, "verdict": verdict.to_dict()}
        if verdict.type in ("FiniteOrder", "Reducible"):
            report.hits.append(entry)
        elif verdict.type == "Unknown":
            report.unknown.append(entry)
    return report
