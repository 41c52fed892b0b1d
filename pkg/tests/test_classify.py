import random

import pytest
from hypothesis import given, strategies as st

from goeritz.classify import (
    SUBGROUPS,
    Verdict,
    classify,
    classify_element,
    conjugate_into_disk_stab,
    conjugate_into_fig8,
    conjugate_into_vertex,
    default_budget,
    disk_stab_member,
    expand_witness,
    replay,
    scan_subgroup,
)
from goeritz.group import LETTERS, is_elliptic, nf, normal_form, random_word

words = st.text(alphabet=LETTERS, max_size=16)


@pytest.mark.parametrize(
    "word, expected",
    [
        ("a", "FiniteOrder(2)"),
        ("d", "FiniteOrder(3)"),
        ("ad", "FiniteOrder(6)"),
        ("", "FiniteOrder(1)"),
        ("b", "Reducible(SphereStab, conjugator=e)"),
        ("bdBd", "Reducible(Fig8Stab, conjugator=e)"),
        ("bd", "PseudoAnosov"),
    ],
)
def test_spot_verdicts(word, expected):
    assert str(classify(word)) == expected


def test_pseudo_anosov_evidence_is_exact():
    v = classify("bd")
    assert v.evidence["DiskStab"] == "S3 image is a 3-cycle"
    assert "not a multiple of 4" in v.evidence["Fig8Stab"]
    assert set(v.evidence) == set(SUBGROUPS)


def test_vertex_examples():
    hit = conjugate_into_vertex(nf("ddbd"))
    assert hit.vertex == "A" and hit.element == nf("b")
    assert nf("ddbd").conj(hit.conjugator) == nf("b")
    assert conjugate_into_vertex(nf("bd")) is None
    hit = conjugate_into_vertex(nf("ag"))
    assert hit.vertex == "A" and hit.conjugator.is_identity


def test_fig8_examples():
    assert conjugate_into_fig8(nf("bdBd")).status == "yes"
    dec = conjugate_into_fig8(nf("dbdBdD"))
    assert dec.status == "yes"
    assert nf("dbdBdD").conj(dec.conjugator) == normal_form(expand_witness("Fig8Stab", dec.witness))
    assert conjugate_into_fig8(nf("bd")).status == "no"
    with pytest.raises(ValueError):
        conjugate_into_fig8(nf("b"))


def test_disk_stab_examples():
    dec = conjugate_into_disk_stab(nf("bgd"))
    assert dec.status == "yes" and dec.conjugator.is_identity
    assert conjugate_into_disk_stab(nf("bd")).reason == "S3 image is a 3-cycle"
    assert conjugate_into_disk_stab(nf("bbddbb")).status == "no"


def test_disk_stab_membership_is_exact_on_subgroup_words(rng):
    for _ in range(300):
        w = "".join(rng.choice("abBt") for _ in range(rng.randint(0, 10)))
        g = normal_form(expand_witness("DiskStab", w))
        witness = disk_stab_member(g)
        assert witness is not None
        assert normal_form(expand_witness("DiskStab", witness)) == g
    assert disk_stab_member(nf("g")) is None
    assert disk_stab_member(nf("d")) is None


def test_unknown_only_when_budget_runs_out():
    assert classify("bdbdbd").type == "PseudoAnosov"
    v = classify("bdbdbd", budget=1)
    assert v.type == "Unknown" and v.budget == 1
    assert v.evidence["inconclusive"] == ["DiskStab"]


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("GOERITZ_BUDGET", "7")
    assert default_budget() == 7
    monkeypatch.setenv("GOERITZ_BUDGET", "0")
    with pytest.raises(ValueError):
        default_budget()


@given(words)
def test_certificates_replay(w):
    v = classify(w)
    if v.type in ("FiniteOrder", "Reducible"):
        assert replay(v, w)


@given(words)
def test_verdict_json_round_trip(w):
    text = classify(w).to_json()
    assert Verdict.from_json(text).to_json() == text


@given(words, words)
def test_conjugation_does_not_change_definite_verdict(w, h):
    g, k = normal_form(w), normal_form(h)
    a, b = classify_element(g), classify_element(g.conj(k))
    if a.definite and b.definite:
        assert (a.type, a.order) == (b.type, b.order)
        # a finite-order element of the edge group sits in both vertex groups
        if a.type == "Reducible":
            assert a.subgroup == b.subgroup


@given(words)
def test_inverse_and_powers(w):
    g = normal_form(w)
    v = classify_element(g)
    vi = classify_element(g.inverse())
    assert (v.type, v.order) == (vi.type, vi.order)
    if v.type in ("FiniteOrder", "Reducible"):
        for k in (2, 3):
            assert classify_element(g ** k).type != "PseudoAnosov"


def _members(h):
    if is_elliptic(h) and h.length <= 1:
        return True
    if disk_stab_member(h) is not None:
        return True
    return False


def test_pseudo_anosov_excludes_every_witness():
    rng = random.Random(11)
    conjugators = [nf(ch) for ch in "" + LETTERS] + [nf("")]
    fig8 = {normal_form(expand_witness("Fig8Stab", w)) for w in ("f", "F", "af", "aF", "ff", "FF")}
    for _ in range(2000):
        g = normal_form(random_word(rng, rng.randint(1, 20)))
        if classify_element(g).type != "PseudoAnosov":
            continue
        for k in conjugators:
            h = g.conj(k)
            assert not _members(h)
            assert h not in fig8


def test_scan_examples():
    report = scan_subgroup(["b"], 2)
    assert report.counts == {"Reducible": 4}
    report = scan_subgroup(["d"], 3)
    orders = {hit["verdict"].get("order") for hit in report.hits}
    assert {1, 3} <= orders
    with pytest.raises(ValueError):
        scan_subgroup([], 2)
