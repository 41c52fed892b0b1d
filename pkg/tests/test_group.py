import random

import pytest
from hypothesis import given, strategies as st

from goeritz.group import (
    IDENTITY,
    LETTERS,
    RELATORS,
    NormalForm,
    abelianization,
    compose,
    cyclic_class,
    cyclic_reduce,
    invert,
    is_conjugate,
    is_three_cycle,
    is_transposition,
    multiply,
    nf,
    normal_form,
    order_of,
    parse,
    presentation_checks,
    quotient_s3,
    translation_length,
)

words = st.text(alphabet=LETTERS, max_size=24)


def test_parse():
    assert parse("a") == "a"
    assert parse("b d B d") == "bdBd"
    with pytest.raises(ValueError, match="position 0"):
        parse("q")


@pytest.mark.parametrize("rel", RELATORS)
def test_relators_are_trivial(rel):
    assert nf(rel).is_identity


def test_normal_form_examples():
    assert nf("aa") == IDENTITY
    assert nf("gdgd") == IDENTITY
    assert nf("bg") == NormalForm(1, 1, (("b", 1),))
    assert nf("bdBd") == NormalForm(0, 0, (("b", 1), ("d", 1), ("b", -1), ("d", 1)))


def test_multiply_and_invert_examples():
    assert multiply(nf("b"), nf("B")).is_identity
    assert multiply(invert(nf("bd")), nf("bd")).is_identity
    assert invert(nf("bd")) == nf("DB")
    assert multiply(nf("gd"), nf("gd")).is_identity


@pytest.mark.parametrize("word, order", [("a", 2), ("ad", 6), ("d", 3), ("", 1), ("g", 2), ("b", None), ("bd", None)])
def test_order(word, order):
    assert order_of(nf(word)) == order


def test_cyclic_class_examples():
    g = nf("ddbd")
    core, _ = cyclic_reduce(g)
    assert core.length == 1 and core.syllables[0][0] == "b"
    assert g.conj(nf("d")) == nf("b")
    assert cyclic_class(nf("bd")) == cyclic_class(nf("db"))
    assert cyclic_class(nf("bd")) != cyclic_class(nf("Bd"))


def test_is_conjugate_examples():
    k = is_conjugate(nf("d"), nf("dd"))
    assert k is not None and nf("d").conj(k) == nf("dd")
    k = is_conjugate(nf("b"), nf("ab"))
    assert k is not None and nf("b").conj(k) == nf("ab")
    assert is_conjugate(nf("a"), nf("g")) is None


def test_quotient_examples():
    assert is_three_cycle(quotient_s3(nf("bd")))
    assert is_transposition(quotient_s3(nf("gd")))
    assert quotient_s3(nf("a")) == (0, 1, 2)
    assert abelianization(nf("b")) == (0, 1)
    assert abelianization(nf("a")) == (0, 0)
    assert abelianization(nf("gd")) == (1, 0)


def test_presentation_checks_pass():
    assert all(ok for _, ok in presentation_checks())


def test_alpha_beta_subgroup_is_z2_times_z():
    for n in range(1, 30):
        for x in (0, 1):
            g = nf("a" * x + "b" * n)
            assert not g.is_identity
            assert g * nf("a") == nf("a") * g


@given(words, words)
def test_normal_form_soundness(u, v):
    g, h = normal_form(u), normal_form(v)
    assert (g * g.inverse()).is_identity
    assert g * h == normal_form(u + v)
    assert quotient_s3(g * h) == compose(quotient_s3(g), quotient_s3(h))
    au, av = abelianization(g), abelianization(h)
    assert abelianization(g * h) == ((au[0] + av[0]) % 2, au[1] + av[1])


@given(words, words, words)
def test_associativity(u, v, w):
    a, b, c = normal_form(u), normal_form(v), normal_form(w)
    assert (a * b) * c == a * (b * c)


@given(words)
def test_normal_form_invariants(u):
    g = normal_form(u)
    for (s1, _), (s2, _) in zip(g.syllables, g.syllables[1:]):
        assert s1 != s2
    for gen, n in g.syllables:
        assert n != 0 if gen == "b" else n in (1, 2)
    assert NormalForm.from_dict(g.to_dict()) == g


@given(words, words)
def test_conjugacy_is_sound_and_invariant(u, v):
    g, k = normal_form(u), normal_form(v)
    h = g.conj(k)
    found = is_conjugate(g, h)
    assert found is not None and g.conj(found) == h
    assert translation_length(h) == translation_length(g)
    assert cyclic_class(h) == cyclic_class(g)


def test_conjugacy_against_small_brute_force():
    rng = random.Random(3)
    conjugators = {IDENTITY}
    frontier = [IDENTITY]
    for _ in range(4):
        frontier = [x * nf(ch) for x in frontier for ch in LETTERS]
        conjugators.update(frontier)
    for _ in range(150):
        g = nf("".join(rng.choice(LETTERS) for _ in range(rng.randint(0, 5))))
        h = nf("".join(rng.choice(LETTERS) for _ in range(rng.randint(0, 5))))
        brute = any(g.conj(k) == h for k in conjugators)
        found = is_conjugate(g, h)
        if brute:
            assert found is not None
        if found is not None:
            assert g.conj(found) == h
