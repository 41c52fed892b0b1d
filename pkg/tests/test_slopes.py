from math import gcd

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from goeritz.freegroup import is_primitive
from goeritz.slopes import (
    INFINITY,
    ZERO,
    Monodromy,
    SL2Matrix,
    Slope,
    boundary_word,
    candidate_slopes,
    closed_form_set,
    farey_adjacent,
    farey_distance,
    farey_dot,
    is_vertical_primitive,
    letter_counts,
    normalize,
    slope_orbit,
    vertical_primitive_scan,
)

TREFOIL, FIG8 = Monodromy.TREFOIL, Monodromy.FIG8


@st.composite
def slope_strategy(draw, bound=13):
    q = draw(st.integers(0, bound))
    p = draw(st.integers(-bound, bound).filter(lambda p: gcd(p, q) == 1))
    return Slope(p, q)


@st.composite
def sl2_strategy(draw):
    # products of elementary matrices cover SL2(Z)
    m = SL2Matrix.identity()
    for _ in range(draw(st.integers(0, 5))):
        m = m * draw(st.sampled_from([SL2Matrix(1, 1, 0, 1), SL2Matrix(1, 0, 1, 1), SL2Matrix(0, -1, 1, 0)]))
    return m


def test_slope_normalization_and_parse():
    assert Slope(2, -4) == Slope(-1, 2)
    assert Slope(-3, 0) == INFINITY
    assert Slope.parse("inf") == INFINITY
    assert Slope.parse("-3/5") == Slope(-3, 5)
    assert str(Slope(3, 5)) == "3/5"
    with pytest.raises(ValueError):
        Slope(0, 0)
    with pytest.raises(ValueError):
        SL2Matrix(1, 1, 1, 1)


def test_trefoil_action_has_period_three():
    m = TREFOIL.slope_action
    for s in candidate_slopes(8):
        orbit = slope_orbit(m, s, 3)
        assert orbit[3] == orbit[0]


def test_identity_orbit():
    assert slope_orbit(SL2Matrix.identity(), Slope(2, 3), 3) == [Slope(2, 3)] * 4


def test_fig8_orbit_of_seeds():
    m = FIG8.slope_action
    assert slope_orbit(m, ZERO, 3)[1:] == [Slope(-1, 1), Slope(-3, 2), Slope(-8, 5)]
    assert slope_orbit(m.inverse(), ZERO, 3)[1:] == [Slope(1, 2), Slope(3, 5), Slope(8, 13)]


def _handled(mono, bound):
    return {normalize(mono, s) for s in candidate_slopes(bound)}


@pytest.mark.parametrize("mono", list(Monodromy))
def test_boundary_words_are_cyclically_reduced(mono):
    for s in _handled(mono, 21):
        w = boundary_word(mono, s)
        letters = w.letters
        assert letters
        assert all(a != -b for a, b in zip(letters, letters[1:]))
        assert letters[0] != -letters[-1] or len(letters) == 1


def test_trefoil_letter_counts():
    for s in _handled(TREFOIL, 34):
        if s.is_infinite or not 0 < s.value() < 1:
            continue
        p, q = s.p, s.q
        counts = letter_counts(boundary_word(TREFOIL, s))
        assert counts == {"r": q - 1, "b": q - 1, "R": q - 1 - p, "B": p - 1}


def test_fig8_letter_counts():
    for s in _handled(FIG8, 34):
        if s.is_infinite or s.value() in (0, 1):
            continue
        counts = letter_counts(boundary_word(FIG8, s))
        p, q = s.p, s.q
        if s.value() > 1:
            assert counts["b"] == 2 * p - q - 1 and counts["B"] == p - 1
        else:
            assert counts["r"] == q - 1 and counts["R"] == abs(p) + q - 1


def test_boundary_word_domain():
    with pytest.raises(ValueError):
        boundary_word(TREFOIL, Slope(3, 2))
    with pytest.raises(ValueError):
        boundary_word(FIG8, Slope(1, 2))


@pytest.mark.parametrize(
    "mono, slope, expected",
    [
        (TREFOIL, Slope(1, 2), True),
        (TREFOIL, Slope(1, 3), False),
        (FIG8, Slope(3, 5), True),
        (FIG8, Slope(3, 4), False),
    ],
)
def test_primitivity_examples(mono, slope, expected):
    assert is_vertical_primitive(mono, slope) is expected


def test_trefoil_one_third_obstruction():
    w = boundary_word(TREFOIL, Slope(1, 3))
    assert letter_counts(w) == {"r": 2, "b": 2, "R": 1, "B": 0}
    assert not is_primitive(w).primitive


def test_trefoil_one_half_word():
    assert str(boundary_word(TREFOIL, Slope(1, 2))) == "xy"


@pytest.mark.parametrize("mono", list(Monodromy))
def test_scan_matches_orbit_oracle(mono):
    assert vertical_primitive_scan(mono, 34) == closed_form_set(mono, 34)


def test_trefoil_scan_is_the_six_slopes():
    expected = {Slope.parse(t) for t in ("-1", "1", "0", "inf", "1/2", "2")}
    assert vertical_primitive_scan(TREFOIL, 34) == expected


def test_scan_bound_zero_and_cap():
    assert vertical_primitive_scan(TREFOIL, 0) == {INFINITY}
    assert vertical_primitive_scan(FIG8, 0) == {INFINITY}
    with pytest.raises(ValueError):
        vertical_primitive_scan(FIG8, 35, cap=34)


@given(sl2_strategy(), slope_strategy())
def test_orbit_conjugation_consistency(n, s):
    for mono in Monodromy:
        m = mono.slope_action
        conj = n * m * n.inverse()
        assert [n.act(t) for t in slope_orbit(m, s, 4)] == slope_orbit(conj, n.act(s), 4)


def _farey_graph(bound):
    nodes = [s for s in candidate_slopes(bound) if s.is_infinite or s.q <= bound]
    g = nx.Graph()
    g.add_nodes_from(nodes)
    for i, s in enumerate(nodes):
        for t in nodes[i + 1:]:
            if farey_adjacent(s, t):
                g.add_edge(s, t)
    return g


def test_farey_distance_examples():
    assert farey_distance(ZERO, INFINITY) == 1
    assert farey_distance(ZERO, Slope(1, 1)) == 1
    assert farey_distance(Slope(3, 7), Slope(3, 7)) == 0


def test_farey_distance_matches_bfs():
    # geodesics between slopes of small height stay among slopes of small height
    g = _farey_graph(13)
    sources = [ZERO, INFINITY, Slope(1, 2), Slope(-3, 5), Slope(8, 13)]
    for src in sources:
        lengths = nx.single_source_shortest_path_length(g, src)
        for t, d in lengths.items():
            assert farey_distance(src, t) == d, (src, t)
    assert farey_distance(Slope(1, 2), Slope(8, 13)) == nx.shortest_path_length(g, Slope(1, 2), Slope(8, 13))


@given(slope_strategy(), slope_strategy(), slope_strategy())
def test_farey_distance_is_a_metric(a, b, c):
    ab = farey_distance(a, b)
    assert ab == farey_distance(b, a)
    assert (ab == 0) == (a == b)
    assert farey_distance(a, c) <= ab + farey_distance(b, c)


def test_farey_dot():
    text = farey_dot([ZERO, INFINITY, Slope(1, 2)])
    assert text.startswith("graph farey {")
    assert '"0" -- "1/2";' in text and '"0" -- "inf";' in text
    assert text.count("--") == 2
