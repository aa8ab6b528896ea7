from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.combinatorics import lehmer_code, permutations_of_length
from artifact.families import demazure_family, schubert_family
from artifact.polytope import LatticePolytope, vertices
from artifact.schubitope import (
    CapExceeded,
    Diagram,
    kohnert_polynomial,
    lattice_points_of_system,
    minimize_inequalities,
    reduce_inequalities,
    rothe_diagram,
    schubitope_ehrhart,
    schubitope_inequalities,
    schubitope_lattice_points,
    skyline_diagram,
    system_to_json_obj,
    theta,
)

INTRO = Diagram(4, [(1, 3), (2, 2), (3, 1), (3, 2), (3, 4), (4, 3)])


def theta_by_rewriting(D, S):
    """Build each column word and cancel adjacent '()' pairs until none remain."""
    total = 0
    for c in range(1, D.n + 1):
        word = ""
        for r in range(1, D.n + 1):
            inD, inS = (r, c) in D.cells, r in S
            if inD and inS:
                total += 1
            elif inS:
                word += "("
            elif inD:
                word += ")"
        before = len(word)
        while "()" in word:
            word = word.replace("()", "", 1)
        total += (before - len(word)) // 2
    return total


diagrams = st.integers(1, 5).flatmap(
    lambda n: st.sets(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=n * n).map(
        lambda cells: Diagram(n, cells)
    )
)


def test_theta_intro_example():
    assert theta(INTRO, {2, 4}) == 4


@given(diagrams, st.data())
@settings(max_examples=80, deadline=None)
def test_theta_matches_rewriting_oracle(D, data):
    S = data.draw(st.sets(st.integers(1, D.n)))
    assert theta(D, S) == theta_by_rewriting(D, S)


@given(diagrams)
@settings(max_examples=40, deadline=None)
def test_theta_bounds(D):
    # theta of the full set counts every cell; theta is monotone in S
    full = set(range(1, D.n + 1))
    assert theta(D, full) == len(D)
    assert theta(D, set()) == 0
    for S in combinations(range(1, D.n + 1), 2):
        for i in S:
            assert theta(D, {i}) <= theta(D, S)


def test_rothe_diagram_21543():
    D = rothe_diagram((2, 1, 5, 4, 3))
    assert D.cells == {(1, 1), (3, 3), (3, 4), (4, 3)}
    assert D.trimmed().n == 4


def test_rothe_rows_are_lehmer_code():
    for w in permutations_of_length(5):
        D = rothe_diagram(w, 5)
        assert D.row_counts() == tuple(lehmer_code(w) + (0,) * (5 - len(lehmer_code(w))))


def test_theta_reconstructs_lehmer_code():
    # partial sums of the code are ell - theta({i+1, ..., n})
    for w in permutations_of_length(4):
        D = rothe_diagram(w, 4)
        code = D.row_counts()
        ell = len(D)
        for i in range(1, 4):
            assert sum(code[:i]) == ell - theta(D, set(range(i + 1, 5)))


def test_reductions_23154():
    D = rothe_diagram((2, 3, 1, 5, 4)).trimmed()
    assert reduce_inequalities(D) == [((3, 4), 1), ((1, 3, 4), 2), ((2, 3, 4), 2)]
    assert minimize_inequalities(D) == [((1, 3, 4), 2), ((2, 3, 4), 2)]


@given(diagrams)
@settings(max_examples=30, deadline=None)
def test_minimized_system_has_same_points(D):
    full = schubitope_inequalities(D)
    small = minimize_inequalities(D)
    assert set(small) <= set(full)
    for t in (1, 2):
        a = lattice_points_of_system(D.n, t * len(D), [(S, t * b) for S, b in full])
        b = lattice_points_of_system(D.n, t * len(D), [(S, t * b) for S, b in small])
        assert a == b


def test_kohnert_gives_schubert_on_s4():
    for w in permutations_of_length(4):
        assert kohnert_polynomial(rothe_diagram(w, 4)) == schubert_family("schubert", w).embed(4)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
@settings(max_examples=30, deadline=None)
def test_kohnert_on_skyline_gives_key(alpha):
    alpha = tuple(alpha)
    D = skyline_diagram(alpha)
    assert kohnert_polynomial(D) == demazure_family("key", alpha).embed(D.n)


def test_schubitope_ehrhart_table_rows():
    assert schubitope_ehrhart(rothe_diagram((1, 4, 3, 2))) == [1, Fraction(5, 2), Fraction(3, 2)]
    assert schubitope_ehrhart(rothe_diagram((4, 1, 3, 2))) == [1, 1]
    assert schubitope_ehrhart(rothe_diagram((1, 4, 2, 3))) == [1, 2]


def test_schubitope_vertices_1432():
    pts = schubitope_lattice_points(rothe_diagram((1, 4, 3, 2)))
    verts = vertices(LatticePolytope(4, pts))
    assert verts == {(2, 0, 1, 0), (1, 2, 0, 0), (2, 1, 0, 0), (0, 2, 1, 0)}


def test_json_and_caps():
    D = rothe_diagram((2, 1, 5, 4, 3)).trimmed()
    obj = system_to_json_obj(D, schubitope_inequalities(D))
    assert obj["eq_sum"] == 4 and len(obj["ineqs"]) == 14
    assert Diagram.from_json_obj(D.to_json_obj()) == D
    with pytest.raises(CapExceeded):
        schubitope_inequalities(Diagram(13, [(1, 1)]))
    with pytest.raises(ValueError):
        Diagram(2, [(3, 1)])
