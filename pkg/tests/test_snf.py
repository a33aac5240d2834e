import random

from momcensus.snf import invariant_factors, rank

from oracles import sympy_invariant_factors, whitehead_exterior_h1


def test_diagonal_two_three():
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]


def test_zero_matrix():
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert rank([[0, 0], [0, 0]]) == 0


def test_identity():
    assert invariant_factors([[1, 0], [0, 1]]) == [1, 1]


def test_known_torsion():
    assert invariant_factors([[2, 4], [4, 2]]) == [2, 6]
    assert invariant_factors([[6, 0], [0, 10]]) == [2, 30]


def test_against_sympy_oracle():
    rng = random.Random(43)
    for _ in range(150):
        nr = rng.randint(1, 6)
        nc = rng.randint(1, 6)
        m = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
        got = invariant_factors(m)
        want = sympy_invariant_factors(m)
        assert got == want, m


def test_whitehead_hand_entered_complex():
    rank_, torsion = whitehead_exterior_h1()
    assert rank_ == 2
    assert torsion == []
