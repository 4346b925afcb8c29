import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from rollrank.errors import DimensionError, InsufficientDataError, ValidationError
from rollrank.ingest import Member, VoteMatrix
from rollrank.similarity import (
    check_weight_matrix,
    hamming_distance,
    similarity_matrix,
    weight_from_distance,
    write_weights_csv,
)

from oracles import THREE, brute_hamming


def test_worked_pair():
    u, v = (-1, 1, 0), (1, -1, 0)
    assert hamming_distance(u, v) == 2
    assert weight_from_distance(2) == 1 / 3


def test_hamming_identity_and_abstention():
    assert hamming_distance((1, 0, -1), (1, 0, -1)) == 0
    assert hamming_distance((1, 0, -1), (0, 0, -1)) == 1


def test_hamming_length_mismatch():
    with pytest.raises(DimensionError):
        hamming_distance((1, 0), (1, 0, 1))


@pytest.mark.parametrize("d, w", [(0, 1.0), (2, 1 / 3), (9, 0.1)])
def test_weight_from_distance(d, w):
    assert weight_from_distance(d) == w


def test_weight_rejects_negative():
    with pytest.raises(ValidationError):
        weight_from_distance(-1)


def test_identical_members():
    w = similarity_matrix(np.array([[1, -1, 0], [1, -1, 0]]))
    np.testing.assert_array_equal(w, [[0, 1], [1, 0]])


def test_worked_pair_matrix():
    w = similarity_matrix(np.array([[-1, 1, 0], [1, -1, 0]]))
    assert w[0, 1] == w[1, 0] == 1 / 3


def test_three_member_matrix_against_loop():
    w = similarity_matrix(THREE)
    expected = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            if i != j:
                expected[i, j] = 1 / (brute_hamming(THREE[i], THREE[j]) + 1)
    np.testing.assert_array_equal(w, expected)
    assert w[0, 1] == 1 / 2 and w[0, 2] == 1 / 5 and w[1, 2] == 1 / 4


def test_accepts_vote_matrix():
    roster = tuple(Member(str(i), f"M{i}") for i in range(3))
    np.testing.assert_array_equal(
        similarity_matrix(VoteMatrix(roster, THREE)), similarity_matrix(THREE)
    )


def test_needs_two_members():
    with pytest.raises(InsufficientDataError):
        similarity_matrix(np.array([[1, 0, 1]]))


vote_grids = hnp.arrays(
    np.int8,
    st.tuples(st.integers(2, 10), st.integers(0, 12)),
    elements=st.sampled_from([-1, 0, 1]),
)


@settings(max_examples=200, deadline=None)
@given(vote_grids)
def test_weight_matrix_invariants(votes):
    w = similarity_matrix(votes)
    n = votes.shape[0]
    check_weight_matrix(w)
    assert np.array_equal(w, w.T)
    assert (np.diag(w) == 0).all()
    off = w[~np.eye(n, dtype=bool)]
    assert ((off > 0) & (off <= 1)).all()
    for i in range(n):
        for j in range(n):
            if i != j:
                same = np.array_equal(votes[i], votes[j])
                assert (w[i, j] == 1.0) == same


@settings(max_examples=100, deadline=None)
@given(vote_grids, st.randoms(use_true_random=False))
def test_monotone_and_equivariant(votes, rnd):
    w = similarity_matrix(votes)
    n = votes.shape[0]
    d = [[brute_hamming(votes[i], votes[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) == 3 and d[i][j] < d[i][k]:
                    assert w[i, j] > w[i, k]
    perm = list(range(n))
    rnd.shuffle(perm)
    np.testing.assert_array_equal(similarity_matrix(votes[perm]), w[np.ix_(perm, perm)])


def test_custom_weight_function():
    w = similarity_matrix(THREE, weight=lambda d: np.exp(-d.astype(float)))
    assert w[0, 1] == np.exp(-1.0)
    assert w[0, 0] == 0


def test_check_weight_matrix_rejects():
    with pytest.raises(ValidationError):
        check_weight_matrix([[0, 1], [0.5, 0]])
    with pytest.raises(ValidationError):
        check_weight_matrix([[0, -1], [-1, 0]])
    with pytest.raises(DimensionError):
        check_weight_matrix([[0, 1, 2]])


def test_write_weights_csv():
    roster = tuple(Member(str(i), f"M{i}") for i in range(3))
    text = write_weights_csv(similarity_matrix(THREE), roster).decode()
    lines = text.splitlines()
    assert lines[0] == "id,0,1,2"
    assert lines[1] == "0,0.0,0.5,0.2"
    assert len(lines) == 4
