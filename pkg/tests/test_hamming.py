import itertools

import pytest

from pcnsolve.errors import BudgetExceededError, NoClosedFormError, QTooSmallError
from pcnsolve.graph import all_pairs_distances
from pcnsolve.hamming import (
    HammingParams,
    alpha_upper_bound_propagation,
    best_known_lower,
    closed_form_lower_bound,
    decode,
    diagonal_stable_set,
    diagonal_words,
    encode,
    exact_closed_form,
    generate,
    hamming_distance_matrix,
    offset_permutation,
    two_layer_stable_set,
)
from pcnsolve.pcn import check_layered_stable_set


def test_word_ranking():
    assert encode((0, 1, 2), 3) == 5
    assert decode(5, 3, 3) == (0, 1, 2)
    for r in range(64):
        assert encode(decode(r, 4, 3), 4) == r
    with pytest.raises(ValueError):
        encode((3,), 3)


@pytest.mark.parametrize("q, m", [(2, 1), (2, 3), (3, 2), (3, 3), (4, 2), (2, 5)])
def test_generator_counts(q, m):
    g = generate(HammingParams(q, m))
    assert g.n == q**m
    assert g.num_edges == q**m * m * (q - 1) // 2
    assert all(g.degree(v) == m * (q - 1) for v in range(g.n))


@pytest.mark.parametrize("q, m", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_distance_matrix_matches_bfs(q, m):
    p = HammingParams(q, m)
    fast = hamming_distance_matrix(p)
    slow = all_pairs_distances(generate(p))
    assert (fast.dist == slow.dist).all()
    assert fast.diameter == m
    for u, v in itertools.combinations(range(p.n), 2):
        a, b = decode(u, q, m), decode(v, q, m)
        assert fast(u, v) == sum(x != y for x, y in zip(a, b))


def test_vertex_budget():
    with pytest.raises(BudgetExceededError):
        HammingParams(11, 4)
    assert HammingParams(11, 4, vertex_budget=20_000).n == 14_641


def test_vertex_budget_env(monkeypatch):
    monkeypatch.setenv("PCNSOLVE_VERTEX_BUDGET", "50")
    with pytest.raises(BudgetExceededError):
        HammingParams(4, 3)


def test_diagonal_set():
    p = HammingParams(3, 3)
    s = diagonal_stable_set(p)
    assert len(s) == 9 and s.certified
    assert all(sum(decode(v, 3, 3)) % 3 == 0 for v in diagonal_words(p))


@pytest.mark.parametrize("q", [3, 4, 5, 6, 7, 10, 31])
def test_offset_permutation(q):
    a = offset_permutation(q)
    assert sorted(a) == list(range(q))
    assert all((2 * i + a[i]) % q for i in range(q))


def test_offset_permutation_small_q():
    with pytest.raises(QTooSmallError):
        offset_permutation(2)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_two_layer_set(q):
    ls = two_layer_stable_set(q)
    assert len(ls) == q * q + q
    assert check_layered_stable_set(hamming_distance_matrix(HammingParams(q, 3)), ls)


def test_closed_forms():
    assert [exact_closed_form(HammingParams(q, 2)) for q in range(2, 7)] == [3, 7, 13, 21, 31]
    assert exact_closed_form(HammingParams(3, 3)) == 17
    assert exact_closed_form(HammingParams(4, 3)) == 46
    with pytest.raises(NoClosedFormError):
        exact_closed_form(HammingParams(2, 3))
    with pytest.raises(NoClosedFormError):
        exact_closed_form(HammingParams(3, 4))


def test_closed_form_lower_bound_values():
    # m = 4 lower bounds
    assert closed_form_lower_bound(HammingParams(3, 4)) == 45
    assert closed_form_lower_bound(HammingParams(4, 4)) == 175
    assert closed_form_lower_bound(HammingParams(5, 4)) == 473
    assert closed_form_lower_bound(HammingParams(6, 4)) == 1041
    # m = 2 and m = 3 agree with the exact values
    assert closed_form_lower_bound(HammingParams(5, 2)) == 21
    assert closed_form_lower_bound(HammingParams(4, 3)) == 46


def test_propagation_bound():
    p = HammingParams(3, 4)
    assert alpha_upper_bound_propagation(p, 17) == 3 + 81 - (3 * 17 - 2 * 3)
    assert best_known_lower(3, 3) == 17
    assert best_known_lower(2, 3) == closed_form_lower_bound(HammingParams(2, 3))
