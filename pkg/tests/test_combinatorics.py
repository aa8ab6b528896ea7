from itertools import permutations, product
from math import comb, factorial

from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.combinatorics import (
    bruhat_leq,
    bruhat_leq_closure,
    composition_preceq,
    compositions,
    conjugate,
    count_01_matrices,
    dominance_leq,
    from_code,
    gale_ryser_pair,
    inverse,
    kostka,
    lehmer_code,
    length,
    longest_element,
    normalize_perm,
    order_kappa_downset,
    order_s_downset,
    partitions_of,
    permutations_of_length,
    rearrangements,
    reduced_words,
    sorting_permutation,
    ssyt,
    standard_tableaux_count,
    strict_compositions,
    word_to_perm,
)

perms = st.integers(1, 5).flatmap(lambda n: st.permutations(range(1, n + 1)).map(tuple))


def hook_length(lam):
    n = sum(lam)
    conj = conjugate(lam)
    prod_hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod_hooks *= row - j + conj[j] - i - 1
    return factorial(n) // prod_hooks


def test_partition_counts():
    assert [len(partitions_of(d)) for d in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert len(partitions_of(6, max_length=2)) == 4


def test_composition_counts():
    for total in range(6):
        for parts in range(1, 5):
            assert len(list(compositions(total, parts))) == comb(total + parts - 1, parts - 1)
    assert len(list(strict_compositions(5))) == 16


def test_conjugate_involution_and_dominance_reversal():
    for d in range(1, 8):
        parts = partitions_of(d)
        for lam in parts:
            assert conjugate(conjugate(lam)) == lam
            for mu in parts:
                assert dominance_leq(mu, lam) == dominance_leq(conjugate(lam), conjugate(mu))


@given(perms)
@settings(max_examples=80, deadline=None)
def test_lehmer_code_round_trip(w):
    assert normalize_perm(from_code(lehmer_code(w))) == normalize_perm(w)
    assert sum(lehmer_code(w)) == length(w)


@given(perms)
@settings(max_examples=60, deadline=None)
def test_reduced_words(w):
    words = reduced_words(w)
    assert all(len(a) == length(w) for a in words)
    assert all(word_to_perm(a, len(w)) == tuple(w) for a in words)
    assert len(set(words)) == len(words)
    assert length(inverse(w)) == length(w)


def test_reduced_word_counts():
    assert len(reduced_words(longest_element(3))) == 2
    assert len(reduced_words(longest_element(4))) == 16
    assert len(reduced_words((5, 4, 3, 2, 1))) == 768


def test_bruhat_matches_closure_oracle():
    for n in (3, 4):
        elems = list(permutations(range(1, n + 1)))
        for u in elems:
            for v in elems:
                assert bruhat_leq(u, v) == bruhat_leq_closure(u, v)


def test_permutations_of_length():
    assert len(permutations_of_length(4)) == 24
    # Mahonian numbers for S_4
    assert [len(permutations_of_length(4, k)) for k in range(7)] == [1, 3, 5, 6, 5, 3, 1]


def test_tableaux_counts():
    for d in range(1, 7):
        for lam in partitions_of(d):
            assert standard_tableaux_count(lam) == hook_length(lam)
            assert kostka(lam, (1,) * d) == hook_length(lam)
            assert kostka(lam, lam) == 1
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert len(list(ssyt((2, 1), 3))) == 8


def test_kostka_triangular():
    for d in range(1, 7):
        for lam in partitions_of(d):
            for mu in partitions_of(d):
                if kostka(lam, mu):
                    assert dominance_leq(mu, lam)


def brute_01(alpha, beta):
    m, n = len(alpha), len(beta)
    count = 0
    for bits in product((0, 1), repeat=m * n):
        rows = [bits[i * n:(i + 1) * n] for i in range(m)]
        if [sum(r) for r in rows] == list(alpha) and [sum(c) for c in zip(*rows)] == list(beta):
            count += 1
    return count


def test_01_matrices_against_brute_force():
    for m, n in ((2, 2), (2, 3), (3, 3)):
        for alpha in product(range(n + 1), repeat=m):
            for beta in product(range(m + 1), repeat=n):
                if sum(alpha) != sum(beta):
                    continue
                c = count_01_matrices(alpha, beta)
                assert c == brute_01(alpha, beta)
                assert gale_ryser_pair(alpha, beta) == (c > 0)


def test_s_order_examples():
    assert (1, 1) in order_s_downset((2, 0))
    assert (1, 1) not in order_kappa_downset((2, 0))
    assert order_s_downset((3, 0)) == {(3, 0), (1, 2), (2, 1)}
    assert order_kappa_downset((0, 2)) == {(2, 0), (1, 1)}
    assert order_kappa_downset((2, 1, 0)) == set()
    assert composition_preceq((2, 1, 0), (1, 2, 0))
    assert not composition_preceq((1, 2, 0), (2, 1, 0))


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
@settings(max_examples=80, deadline=None)
def test_kappa_below_implies_s_below(alpha):
    alpha = tuple(alpha)
    down_s = order_s_downset(alpha)
    assert alpha in down_s
    assert alpha not in order_kappa_downset(alpha)
    assert order_kappa_downset(alpha) <= down_s
    # every element has the same size
    assert all(sum(b) == sum(alpha) for b in down_s)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
@settings(max_examples=80, deadline=None)
def test_preceq_orbit(alpha):
    alpha = tuple(alpha)
    below = [b for b in rearrangements(alpha) if composition_preceq(b, alpha)]
    assert alpha in below
    lam = tuple(sorted(alpha, reverse=True))
    # the partition is the minimum of the orbit, its reverse the maximum
    assert all(composition_preceq(lam, b) for b in rearrangements(alpha))
    assert all(composition_preceq(b, lam[::-1]) for b in rearrangements(alpha))
    w = sorting_permutation(alpha)
    assert sorted(w) == list(range(1, len(alpha) + 1))
