import itertools
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_cells.affine_weyl import AffinePerm, identity, random_element, right_descents, word_of
from affine_cells.canonical import w_lambda
from affine_cells.cells import (
    Partition,
    cell_ball,
    in_DL,
    in_DR,
    lambda_by_chains,
    lambda_partition,
    left_star,
    minimum_antichain_cover,
    mu_partition,
    n_mu,
    parse_partition,
    partitions_of,
    right_star,
    right_star_by_definition,
)
from affine_cells.errors import NotInStarDomain, ParseError, RankTooSmall


def antichain(w: AffinePerm, js) -> bool:
    vals = [w(j) for j in js]
    return all(a < b for a, b in zip(vals, vals[1:])) and (len(js) < 2 or vals[-1] - w.n < vals[0])


def mu_by_search(w: AffinePerm) -> Partition:
    """d'_q = largest union of q disjoint window antichains, by exhaustive search."""
    n = w.n
    chains = [frozenset(js) for k in range(1, n + 1) for js in itertools.combinations(range(1, n + 1), k) if antichain(w, js)]
    best = [0]
    for q in range(1, n + 1):
        top = 0
        for combo in itertools.combinations(chains, q):
            if sum(map(len, combo)) == len(frozenset().union(*combo)):
                top = max(top, sum(map(len, combo)))
        best.append(top)
        if top == n:
            break
    return Partition.of([b - a for a, b in zip(best, best[1:])])


@st.composite
def elements(draw, n_values=(3, 4, 5)):
    n = draw(st.sampled_from(n_values))
    return word_of(n, draw(st.lists(st.integers(0, n - 1), max_size=14)), draw(st.integers(-3, 3)))


# --- partitions ----------------------------------------------------------


def test_partition_basics():
    p = parse_partition("4,3,2,2")
    assert str(p) == "4,3,2,2"
    assert p.dual() == Partition((4, 4, 2, 1))
    assert p.partial_sums() == (0, 4, 7, 9, 11)
    assert p.block_rows() == (1, 2, 4)
    assert p.class_sizes() == (1, 1, 2)
    for bad in ("", "1,2", "2,0", "a"):
        with pytest.raises(ParseError):
            parse_partition(bad)


def test_dual_involution_and_block_data():
    for n in range(1, 13):
        parts = partitions_of(n)
        assert len(set(parts)) == len(parts)
        for lam in parts:
            assert lam.dual().dual() == lam
            mult = Counter(lam.dual().parts)
            for m, r in zip(lam.class_sizes(), lam.block_rows()):
                assert mult[r] == m
            assert sum(lam.class_sizes()) == lam[0]


def test_n_mu():
    assert n_mu(Partition((2, 1))) == 3
    for n in range(1, 7):
        assert n_mu(Partition((1,) * n)) == 1
        assert n_mu(Partition((n,))) == [1, 1, 2, 6, 24, 120, 720][n]


# --- lambda and mu -------------------------------------------------------


def test_examples():
    assert mu_partition(identity(5)) == Partition((5,))
    assert lambda_partition(identity(5)) == Partition((1,) * 5)
    w = AffinePerm((6, 3, 10, 7, 8, 11))
    assert lambda_partition(w) == Partition((2, 2, 1, 1))
    assert mu_partition(w) == Partition((4, 2))
    assert mu_partition(w_lambda(Partition((3, 2, 1))).perm) == Partition((3, 2, 1))


def test_w_lambda_cells():
    for n in range(2, 7):
        for lam in partitions_of(n):
            w = w_lambda(lam).perm
            assert lambda_partition(w) == lam
            assert mu_partition(w) == lam.dual()


def test_mu_matches_search():
    rng = random.Random(3)
    for _ in range(300):
        w = random_element(rng.randint(2, 5), 14, rng)
        assert mu_partition(w) == mu_by_search(w)


@settings(max_examples=250, deadline=None)
@given(elements())
def test_inverse_invariance(w):
    assert lambda_partition(w.inverse()) == lambda_partition(w)


@settings(max_examples=150, deadline=None)
@given(elements(n_values=(2, 3, 4)))
def test_chain_oracle_agrees(w):
    lam, converged = lambda_by_chains(w)
    assert converged
    assert lam == lambda_partition(w)


@settings(max_examples=200, deadline=None)
@given(elements())
def test_minimum_cover_is_complete_family(w):
    cover = minimum_antichain_cover(w)
    flat = [j for block in cover for j in block]
    assert sorted(flat) == list(range(1, w.n + 1))
    assert all(antichain(w, sorted(block)) for block in cover)


# --- star operations -----------------------------------------------------


def test_star_example():
    w = word_of(3, [1, 2])
    assert in_DR(w, 1)
    assert right_star(w, 1) == word_of(3, [1])


def test_star_errors():
    with pytest.raises(RankTooSmall):
        right_star(identity(2), 0)
    with pytest.raises(NotInStarDomain):
        right_star(identity(3), 1)


@settings(max_examples=300, deadline=None)
@given(elements(), st.integers(0, 4))
def test_star_properties(w, i):
    i %= w.n
    r = right_descents(w)
    assert in_DR(w, i) == ((i in r) != ((i + 1) % w.n in r))
    if in_DR(w, i):
        x = right_star(w, i)
        assert x == right_star_by_definition(w, i)
        assert in_DR(x, i)
        assert right_star(x, i) == w
        assert lambda_partition(x) == lambda_partition(w)
    if in_DL(w, i):
        x = left_star(w, i)
        assert x == right_star(w.inverse(), i).inverse()
        assert left_star(x, i) == w


# --- bounded cells -------------------------------------------------------


def test_cell_ball_rank_two():
    cb = cell_ball(2, 6)
    lams = [{lambda_partition(w) for w in cls} for cls in cb.two_sided]
    assert all(len(s) == 1 for s in lams)
    assert {next(iter(s)) for s in lams} == {Partition((2,)), Partition((1, 1))}


def test_cell_ball_invariants():
    cb = cell_ball(3, 7)
    for cls in cb.two_sided:
        assert len({lambda_partition(w) for w in cls}) == 1
    for cls in cb.left:
        assert len({right_descents(w) for w in cls}) == 1
    for cls in cb.right:
        assert len({right_descents(w.inverse()) for w in cls}) == 1
    covered = set().union(*cb.two_sided)
    assert covered == set(cb.elements)


def general_antichain(w: AffinePerm, js) -> bool:
    js = sorted(js)
    if js[-1] - w.n >= js[0]:
        return False
    return antichain(w, js)


@settings(max_examples=150, deadline=None)
@given(elements())
def test_chain_antichain_exclusion(w):
    n = w.n
    for i in range(1, n + 1):
        for j in range(i + 1, i + 3 * n):
            if j % n == i % n or w(i) < w(j):
                continue
            # {i, j} is a d-chain, so no shifted pair is a d-antichain
            for a, b in itertools.product(range(-2, 3), repeat=2):
                assert not general_antichain(w, [i + a * n, j + b * n])


@settings(max_examples=150, deadline=None)
@given(elements())
def test_antichain_rotation(w):
    n = w.n
    for k in range(2, n + 1):
        for js in itertools.combinations(range(1, n + 1), k):
            if antichain(w, js):
                assert general_antichain(w, [js[-1] - n, *js[:-1]])
