import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_cells.affine_weyl import (
    AffinePerm,
    dominant_generator,
    identity,
    left_descents,
    omega,
    right_descents,
    simple,
    win_shift,
)
from affine_cells.canonical import (
    CanonicalElement,
    DominantWeight,
    _greedy_passes,
    decrement,
    epsilon,
    epsilon_prime_report,
    from_epsilon,
    fundamental_element,
    fundamental_weight,
    greedy_epsilon_grid,
    grid_offsets,
    increment,
    is_member,
    m_element,
    m_element_by_word,
    m_of_dominant,
    parse_weight,
    split_rows,
    u_by_product,
    u_window,
    w_lambda,
)
from affine_cells.cells import Partition, ball, lambda_partition, partitions_of
from affine_cells.errors import (
    EmptySubset,
    IndexOutOfRange,
    NotAdmissible,
    NotDominant,
    NotMember,
    ParseError,
    PreconditionViolated,
    ShapeMismatch,
)


def weight(lam, rng, lo=-3, hi=3):
    return DominantWeight(tuple(tuple(sorted((rng.randint(lo, hi) for _ in range(m)), reverse=True)) for m in lam.class_sizes()))


def member_by_lengths(u: AffinePerm, lam: Partition) -> bool:
    """The three defining conditions, checked with lengths only."""
    d = w_lambda(lam).perm
    ld = d.length()
    ui = u.inverse()
    return (
        u.length() == (u * d).length() + ld
        and ui.length() == (ui * d).length() + ld
        and lambda_partition(u) == lam
    )


weights_lam = st.sampled_from([p for n in range(2, 7) for p in partitions_of(n)])


# --- w_lambda and membership ---------------------------------------------


def test_w_lambda_examples():
    assert w_lambda(Partition((2, 1))).window == (2, 1, 3)
    for n in range(2, 8):
        assert w_lambda(Partition((1,) * n)).perm == identity(n)
        w0 = w_lambda(Partition((n,)))
        assert w0.window == tuple(range(n, 0, -1))
        assert w0.length() == n * (n - 1) // 2
    lam = Partition((3, 2, 2))
    assert w_lambda(lam).length() == 3 + 1 + 1


def test_membership_examples():
    for n in range(2, 6):
        for lam in partitions_of(n):
            d = w_lambda(lam).perm
            assert is_member(d, lam)
            for k in range(-2, 3):
                assert is_member(omega(n) ** (k * n) * d, lam)
    assert not is_member(AffinePerm((6, 3, 10, 7, 8, 11)), Partition((2, 2, 1, 1)))
    assert not is_member(identity(3), Partition((3,)))
    with pytest.raises(NotMember):
        epsilon(identity(3), Partition((2, 1)))


@pytest.mark.parametrize("n,L", [(3, 8), (4, 6)])
def test_membership_matches_length_conditions(n, L):
    for x in ball(n, L):
        for k in range(n):
            u = AffinePerm(win_shift(x, k))
            for lam in partitions_of(n):
                assert is_member(u, lam) == member_by_lengths(u, lam)


# --- greedy grid ---------------------------------------------------------


def test_golden_grid():
    lam = Partition((4, 3, 2, 2))
    grid = greedy_epsilon_grid([[11, 7, 4, 3], [12, 6, 5], [10, 8], [14, 9]], lam)
    assert grid[(4, 3, 1)] == 14 and grid[(1, 3, 1)] == 4
    assert grid[(2, 2, 1)] == 12 and grid[(1, 1, 1)] == 7
    assert len(grid) == 11


def test_grid_on_w_lambda():
    for n in range(2, 7):
        for lam in partitions_of(n):
            d = w_lambda(lam)
            grid = greedy_epsilon_grid(split_rows(d.window, lam), lam)
            assert sorted(grid.values()) == list(range(1, n + 1))
            assert epsilon(d) == DominantWeight.zero(lam)


def test_not_admissible():
    lam = Partition((2, 1))
    with pytest.raises(NotAdmissible, match="row lengths"):
        greedy_epsilon_grid([[2, 1], [3, 4]], lam)
    with pytest.raises(NotAdmissible, match="strictly decreasing"):
        greedy_epsilon_grid([[1, 2], [3]], lam)
    with pytest.raises(NotAdmissible, match="not above"):
        greedy_epsilon_grid([[3, 2], [1]], lam)
    with pytest.raises(NotAdmissible, match="distinct"):
        greedy_epsilon_grid([[3, 2], [3]], lam)


@settings(max_examples=200, deadline=None)
@given(weights_lam, st.randoms(use_true_random=False))
def test_grid_partition_and_antichains(lam, rng):
    w = from_epsilon(lam, weight(lam, rng))
    rows = split_rows(w.window, lam)
    grid = greedy_epsilon_grid(rows, lam)
    assert sorted(grid.values()) == sorted(w.window)
    e = lam.partial_sums()
    for _, picks in _greedy_passes(rows, lam):
        positions = sorted(e[k] + c + 1 for k, c in picks)
        vals = [w.perm(p) for p in positions]
        # the pass is an antichain: values increase along positions, within one period
        assert all(a < b for a, b in zip(vals, vals[1:]))
        assert vals[-1] - w.n < vals[0]
        assert positions[-1] - w.n < positions[0]


@settings(max_examples=200, deadline=None)
@given(weights_lam, st.randoms(use_true_random=False))
def test_grid_offsets_monotone(lam, rng):
    w = from_epsilon(lam, weight(lam, rng))
    off = grid_offsets(w)
    for (k, i, j), v in off.items():
        nxt = off.get((k, i, j + 1))
        if nxt is not None:
            assert v >= nxt


def test_offset_average_diagnostic_reports_only():
    rng = random.Random(5)
    agree = total = 0
    for lam in partitions_of(5):
        for _ in range(20):
            w = from_epsilon(lam, weight(lam, rng))
            rep = epsilon_prime_report(w)
            x = epsilon(w)
            assert sorted(rep) == [(i, j) for i, c in enumerate(x.classes, 1) for j in range(1, len(c) + 1)]
            for (i, j), (eps, avg) in rep.items():
                assert eps == x.classes[i - 1][j - 1]
                agree += eps == avg
                total += 1
    assert total > 0 and 0 <= agree <= total
    assert all(e == a == 0 for e, a in epsilon_prime_report(w_lambda(Partition((3, 2)))).values())


# --- epsilon -------------------------------------------------------------


def test_epsilon_longest_cell():
    rng = random.Random(1)
    for n in range(2, 6):
        lam = Partition((n,))
        w0 = w_lambda(lam).perm
        for _ in range(30):
            a = [rng.randint(0, 3) for _ in range(n - 1)] + [rng.randint(-3, 3)]
            x = identity(n)
            for i, ai in enumerate(a, 1):
                x = x * dominant_generator(n, i) ** ai
            w = w0 * x
            expected = tuple(sum(a[i:]) for i in range(n))
            assert epsilon(w, lam) == DominantWeight((expected,))
            assert from_epsilon(lam, DominantWeight((expected,))).perm == w


def test_epsilon_hook_cell():
    for n in range(3, 7):
        lam = Partition((2,) + (1,) * (n - 2))
        om, s1 = omega(n), simple(n, 1)
        for a in range(-2, 3):
            for b in range(0, 4):
                w = om ** (a * n) * s1 * (om * s1) ** b
                assert epsilon(w, lam) == DominantWeight(((a,), (a * (n - 1) + b,)))


@settings(max_examples=300, deadline=None)
@given(weights_lam, st.randoms(use_true_random=False))
def test_bijection_duality_shift(lam, rng):
    x = weight(lam, rng)
    w = from_epsilon(lam, x)
    assert epsilon(w.perm, lam) == x
    assert epsilon(w.inverse()) == DominantWeight(tuple(tuple(-v for v in reversed(c)) for c in x.classes))
    n = lam.size
    for k in (-1, 2):
        shifted = CanonicalElement(omega(n) ** (k * n) * w.perm, lam)
        rows = lam.block_rows()
        assert epsilon(shifted) == DominantWeight(tuple(tuple(v + k * r for v in c) for c, r in zip(x.classes, rows)))
    if min(x.flat(), default=0) >= 0:
        assert all(v > 0 for v in w.window)


def test_fill_order_independence():
    rng = random.Random(9)
    for lam in [p for n in range(2, 7) for p in partitions_of(n)]:
        for _ in range(100 // 8 + 1):
            x = weight(lam, rng)
            assert from_epsilon(lam, x) == from_epsilon(lam, x, extra_shift=1)


def test_from_epsilon_errors():
    lam = Partition((2, 1))
    assert from_epsilon(lam, DominantWeight.zero(lam)) == w_lambda(lam)
    with pytest.raises(NotDominant):
        from_epsilon(Partition((2,)), DominantWeight.of([[0, 1]]))
    with pytest.raises(ShapeMismatch):
        from_epsilon(lam, DominantWeight.of([[0, 0]]))


# --- unit steps ----------------------------------------------------------


def test_increment_base():
    for n in range(2, 8):
        for lam in partitions_of(n):
            e = lam.partial_sums()
            rows = lam.block_rows()
            u = increment(w_lambda(lam), 1, 1)
            for k in range(2, rows[0] + 1):
                assert u.perm(e[k - 2] + 1) == e[k]
            assert u.perm(e[rows[0] - 1] + 1) == lam[0] + n
            assert epsilon(u) == fundamental_weight(lam, 1, 1)
            assert decrement(u, 1, 1) == w_lambda(lam)
            with pytest.raises(PreconditionViolated):
                decrement(w_lambda(lam), 1, 1)


def test_random_unit_steps():
    rng = random.Random(17)
    lams = [p for n in range(2, 7) for p in partitions_of(n)]
    done = 0
    while done < 500:
        lam = rng.choice(lams)
        x = weight(lam, rng, lo=0, hi=3)
        w = from_epsilon(lam, x)
        comps = [(i, j) for i, c in enumerate(x.classes, 1) for j in range(1, len(c) + 1)]
        nonzero = [ij for ij in comps if x.classes[ij[0] - 1][ij[1] - 1]]
        last = nonzero[-1] if nonzero else None
        # increment at the last nonzero component or any later one keeping dominance
        options = [ij for ij in comps if last is None or ij >= last]
        i, j = rng.choice(options)
        cls = list(x.classes[i - 1])
        if j > 1 and cls[j - 2] == cls[j - 1]:
            with pytest.raises(PreconditionViolated):
                increment(w, i, j)
            continue
        u = increment(w, i, j)
        assert epsilon(u.perm, lam) == bump(x, i, j, 1)
        assert decrement(u, i, j) == w
        if last is not None:
            v = decrement(w, *last)
            assert epsilon(v.perm, lam) == bump(x, *last, -1)
            assert increment(v, *last) == w
        done += 1


def bump(x, i, j, d):
    """x with d added to component (i, j)."""
    return DominantWeight(
        tuple(tuple(v + d if (a, b) == (i, j) else v for b, v in enumerate(c, 1)) for a, c in enumerate(x.classes, 1))
    )


def test_step_preconditions():
    lam = Partition((2, 1, 1))
    w = from_epsilon(lam, DominantWeight.of([[0], [2]]))
    with pytest.raises(PreconditionViolated):
        increment(w, 1, 1)
    with pytest.raises(PreconditionViolated):
        increment(from_epsilon(lam, DominantWeight.of([[-1], [0]])), 2, 1)
    with pytest.raises(IndexOutOfRange):
        increment(w, 3, 1)


# --- fundamental elements -------------------------------------------------


def test_fundamental_elements():
    for n in range(2, 8):
        for lam in partitions_of(n):
            d = w_lambda(lam)
            rows = lam.block_rows()
            for i, m in enumerate(lam.class_sizes(), 1):
                for j in range(1, m + 1):
                    u = AffinePerm(u_window(lam, i, j))
                    assert u.window == u_by_product(lam, i, j)
                    f = fundamental_element(lam, i, j)
                    assert f.perm == u * d.perm
                    assert f == from_epsilon(lam, fundamental_weight(lam, i, j))
                    assert epsilon(f.perm, lam) == fundamental_weight(lam, i, j)
                    assert u.length() == (n - rows[i - 1] * j) * j
                    assert f.length() == u.length() + d.length()
    with pytest.raises(IndexOutOfRange):
        fundamental_element(Partition((2, 1)), 1, 2)


# --- shortest double coset representatives --------------------------------


def finite_group(n):
    out = {identity(n)}
    frontier = set(out)
    while frontier:
        nxt = {w * simple(n, k) for w in frontier for k in range(1, n)} - out
        out |= nxt
        frontier = nxt
    return out


def shortest_in_double_coset(x, group):
    return min((a * x * b for a in group for b in group), key=lambda w: (w.length(), w.window))


def test_m_elements_examples():
    for n in range(2, 7):
        for i in range(1, n):
            assert m_element(n, [i]) == omega(n) ** i
        xN = identity(n)
        for i in range(1, n):
            xN = xN * dominant_generator(n, i)
        assert m_element(n, range(1, n)) == xN * w_lambda(Partition((n,))).perm
        for size in range(1, n):
            for sub in itertools.combinations(range(1, n), size):
                m = m_element(n, sub)
                assert m == m_element_by_word(n, sub)
                assert left_descents(m) == right_descents(m) <= {0}
    with pytest.raises(EmptySubset):
        m_element(4, [])
    with pytest.raises(IndexOutOfRange):
        m_element(4, [4])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_m_of_dominant_is_shortest(n):
    group = finite_group(n)
    rng = random.Random(n)
    for _ in range(15):
        a = [rng.randint(0, 2) for _ in range(n - 1)] + [rng.randint(-2, 2)]
        x = identity(n)
        for i, ai in enumerate(a, 1):
            x = x * dominant_generator(n, i) ** ai
        m = m_of_dominant(n, a)
        assert m == shortest_in_double_coset(x, group)
        assert left_descents(m) == right_descents(m) <= {0}


# --- text format ---------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(weights_lam, st.randoms(use_true_random=False))
def test_weight_text_round_trip(lam, rng):
    x = weight(lam, rng)
    assert parse_weight(str(x)) == x
    assert parse_weight(str(x.to_json())) == x


def test_weight_format_examples():
    assert str(DominantWeight.of([[0], [1], [1, 0]])) == "(0)(1)(1,0)"
    for bad in ("(1,x)", "0,1", "[[0,1"):
        with pytest.raises(ParseError):
            parse_weight(bad)
    with pytest.raises(NotDominant):
        parse_weight("(0,1)")
