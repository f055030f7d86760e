import itertools
import math
import random
from collections import Counter
from functools import lru_cache

import pytest

from affine_cells.canonical import DominantWeight
from affine_cells.cells import Partition, partitions_of
from affine_cells.errors import IndexOutOfRange, LengthMismatch, NegativeDegree, NotDominant, ShapeMismatch
from affine_cells.repring import (
    GroupShape,
    RepRingElement,
    dual_weight,
    is_pgl_weight,
    lr_product,
    lr_terms,
    pieri_sym,
    pieri_wedge,
    product_Flambda,
    restrict_sl,
    sl_equivalent,
    sym_terms,
    wedge_terms,
)

# --- Schur polynomial oracle ---------------------------------------------


@lru_cache(maxsize=None)
def schur(shape: tuple[int, ...], m: int) -> dict[tuple[int, ...], int]:
    """s_shape(x_1..x_m) as {exponent vector: coefficient}, summed over semistandard tableaux."""
    shape = tuple(v for v in shape if v)
    if len(shape) > m:
        return {}
    cells = [(r, c) for r, row in enumerate(shape) for c in range(row)]
    out: Counter = Counter()

    def fill(idx: int, tab: dict):
        if idx == len(cells):
            exp = [0] * m
            for v in tab.values():
                exp[v - 1] += 1
            out[tuple(exp)] += 1
            return
        r, c = cells[idx]
        lo = 1
        if c:
            lo = max(lo, tab[(r, c - 1)])
        if r:
            lo = max(lo, tab[(r - 1, c)] + 1)
        for v in range(lo, m + 1):
            tab[(r, c)] = v
            fill(idx + 1, tab)
        tab.pop((r, c), None)

    fill(0, {})
    return dict(out)


def poly_mul(a, b):
    out: Counter = Counter()
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def expand_in_schur(p: dict, m: int) -> dict[tuple[int, ...], int]:
    """Peel the lexicographically largest monomial, which is dominant, until nothing remains."""
    p = dict(p)
    out = {}
    while p:
        lead = max(p)
        c = p[lead]
        out[lead] = c
        for e, v in schur(lead, m).items():
            p[e] = p.get(e, 0) - c * v
            if not p[e]:
                del p[e]
    return out


def partitions_upto(total: int, rows: int):
    for size in range(total + 1):
        for p in partitions_of(size) if size else [Partition(())]:
            if len(p) <= rows:
                yield tuple(p.parts) + (0,) * (rows - len(p))


def test_schur_oracle_sanity():
    # s_(1) s_(1) = s_(2) + s_(1,1) in two variables, and s_(1,1,1) is x1 x2 x3
    assert expand_in_schur(poly_mul(schur((1,), 2), schur((1,), 2)), 2) == {(2, 0): 1, (1, 1): 1}
    assert schur((1, 1, 1), 3) == {(1, 1, 1): 1}
    assert sum(schur((2, 1), 3).values()) == 8


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lr_matches_schur_oracle(m):
    shapes = list(partitions_upto(4, m))
    for a, b in itertools.product(shapes, shapes):
        expected = expand_in_schur(poly_mul(schur(a, m), schur(b, m)), m)
        assert lr_terms(a, b) == expected


# --- Pieri rules ---------------------------------------------------------


def test_pieri_examples():
    assert pieri_wedge(1, (0, 0)) == RepRingElement.irreducible(DominantWeight(((1, 0),)))
    assert wedge_terms(2, (1, 0, 0)) == {(2, 1, 0): 1, (1, 1, 1): 1}
    assert sym_terms(2, (1, 0)) == {(3, 0): 1, (2, 1): 1}
    assert pieri_sym(1, (2, 1, 1)) == pieri_wedge(1, (2, 1, 1))
    for m in range(1, 6):
        x = tuple(range(m - 1, -1, -1))
        for i in range(1, m + 1):
            assert len(wedge_terms(i, x)) == math.comb(m, i)
    with pytest.raises(IndexOutOfRange):
        wedge_terms(0, (1, 0))
    with pytest.raises(NegativeDegree):
        sym_terms(-1, (1, 0))
    with pytest.raises(NotDominant):
        wedge_terms(1, (0, 1))


def test_pieri_sym_matches_lr_with_negatives():
    rng = random.Random(4)
    for _ in range(200):
        m = rng.randint(1, 4)
        x = tuple(sorted((rng.randint(-3, 3) for _ in range(m)), reverse=True))
        a = rng.randint(0, 3)
        assert sym_terms(a, x) == lr_terms(x, (a,) + (0,) * (m - 1))


# --- LR products ---------------------------------------------------------


def random_vec(rng, m, lo=-3, hi=3):
    return tuple(sorted((rng.randint(lo, hi) for _ in range(m)), reverse=True))


def test_lr_examples():
    assert lr_product((1, 0), (1, 0)) == RepRingElement({DominantWeight(((2, 0),)): 1, DominantWeight(((1, 1),)): 1})
    assert lr_terms((0, -1), (2, -3)) == {(2, -4): 1, (1, -3): 1}
    for x in [(3, 1, 0), (2, 2, -1), (0,)]:
        assert lr_terms(x, (0,) * len(x)) == {x: 1}
    with pytest.raises(LengthMismatch):
        lr_terms((1, 0), (1,))


def test_ring_laws():
    rng = random.Random(8)
    for _ in range(200):
        m = rng.randint(1, 4)
        x, y, z = (random_vec(rng, m) for _ in range(3))
        X, Y, Z = (RepRingElement.irreducible(DominantWeight((v,))) for v in (x, y, z))
        assert X * Y == Y * X
        assert (X * Y) * Z == X * (Y * Z)
        assert all(c > 0 for _, c in (X * Y).items())


def test_det_twist():
    rng = random.Random(6)
    for _ in range(200):
        m = rng.randint(1, 4)
        x, y = random_vec(rng, m), random_vec(rng, m)
        k = rng.randint(-3, 3)
        twisted = lr_terms(tuple(v + k for v in x), y)
        assert twisted == {tuple(v + k for v in nu): c for nu, c in lr_terms(x, y).items()}


def test_dual_reciprocity():
    rng = random.Random(12)
    for _ in range(150):
        m = rng.randint(1, 3)
        a, b = random_vec(rng, m), random_vec(rng, m)
        da = tuple(-v for v in reversed(a))
        for c, mult in lr_terms(a, b).items():
            assert lr_terms(da, c).get(b, 0) == mult


# --- F_lambda ------------------------------------------------------------


def test_group_shape():
    shape = GroupShape.of(Partition((4, 3, 2, 2)))
    assert shape.classes == ((1, 1), (1, 2), (2, 4))
    for n in range(1, 9):
        for lam in partitions_of(n):
            s = GroupShape.of(lam)
            assert len(s) == len(set(lam.parts))


def test_product_Flambda():
    lam = Partition((2, 1, 1))
    shape = GroupShape.of(lam)
    a, b = DominantWeight.of([[2], [-1]]), DominantWeight.of([[1], [5]])
    assert product_Flambda(a, b, shape) == RepRingElement({DominantWeight.of([[3], [4]]): 1})
    zero = DominantWeight.zero(Partition((3, 2)))
    x = DominantWeight.of([[1], [2, 0]])
    assert product_Flambda(zero, x) == RepRingElement.irreducible(x)
    with pytest.raises(ShapeMismatch):
        product_Flambda(a, x)
    with pytest.raises(ShapeMismatch):
        product_Flambda(x, x, shape)


def test_serialization():
    x = DominantWeight.of([[1], [2, 0]])
    elem = RepRingElement.irreducible(x) * RepRingElement.irreducible(x)
    assert RepRingElement.from_json(elem.to_json()) == elem
    assert elem.dumps().startswith("[{")
    assert elem.multiplicity(DominantWeight.of([[2], [4, 0]])) == 1


def test_duals_and_sublattices():
    assert dual_weight(DominantWeight.of([[0, 0]])) == DominantWeight.of([[0, 0]])
    assert dual_weight(DominantWeight.of([[2, 0]])) == DominantWeight.of([[0, -2]])
    rng = random.Random(2)
    for n in range(2, 7):
        for lam in partitions_of(n):
            shape = GroupShape.of(lam)
            for _ in range(10):
                x = DominantWeight(tuple(random_vec(rng, m) for m in shape.sizes))
                k = rng.randint(-3, 3)
                y = DominantWeight(tuple(tuple(v + k * r for v in c) for c, r in zip(x.classes, shape.rows)))
                assert sl_equivalent(x, y, shape)
                rep = restrict_sl(x, shape)
                assert 0 <= rep.classes[-1][-1] < shape.rows[-1]
                assert restrict_sl(rep, shape) == rep
                assert dual_weight(dual_weight(x)) == x
    assert is_pgl_weight(DominantWeight.of([[0]]))
    assert is_pgl_weight(DominantWeight.of([[3, -3]]))
    assert not is_pgl_weight(DominantWeight.of([[1, 0]]))
