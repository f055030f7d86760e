"""Rational representation rings of products of general linear groups.

An irreducible of GL_m is labelled by a weakly decreasing integer vector.
Products reduce to partitions by twisting with a power of the determinant,
then use Littlewood-Richardson coefficients from lattice-word tableaux.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .canonical import DominantWeight
from .cells import Partition
from .errors import IndexOutOfRange, LengthMismatch, NegativeDegree, NotDominant, ShapeMismatch

Vector = tuple[int, ...]


def _is_dominant(x: Sequence[int]) -> bool:
    return all(x[t] >= x[t + 1] for t in range(len(x) - 1))


def _check_dominant(x: Sequence[int]) -> Vector:
    x = tuple(int(v) for v in x)
    if not _is_dominant(x):
        raise NotDominant(f"{list(x)} is not weakly decreasing")
    return x


@dataclass(frozen=True)
class GroupShape:
    lam: Partition
    classes: tuple[tuple[int, int], ...]  # (n_i, r_i)

    @classmethod
    def of(cls, lam: Partition) -> GroupShape:
        sizes, rows = lam.class_sizes(), lam.block_rows()
        mult = Counter(lam.dual().parts)
        if any(mult[r] != m for m, r in zip(sizes, rows)):
            raise AssertionError(f"class sizes of {lam} disagree with the multiplicities of its dual")
        return cls(lam, tuple(zip(sizes, rows)))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.classes)

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.classes)

    def __len__(self) -> int:
        return len(self.classes)


class RepRingElement:
    """Finite Z-combination of irreducibles, keyed by DominantWeight."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[DominantWeight, int] | Iterable[tuple[DominantWeight, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[DominantWeight, int] = {}
        for x, c in items:
            acc[x] = acc.get(x, 0) + c
        self.terms = {x: c for x, c in acc.items() if c}

    @classmethod
    def irreducible(cls, x: DominantWeight) -> RepRingElement:
        return cls({x: 1})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RepRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: RepRingElement) -> RepRingElement:
        return RepRingElement(itertools.chain(self.terms.items(), other.terms.items()))

    def __mul__(self, other: RepRingElement) -> RepRingElement:
        out: dict[DominantWeight, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                for c, m in product_weights(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * m
        return RepRingElement(out)

    def multiplicity(self, x: DominantWeight) -> int:
        return self.terms.get(x, 0)

    def items(self) -> list[tuple[DominantWeight, int]]:
        return sorted(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> list[dict]:
        return [{"weight": x.to_json(), "multiplicity": c} for x, c in self.items()]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: list[dict]) -> RepRingElement:
        return cls((DominantWeight.of(t["weight"]), int(t["multiplicity"])) for t in data)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*V{x}" if c != 1 else f"V{x}" for x, c in self.items())
        return f"RepRingElement({body or '0'})"


def _single(terms: Mapping[Vector, int]) -> RepRingElement:
    return RepRingElement({DominantWeight((x,)): c for x, c in terms.items()})


# ---------------------------------------------------------------------------
# Pieri rules


def wedge_terms(i: int, x: Sequence[int]) -> dict[Vector, int]:
    x = _check_dominant(x)
    m = len(x)
    if not 1 <= i <= m:
        raise IndexOutOfRange(f"exterior power {i} outside 1..{m}")
    out = {}
    for subset in itertools.combinations(range(m), i):
        y = list(x)
        for t in subset:
            y[t] += 1
        if _is_dominant(y):
            out[tuple(y)] = 1
    return out


def pieri_wedge(i: int, x: Sequence[int]) -> RepRingElement:
    """V(x_i) (x) V(x): add 1 on an i-subset, keep the dominant results."""
    return _single(wedge_terms(i, x))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def sym_terms(a: int, x: Sequence[int]) -> dict[Vector, int]:
    x = _check_dominant(x)
    if a < 0:
        raise NegativeDegree(f"symmetric power {a} is negative")
    m = len(x)
    out: dict[Vector, int] = {}
    for comp in _compositions(a, m):
        ok = True
        for i in range(m):
            y = [v + (comp[t] if t >= i else 0) for t, v in enumerate(x)]
            if not _is_dominant(y):
                ok = False
                break
        if ok:
            y = tuple(v + c for v, c in zip(x, comp))
            out[y] = out.get(y, 0) + 1
    return out


def pieri_sym(a: int, x: Sequence[int]) -> RepRingElement:
    """V(x_1^a) (x) V(x) through suffix-dominant compositions of a."""
    return _single(sym_terms(a, x))


# ---------------------------------------------------------------------------
# Littlewood-Richardson


def _horizontal_strips(
    shape: tuple[int, ...], k: int, max_rows: int, first_row: int = 0
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Ways to add a horizontal k-strip in rows >= first_row; yields (new shape, boxes added per row)."""
    rows = len(shape)
    ext = list(shape) + [0] * (min(rows + 1, max_rows) - rows)

    def rec(r: int, left: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if r == len(ext):
            if left == 0:
                yield tuple(acc)
            return
        if r < first_row:
            cap = 0
        else:
            cap = left if r == 0 else min(left, shape[r - 1] - ext[r] if r - 1 < rows else 0)
        for add in range(cap, -1, -1):
            yield from rec(r + 1, left - add, acc + [add])

    for adds in rec(0, k, []):
        new = tuple(v + a for v, a in zip(ext, adds))
        yield tuple(v for v in new if v), adds


@lru_cache(maxsize=None)
def lr_coefficients(alpha: tuple[int, ...], beta: tuple[int, ...], max_rows: int) -> dict[tuple[int, ...], int]:
    """{nu: c^nu_{alpha,beta}} over nu with at most max_rows rows.

    Labels 1, 2, ... are added as horizontal strips of sizes beta_1, beta_2, ...
    The reverse reading word (rows top to bottom, right to left) must be a
    lattice word; for labels L and L+1 that only involves the per-row counts
    of those two labels, so a state is (shape, per-row counts of the last
    label) and equal states are merged with multiplicity.
    """
    alpha = tuple(v for v in alpha if v)
    beta = tuple(v for v in beta if v)
    if len(alpha) > max_rows or len(beta) > max_rows:
        return {}
    if sum(beta) > sum(alpha):
        # c^nu_{alpha,beta} is symmetric; fewer strips is cheaper
        return lr_coefficients(beta, alpha, max_rows)
    states: dict[tuple[tuple[int, ...], tuple[int, ...] | None], int] = {(alpha, None): 1}
    for label, k in enumerate(beta):
        nxt: dict = {}
        for (shape, prev), mult in states.items():
            # a lattice word puts label L (0-based) in row L or lower
            for new, adds in _horizontal_strips(shape, k, max_rows, first_row=label):
                if prev is not None and not _lattice_step(prev, adds):
                    continue
                key = (new, adds)
                nxt[key] = nxt.get(key, 0) + mult
        states = nxt
    out: dict[tuple[int, ...], int] = {}
    for (shape, _), mult in states.items():
        out[shape] = out.get(shape, 0) + mult
    return out


def _lattice_step(prev: tuple[int, ...], adds: tuple[int, ...]) -> bool:
    """Row r reads its new labels before its old ones, so new counts through row r
    must not exceed old counts through row r - 1."""
    seen_new = seen_old = 0
    for r, a in enumerate(adds):
        seen_new += a
        if seen_new > seen_old:
            return False
        seen_old += prev[r] if r < len(prev) else 0
    return True


def lr_terms(x: Sequence[int], y: Sequence[int]) -> dict[Vector, int]:
    x, y = _check_dominant(x), _check_dominant(y)
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} and {len(y)} differ")
    m = len(x)
    if m == 0:
        return {(): 1}
    kx, ky = x[-1], y[-1]
    alpha = tuple(v - kx for v in x)
    beta = tuple(v - ky for v in y)
    out = {}
    for nu, c in lr_coefficients(alpha, beta, m).items():
        full = tuple(nu) + (0,) * (m - len(nu))
        out[tuple(v + kx + ky for v in full)] = c
    return out


def lr_product(x: Sequence[int], y: Sequence[int]) -> RepRingElement:
    return _single(lr_terms(x, y))


def product_weights(a: DominantWeight, b: DominantWeight) -> dict[DominantWeight, int]:
    if a.shape != b.shape:
        raise ShapeMismatch(f"weights of shapes {a.shape} and {b.shape}")
    per_class = [list(lr_terms(x, y).items()) for x, y in zip(a.classes, b.classes)]
    out = {}
    for combo in itertools.product(*per_class):
        w = DominantWeight(tuple(v for v, _ in combo))
        mult = 1
        for _, c in combo:
            mult *= c
        out[w] = mult
    return out


def product_Flambda(a: DominantWeight, b: DominantWeight, shape: GroupShape | None = None) -> RepRingElement:
    if shape is not None and (a.shape != shape.sizes or b.shape != shape.sizes):
        raise ShapeMismatch(f"weights {a}, {b} do not fit class sizes {shape.sizes}")
    return RepRingElement(product_weights(a, b))


def dual_weight(x: DominantWeight) -> DominantWeight:
    return DominantWeight(tuple(tuple(-v for v in reversed(c)) for c in x.classes))


def restrict_sl(x: DominantWeight, shape: GroupShape) -> DominantWeight:
    """Representative of x modulo (r_1,...,r_1; ...; r_p,...,r_p).

    The anchor is the last component of the last class, moved into [0, r_p).
    """
    if x.shape != shape.sizes:
        raise ShapeMismatch(f"weight shape {x.shape} does not match {shape.sizes}")
    r_last = shape.rows[-1]
    k = x.classes[-1][-1] // r_last
    return DominantWeight(tuple(tuple(v - k * r for v in c) for c, r in zip(x.classes, shape.rows)))


def sl_equivalent(x: DominantWeight, y: DominantWeight, shape: GroupShape) -> bool:
    return restrict_sl(x, shape) == restrict_sl(y, shape)


def is_pgl_weight(x: DominantWeight) -> bool:
    return x.total() == 0
