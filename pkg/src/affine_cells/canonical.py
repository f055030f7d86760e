"""The intersection of the canonical left cell of lambda with its inverse.

Members are parametrized by dominant weights of GL_{n_1} x ... x GL_{n_p}.
Window positions are grouped into rows: row k holds the positions
a_{k,l} = e_{k-1} + l for 1 <= l <= lambda_k, where e_k are the partial sums
of lambda.  The rows r_1 < ... < r_p that end a run of equal parts label the
weight classes; class i has n_i components and antichains of length r_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .affine_weyl import (
    AffinePerm,
    Window,
    dominant_generator,
    identity,
    omega,
    win_inv,
    win_left_descents,
    win_length,
    win_mul,
    win_right_descents,
    win_right_simple,
    win_shift,
)
from .cells import Partition, lambda_partition
from .errors import (
    EmptySubset,
    IndexOutOfRange,
    NotAdmissible,
    NotDominant,
    NotMember,
    ParseError,
    PreconditionViolated,
    ShapeMismatch,
)

# ---------------------------------------------------------------------------
# dominant weights


@dataclass(frozen=True, order=True)
class DominantWeight:
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for c in self.classes:
            if any(c[t] < c[t + 1] for t in range(len(c) - 1)):
                raise NotDominant(f"class {list(c)} is not weakly decreasing")

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]]) -> DominantWeight:
        return cls(tuple(tuple(int(x) for x in c) for c in classes))

    @classmethod
    def zero(cls, lam: Partition) -> DominantWeight:
        return cls(tuple((0,) * m for m in lam.class_sizes()))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def flat(self) -> tuple[int, ...]:
        return tuple(x for c in self.classes for x in c)

    def total(self) -> int:
        return sum(self.flat())

    def __add__(self, other: DominantWeight) -> DominantWeight:
        if self.shape != other.shape:
            raise ShapeMismatch(f"weights of shapes {self.shape} and {other.shape}")
        return DominantWeight(tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(self.classes, other.classes)))

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.classes]

    def __str__(self) -> str:
        return format_weight(self)


def format_weight(x: DominantWeight) -> str:
    return "".join("(" + ",".join(str(v) for v in c) + ")" for c in x.classes)


def parse_weight(text: str) -> DominantWeight:
    s = text.strip()
    if s.startswith("["):
        try:
            data = json.loads(s)
            return DominantWeight.of(data)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"bad weight {text!r}") from exc
    s = s.replace(" ", "")
    if not s.startswith("(") or not s.endswith(")"):
        raise ParseError(f"bad weight {text!r}")
    try:
        classes = [tuple(int(v) for v in chunk.split(",")) for chunk in s[1:-1].split(")(")]
    except ValueError as exc:
        raise ParseError(f"bad weight {text!r}") from exc
    return DominantWeight(tuple(classes))


def fundamental_weight(lam: Partition, i: int, j: int) -> DominantWeight:
    """theta_{ij}: ones in the first j components of class i."""
    sizes = lam.class_sizes()
    _check_index(lam, i, j)
    return DominantWeight(tuple(tuple(1 if a == i and b <= j else 0 for b in range(1, m + 1)) for a, m in enumerate(sizes, 1)))


def _check_index(lam: Partition, i: int, j: int) -> None:
    sizes = lam.class_sizes()
    if not 1 <= i <= len(sizes) or not 1 <= j <= sizes[i - 1]:
        raise IndexOutOfRange(f"component ({i},{j}) outside the class sizes {sizes}")


def _check_shape(lam: Partition, x: DominantWeight) -> None:
    if x.shape != lam.class_sizes():
        raise ShapeMismatch(f"weight shape {x.shape} does not match class sizes {lam.class_sizes()} of {lam}")


# ---------------------------------------------------------------------------
# members


@dataclass(frozen=True, order=True)
class CanonicalElement:
    perm: AffinePerm
    lam: Partition

    @property
    def window(self) -> Window:
        return self.perm.window

    @property
    def n(self) -> int:
        return self.perm.n

    def length(self) -> int:
        return self.perm.length()

    def inverse(self) -> CanonicalElement:
        return CanonicalElement(self.perm.inverse(), self.lam)

    def __str__(self) -> str:
        return str(self.perm)


def _rows(lam: Partition) -> list[range]:
    """0-based window indices of each row."""
    e = lam.partial_sums()
    return [range(e[k], e[k + 1]) for k in range(len(lam))]


def w_lambda_window(lam: Partition) -> Window:
    e = lam.partial_sums()
    out = []
    for k in range(1, len(lam) + 1):
        out.extend(e[k] - l + 1 for l in range(1, lam[k - 1] + 1))
    return tuple(out)


def w_lambda(lam: Partition) -> CanonicalElement:
    return CanonicalElement(AffinePerm(w_lambda_window(lam)), lam)


def _blocks_decrease(w: Window, lam: Partition) -> bool:
    for row in _rows(lam):
        for a in range(row.start, row.stop - 1):
            if w[a] < w[a + 1]:
                return False
    return True


def is_member(w: AffinePerm, lam: Partition) -> bool:
    if lam.size != w.n:
        return False
    win = w.window
    if not _blocks_decrease(win, lam) or not _blocks_decrease(win_inv(win), lam):
        return False
    return lambda_partition(w) == lam


def as_member(w: AffinePerm, lam: Partition) -> CanonicalElement:
    if not is_member(w, lam):
        raise NotMember(f"{w} is not in the canonical intersection for lambda={lam}")
    return CanonicalElement(w, lam)


# ---------------------------------------------------------------------------
# greedy antichain grid


def split_rows(values: Sequence[int], lam: Partition) -> list[list[int]]:
    return [[values[a] for a in row] for row in _rows(lam)]


def check_admissible(rows: Sequence[Sequence[int]], lam: Partition) -> None:
    if [len(r) for r in rows] != list(lam.parts):
        raise NotAdmissible(f"row lengths {[len(r) for r in rows]} do not match {lam}")
    flat = [x for r in rows for x in r]
    if len(set(flat)) != len(flat):
        raise NotAdmissible("components are not pairwise distinct")
    for k, r in enumerate(rows, 1):
        for t in range(len(r) - 1):
            if r[t] <= r[t + 1]:
                raise NotAdmissible(f"row {k} is not strictly decreasing at column {t + 1}")
    for i in range(1, len(rows)):
        for h in range(i):
            off = lam[h] - lam[i]
            for j in range(lam[i]):
                if rows[i][j] <= rows[h][off + j]:
                    raise NotAdmissible(
                        f"x[{i + 1},{j + 1}]={rows[i][j]} is not above x[{h + 1},{off + j + 1}]={rows[h][off + j]}"
                    )


def _greedy_passes(rows: Sequence[Sequence[int]], lam: Partition) -> list[tuple[int, list[tuple[int, int]]]]:
    """Passes as (class index, [(row, column) from the top row down to row 1]), 0-based."""
    block = {r - 1: i for i, r in enumerate(lam.block_rows())}
    used = [[False] * len(r) for r in rows]
    remaining = sum(len(r) for r in rows)
    out = []
    while remaining:
        top = max(
            ((rows[k][c], k, c) for k in range(len(rows)) for c in range(len(rows[k])) if not used[k][c]),
        )
        _, k, c = top
        if k not in block:
            raise NotAdmissible(f"greatest unused component lies in row {k + 1}, which ends no block")
        picks = [(k, c)]
        used[k][c] = True
        cur = rows[k][c]
        for kk in range(k - 1, -1, -1):
            best = None
            for cc, x in enumerate(rows[kk]):
                if not used[kk][cc] and x < cur and (best is None or x > rows[kk][best]):
                    best = cc
            if best is None:
                raise NotAdmissible(f"no unused component below {cur} in row {kk + 1}")
            used[kk][best] = True
            picks.append((kk, best))
            cur = rows[kk][best]
        remaining -= len(picks)
        out.append((block[k], picks))
    return out


def greedy_epsilon_grid(rows: Sequence[Sequence[int]], lam: Partition) -> dict[tuple[int, int, int], int]:
    """{(k, i, j): epsilon_{k,i,j}} with 1-based row k, class i and pass number j."""
    check_admissible(rows, lam)
    grid: dict[tuple[int, int, int], int] = {}
    count = [0] * len(lam.block_rows())
    for cls, picks in _greedy_passes(rows, lam):
        count[cls] += 1
        for k, c in picks:
            grid[(k + 1, cls + 1, count[cls])] = rows[k][c]
    return grid


def grid_weight(grid: dict[tuple[int, int, int], int], lam: Partition, n: int) -> tuple[tuple[int, ...], ...]:
    """Per class and pass, the sum of the window-copy indices (x - 1) // n."""
    sizes = lam.class_sizes()
    rows_of = lam.block_rows()
    classes = []
    for i, m in enumerate(sizes, 1):
        cls = []
        for j in range(1, m + 1):
            cls.append(sum((grid[(k, i, j)] - 1) // n for k in range(1, rows_of[i - 1] + 1)))
        classes.append(tuple(cls))
    return tuple(classes)


def _epsilon_raw(w: Window, lam: Partition) -> DominantWeight:
    rows = split_rows(w, lam)
    grid = greedy_epsilon_grid(rows, lam)
    classes = grid_weight(grid, lam, len(w))
    for c in classes:
        if any(c[t] < c[t + 1] for t in range(len(c) - 1)):
            raise AssertionError(f"greedy grid produced a non-dominant class {c} for {list(w)}")
    return DominantWeight(classes)


def epsilon(w: CanonicalElement | AffinePerm, lam: Partition | None = None) -> DominantWeight:
    if isinstance(w, CanonicalElement):
        perm, lam = w.perm, w.lam
    else:
        perm = w
        if lam is None:
            lam = lambda_partition(w)
        if not is_member(perm, lam):
            raise NotMember(f"{perm} is not in the canonical intersection for lambda={lam}")
    return _epsilon_raw(perm.window, lam)


def epsilon_prime_report(w: CanonicalElement) -> dict[tuple[int, int], tuple[int, Fraction]]:
    """Diagnostic only: per component, (epsilon_ij, average of the grid offsets).

    The offset of a grid entry subtracts the w_lambda value at the window
    position it came from; whether the average always equals epsilon_ij is
    unproven, so callers compare and report.
    """
    lam, n = w.lam, w.n
    rows = split_rows(w.window, lam)
    base = split_rows(w_lambda_window(lam), lam)
    count = [0] * len(lam.block_rows())
    x = _epsilon_raw(w.window, lam)
    out = {}
    for cls, picks in _greedy_passes(rows, lam):
        count[cls] += 1
        s = sum(rows[k][c] - base[k][c] for k, c in picks)
        out[(cls + 1, count[cls])] = (x.classes[cls][count[cls] - 1], Fraction(s, n))
    return out


def grid_offsets(w: CanonicalElement) -> dict[tuple[int, int, int], int]:
    """epsilon'_{k,i,j}: grid value minus the w_lambda value at its source position."""
    lam = w.lam
    rows = split_rows(w.window, lam)
    base = split_rows(w_lambda_window(lam), lam)
    count = [0] * len(lam.block_rows())
    out = {}
    for cls, picks in _greedy_passes(rows, lam):
        count[cls] += 1
        for k, c in picks:
            out[(k + 1, cls + 1, count[cls])] = rows[k][c] - base[k][c]
    return out


# ---------------------------------------------------------------------------
# unit steps


def _pos(lam: Partition, k: int, l: int) -> int:
    """0-based window index of a_{k,l}."""
    return lam.partial_sums()[k - 1] + l - 1


def _increment_raw(w: Window, lam: Partition, i: int, j: int) -> Window:
    n = len(w)
    h = lam.block_rows()[i - 1]
    e = lam.partial_sums()
    js = {h: j}
    for k in range(h, 1, -1):
        target = w[_pos(lam, k, js[k])]
        row = range(e[k - 2], e[k - 1])
        pick = next((a for a in row if w[a] < target), None)
        if pick is None:
            raise PreconditionViolated(f"no value below {target} in row {k - 1}")
        js[k - 1] = pick - e[k - 2] + 1
    u = list(w)
    for k in range(2, h + 1):
        u[_pos(lam, k - 1, js[k - 1])] = w[_pos(lam, k, js[k])]
    u[_pos(lam, h, j)] = w[_pos(lam, 1, js[1])] + n
    return tuple(u)


def _decrement_raw(w: Window, lam: Partition, i: int, j: int) -> Window:
    n = len(w)
    h = lam.block_rows()[i - 1]
    e = lam.partial_sums()
    js = {}
    prev = w[_pos(lam, h, j)] - n
    for k in range(1, h):
        row = range(e[k - 1], e[k])
        above = [a for a in row if w[a] > prev]
        if not above:
            raise PreconditionViolated(f"no value above {prev} in row {k}")
        js[k] = above[-1] - e[k - 1] + 1
        prev = w[above[-1]]
    js[h] = j
    u = list(w)
    u[_pos(lam, 1, js[1])] = w[_pos(lam, h, js[h])] - n
    for k in range(2, h + 1):
        u[_pos(lam, k, js[k])] = w[_pos(lam, k - 1, js[k - 1])]
    return tuple(u)


def _vanishes_after(x: DominantWeight, i: int, j: int) -> bool:
    for a, c in enumerate(x.classes, 1):
        for b, v in enumerate(c, 1):
            if (a, b) > (i, j) and v:
                return False
    return True


def _check_step(w: CanonicalElement, i: int, j: int) -> DominantWeight:
    lam = w.lam
    _check_index(lam, i, j)
    x = _epsilon_raw(w.window, lam)
    if any(v < 0 for v in x.flat()):
        raise PreconditionViolated(f"weight {x} has a negative component")
    if not _vanishes_after(x, i, j):
        raise PreconditionViolated(f"weight {x} is nonzero after component ({i},{j})")
    base = w_lambda_window(lam)
    h = lam.block_rows()[i - 1]
    for a in range(_pos(lam, h, j) + 1, w.n):
        if w.window[a] != base[a]:
            raise PreconditionViolated(f"window differs from w_lambda at position {a + 1}")
    return x


def increment(w: CanonicalElement, i: int, j: int) -> CanonicalElement:
    """The member whose weight is epsilon(w) + tau_{ij}."""
    x = _check_step(w, i, j)
    if j > 1 and x.classes[i - 1][j - 2] == x.classes[i - 1][j - 1]:
        raise PreconditionViolated(f"adding 1 at ({i},{j}) breaks dominance of {x}")
    return CanonicalElement(AffinePerm(_increment_raw(w.window, w.lam, i, j)), w.lam)


def decrement(w: CanonicalElement, i: int, j: int) -> CanonicalElement:
    """The member whose weight is epsilon(w) - tau_{ij}."""
    x = _check_step(w, i, j)
    if x.classes[i - 1][j - 1] < 1:
        raise PreconditionViolated(f"component ({i},{j}) of {x} is zero")
    return CanonicalElement(AffinePerm(_decrement_raw(w.window, w.lam, i, j)), w.lam)


def _shift_for(lam: Partition, x: DominantWeight) -> int:
    """Least k >= 0 with x_ij + k * r_i >= 0 everywhere."""
    return max([0] + [-(v // r) for r, c in zip(lam.block_rows(), x.classes) for v in c])


def from_epsilon(lam: Partition, x: DominantWeight, extra_shift: int = 0) -> CanonicalElement:
    """The unique member with weight x.

    Shifts x by k*r_i into the non-negative range, fills it by unit steps in
    lexicographic component order starting at w_lambda, then multiplies by
    omega^{-kn}.  ``extra_shift`` raises k, which gives an independent path to
    the same element.
    """
    _check_shape(lam, x)
    n = lam.size
    k = _shift_for(lam, x) + extra_shift
    rows_of = lam.block_rows()
    w = w_lambda_window(lam)
    for i, (r, c) in enumerate(zip(rows_of, x.classes), 1):
        for j, v in enumerate(c, 1):
            for _ in range(v + k * r):
                w = _increment_raw(w, lam, i, j)
    return CanonicalElement(AffinePerm(win_shift(w, -k * n)), lam)


# ---------------------------------------------------------------------------
# fundamental elements


def _cycle(n: int, points: Sequence[int]) -> Window:
    """s(i_1, ..., i_k): i_l -> i_{l+1}, i_k -> i_1 (points are distinct residues in 1..n)."""
    out = list(range(1, n + 1))
    for t, p in enumerate(points):
        out[p - 1] = points[(t + 1) % len(points)]
    return tuple(out)


def u_window(lam: Partition, i: int, j: int) -> Window:
    _check_index(lam, i, j)
    n, h = lam.size, lam.block_rows()[i - 1]
    e = lam.partial_sums()
    out = list(range(1, n + 1))
    for l in range(1, j + 1):
        for k in range(1, h):
            out[e[k] - l] = e[k + 1] - l + 1
        out[e[h] - l] = e[1] - l + 1 + n
    return tuple(out)


def u_by_product(lam: Partition, i: int, j: int) -> Window:
    """u_{ij} as the product of tau and cycle factors."""
    _check_index(lam, i, j)
    n, h = lam.size, lam.block_rows()[i - 1]
    e = lam.partial_sums()
    w = tuple(range(1, n + 1))
    for t in range(j):
        tau = tuple(a + n if a == lam[0] - t else a for a in range(1, n + 1))
        cyc = _cycle(n, [e[k] - t for k in range(1, h + 1)])
        w = win_mul(win_mul(w, tau), cyc)
    return w


def fundamental_element(lam: Partition, i: int, j: int) -> CanonicalElement:
    """u_{ij} w_lambda, the member of weight theta_{ij}."""
    _check_index(lam, i, j)
    n, h = lam.size, lam.block_rows()[i - 1]
    e = lam.partial_sums()
    out = list(w_lambda_window(lam))
    for l in range(1, j + 1):
        for k in range(1, h):
            out[e[k - 1] + l - 1] = e[k + 1] - l + 1
        out[e[h - 1] + l - 1] = e[1] - l + 1 + n
    return CanonicalElement(AffinePerm(tuple(out)), lam)


# ---------------------------------------------------------------------------
# shortest double coset representatives


def m_element(n: int, subset: Iterable[int]) -> AffinePerm:
    """m_I, the shortest element of W_0 x_I W_0, from its explicit window."""
    a = sorted(set(subset))
    if not a:
        raise EmptySubset("m_I needs a nonempty subset of 1..n-1")
    if a[0] < 1 or a[-1] > n - 1:
        raise IndexOutOfRange(f"subset {a} is not inside 1..{n - 1}")
    k = len(a)
    a = [0] + a + [n]
    out = [0] * n
    for i in range(1, k + 2):
        xi = k - i + 1
        for j in range(1, a[i] - a[i - 1] + 1):
            out[n - a[i] + j - 1] = a[i - 1] + j + xi * n
    return AffinePerm(tuple(out))


def m_element_by_word(n: int, subset: Iterable[int]) -> AffinePerm:
    """m_I = x_I x_{a_1}^{-1} w_k ... w_2 omega^{a_1}, built from simple reflections."""
    a = sorted(set(subset))
    if not a:
        raise EmptySubset("m_I needs a nonempty subset of 1..n-1")
    k = len(a)
    a = [0] + a
    x_i = identity(n)
    for t in a[1:]:
        x_i = x_i * dominant_generator(n, t)
    w = (x_i * dominant_generator(n, a[1]).inverse()).window
    for i in range(k, 1, -1):
        # w_i = s_{a_i, n-1} s_{a_i - 1, n-2} ... s_{a_{i-1}+1, n + a_{i-1} - a_i}
        for t in range(a[i] - a[i - 1]):
            for s in range(a[i] - t, n - t):
                w = win_right_simple(w, s)
    return AffinePerm(win_mul(w, (omega(n) ** a[1]).window))


def m_of_dominant(n: int, exponents: Sequence[int]) -> AffinePerm:
    """m_x for x = x_1^{a_1} ... x_n^{a_n}, with a_i >= 0 for i < n."""
    if len(exponents) != n:
        raise IndexOutOfRange(f"need {n} exponents, got {len(exponents)}")
    if any(v < 0 for v in exponents[:-1]):
        raise NotDominant(f"exponents {list(exponents)} are not dominant")
    x = identity(n)
    for i, v in enumerate(exponents, 1):
        x = x * dominant_generator(n, i) ** v
    support = [i for i in range(1, n) if exponents[i - 1] > 0]
    if not support:
        return x
    x_i = identity(n)
    for i in support:
        x_i = x_i * dominant_generator(n, i)
    return x * x_i.inverse() * m_element(n, support)


def descents_pair(w: AffinePerm) -> tuple[frozenset[int], frozenset[int]]:
    return win_left_descents(w.window), win_right_descents(w.window)


def member_length(w: CanonicalElement) -> int:
    return win_length(w.window)
