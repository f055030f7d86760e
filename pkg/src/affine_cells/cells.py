"""Two-sided cell invariants: the partitions lambda(w), mu(w), star operations.

mu(w) is read off antichain families confined to the window positions 1..n,
where a minimum antichain cover of every subset is found by a subset DP.
lambda(w) is its conjugate.  A chain-based computation over shifted
representatives is kept as an independent cross-check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import networkx as nx

from .affine_weyl import (
    AffinePerm,
    Window,
    win_apply,
    win_identity,
    win_inv,
    win_left_descents,
    win_left_simple,
    win_length,
    win_right_descents,
    win_right_simple,
)
from .errors import LimitExceeded, NotInStarDomain, ParseError, RankTooSmall


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.parts
        if any(x <= 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ParseError(f"not a partition: {p}")

    @classmethod
    def of(cls, parts: Sequence[int]) -> Partition:
        return cls(tuple(sorted((int(x) for x in parts if x), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts)

    def dual(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > j) for j in range(self.parts[0])))

    def partial_sums(self) -> tuple[int, ...]:
        """(e_0, e_1, ..., e_r) with e_i = lambda_1 + ... + lambda_i."""
        return tuple(itertools.accumulate(self.parts, initial=0))

    def block_rows(self) -> tuple[int, ...]:
        """Last row index (1-based) of each run of equal parts: r_1 < ... < r_p."""
        p = self.parts
        return tuple(i + 1 for i in range(len(p)) if i + 1 == len(p) or p[i + 1] != p[i])

    def class_sizes(self) -> tuple[int, ...]:
        """n_i = lambda_{r_i} - lambda_{r_{i+1}}, with lambda beyond the last row 0."""
        rows = self.block_rows()
        vals = [self.parts[r - 1] for r in rows] + [0]
        return tuple(vals[i] - vals[i + 1] for i in range(len(rows)))


def parse_partition(text: str) -> Partition:
    try:
        parts = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise ParseError(f"bad partition {text!r}") from exc
    if not parts or sorted(parts, reverse=True) != parts or parts[-1] <= 0:
        raise ParseError(f"bad partition {text!r}")
    return Partition(tuple(parts))


def partitions_of(n: int) -> list[Partition]:
    out: list[Partition] = []

    def rec(rest: int, cap: int, acc: list[int]) -> None:
        if rest == 0:
            out.append(Partition(tuple(acc)))
            return
        for k in range(min(rest, cap), 0, -1):
            rec(rest - k, k, acc + [k])

    rec(n, n, [])
    return out


def n_mu(lam: Partition) -> int:
    """Number of left cells in the two-sided cell of lambda."""
    n = lam.size
    return math.factorial(n) // math.prod(math.factorial(m) for m in lam.dual().parts)


# ---------------------------------------------------------------------------
# antichains inside the window


def is_window_antichain(w: Window, positions: Sequence[int]) -> bool:
    """Positions j_1 < ... < j_k in 1..n with w(j_k) - n < w(j_1) < ... < w(j_k)."""
    js = sorted(positions)
    if len(js) <= 1:
        return True
    vals = [w[j - 1] for j in js]
    n = len(w)
    return all(vals[i] < vals[i + 1] for i in range(len(vals) - 1)) and vals[-1] - n < vals[0]


@lru_cache(maxsize=4096)
def _min_cover_table(w: Window) -> tuple[int, ...]:
    """cover[S] = fewest window antichains partitioning the position set S (bitmask)."""
    n = len(w)
    full = 1 << n
    anti = [False] * full
    for mask in range(full):
        anti[mask] = is_window_antichain(w, [i + 1 for i in range(n) if mask >> i & 1])
    cover = [0] * full
    for mask in range(1, full):
        low = mask & -mask
        rest = mask ^ low
        best = n + 1
        sub = rest
        # antichains are closed under subsets, so covering by a partition whose
        # first block holds the lowest element loses nothing
        while True:
            block = sub | low
            if anti[block]:
                c = cover[mask ^ block] + 1
                if c < best:
                    best = c
            if sub == 0:
                break
            sub = (sub - 1) & rest
        cover[mask] = best
    return tuple(cover)


def antichain_family_sizes(w: AffinePerm) -> list[int]:
    """d'_q for q = 1..n: largest window subset covered by q antichains."""
    n = w.n
    cover = _min_cover_table(w.window)
    best = [0] * (n + 1)
    for mask, c in enumerate(cover):
        size = bin(mask).count("1")
        for q in range(c, n + 1):
            if size > best[q]:
                best[q] = size
    return best[1:]


def _differences(d: Sequence[int]) -> Partition:
    parts = [d[0]] + [d[i] - d[i - 1] for i in range(1, len(d))]
    return Partition(tuple(x for x in parts if x))


def mu_partition(w: AffinePerm) -> Partition:
    return _differences(antichain_family_sizes(w))


def lambda_partition(w: AffinePerm) -> Partition:
    return mu_partition(w).dual()


def minimum_antichain_cover(w: AffinePerm) -> list[list[int]]:
    """An explicit partition of 1..n into the fewest window antichains."""
    n = w.n
    cover = _min_cover_table(w.window)
    full = (1 << n) - 1
    out: list[list[int]] = []
    mask = full
    while mask:
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        while True:
            block = sub | low
            if is_window_antichain(w.window, [i + 1 for i in range(n) if block >> i & 1]) and cover[mask ^ block] == cover[mask] - 1:
                out.append([i + 1 for i in range(n) if block >> i & 1])
                mask ^= block
                break
            sub = (sub - 1) & rest
    return out


# ---------------------------------------------------------------------------
# chain oracle


def _greene_decreasing(values: Sequence[int]) -> list[int]:
    """Greene's theorem via RSK: max union of q decreasing subsequences, q = 1..len."""
    rows: list[list[int]] = []
    for x in values:
        for row in rows:
            # row insertion for strictly increasing rows of the RSK tableau
            lo, hi = 0, len(row)
            while lo < hi:
                mid = (lo + hi) // 2
                if row[mid] < x:
                    lo = mid + 1
                else:
                    hi = mid
            if lo == len(row):
                row.append(x)
                x = None
                break
            row[lo], x = x, row[lo]
        if x is not None:
            rows.append([x])
    shape = Partition(tuple(len(r) for r in rows)).dual().parts
    sums = list(itertools.accumulate(shape))
    m = len(values)
    return [sums[min(q, len(sums)) - 1] if sums else 0 for q in range(1, m + 1)]


def chain_family_sizes(w: AffinePerm, width: int) -> list[int]:
    """d_q maximised over representatives i + c n with |c| <= width."""
    n = w.n
    best = [0] * n
    for shifts in itertools.product(range(-width, width + 1), repeat=n):
        pos = sorted(i + 1 + c * n for i, c in enumerate(shifts))
        vals = [win_apply(w.window, p) for p in pos]
        d = _greene_decreasing(vals)
        for q in range(n):
            if d[q] > best[q]:
                best[q] = d[q]
    return best


def lambda_by_chains(w: AffinePerm, max_width: int | None = None) -> tuple[Partition, bool]:
    """Chain-based lambda(w); the flag reports whether the widening converged.

    Widths grow one period at a time and stop once two consecutive widths agree.
    """
    n = w.n
    disp = max(abs(w(i) - i) for i in range(1, n + 1))
    limit = max_width if max_width is not None else 2 * (disp // n + n)
    prev = chain_family_sizes(w, 0)
    width = 0
    while width < limit:
        width += 1
        cur = chain_family_sizes(w, width)
        if cur == prev:
            return _differences(cur), True
        prev = cur
    return _differences(prev), False


# ---------------------------------------------------------------------------
# star operations for the pair {s_i, s_{i+1}}


def _check_rank(n: int) -> None:
    if n < 3:
        raise RankTooSmall("star operations need n >= 3 (s_i s_{i+1} of order 3)")


def in_DR(w: AffinePerm, i: int) -> bool:
    _check_rank(w.n)
    r = win_right_descents(w.window)
    return (i % w.n in r) != ((i + 1) % w.n in r)


def in_DL(w: AffinePerm, i: int) -> bool:
    _check_rank(w.n)
    left = win_left_descents(w.window)
    return (i % w.n in left) != ((i + 1) % w.n in left)


def right_star(w: AffinePerm, i: int) -> AffinePerm:
    """Window rule: compare the values at positions i, i+1, i+2."""
    _check_rank(w.n)
    n = w.n
    a, b, c = (win_apply(w.window, i + t) for t in range(3))
    if min(b, c) < a < max(b, c):
        return AffinePerm(win_right_simple(w.window, (i + 1) % n))
    if min(a, b) < c < max(a, b):
        return AffinePerm(win_right_simple(w.window, i % n))
    raise NotInStarDomain(f"{w} is not in D_R(s_{i % n}, s_{(i + 1) % n})")


def left_star(w: AffinePerm, i: int) -> AffinePerm:
    return AffinePerm(win_inv(right_star(AffinePerm(win_inv(w.window)), i).window))


def right_star_by_definition(w: AffinePerm, i: int) -> AffinePerm:
    """The unique element of {ws, wt} lying in D_R(s, t)."""
    n = w.n
    if not in_DR(w, i):
        raise NotInStarDomain(f"{w} is not in D_R(s_{i % n}, s_{(i + 1) % n})")
    hits = [AffinePerm(win_right_simple(w.window, k % n)) for k in (i, i + 1)]
    hits = [x for x in hits if in_DR(x, i)]
    if len(hits) != 1:
        raise AssertionError("star operation is not single valued")
    return hits[0]


# ---------------------------------------------------------------------------
# bounded-ball cells


@dataclass
class CellBall:
    n: int
    max_length: int
    elements: list[AffinePerm]
    left: list[frozenset[AffinePerm]]
    right: list[frozenset[AffinePerm]]
    two_sided: list[frozenset[AffinePerm]]


def ball(n: int, max_length: int) -> list[Window]:
    """Elements of omega-power zero with length <= max_length, by length then window."""
    layer = {win_identity(n)}
    seen = set(layer)
    for step in range(max_length):
        nxt = set()
        for w in layer:
            for k in range(n):
                x = win_left_simple(w, k)
                if win_length(x) == step + 1 and x not in seen:
                    nxt.add(x)
        seen |= nxt
        layer = nxt
    return sorted(seen, key=lambda x: (win_length(x), x))


def cell_ball(n: int, max_length: int, store=None) -> CellBall:
    """Cells of the preorders restricted to the ball {w in W' : l(w) <= L}.

    Elementary step x <=_L y: mu(x, y) != 0 (either order) and L(x) is not a
    subset of L(y); likewise on the right with R.  Restricting to a ball can
    only split classes, never merge them.
    """
    from .hecke import KLStore

    if store is None:
        store = KLStore(n, max_length=max_length)
    if max_length > store.max_length:
        raise LimitExceeded(f"ball radius {max_length} exceeds KL budget {store.max_length}")
    elems = ball(n, max_length)
    ldesc = {w: win_left_descents(w) for w in elems}
    rdesc = {w: win_right_descents(w) for w in elems}
    gl, gr = nx.DiGraph(), nx.DiGraph()
    gl.add_nodes_from(elems)
    gr.add_nodes_from(elems)
    for y in elems:
        for x, _mu in store.mu_list(y):
            for a, b in ((x, y), (y, x)):
                # edge b -> a encodes a <= b
                if not ldesc[a] <= ldesc[b]:
                    gl.add_edge(b, a)
                if not rdesc[a] <= rdesc[b]:
                    gr.add_edge(b, a)
    g2 = nx.compose(gl, gr)

    def classes(g) -> list[frozenset[AffinePerm]]:
        out = [frozenset(AffinePerm(w) for w in comp) for comp in nx.strongly_connected_components(g)]
        return sorted(out, key=lambda c: min((x.length(), x.window) for x in c))

    return CellBall(n, max_length, [AffinePerm(w) for w in elems], classes(gl), classes(gr), classes(g2))

