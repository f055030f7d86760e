"""Extended affine Weyl group of type A~_{n-1} as periodic permutations of Z.

An element w is stored by its window (w(1), ..., w(n)); the rest of the
permutation follows from w(i + kn) = w(i) + kn.  Window residues mod n form a
permutation of the residues of 1..n and sum(w(i) - i) is a multiple of n.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    IndexOutOfRange,
    ParseError,
    RankMismatch,
    ResidueClash,
    SumNotDivisible,
)

Window = tuple[int, ...]


# ---------------------------------------------------------------------------
# raw window kernels (tuples in, tuples out; no validation)


def win_apply(w: Window, k: int) -> int:
    n = len(w)
    c, r = divmod(k - 1, n)
    return w[r] + c * n


def win_mul(a: Window, b: Window) -> Window:
    n = len(a)
    out = []
    for x in b:
        c, r = divmod(x - 1, n)
        out.append(a[r] + c * n)
    return tuple(out)


def win_inv(w: Window) -> Window:
    n = len(w)
    out = [0] * n
    for i, x in enumerate(w, 1):
        c, r = divmod(x - 1, n)
        out[r] = i - c * n
    return tuple(out)


def win_length(w: Window) -> int:
    n = len(w)
    total = 0
    for i in range(n):
        wi = w[i]
        for j in range(i + 1, n):
            total += abs((w[j] - wi) // n)
    return total


def win_has_right_descent(w: Window, k: int) -> bool:
    n = len(w)
    k %= n
    if k == 0:
        return w[n - 1] - n > w[0]
    return w[k - 1] > w[k]


def win_has_left_descent(w: Window, k: int) -> bool:
    # s_k in L(w) iff w^{-1}(k) > w^{-1}(k+1); the positions holding the
    # residues k and k+1 give this without a full inversion.
    n = len(w)
    k %= n
    pos_k = pos_k1 = 0
    for i, x in enumerate(w, 1):
        c, r = divmod(x - 1, n)
        r += 1
        if r == (k if k else n):
            pos_k = i - c * n - (n if k == 0 else 0)
        if r == k + 1:
            pos_k1 = i - c * n
    return pos_k > pos_k1


def win_right_simple(w: Window, k: int) -> Window:
    """w * s_k."""
    n = len(w)
    k %= n
    lst = list(w)
    if k == 0:
        lst[0], lst[n - 1] = w[n - 1] - n, w[0] + n
    else:
        lst[k - 1], lst[k] = w[k], w[k - 1]
    return tuple(lst)


def win_left_simple(w: Window, k: int) -> Window:
    """s_k * w: values congruent to k move up by one, k+1 down by one."""
    n = len(w)
    k %= n
    out = []
    for x in w:
        r = x % n
        if r == k:
            out.append(x + 1)
        elif r == (k + 1) % n:
            out.append(x - 1)
        else:
            out.append(x)
    return tuple(out)


def win_omega_power(w: Window) -> int:
    n = len(w)
    return (sum(w) - n * (n + 1) // 2) // n


def win_shift(w: Window, k: int) -> Window:
    """omega^k * w."""
    return tuple(x + k for x in w)


def win_conj_omega(w: Window, k: int) -> Window:
    """omega^{-k} w omega^k."""
    n = len(w)
    return tuple(win_apply(w, i + k) - k for i in range(1, n + 1))


def win_right_descents(w: Window) -> frozenset[int]:
    return frozenset(k for k in range(len(w)) if win_has_right_descent(w, k))


def win_left_descents(w: Window) -> frozenset[int]:
    return win_right_descents(win_inv(w))


def win_identity(n: int) -> Window:
    return tuple(range(1, n + 1))


@lru_cache(maxsize=None)
def lower_interval(w: Window) -> frozenset[Window]:
    """All y <= w in Bruhat order, for w of omega-power zero.

    Uses the lifting recursion: if s w < w then [e, w] = I u sI with I = [e, sw].
    """
    n = len(w)
    for k in range(n):
        if win_has_left_descent(w, k):
            below = lower_interval(win_left_simple(w, k))
            return below | frozenset(win_left_simple(y, k) for y in below)
    return frozenset([w])


def win_bruhat_leq(y: Window, w: Window) -> bool:
    if win_omega_power(y) != win_omega_power(w):
        return False
    k = win_omega_power(w)
    return win_shift(y, -k) in lower_interval(win_shift(w, -k))


# ---------------------------------------------------------------------------
# validated element type


@dataclass(frozen=True, order=True)
class AffinePerm:
    """An element of the extended affine Weyl group, stored by its window."""

    window: Window

    @property
    def n(self) -> int:
        return len(self.window)

    def __repr__(self) -> str:
        return f"AffinePerm({format_window(self.window)})"

    def __str__(self) -> str:
        return format_window(self.window)

    def __mul__(self, other: AffinePerm) -> AffinePerm:
        return multiply(self, other)

    def __pow__(self, k: int) -> AffinePerm:
        base = self if k >= 0 else inverse(self)
        out = identity(self.n)
        for _ in range(abs(k)):
            out = multiply(out, base)
        return out

    def __call__(self, k: int) -> int:
        return win_apply(self.window, k)

    def inverse(self) -> AffinePerm:
        return inverse(self)

    def length(self) -> int:
        return win_length(self.window)

    @property
    def omega_power(self) -> int:
        return win_omega_power(self.window)

    def finite_part(self) -> AffinePerm:
        """The factor w' in w = omega^k w' with w' of displacement sum zero."""
        return AffinePerm(win_shift(self.window, -self.omega_power))


def from_window(n: int, window: Sequence[int]) -> AffinePerm:
    w = tuple(int(x) for x in window)
    if len(w) != n:
        raise RankMismatch(f"window has {len(w)} entries, expected {n}")
    if n < 2:
        raise RankMismatch("rank must be at least 2")
    # the sum test runs first, so a window failing both reports SumNotDivisible
    if (sum(w) - n * (n + 1) // 2) % n:
        raise SumNotDivisible(f"displacement sum of {list(w)} is not divisible by {n}")
    if len({x % n for x in w}) != n:
        raise ResidueClash(f"window {list(w)} repeats a residue mod {n}")
    return AffinePerm(w)


def identity(n: int) -> AffinePerm:
    return AffinePerm(win_identity(n))


def simple(n: int, i: int) -> AffinePerm:
    if n < 2:
        raise IndexOutOfRange("rank must be at least 2")
    return AffinePerm(win_right_simple(win_identity(n), i % n))


def omega(n: int) -> AffinePerm:
    return AffinePerm(tuple(range(2, n + 2)))


def tau(n: int, i: int) -> AffinePerm:
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"tau index {i} outside 1..{n}")
    return AffinePerm(tuple(j + n if j == i else j for j in range(1, n + 1)))


def dominant_generator(n: int, i: int) -> AffinePerm:
    """x_i = tau_1 tau_2 ... tau_i."""
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"x index {i} outside 1..{n}")
    return AffinePerm(tuple(j + n if j <= i else j for j in range(1, n + 1)))


def multiply(a: AffinePerm, b: AffinePerm) -> AffinePerm:
    if a.n != b.n:
        raise RankMismatch(f"ranks {a.n} and {b.n} differ")
    return AffinePerm(win_mul(a.window, b.window))


def inverse(a: AffinePerm) -> AffinePerm:
    return AffinePerm(win_inv(a.window))


def apply(a: AffinePerm, k: int) -> int:
    return win_apply(a.window, k)


def length(w: AffinePerm) -> int:
    return win_length(w.window)


def right_descents(w: AffinePerm) -> frozenset[int]:
    return win_right_descents(w.window)


def left_descents(w: AffinePerm) -> frozenset[int]:
    return win_left_descents(w.window)


def bruhat_leq(y: AffinePerm, w: AffinePerm) -> bool:
    if y.n != w.n:
        raise RankMismatch(f"ranks {y.n} and {w.n} differ")
    return win_bruhat_leq(y.window, w.window)


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Word:
    """A product of letters: ("w", k) is omega^k, ("s", i) is s_i."""

    n: int
    letters: tuple[tuple[str, int], ...] = ()

    def evaluate(self) -> AffinePerm:
        w = win_identity(self.n)
        for kind, val in self.letters:
            if kind == "w":
                w = win_mul(w, win_shift(win_identity(self.n), val))
            else:
                w = win_right_simple(w, val)
        return AffinePerm(w)

    def simple_count(self) -> int:
        return sum(1 for kind, _ in self.letters if kind == "s")

    def is_reduced(self) -> bool:
        return self.simple_count() == length(self.evaluate())

    def __str__(self) -> str:
        return format_word(self)


def reduced_word(w: AffinePerm) -> Word:
    """Peel smallest right descents, then put the remaining omega-power in front."""
    cur = w.window
    tail: list[int] = []
    while True:
        for k in range(w.n):
            if win_has_right_descent(cur, k):
                tail.append(k)
                cur = win_right_simple(cur, k)
                break
        else:
            break
    letters: list[tuple[str, int]] = []
    k = win_omega_power(cur)
    if k:
        letters.append(("w", k))
    letters.extend(("s", i) for i in reversed(tail))
    return Word(w.n, tuple(letters))


def word_of(n: int, simples: Iterable[int], omega_power: int = 0) -> AffinePerm:
    """omega^k s_{i1} s_{i2} ... as an element."""
    w = win_shift(win_identity(n), omega_power)
    for i in simples:
        w = win_right_simple(w, i)
    return AffinePerm(w)


def random_element(n: int, max_letters: int, rng: random.Random, omega_range: int = 2) -> AffinePerm:
    w = word_of(n, (rng.randrange(n) for _ in range(rng.randint(0, max_letters))))
    return AffinePerm(win_shift(w.window, rng.randint(-omega_range, omega_range)))


# ---------------------------------------------------------------------------
# text formats

_WINDOW_RE = re.compile(r"^\s*\[\s*(-?\d+(\s*,\s*-?\d+)*)\s*\]\s*$")


def format_window(w: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in w) + "]"


def parse_window(text: str, n: int | None = None) -> AffinePerm:
    m = _WINDOW_RE.match(text)
    if not m:
        raise ParseError(f"not a window: {text!r}")
    vals = [int(x) for x in m.group(1).split(",")]
    return from_window(len(vals) if n is None else n, vals)


def format_word(word: Word) -> str:
    if not word.letters:
        return "e"
    return ".".join(f"w^{v}" if kind == "w" else f"s{v}" for kind, v in word.letters)


def parse_word(text: str, n: int) -> Word:
    text = text.strip()
    if text in ("", "e"):
        return Word(n, ())
    letters: list[tuple[str, int]] = []
    for tok in text.split("."):
        if m := re.fullmatch(r"w\^(-?\d+)", tok):
            letters.append(("w", int(m.group(1))))
        elif m := re.fullmatch(r"s(\d+)", tok):
            i = int(m.group(1))
            if i >= n:
                raise IndexOutOfRange(f"simple index {i} outside 0..{n - 1}")
            letters.append(("s", i))
        else:
            raise ParseError(f"bad word token {tok!r}")
    return Word(n, tuple(letters))
