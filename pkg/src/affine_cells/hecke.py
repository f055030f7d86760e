"""Hecke algebra of the extended affine Weyl group over Z[q, q^-1].

The quadratic relation is (T_s - q^2)(T_s + 1) = 0 and the canonical basis is
C_w = q^{-l(w)} sum_{y <= w} P_{y,w}(q^2) T_y.  Kazhdan-Lusztig polynomials
are computed for elements of omega-power zero; an element omega^k w' reuses the
column of w' with every index shifted by omega^k, since T_{omega^k w'} =
T_{omega}^k T_{w'}.

Internally a T-basis element is a dict {window: {exponent: coeff}}.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from . import kernels
from .affine_weyl import (
    AffinePerm,
    Window,
    format_window,
    lower_interval,
    parse_window,
    win_has_left_descent,
    win_has_right_descent,
    win_left_simple,
    win_length,
    win_mul,
    win_omega_power,
    win_right_simple,
    win_shift,
    win_identity,
)
from .errors import DegreeViolation, LimitExceeded, ParseError, RankMismatch
from .laurent import LaurentPoly, VPoly

DEFAULT_PRODUCT_BUDGET = {2: 20, 3: 14}
FALLBACK_PRODUCT_BUDGET = 10


def default_budget(n: int) -> int:
    return DEFAULT_PRODUCT_BUDGET.get(n, FALLBACK_PRODUCT_BUDGET)


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig store


class KLStore:
    """Memo of KL columns {x: P_{x,w}} for w of omega-power zero.

    ``pivot`` selects the left descent the recursion peels: "smallest" (the
    default) or "largest"; results do not depend on it.
    """

    def __init__(self, n: int, max_length: int | None = None, pivot: str = "smallest"):
        if pivot not in ("smallest", "largest"):
            raise ValueError(f"unknown pivot policy {pivot!r}")
        self.n = n
        self.max_length = default_budget(n) if max_length is None else max_length
        self.pivot = pivot
        self._cols: dict[Window, dict[Window, VPoly]] = {}
        self._mu: dict[Window, list[tuple[Window, int]]] = {}
        self._products: dict[tuple[Window, Window], dict[Window, dict[int, int]]] = {}
        self._lock = threading.Lock()

    # -- columns ------------------------------------------------------------

    def _pivot(self, w: Window) -> int | None:
        ks = range(self.n) if self.pivot == "smallest" else range(self.n - 1, -1, -1)
        for k in ks:
            if win_has_left_descent(w, k):
                return k
        return None

    def column(self, w: Window) -> dict[Window, VPoly]:
        col = self._cols.get(w)
        if col is not None:
            return col
        if win_omega_power(w):
            raise ValueError("columns are indexed by elements of omega-power zero")
        lw = win_length(w)
        if lw > self.max_length:
            raise LimitExceeded(f"KL column for length {lw} exceeds budget {self.max_length}")
        k = self._pivot(w)
        if k is None:
            col = {w: (1,)}
        else:
            v = win_left_simple(w, k)
            col_v = self.column(v)
            mu_terms = []
            for z, mu in self.mu_list(v):
                if win_has_left_descent(z, k):
                    mu_terms.append((self.column(z), mu, (lw - win_length(z)) // 2))
            col = kernels.kl_column(lower_interval(w), k, col_v, mu_terms)
        with self._lock:
            self._cols[w] = col
        return col

    def mu_list(self, w: Window) -> list[tuple[Window, int]]:
        """All (z, mu(z, w)) with z < w and mu nonzero."""
        got = self._mu.get(w)
        if got is not None:
            return got
        lw = win_length(w)
        out = []
        for z, p in self.column(w).items():
            d = lw - win_length(z)
            if d % 2 == 1:
                top = (d - 1) // 2
                if top < len(p) and p[top]:
                    out.append((z, p[top]))
        out.sort(key=lambda zm: (win_length(zm[0]), zm[0]))
        with self._lock:
            self._mu[w] = out
        return out

    def kl(self, y: Window, w: Window) -> VPoly:
        a = win_omega_power(w)
        if win_omega_power(y) != a:
            return ()
        return self.column(win_shift(w, -a)).get(win_shift(y, -a), ())

    def mu(self, y: Window, w: Window) -> int:
        d = win_length(w) - win_length(y)
        if d <= 0 or d % 2 == 0:
            return 0
        p = self.kl(y, w)
        top = (d - 1) // 2
        return p[top] if top < len(p) else 0

    def __len__(self) -> int:
        return len(self._cols)

    # -- persistence --------------------------------------------------------

    def save(self, path: str | Path) -> None:
        lines = []
        for w in sorted(self._cols, key=lambda x: (win_length(x), x)):
            col = self._cols[w]
            for y in sorted(col, key=lambda x: (win_length(x), x)):
                p = ",".join(str(c) for c in col[y])
                lines.append(f"KL n={self.n} y={format_window(y)} w={format_window(w)} P={p}")
        tmp = Path(str(path) + ".tmp")
        tmp.write_text("\n".join(lines) + ("\n" if lines else ""))
        tmp.replace(path)

    def load(self, path: str | Path) -> int:
        """Merge records from a file; returns the number of columns adopted.

        Records are validated: correct rank, degree bound 2 deg P < l(w) - l(y)
        for y < w, P_{w,w} = 1, and each column must cover the full lower
        interval of w (else the column is dropped and recomputed on demand).
        """
        p = Path(path)
        if not p.exists():
            return 0
        staged: dict[Window, dict[Window, VPoly]] = {}
        for lineno, line in enumerate(p.read_text().splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 5 or parts[0] != "KL":
                raise ParseError(f"{path}:{lineno}: malformed record")
            fields = dict(part.split("=", 1) for part in parts[1:])
            if int(fields["n"]) != self.n:
                raise RankMismatch(f"{path}:{lineno}: rank {fields['n']} != {self.n}")
            y = parse_window(fields["y"], self.n).window
            w = parse_window(fields["w"], self.n).window
            poly = tuple(int(c) for c in fields["P"].split(",")) if fields["P"] else ()
            dl = win_length(w) - win_length(y)
            if y == w:
                if poly != (1,):
                    raise DegreeViolation(f"{path}:{lineno}: P_(w,w) must be 1")
            elif dl <= 0 or 2 * (len(poly) - 1) >= dl or not poly or poly[-1] == 0:
                raise DegreeViolation(f"{path}:{lineno}: degree bound violated")
            staged.setdefault(w, {})[y] = poly
        adopted = 0
        with self._lock:
            for w, col in staged.items():
                if win_omega_power(w) or win_length(w) > self.max_length:
                    continue
                if set(col) == set(lower_interval(w)) and w not in self._cols:
                    self._cols[w] = col
                    adopted += 1
        return adopted


# ---------------------------------------------------------------------------
# T-basis helpers on raw dicts


def _omega_window(n: int, k: int) -> Window:
    return win_shift(win_identity(n), k)


def c_to_t(w: Window, store: KLStore) -> dict[Window, dict[int, int]]:
    """T-basis expansion of C_w."""
    a = win_omega_power(w)
    base = win_shift(w, -a)
    lw = win_length(w)
    out = {}
    for x, p in store.column(base).items():
        out[win_shift(x, a)] = {2 * i - lw: c for i, c in enumerate(p) if c}
    return out


def t_right_mul_element(elem: dict, y: Window) -> dict:
    """elem * T_y for a single group element y (omega-part first, then simples)."""
    n = len(y)
    a = win_omega_power(y)
    if a:
        om = _omega_window(n, a)
        elem = {win_mul(z, om): c for z, c in elem.items()}
    letters = []
    cur = win_shift(y, -a)
    while True:
        for k in range(n):
            if win_has_right_descent(cur, k):
                letters.append(k)
                cur = win_right_simple(cur, k)
                break
        else:
            break
    for k in reversed(letters):
        elem = kernels.t_right_mul_simple(elem, k)
    return elem


def _laurent_mul(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def t_times_c(elem: dict, u: Window, store: KLStore) -> dict:
    """elem * C_u, built from elem * T_x for x in [e, u] sharing prefixes."""
    n = len(u)
    b = win_omega_power(u)
    base = win_shift(u, -b)
    lu = win_length(u)
    if b:
        om = _omega_window(n, b)
        elem = {win_mul(z, om): c for z, c in elem.items()}
    col = store.column(base)
    order = sorted(col, key=lambda x: (win_length(x), x))
    partial: dict[Window, dict] = {}
    acc: dict = {}
    for x in order:
        if win_length(x) == 0:
            prod = elem
        else:
            for k in range(n):
                if win_has_right_descent(x, k):
                    break
            prod = kernels.t_right_mul_simple(partial[win_right_simple(x, k)], k)
        partial[x] = prod
        coeff = {2 * i - lu: c for i, c in enumerate(col[x]) if c}
        kernels.t_accumulate(acc, prod, coeff)
    return acc


def t_to_c(elem: dict, store: KLStore) -> dict[Window, dict[int, int]]:
    """Unitriangular change of basis: peel the longest surviving T_v.

    Ties in length are broken by the lexicographically largest window.
    """
    rest = {z: dict(c) for z, c in elem.items() if c}
    out: dict[Window, dict[int, int]] = {}
    while rest:
        v = max(rest, key=lambda z: (win_length(z), z))
        lv = win_length(v)
        h = {e + lv: c for e, c in rest[v].items()}
        out[v] = h
        kernels.t_accumulate(rest, {x: {e: -c for e, c in p.items()} for x, p in c_to_t(v, store).items()}, h)
        if v in rest:
            raise AssertionError("leading term did not cancel")
    return out


# ---------------------------------------------------------------------------
# public element type


@dataclass
class HeckeElement:
    """Finite sum of basis elements; ``basis`` is "T" or "C"."""

    n: int
    basis: str = "T"
    terms: dict[AffinePerm, LaurentPoly] = field(default_factory=dict)

    @classmethod
    def T(cls, w: AffinePerm) -> HeckeElement:
        return cls(w.n, "T", {w: LaurentPoly.constant(1)})

    @classmethod
    def C(cls, w: AffinePerm) -> HeckeElement:
        return cls(w.n, "C", {w: LaurentPoly.constant(1)})

    def _raw(self) -> dict:
        return {w.window: dict(p.coeffs) for w, p in self.terms.items() if p}

    @classmethod
    def _from_raw(cls, n: int, basis: str, raw: Mapping) -> HeckeElement:
        return cls(n, basis, {AffinePerm(z): LaurentPoly(c) for z, c in raw.items() if c})

    def to_T(self, store: KLStore) -> HeckeElement:
        if self.basis == "T":
            return self
        acc: dict = {}
        for w, p in self.terms.items():
            kernels.t_accumulate(acc, c_to_t(w.window, store), dict(p.coeffs))
        return HeckeElement._from_raw(self.n, "T", acc)

    def to_C(self, store: KLStore) -> HeckeElement:
        if self.basis == "C":
            return self
        return HeckeElement._from_raw(self.n, "C", t_to_c(self._raw(), store))

    def __add__(self, other: HeckeElement) -> HeckeElement:
        if other.basis != self.basis:
            raise ValueError("convert to a common basis first")
        out = dict(self.terms)
        for w, p in other.terms.items():
            out[w] = out.get(w, LaurentPoly()) + p
        return HeckeElement(self.n, self.basis, {w: p for w, p in out.items() if p})

    def scale(self, c: LaurentPoly) -> HeckeElement:
        return HeckeElement(self.n, self.basis, {w: p * c for w, p in self.terms.items() if p * c})

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + other.scale(LaurentPoly.constant(-1))

    def multiply(self, other: HeckeElement, store: KLStore) -> HeckeElement:
        """Product, returned in the T-basis."""
        left = self.to_T(store)._raw()
        right = other.to_T(store)._raw()
        acc: dict = {}
        for y, c in right.items():
            kernels.t_accumulate(acc, t_right_mul_element(left, y), c)
        return HeckeElement._from_raw(self.n, "T", acc)

    def bar(self, store: KLStore) -> HeckeElement:
        """sum a_w T_w -> sum bar(a_w) T_{w^{-1}}^{-1}, returned in the T-basis."""
        n = self.n
        acc: dict = {}
        for w, p in self.to_T(store).terms.items():
            a = w.omega_power
            letters = []
            cur = win_shift(w.window, -a)
            while True:
                for k in range(n):
                    if win_has_right_descent(cur, k):
                        letters.append(k)
                        cur = win_right_simple(cur, k)
                        break
                else:
                    break
            # T_{w^{-1}}^{-1} = T_omega^a T_{s_1}^{-1} ... T_{s_m}^{-1} for w = omega^a s_1...s_m
            elem = {_omega_window(n, a): {0: 1}}
            for k in reversed(letters):
                shifted = kernels.t_right_mul_simple(elem, k)
                nxt: dict = {}
                kernels.t_accumulate(nxt, shifted, {-2: 1})
                kernels.t_accumulate(nxt, elem, {-2: 1, 0: -1})
                elem = nxt
            kernels.t_accumulate(acc, elem, dict(p.bar().coeffs))
        return HeckeElement._from_raw(n, "T", acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.basis == other.basis and {w: p for w, p in self.terms.items() if p} == {
            w: p for w, p in other.terms.items() if p
        }


# ---------------------------------------------------------------------------
# structure constants


def kl_polynomial(y: AffinePerm, w: AffinePerm, store: KLStore) -> VPoly:
    """P_{y,w} as coefficients in v = q^2; empty tuple when y is not below w."""
    if y.n != w.n or w.n != store.n:
        raise RankMismatch("rank mismatch between arguments and store")
    return store.kl(y.window, w.window)


def _raw_c_product(w: Window, u: Window, store: KLStore, budget: int | None) -> dict:
    key = (w, u)
    got = store._products.get(key)
    if got is not None:
        return got
    limit = default_budget(store.n) if budget is None else budget
    total = win_length(w) + win_length(u)
    if total > limit:
        raise LimitExceeded(f"l(w)+l(u) = {total} exceeds budget {limit}")
    if total > store.max_length:
        store.max_length = total
    res = t_to_c(t_times_c(c_to_t(w, store), u, store), store)
    with store._lock:
        store._products[key] = res
    return res


def c_product(w: AffinePerm, u: AffinePerm, store: KLStore, budget: int | None = None) -> dict[AffinePerm, LaurentPoly]:
    """{v: h_{w,u,v}} with C_w C_u = sum_v h_{w,u,v} C_v."""
    if w.n != u.n or w.n != store.n:
        raise RankMismatch("rank mismatch between arguments and store")
    raw = _raw_c_product(w.window, u.window, store, budget)
    return {AffinePerm(v): LaurentPoly(h) for v, h in raw.items()}


def a_value(w: AffinePerm) -> int:
    """Lusztig's a-function: l(w_lambda) for lambda = lambda(w)."""
    from .cells import lambda_partition

    return sum(k * (k - 1) // 2 for k in lambda_partition(w).parts)


def gamma_oracle(w: AffinePerm, u: AffinePerm, v: AffinePerm, store: KLStore, budget: int | None = None) -> int:
    """Coefficient of q^{a(v)} in h_{w,u,v}, after checking nothing lies above it."""
    raw = _raw_c_product(w.window, u.window, store, budget)
    h = raw.get(v.window, {})
    a = a_value(v)
    if h and max(h) > a:
        raise DegreeViolation(f"h_(w,u,v) has degree {max(h)} > a(v) = {a}")
    return h.get(a, 0)


def gamma_row(w: AffinePerm, u: AffinePerm, store: KLStore, budget: int | None = None) -> dict[AffinePerm, int]:
    """All nonzero gamma_{w,u,v}, checking deg h_{w,u,v} <= a(v) on the whole support."""
    raw = _raw_c_product(w.window, u.window, store, budget)
    out = {}
    for v, h in raw.items():
        if not h:
            continue
        vp = AffinePerm(v)
        a = a_value(vp)
        if max(h) > a:
            raise DegreeViolation(f"h_(w,u,v) for v={format_window(v)} has degree {max(h)} > a(v) = {a}")
        if h.get(a, 0):
            out[vp] = h[a]
    return out


def product_support_ok(raw: Mapping[Window, Mapping[int, int]]) -> bool:
    """Every h is bar-invariant with non-negative coefficients."""
    for h in raw.values():
        for e, c in h.items():
            if c < 0 or h.get(-e, 0) != c:
                return False
    return True

