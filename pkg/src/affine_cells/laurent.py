"""Exact Laurent polynomials in q with integer coefficients.

The coefficient map never stores zeros.  ``VPoly`` helpers treat a plain
tuple ``(c0, c1, ...)`` as the polynomial c0 + c1 v + ... with v = q^2,
which is how Kazhdan-Lusztig polynomials are kept.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import ParseError

VPoly = tuple[int, ...]


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, a in items:
            if a:
                c[e] = c.get(e, 0) + a
                if not c[e]:
                    del c[e]
        self._c = c
        self._hash: int | None = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def constant(cls, a: int) -> LaurentPoly:
        return cls({0: a})

    @classmethod
    def from_vpoly(cls, p: VPoly, shift: int = 0) -> LaurentPoly:
        """q^shift * p(q^2)."""
        return cls({2 * k + shift: a for k, a in enumerate(p)})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def coefficient(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int | None:
        return max(self._c) if self._c else None

    def valuation(self) -> int | None:
        return min(self._c) if self._c else None

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        out = dict(self._c)
        for e, a in other._c.items():
            out[e] = out.get(e, 0) + a
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -a for e, a in self._c.items()})

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return LaurentPoly.constant(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({e: a * other for e, a in self._c.items()})
        out: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + a1 * a2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible")
            (e, a), = self._c.items()
            if a not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentPoly({e * k: a ** (-k)})
        out = LaurentPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        return LaurentPoly({e + k: a for e, a in self._c.items()})

    def bar(self) -> LaurentPoly:
        """q -> q^{-1}."""
        return LaurentPoly({-e: a for e, a in self._c.items()})

    def evaluate(self, q):
        return sum(a * q ** e for e, a in self._c.items())

    def __repr__(self) -> str:
        return f"LaurentPoly({format_laurent(self)})"

    def __str__(self) -> str:
        return format_laurent(self)


Q = LaurentPoly.monomial(1)
XI = Q - Q ** -1


def format_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, a in sorted(p.coeffs.items(), reverse=True):
        mag = abs(a)
        if e == 0:
            body = str(mag)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if a < 0 else "+"
        parts.append((sign, body))
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f"{s}{b}" for s, b in parts[1:])


_TERM_RE = re.compile(r"([+-]?)(?:(\d+)\*?)?(q(?:\^(-?\d+))?)?")


def parse_laurent(text: str) -> LaurentPoly:
    s = text.replace(" ", "")
    if s == "0":
        return LaurentPoly()
    out: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ParseError(f"bad Laurent polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        exp = 0 if not m.group(3) else int(m.group(4) or 1)
        out[exp] = out.get(exp, 0) + sign * coef
        pos = m.end()
    return LaurentPoly(out)


# ---------------------------------------------------------------------------
# polynomials in v = q^2 as coefficient tuples


def vpoly_trim(c: list[int] | tuple[int, ...]) -> VPoly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def vpoly_degree(p: VPoly) -> int:
    return len(p) - 1


def vpoly_coeff(p: VPoly, k: int) -> int:
    return p[k] if 0 <= k < len(p) else 0
