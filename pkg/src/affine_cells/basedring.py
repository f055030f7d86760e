"""The based ring of the canonical intersection and its check against the Hecke algebra.

Products t_w t_u are predicted through the representation ring of F_lambda:
t_w maps to the irreducible with highest weight epsilon(w).  The harness
``verify_isomorphism`` recomputes the same structure constants from raw
Kazhdan-Lusztig products.

omega^n is central of length zero, so members come in omega^{kn}-orbits of
constant length.  Enumeration keeps one representative per orbit (the SL
representative of its weight); any triple of members is moved onto these
representatives by pulling the omega^{kn} factors into the third slot.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, Sequence

from .affine_weyl import AffinePerm, Window, win_omega_power, win_shift
from .canonical import (
    CanonicalElement,
    DominantWeight,
    _epsilon_raw,
    epsilon,
    from_epsilon,
    is_member,
)
from .cells import Partition, in_DL, in_DR, lambda_partition, left_star, n_mu, right_star
from .errors import DegreeViolation, NotInSubring, ShapeMismatch
from .hecke import KLStore, c_product, gamma_row
from .laurent import LaurentPoly
from .repring import GroupShape, product_weights, restrict_sl

# ---------------------------------------------------------------------------
# ring elements


class BasedRingElement:
    """Finite combination of basis elements t_w, w in one canonical intersection."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[CanonicalElement, int] | Iterable[tuple[CanonicalElement, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[CanonicalElement, int] = {}
        for w, c in items:
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: c for w, c in acc.items() if c}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasedRingElement):
            return NotImplemented
        return self.terms == other.terms

    def coefficient(self, w: CanonicalElement | AffinePerm) -> int:
        if isinstance(w, AffinePerm):
            return sum(c for x, c in self.terms.items() if x.perm == w)
        return self.terms.get(w, 0)

    def items(self) -> list[tuple[CanonicalElement, int]]:
        return sorted(self.terms.items(), key=lambda wc: (wc[0].length(), wc[0].window))

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> list[dict]:
        return [
            {"element": list(w.window), "weight": _epsilon_raw(w.window, w.lam).to_json(), "coefficient": c}
            for w, c in self.items()
        ]

    def __repr__(self) -> str:
        return "BasedRingElement(" + " + ".join(f"{c}*t{w}" for w, c in self.items()) + ")"


def _same_cell(*ws: CanonicalElement) -> Partition:
    lam = ws[0].lam
    if any(w.lam != lam for w in ws):
        raise ShapeMismatch("arguments lie in intersections for different partitions")
    return lam


def t_product(w: CanonicalElement, u: CanonicalElement) -> BasedRingElement:
    lam = _same_cell(w, u)
    out = {}
    for x, c in product_weights(epsilon(w), epsilon(u)).items():
        out[from_epsilon(lam, x)] = c
    return BasedRingElement(out)


def factorize(w: CanonicalElement) -> list[CanonicalElement]:
    """One factor per weight class: factor i keeps class i of epsilon(w), zeroes the rest."""
    x = epsilon(w)
    out = []
    for i in range(len(x.classes)):
        part = DominantWeight(tuple(c if t == i else (0,) * len(c) for t, c in enumerate(x.classes)))
        out.append(from_epsilon(w.lam, part))
    return out


def predicted_gamma(w: CanonicalElement, u: CanonicalElement, v: CanonicalElement) -> int:
    _same_cell(w, u, v)
    return product_weights(epsilon(w), epsilon(u)).get(epsilon(v), 0)


# ---------------------------------------------------------------------------
# SL and PGL variants


def sl_representative(w: CanonicalElement) -> CanonicalElement:
    """The member of the omega^n-orbit of w whose weight is the SL representative."""
    shape = GroupShape.of(w.lam)
    x = epsilon(w)
    y = restrict_sl(x, shape)
    k = (x.classes[0][0] - y.classes[0][0]) // shape.rows[0]
    return CanonicalElement(AffinePerm(win_shift(w.window, -k * w.n)), w.lam)


def sl_product(w: CanonicalElement, u: CanonicalElement) -> BasedRingElement:
    """Product of omega^n-classes, returned on SL representatives."""
    prod = t_product(sl_representative(w), sl_representative(u))
    return BasedRingElement((sl_representative(v), c) for v, c in prod.terms.items())


def pgl_product(w: CanonicalElement, u: CanonicalElement) -> BasedRingElement:
    for x in (w, u):
        if epsilon(x).total():
            raise NotInSubring(f"{x} has weight {epsilon(x)} with nonzero sum")
    prod = t_product(w, u)
    for v in prod.terms:
        if epsilon(v).total():
            raise AssertionError(f"sum-zero product left the subring at {v}")
    return prod


def n_mu_matrix_shape(lam: Partition) -> tuple[int, str]:
    k = n_mu(lam)
    return k, f"J_c is a {k}x{k} matrix algebra over the commutative ring of the canonical intersection"


# ---------------------------------------------------------------------------
# enumeration


def _weights_in_box(shape: GroupShape, bound: int) -> Iterable[DominantWeight]:
    per_class = []
    for m, _ in shape.classes:
        per_class.append([c for c in itertools.combinations_with_replacement(range(bound, -bound - 1, -1), m)])
    for combo in itertools.product(*per_class):
        yield DominantWeight(tuple(combo))


def sl_members(lam: Partition, length_bound: int) -> list[CanonicalElement]:
    """One member per omega^n-orbit, over all orbits of length <= length_bound.

    Weights are scanned in growing boxes [-B, B]; the scan stops after two
    consecutive box enlargements contribute nothing of small length.
    """
    shape = GroupShape.of(lam)
    found: dict[DominantWeight, CanonicalElement] = {}
    seen: set[DominantWeight] = set()
    idle = 0
    box = 0
    while idle < 2:
        new = 0
        for x in _weights_in_box(shape, box):
            if x in seen:
                continue
            seen.add(x)
            if restrict_sl(x, shape) != x:
                continue
            w = from_epsilon(lam, x)
            if w.length() <= length_bound:
                found[x] = w
                new += 1
        idle = idle + 1 if new == 0 else 0
        box += 1
    return sorted(found.values(), key=lambda w: (w.length(), w.window))


def _orbit_key(w: Window) -> tuple[Window, int]:
    """(normal form, k) with w = omega^{kn} * normal form and the form's omega-power in [0, n)."""
    n = len(w)
    k = win_omega_power(w) // n
    return win_shift(w, -k * n), k


class OrbitIndex:
    """Locates the enumerated representative of the omega^n-orbit of a window."""

    def __init__(self, reps: Iterable[Window]):
        self._by_key = {}
        for r in reps:
            key, k = _orbit_key(r)
            self._by_key[key] = (r, k)

    def locate(self, w: Window) -> tuple[Window, int] | None:
        """(rep, k) with w = omega^{kn} rep, or None when the orbit was not enumerated."""
        key, k = _orbit_key(w)
        got = self._by_key.get(key)
        if got is None:
            return None
        rep, k_rep = got
        return rep, k - k_rep


# ---------------------------------------------------------------------------
# verification


@dataclass
class TripleRecord:
    w: list[int]
    u: list[int]
    v: list[int]
    gamma_oracle: int
    gamma_predicted: int
    agree: bool


@dataclass
class VerificationReport:
    n: int
    lam: str
    length_bound: int
    members: int
    records: list[TripleRecord] = field(default_factory=list)
    outside_records: list[TripleRecord] = field(default_factory=list)
    sampled: bool = False
    degree_ok: bool = True
    degree_failures: list = field(default_factory=list)
    duality_checked: int = 0
    duality_failures: int = 0
    star_gamma_checked: int = 0
    star_gamma_failures: int = 0
    star_h_checked: int = 0
    star_h_failures: int = 0
    wall_time: float = 0.0

    @property
    def disagreements(self) -> int:
        return sum(1 for r in self.records + self.outside_records if not r.agree)

    @property
    def ok(self) -> bool:
        return (
            self.disagreements == 0
            and self.degree_ok
            and self.duality_failures == 0
            and self.star_gamma_failures == 0
            and self.star_h_failures == 0
        )

    def summary(self) -> dict:
        nonzero = sum(1 for r in self.records if r.gamma_oracle or r.gamma_predicted)
        return {
            "n": self.n,
            "lambda": self.lam,
            "length_bound": self.length_bound,
            "members": self.members,
            "triples": len(self.records),
            "nonzero_triples": nonzero,
            "outside_terms": len(self.outside_records),
            "disagreements": self.disagreements,
            "sampled": self.sampled,
            "degree_ok": self.degree_ok,
            "duality_checked": self.duality_checked,
            "duality_failures": self.duality_failures,
            "star_gamma_checked": self.star_gamma_checked,
            "star_gamma_failures": self.star_gamma_failures,
            "star_h_checked": self.star_h_checked,
            "star_h_failures": self.star_h_failures,
            "ok": self.ok,
        }

    def to_json(self, include_time: bool = True) -> dict:
        out = {"summary": self.summary(), "records": [asdict(r) for r in self.records]}
        out["outside_records"] = [asdict(r) for r in self.outside_records]
        out["degree_failures"] = self.degree_failures
        if include_time:
            out["wall_time"] = self.wall_time
        return out

    def dumps(self, include_time: bool = True) -> str:
        return json.dumps(self.to_json(include_time), sort_keys=True)


class GammaTable:
    """Oracle rows {v: gamma_{w,u,v}} for pairs of orbit representatives."""

    def __init__(self, rows: Mapping[tuple[Window, Window], Mapping[Window, int]], index: OrbitIndex):
        self.rows = rows
        self.index = index

    def gamma(self, w: Window, u: Window, v: Window) -> int:
        rw, kw = self.index.locate(w)
        ru, ku = self.index.locate(u)
        row = self.rows[(rw, ru)]
        return row.get(win_shift(v, -(kw + ku) * len(v)), 0)


def _row_job(args: tuple[int, int, list[tuple[Window, Window]], str | None]) -> dict:
    n, budget, pairs, cache = args
    store = KLStore(n, max_length=budget)
    if cache:
        try:
            store.load(cache)
        except FileNotFoundError:
            pass
    return _row_job_local(pairs, store, budget)


def oracle_rows(
    pairs: Sequence[tuple[Window, Window]],
    store: KLStore,
    budget: int,
    jobs: int = 1,
    cache: str | None = None,
) -> dict[tuple[Window, Window], dict[Window, int]]:
    if jobs <= 1 or len(pairs) < 2:
        return _row_job_local(pairs, store, budget)
    chunks = [list(pairs[i::jobs]) for i in range(jobs)]
    out: dict = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_row_job, [(store.n, budget, c, cache) for c in chunks]):
            out.update(part)
    return out


def _row_job_local(pairs, store, budget):
    """Rows by pair; a pair whose product breaks the degree bound maps to None."""
    out = {}
    for w, u in pairs:
        try:
            row = gamma_row(AffinePerm(w), AffinePerm(u), store, budget)
        except DegreeViolation:
            out[(w, u)] = None
            continue
        out[(w, u)] = {v.window: g for v, g in row.items()}
    return out


def _star_moves(w: AffinePerm, side: str) -> list[tuple[int, AffinePerm]]:
    test = in_DL if side == "L" else in_DR
    star = left_star if side == "L" else right_star
    return [(i, star(w, i)) for i in range(w.n) if test(w, i)]


def verify_isomorphism(
    n: int,
    lam: Partition,
    length_bound: int,
    store: KLStore | None = None,
    budget: int | None = None,
    jobs: int = 1,
    cache: str | None = None,
    star_checks: bool = True,
    sample_seed: int = 0,
) -> VerificationReport:
    """Compare Hecke-oracle structure constants with representation-ring predictions.

    ``budget`` bounds l(w) + l(u) for every Hecke product; it defaults to
    twice the length bound (plus room for star moves when those run).
    """
    if lam.size != n:
        raise ShapeMismatch(f"{lam} is not a partition of {n}")
    start = time.perf_counter()
    if budget is None:
        budget = 2 * length_bound + (4 if star_checks and n >= 3 else 0)
    if store is None:
        store = KLStore(n, max_length=budget)
        if cache:
            store.load(cache)
    members = sl_members(lam, length_bound)
    reps = [w.window for w in members]
    report = VerificationReport(n, str(lam), length_bound, len(members))
    weight = {w.window: epsilon(w) for w in members}

    pairs = [(a, b) for a in reps for b in reps]
    rows = oracle_rows(pairs, store, budget, jobs, cache)
    broken = [p for p, r in rows.items() if r is None]
    if broken:
        report.degree_ok = False
        report.degree_failures = [[list(a), list(b)] for a, b in broken]
        for p in broken:
            rows[p] = {}
    index = OrbitIndex(reps)
    table = GammaTable(rows, index)
    shape = GroupShape.of(lam)

    def member_weight(x: Window) -> DominantWeight | None:
        hit = index.locate(x)
        if hit is None:
            if not is_member(AffinePerm(x), lam):
                return None
            return _epsilon_raw(x, lam)
        rep, k = hit
        got = weight[rep]
        return DominantWeight(tuple(tuple(v + k * r for v in c) for c, r in zip(got.classes, shape.rows)))

    triple_count = len(reps) ** 3
    sample = triple_count > 100_000
    report.sampled = sample
    rng = random.Random(sample_seed)
    for a in reps:
        for b in reps:
            predicted = product_weights(weight[a], weight[b])
            target_power = win_omega_power(a) + win_omega_power(b)
            row = rows[(a, b)]
            covered = set()
            for c in reps:
                shift = target_power - win_omega_power(c)
                v = win_shift(c, shift) if shift % n == 0 else c
                covered.add(v)
                g = row.get(v, 0)
                pw = member_weight(v)
                p = predicted.get(pw, 0) if pw is not None else 0
                if sample and g == 0 and p == 0 and rng.random() >= 0.1:
                    continue
                report.records.append(TripleRecord(list(a), list(b), list(v), g, p, g == p))
            for v, g in row.items():
                if v in covered:
                    continue
                pw = member_weight(v)
                p = predicted.get(pw, 0) if pw is not None else 0
                report.outside_records.append(TripleRecord(list(a), list(b), list(v), g, p, g == p))
            # predicted terms whose elements lie beyond the enumerated orbits
            for x, p in predicted.items():
                v = from_epsilon(lam, x).window
                if v in covered or v in row:
                    continue
                report.outside_records.append(TripleRecord(list(a), list(b), list(v), 0, p, p == 0))

    # gamma_{w,u,v} = gamma_{u, v^-1, w^-1}
    for r in report.records:
        if not (r.gamma_oracle or r.gamma_predicted):
            continue
        w, u, v = tuple(r.w), tuple(r.u), tuple(r.v)
        vi = AffinePerm(v).inverse().window
        wi = AffinePerm(w).inverse().window
        report.duality_checked += 1
        if table.gamma(u, vi, wi) != r.gamma_oracle:
            report.duality_failures += 1

    if star_checks and n >= 3 and report.degree_ok:
        _star_invariance(report, reps, rows, store, budget)

    if cache:
        store.save(cache)
    report.wall_time = time.perf_counter() - start
    return report


def _star_invariance(report: VerificationReport, reps, rows, store: KLStore, budget: int) -> None:
    """gamma_{w,u,v} = gamma_{*w#, #u*', *v*'} and h_{w,u,v} = h_{*w, u*', *v*'}.

    Both sides are compared on the union of the two supports, so vanishing is
    checked as well.  The h identity needs v in the cell of w and u.
    """
    n = store.n
    lam = lambda_partition(AffinePerm(reps[0]))

    def star2(v: AffinePerm, i: int, k: int) -> AffinePerm:
        return right_star(left_star(v, i), k)

    def both_domains(v: AffinePerm, i: int, k: int) -> bool:
        return in_DL(v, i) and in_DR(v, k)

    for a in reps:
        wa = AffinePerm(a)
        left_a = _star_moves(wa, "L")
        for b in reps:
            ub = AffinePerm(b)
            right_b = _star_moves(ub, "R")
            prod = c_product(wa, ub, store, budget)
            for i, sw in left_a:
                for k, us in right_b:
                    prod2 = c_product(sw, us, store, budget)
                    support = {v for v in prod if prod[v]}
                    support |= {star2(v, i, k) for v in prod2 if prod2[v] and both_domains(v, i, k)}
                    for v in support:
                        if not both_domains(v, i, k) or lambda_partition(v) != lam:
                            continue
                        report.star_h_checked += 1
                        if prod.get(v, LaurentPoly()) != prod2.get(star2(v, i, k), LaurentPoly()):
                            report.star_h_failures += 1
            row = rows[(a, b)]
            for mid in range(n):
                if not (in_DR(wa, mid) and in_DL(ub, mid)):
                    continue
                for i, _ in left_a:
                    w2 = right_star(left_star(wa, i), mid)
                    for k, _ in right_b:
                        u2 = right_star(left_star(ub, mid), k)
                        row2 = gamma_row(w2, u2, store, budget)
                        support = {AffinePerm(v) for v in row}
                        support |= {star2(v, i, k) for v in row2 if both_domains(v, i, k)}
                        for v in support:
                            if not both_domains(v, i, k):
                                continue
                            report.star_gamma_checked += 1
                            if row.get(v.window, 0) != row2.get(star2(v, i, k), 0):
                                report.star_gamma_failures += 1
