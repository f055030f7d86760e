"""Command-line front end: ``affine-cells <command> ...``.

Exit status: 0 success, 1 invalid input, 2 a computation budget was exceeded,
3 a verification found a disagreement.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .affine_weyl import (
    AffinePerm,
    format_word,
    left_descents,
    parse_window,
    reduced_word,
    right_descents,
)
from .basedring import t_product, verify_isomorphism
from .canonical import as_member, epsilon, from_epsilon, parse_weight
from .cells import Partition, lambda_partition, mu_partition, parse_partition
from .errors import AffineCellsError, DegreeViolation, LimitExceeded, ParseError, RankMismatch
from .hecke import KLStore, default_budget, gamma_oracle, kl_polynomial
from .laurent import LaurentPoly, format_laurent

EXIT_INPUT = 1
EXIT_LIMIT = 2
EXIT_DISAGREE = 3


@dataclass
class Config:
    n: int | None
    lam: Partition | None
    max_length: int | None
    cache_path: str | None
    output: str

    def __post_init__(self) -> None:
        if self.max_length is not None and self.max_length <= 0:
            raise ParseError("--max-length must be positive")
        if self.lam is not None and self.n is not None and self.lam.size != self.n:
            raise RankMismatch(f"lambda={self.lam} does not sum to n={self.n}")


def _config(args) -> Config:
    lam = parse_partition(args.lam) if getattr(args, "lam", None) else None
    cache = os.environ.get("AFFINE_CELLS_CACHE") or args.cache
    return Config(args.n, lam, args.max_length, cache, "json" if args.json else "text")


def _window(text: str, cfg: Config) -> AffinePerm:
    w = parse_window(text, cfg.n)
    if cfg.n is None:
        cfg.n = w.n
    return w


def _desc(s: frozenset[int]) -> str:
    return "{" + ",".join(str(k) for k in sorted(s)) + "}"


def _emit(cfg: Config, text: str, data) -> None:
    print(json.dumps(data, sort_keys=True) if cfg.output == "json" else text)


def _store(cfg: Config, need: int) -> KLStore:
    budget = cfg.max_length if cfg.max_length is not None else max(default_budget(cfg.n), need)
    store = KLStore(cfg.n, max_length=budget)
    if cfg.cache_path:
        store.load(cfg.cache_path)
    return store


def _save(cfg: Config, store: KLStore) -> None:
    if cfg.cache_path:
        store.save(cfg.cache_path)


# ---------------------------------------------------------------------------
# commands


def cmd_elt(args, cfg: Config) -> int:
    a = _window(args.a, cfg)
    op = args.op
    if op == "mul":
        if args.b is None:
            raise ParseError("elt mul needs two windows")
        b = _window(args.b, cfg)
        r = a * b
        _emit(cfg, str(r), {"window": list(r.window)})
    elif op == "len":
        _emit(cfg, str(a.length()), {"length": a.length()})
    elif op == "inv":
        r = a.inverse()
        _emit(cfg, str(r), {"window": list(r.window)})
    elif op == "word":
        w = reduced_word(a)
        _emit(cfg, format_word(w), {"word": format_word(w)})
    elif op == "desc":
        R, L = right_descents(a), left_descents(a)
        _emit(cfg, f"R={_desc(R)} L={_desc(L)}", {"right": sorted(R), "left": sorted(L)})
    return 0


def cmd_cell(args, cfg: Config) -> int:
    w = _window(args.w, cfg)
    lam, mu = lambda_partition(w), mu_partition(w)
    _emit(cfg, f"lambda={lam} mu={mu}", {"lambda": list(lam.parts), "mu": list(mu.parts)})
    return 0


def cmd_eps(args, cfg: Config) -> int:
    w = _window(args.w, cfg)
    lam = cfg.lam or lambda_partition(w)
    x = epsilon(as_member(w, lam))
    _emit(cfg, str(x), {"lambda": list(lam.parts), "weight": x.to_json()})
    return 0


def cmd_eps_inv(args, cfg: Config) -> int:
    if cfg.lam is None:
        raise ParseError("eps-inv needs --lambda")
    x = parse_weight(args.weight)
    w = from_epsilon(cfg.lam, x)
    _emit(cfg, str(w.perm), {"window": list(w.window), "weight": x.to_json()})
    return 0


def cmd_kl(args, cfg: Config) -> int:
    y, w = _window(args.y, cfg), _window(args.w, cfg)
    store = _store(cfg, w.length())
    p = kl_polynomial(y, w, store)
    _save(cfg, store)
    text = format_laurent(LaurentPoly.from_vpoly(p))
    _emit(cfg, text, {"coefficients_in_q2": list(p), "polynomial": text})
    return 0


def cmd_gamma(args, cfg: Config) -> int:
    w, u, v = (_window(t, cfg) for t in (args.w, args.u, args.v))
    need = w.length() + u.length()
    store = _store(cfg, need)
    g = gamma_oracle(w, u, v, store, max(store.max_length, need) if cfg.max_length is None else cfg.max_length)
    _save(cfg, store)
    _emit(cfg, str(g), {"gamma": g})
    return 0


def cmd_jprod(args, cfg: Config) -> int:
    w, u = _window(args.w, cfg), _window(args.u, cfg)
    lam = cfg.lam or lambda_partition(w)
    prod = t_product(as_member(w, lam), as_member(u, lam))
    lines, data = [], []
    for v, c in prod.items():
        x = epsilon(v)
        lines.append(f"{c} {v.perm} {x}")
        data.append({"window": list(v.window), "weight": x.to_json(), "coefficient": c})
    _emit(cfg, "\n".join(lines) if lines else "0", {"terms": data})
    return 0


def cmd_verify(args, cfg: Config) -> int:
    if cfg.lam is None:
        raise ParseError("verify needs --lambda")
    if cfg.n is None:
        cfg.n = cfg.lam.size
    bound = cfg.max_length if cfg.max_length is not None else 6
    report = verify_isomorphism(
        cfg.n, cfg.lam, bound, jobs=args.jobs, cache=cfg.cache_path, star_checks=not args.no_star
    )
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.dumps(include_time=False))
    if cfg.output == "json":
        print(report.dumps(include_time=False))
    else:
        s = report.summary()
        print(" ".join(f"{k}={v}" for k, v in s.items()))
        print(f"wall_time={report.wall_time:.2f}s")
    return 0 if report.ok else EXIT_DISAGREE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="rank; inferred from the window length when omitted")
    common.add_argument("--lambda", dest="lam", default=None, help="partition such as 2,1")
    common.add_argument("--max-length", type=int, default=None, help="KL budget, or the length bound for verify")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cache", default=None, help="KL cache file (AFFINE_CELLS_CACHE overrides)")

    p = argparse.ArgumentParser(prog="affine-cells", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("elt", parents=[common], help="group operations on windows")
    e.add_argument("op", choices=["len", "mul", "inv", "word", "desc"])
    e.add_argument("a")
    e.add_argument("b", nargs="?")
    e.set_defaults(func=cmd_elt)

    c = sub.add_parser("cell", parents=[common], help="lambda(w) and mu(w)")
    c.add_argument("w")
    c.set_defaults(func=cmd_cell)

    c = sub.add_parser("eps", parents=[common], help="dominant weight of a member")
    c.add_argument("w")
    c.set_defaults(func=cmd_eps)

    c = sub.add_parser("eps-inv", parents=[common], help="member with a given weight")
    c.add_argument("weight")
    c.set_defaults(func=cmd_eps_inv)

    c = sub.add_parser("kl", parents=[common], help="Kazhdan-Lusztig polynomial P_{y,w}")
    c.add_argument("y")
    c.add_argument("w")
    c.set_defaults(func=cmd_kl)

    c = sub.add_parser("gamma", parents=[common], help="structure constant from the Hecke algebra")
    c.add_argument("w")
    c.add_argument("u")
    c.add_argument("v")
    c.set_defaults(func=cmd_gamma)

    c = sub.add_parser("jprod", parents=[common], help="predicted product t_w t_u")
    c.add_argument("w")
    c.add_argument("u")
    c.set_defaults(func=cmd_jprod)

    c = sub.add_parser("verify", parents=[common], help="compare predictions with the Hecke oracle")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--report", default=None, help="write the JSON report here")
    c.add_argument("--no-star", action="store_true", help="skip star-operation invariance checks")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except DegreeViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except AffineCellsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
