"""Command-line interface.

Exit codes: 0 success, 2 mathematical negative (no recurrence found, shape
mismatch, functional equation violated), 3 resource limit (unstable
liftable count, enumeration budget), 4 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import RatFn, TruncSeries
from .algebra.fields import is_prime, prime_factors
from .counting import (BudgetExceeded, CountCache, DEFAULT_BUDGET, DEFAULT_WINDOW,
                       SmoothnessAuditError, Unstable, count_sequence)
from .groth import (GrothError, SpecializationMap, chi_c_cover, parse_cover_spec, parse_hodge,
                    parse_k0, power_cover_spec, specialize)
from .rationality import (CurveShape, NotFound, curve_shape_check, denominator_shape,
                          find_recurrence, functional_equation_check)
from .series import SeriesError, hasse_weil, igusa_series, serre_series, sym_product_counts
from .varieties import VarietyError, load_variety

EXIT_OK, EXIT_NEGATIVE, EXIT_RESOURCE, EXIT_INPUT = 0, 2, 3, 4


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    weil_order: int = 8
    igusa_order: int = 10
    stab_window: int = DEFAULT_WINDOW
    cache_dir: str | None = None
    output: str = "text"

    def __post_init__(self):
        if self.workers < 1:
            raise InputError("--workers must be >= 1")
        if self.budget < 1:
            raise InputError("--budget must be >= 1")
        if self.stab_window < 1:
            raise InputError("--stab-window must be >= 1")

    def cache(self) -> CountCache | None:
        return CountCache(self.cache_dir) if self.cache_dir else None


def _config(args) -> RunConfig:
    cache_dir = os.environ.get("ZETAFORGE_CACHE") or args.cache_dir
    if args.no_cache:
        cache_dir = None
    return RunConfig(workers=args.workers, budget=args.budget,
                     stab_window=args.stab_window, cache_dir=cache_dir, output=args.output)


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _base_field(args) -> tuple[int, int]:
    """(p, m) from --q or from --p/--m."""
    if args.q is not None:
        facs = prime_factors(args.q) if args.q > 1 else []
        if len(facs) != 1:
            raise InputError(f"--q {args.q} is not a prime power")
        p, m, r = facs[0], 0, args.q
        while r > 1:
            r //= p
            m += 1
        if args.p is not None and args.p != p:
            raise InputError("--p disagrees with --q")
        return p, m
    if args.p is None:
        raise InputError("give --p (and optionally --m) or --q")
    return args.p, args.m or 1


def _prime(args) -> int:
    if args.p is None:
        raise InputError("--p is required")
    return args.p


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")


def _emit(cfg: RunConfig, report: dict, text: str) -> None:
    if cfg.output == "json":
        print(json.dumps(report, indent=2))
    else:
        print(text)


def _series_lines(s: TruncSeries) -> str:
    return "\n".join(f"{n}\t{_frac(c)}" for n, c in enumerate(s))


def _ratfn_json(f: RatFn) -> dict:
    num, den = f.cleared()
    return {"numer": [str(c) for c in num], "denom": [str(c) for c in den], "text": str(f)}


def _rationality_report(series: TruncSeries, q: int, nvars: int, args) -> tuple[dict, str, bool]:
    rec = find_recurrence(list(series), min_guard=args.min_guard)
    rep: dict = {"series": [[str(n), _frac(c)] for n, c in enumerate(series)]}
    lines = [_series_lines(series)]
    if isinstance(rec, NotFound):
        rep.update(found=False, reason=rec.reason)
        lines.append(f"rational: not found ({rec.reason})")
        return rep, "\n".join(lines), False
    span = max(2 * nvars, 1)
    shape = denominator_shape(rec.ratfn, q, (-span, span), (1, max(1, len(series) - 1)))
    rep.update(found=True, ratfn=_ratfn_json(rec.ratfn),
               recurrence_order=str(rec.recurrence_order), guard=str(rec.guard),
               shape=None if isinstance(shape, NotFound) else [[str(a), str(b)] for a, b in shape.pairs])
    lines.append(f"rational: {rec.ratfn}")
    lines.append(f"recurrence order: {rec.recurrence_order}")
    lines.append(f"guard: {rec.guard}")
    lines.append(f"shape: {'not found' if isinstance(shape, NotFound) else shape}")
    return rep, "\n".join(lines), not isinstance(shape, NotFound)


def cmd_count(args, cfg: RunConfig) -> int:
    V = load_variety(args.variety)
    if args.n is None:
        raise InputError("--n is required")
    if args.kind == "weil":
        p, m = _base_field(args)
        _check_prime(p)
        if args.n < 1:
            raise InputError("Weil counts start at n = 1")
    else:
        p, m = _prime(args), 1
        _check_prime(p)
        if args.n < 0:
            raise InputError("level n must be >= 0")
    seq = count_sequence(V, args.kind, p, args.n, m=m, window=cfg.stab_window,
                         workers=cfg.workers, budget=cfg.budget, cache=cfg.cache())
    value, meta = seq[args.n], seq.meta[-1]
    _emit(cfg, {"command": "count", "kind": args.kind, "p": str(p), "m": str(m),
                "n": str(args.n), "value": str(value), "meta": meta}, str(value))
    return EXIT_OK


def cmd_zeta(args, cfg: RunConfig) -> int:
    V = load_variety(args.variety)
    p, m = _base_field(args)
    _check_prime(p)
    order = args.order or cfg.weil_order
    seq = count_sequence(V, "weil", p, order, m=m, workers=cfg.workers, budget=cfg.budget,
                         cache=cfg.cache())
    z = hasse_weil(seq, order)
    rep, text, ok = _rationality_report(z, p ** m, V.nvars, args)
    rep = {"command": "zeta", "q": str(p ** m), "counts": [str(v) for v in seq.values], **rep}
    _emit(cfg, rep, text)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _padic_cmd(args, cfg: RunConfig, kind: str) -> int:
    V = load_variety(args.variety)
    p = _prime(args)
    _check_prime(p)
    order = args.order or cfg.igusa_order
    seq = count_sequence(V, kind, p, order, window=cfg.stab_window, workers=cfg.workers,
                         budget=cfg.budget, cache=cfg.cache())
    s = igusa_series(seq, order) if kind == "igusa" else serre_series(seq, order)
    rep, text, ok = _rationality_report(s, p, V.nvars, args)
    rep = {"command": kind, "p": str(p), "meta": list(seq.meta), **rep}
    _emit(cfg, rep, text)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_igusa(args, cfg):
    return _padic_cmd(args, cfg, "igusa")


def cmd_serre(args, cfg):
    return _padic_cmd(args, cfg, "serre")


def cmd_kapranov(args, cfg: RunConfig) -> int:
    V = load_variety(args.variety)
    p, m = _base_field(args)
    _check_prime(p)
    q = p ** m
    order = args.order or cfg.weil_order
    seq = count_sequence(V, "weil", p, order, m=m, workers=cfg.workers, budget=cfg.budget,
                         cache=cfg.cache())
    b = sym_product_counts(seq, order)
    rep: dict = {"command": "kapranov", "q": str(q), "sym_counts": [str(x) for x in b]}
    lines = ["\n".join(f"{n}\t{x}" for n, x in enumerate(b))]
    rec = find_recurrence(b, min_guard=args.min_guard)
    if isinstance(rec, NotFound):
        rep.update(found=False, reason=rec.reason)
        lines.append(f"rational: not found ({rec.reason})")
        _emit(cfg, rep, "\n".join(lines))
        return EXIT_NEGATIVE
    rep.update(found=True, ratfn=_ratfn_json(rec.ratfn), guard=str(rec.guard))
    lines += [f"rational: {rec.ratfn}", f"guard: {rec.guard}"]
    shape = curve_shape_check(rec.ratfn, q)
    if not isinstance(shape, CurveShape):
        rep.update(curve_shape="mismatch", reason=shape.reason)
        lines.append(f"curve shape: mismatch ({shape.reason})")
        _emit(cfg, rep, "\n".join(lines))
        return EXIT_NEGATIVE
    fe = functional_equation_check(rec.ratfn, q, shape.genus)
    rep.update(curve_shape="ok", genus=str(shape.genus),
               functional_equation="holds" if fe.holds else "violated",
               residual=_ratfn_json(fe.residual))
    lines += [f"genus: {shape.genus}",
              "functional equation: " + ("holds" if fe.holds else f"violated, residual {fe.residual}")]
    _emit(cfg, rep, "\n".join(lines))
    return EXIT_OK if fe.holds else EXIT_NEGATIVE


def _assignments(args, kind: str) -> dict:
    out = {}
    for item in args.assign or []:
        name, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"--assign expects NAME=VALUE, got {item!r}")
        out[name.strip().strip('"')] = parse_hodge(val) if kind == "hodge" else Fraction(val)
    return out


def _spec_maps(args) -> list[tuple[str, SpecializationMap]]:
    out = []
    for spec in args.spec or []:
        if spec.startswith("count:"):
            try:
                q = int(spec.split(":", 1)[1])
            except ValueError:
                raise InputError(f"bad specialisation {spec!r}") from None
            out.append((spec, SpecializationMap("counting", q, _assignments(args, "counting"))))
        elif spec == "euler":
            out.append((spec, SpecializationMap("euler", None, _assignments(args, "euler"))))
        elif spec == "hodge":
            out.append((spec, SpecializationMap("hodge", None, _assignments(args, "hodge"))))
        else:
            raise InputError(f"unknown specialisation {spec!r}; use count:q, euler or hodge")
    return out


def cmd_groth(args, cfg: RunConfig) -> int:
    given = [x is not None for x in (args.cover, args.expr, args.power_cover)]
    if sum(given) != 1:
        raise InputError("give exactly one of --cover, --expr, --power-cover")
    maps = _spec_maps(args)
    rep: dict = {"command": "groth"}
    lines = []
    if args.expr is not None:
        result = parse_k0(args.expr)
    else:
        if args.cover is not None:
            spec = parse_cover_spec(Path(args.cover).read_text(encoding="utf-8"))
        else:
            spec = power_cover_spec(args.power_cover)
        table, result = chi_c_cover(spec)
        rep["table"] = {str(d): str(t) for d, t in table.items()}
        lines += [f"table {d}\t{t}" for d, t in table.items()]
    rep["result"] = str(result)
    lines.append(f"result\t{result}")
    rep["specializations"] = {}
    for name, smap in maps:
        val = specialize(result, smap)
        rep["specializations"][name] = _frac(val) if isinstance(val, Fraction) else str(val)
        lines.append(f"{name}\t{val}")
    _emit(cfg, rep, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of ring tuples to visit")
    common.add_argument("--stab-window", type=int, default=DEFAULT_WINDOW)
    common.add_argument("--cache-dir", default=str(Path.home() / ".cache" / "zetaforge"),
                        help="overridden by $ZETAFORGE_CACHE")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--output", choices=("text", "json"), default="text")

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--variety", required=True)
    field.add_argument("--p", type=int)
    field.add_argument("--m", type=int)
    field.add_argument("--q", type=int)
    field.add_argument("--order", type=int)
    field.add_argument("--min-guard", type=int, default=3)

    parser = argparse.ArgumentParser(prog="zetaforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common, field], help="print one exact count")
    p.add_argument("--kind", choices=("weil", "igusa", "serre"), required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_count)

    for name, func, hlp in (("zeta", cmd_zeta, "Hasse-Weil series Z(T)"),
                            ("igusa", cmd_igusa, "Igusa series Q(T)"),
                            ("serre", cmd_serre, "Serre series P(T) of liftable counts"),
                            ("kapranov", cmd_kapranov, "symmetric-product counts and curve checks")):
        p = sub.add_parser(name, parents=[common, field], help=hlp)
        p.set_defaults(func=func)

    p = sub.add_parser("groth", parents=[common], help="chi_c of covers and specialisations")
    p.add_argument("--cover", help="CoverSpec JSON file")
    p.add_argument("--expr", help="K0 element expression")
    p.add_argument("--power-cover", type=int, metavar="N",
                   help="the n-th power cover of G_m")
    p.add_argument("--spec", action="append", help="count:q | euler | hodge (repeatable)")
    p.add_argument("--assign", action="append", metavar="NAME=VALUE",
                   help="value of a symbol under the requested specialisations")
    p.set_defaults(func=cmd_groth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except (InputError, VarietyError, GrothError, SmoothnessAuditError, SeriesError,
            FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (Unstable, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
