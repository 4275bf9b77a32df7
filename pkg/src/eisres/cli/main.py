"""``eisres`` command line: field-info | zeta | residue | verify.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for a bad
configuration or specification.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from ..field import SignCharacter
from ..nori import TorusContext
from ..nori.residue import residue_main, residue_normalized
from ..zeta import DivergenceError, F_oracle, F_special_value, ZetaQuery, shintani_zeta, special_value
from .config import ConfigError, RunConfig, load_field, parse_alpha, parse_h, parse_ideal, parse_point
from .report import Check, Report
from .suites import SUITES, run_suite

__all__ = ["build_parser", "main", "cmd_field_info", "cmd_zeta", "cmd_residue", "cmd_verify"]


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default="Q(sqrt2)", help="built-in name (Q, Q(sqrt2), Q(sqrt5)), JSON file or inline JSON")
    p.add_argument("--level", type=int, default=3, help="torsion level n")
    p.add_argument("--weight", type=int, default=2, help="k")
    p.add_argument("--truncation", type=float, default=1e4, help="cut-off R for |N(ρ)|")
    p.add_argument("--jet-degree", type=int, default=4, help="jet truncation K")
    p.add_argument("--precision", type=int, default=50, help="decimal digits of the field embeddings")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="omit wall times (byte-stable reports)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eisres", description="Partial zeta values and Eisenstein residues of totally real fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="discriminant, different, units, dual lattice")
    _common(p)

    p = sub.add_parser("zeta", help="ζ(b, f, x, 1-k) from the Hecke series, with the exact oracle")
    _common(p)
    p.add_argument("--b", default=None, help="ideal b as ';'-separated generators (default O)")
    p.add_argument("--f", default=None, help="ideal f (default O)")
    p.add_argument("--x", default=None, help="coset point, comma-separated rationals (default 0)")
    p.add_argument("--eps", choices=("auto", "trivial", "all"), default="auto",
                   help="auto: ζ through the parity-matched character; trivial/all: F with that character")

    p = sub.add_parser("residue", help="residue of Eis^{gk}(α) at the cusp h")
    _common(p)
    p.add_argument("--alpha", required=True, help="distribution 'c1,c2|d1,d2@l; ...'")
    p.add_argument("--h", default="id", help="level matrix 'a;b;c;d' (default identity)")

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p)
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        field=args.field,
        level=args.level,
        weight=args.weight,
        truncation=args.truncation,
        jet_degree=args.jet_degree,
        precision=args.precision,
        format=args.format,
        seed=args.seed,
        out=args.out,
        timing=not args.no_timing,
    )


def _rows(m) -> str:
    return "; ".join(",".join(str(c) for c in r) for r in m)


def cmd_field_info(cfg: RunConfig) -> Report:
    F = load_field(cfg.field, cfg.precision)
    rep = Report("field-info", cfg.header(), timing=cfg.timing)
    from ..field import FractionalIdeal, ray_units

    O = FractionalIdeal.unit(F)
    rep.note("name", F.name)
    rep.note("degree", F.g)
    rep.note("polynomial", ",".join(map(str, F.poly)))
    rep.note("discriminant", F.discriminant)
    rep.note("integral_basis", " ".join(repr(b) for b in F.basis_elements()))
    rep.note("different_hnf", _rows(F.different.basis))
    rep.note("different_norm", F.different.norm)
    rep.note("dual_lattice_hnf", _rows(O.trace_dual().basis))
    rep.note("fundamental_units", " ".join(repr(u) for u in F.fundamental_units) or "none")
    units = ray_units(F, cfg.level)
    rep.note(f"ray_unit_generator_mod_{cfg.level}", repr(units.generator) if units.generator is not None else "none")
    return rep


def cmd_zeta(cfg: RunConfig, b: str | None, f: str | None, x: str | None, eps_mode: str = "auto") -> Report:
    F = load_field(cfg.field, cfg.precision)
    bi, fi = parse_ideal(b, F), parse_ideal(f, F)
    xe = parse_point(x, F) if x else F.zero
    k = cfg.weight
    rep = Report("zeta", cfg.header(), timing=cfg.timing)
    params = {"R": cfg.truncation, "k": k}
    t0 = time.perf_counter()
    try:
        if eps_mode == "auto":
            if k == 1:
                oracle = shintani_zeta(bi, fi, xe, 0, level=cfg.level)
                rep.add(Check("zeta.oracle_only", None, oracle, None, None, params, time.perf_counter() - t0))
                rep.note("note", "k = 1 is not reachable by the series; oracle value reported")
                return rep
            res = special_value(bi, fi, xe, k, bound=cfg.truncation, level=cfg.level)
            rep.add(Check("zeta.special_value", res.real, res.oracle, res.relative_difference, 1e-6, {**params, "tail": res.tail}, time.perf_counter() - t0))
        else:
            eps = SignCharacter.trivial(F.g) if eps_mode == "trivial" else SignCharacter((-1,) * F.g)
            q = ZetaQuery(F, bi, fi, xe, eps, float(k), bound=cfg.truncation, level=cfg.level)
            res = F_special_value(q, k)
            oracle = F_oracle(q, k) if F.g <= 2 else None
            value = 0j if res.vanishing else res.value
            resid = None if oracle is None else (abs(value - float(oracle)) / abs(float(oracle)) if oracle else abs(value))
            rep.add(Check(f"zeta.F eps={eps_mode}", value, oracle, resid, 1e-6, {**params, "vanishing": res.vanishing}, time.perf_counter() - t0))
    except (DivergenceError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return rep


def cmd_residue(cfg: RunConfig, alpha_spec: str, h_spec: str | None) -> Report:
    F = load_field(cfg.field, cfg.precision)
    alpha = parse_alpha(alpha_spec, F, cfg.level)
    h = parse_h(h_spec, F, cfg.level)
    if cfg.level < 3:
        raise ConfigError("--level must be >= 3 for residues")
    ctx = TorusContext.standard(F, cfg.level, bound=cfg.truncation, jet_degree=cfg.jet_degree)
    rep = Report("residue", {**cfg.header(), "alpha": alpha_spec, "h": h_spec or "id"}, timing=cfg.timing)
    for name, fn in (("residue.main", residue_main), ("residue.normalized", residue_normalized)):
        t0 = time.perf_counter()
        r = fn(ctx, alpha, h, cfg.weight)
        rep.add(Check(name, r.value.real, r.oracle, r.residual, 1e-6, {"R": cfg.truncation, "k": cfg.weight, "N(b)": r.ideal_norm}, time.perf_counter() - t0))
    return rep


def cmd_verify(cfg: RunConfig, suite: str) -> Report:
    rep = Report("verify", {**cfg.header(), "suite": suite}, timing=cfg.timing)
    for check in run_suite(suite, cfg):
        rep.add(check)
    return rep


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "field-info":
            rep = cmd_field_info(cfg)
        elif args.command == "zeta":
            rep = cmd_zeta(cfg, args.b, args.f, args.x, args.eps)
        elif args.command == "residue":
            rep = cmd_residue(cfg, args.alpha, args.h)
        else:
            rep = cmd_verify(cfg, args.suite)
    except ConfigError as exc:
        print(f"eisres: error: {exc}", file=sys.stderr)
        return 2
    text = rep.render(cfg.format)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not rep.passed:
        print(f"eisres: failing checks: {', '.join(rep.failing)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
