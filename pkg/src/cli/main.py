"""
Command-line front end.

    python -m src.cli.main verlinde-dim --group A1 --level 2 --genus 2
    python -m src.cli.main fusion-table --group A2 --level 1 --format json
    python -m src.cli.main so3-table --k 3
    python -m src.cli.main koszul --n 2 --beta "2,0;0,2"

Exit codes: 0 success, 1 refused computation or failed check, 2 bad input.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import pandas as pd
from rich.console import Console

from configs.settings import Settings, get_settings
from src.cli import render
from src.cli.cache import cached_ring
from src.errors import ComputationRefused, ConsistencyError, InvalidInputError
from src.koszul.complex import parse_beta, spectral_sequence_trace, twisted_cohomology_dims
from src.lie.root_system import level_weights, parse_group
from src.so3.twisted import (
    TwistingType,
    graded_ring,
    k_table,
    rank_check,
    rk_ring,
    twistings_for,
)
from src.verlinde import core, oracle
from src.verlinde.fusion import FusionRing

console = Console()
err_console = Console(stderr=True)

COMMANDS = (
    "fusion-table",
    "verlinde-dim",
    "characters",
    "regular-points",
    "so3-table",
    "so3-fusion",
    "koszul",
    "verify",
)
GROUP_COMMANDS = {"fusion-table", "verlinde-dim", "characters", "regular-points", "verify"}
GENUS_COMMANDS = {"verlinde-dim", "verify"}


@dataclass(frozen=True)
class JobConfig:
    command: str
    group: Optional[str] = None
    level: int = 0
    genus: int = 1
    twisting: Optional[TwistingType] = None
    k: Optional[int] = None
    fmt: str = "text"
    cache_dir: Optional[Path] = None
    n: int = 1
    beta: Optional[Tuple[Tuple[int, ...], ...]] = None
    truncation: Optional[int] = None
    verify: bool = False
    max_basis: int = 60
    scan_max_rank: int = oracle.MAX_SCAN_RANK

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidInputError(f"unknown command {self.command!r}")
        if self.fmt not in render.FORMATS:
            raise InvalidInputError(f"--format must be one of {', '.join(render.FORMATS)}")
        if self.command in GROUP_COMMANDS:
            if not self.group:
                raise InvalidInputError(f"{self.command} needs --group, e.g. --group A2")
            if self.level < 0:
                raise InvalidInputError(f"--level must be >= 0, got {self.level}")
        if self.command in GENUS_COMMANDS and self.genus < 1:
            raise InvalidInputError(f"--genus must be >= 1, got {self.genus}")
        if self.command == "so3-table" and (self.k is None or self.k < 1):
            raise InvalidInputError("so3-table needs --k >= 1")
        if self.command == "so3-fusion" and self.twisting is None:
            raise InvalidInputError("so3-fusion needs --k, --eps1 and --eps2")
        if self.command == "koszul" and self.beta is None:
            raise InvalidInputError('koszul needs --beta, e.g. --beta "2,0;0,2"')


def _sign(text: Optional[str], flag: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise InvalidInputError(f"{flag} must be + or -, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m src.cli.main",
        description="Exact Verlinde rings, SO(3) twisted K-groups and Koszul cohomology.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--group", help="family and rank, e.g. A1, B2, D4")
    parser.add_argument("--level", type=int, default=0, help="level h >= 0")
    parser.add_argument("--genus", type=int, default=1)
    parser.add_argument("--k", type=int, help="SO(3) twisting level")
    parser.add_argument("--eps1", help="SO(3) grading sign, + or -")
    parser.add_argument("--eps2", help="SO(3) torsion sign, + or -")
    parser.add_argument("--format", dest="fmt", default="text", choices=render.FORMATS)
    parser.add_argument("--cache-dir", type=Path, help="overrides VERLINDE_CACHE_DIR")
    parser.add_argument("--no-cache", action="store_true")
    parser.add_argument("--n", type=int, default=None, help="torus rank for koszul")
    parser.add_argument("--beta", help='integer matrix rows, e.g. "2,0;0,2"')
    parser.add_argument("--truncation", type=int, help="Sym-degree truncation D (default n + 2)")
    parser.add_argument("--verify", action="store_true", help="run every applicable oracle as well")
    return parser


def config_from_args(args: argparse.Namespace, settings: Settings) -> JobConfig:
    twisting = None
    if args.command == "so3-fusion" and args.k is not None:
        twisting = TwistingType(_sign(args.eps1, "--eps1"), _sign(args.eps2, "--eps2"), args.k)
    beta = parse_beta(args.beta) if args.beta else None
    n = args.n if args.n is not None else (len(beta) if beta else 1)
    no_cache = args.no_cache or settings.no_cache
    return JobConfig(
        command=args.command,
        group=args.group,
        level=args.level,
        genus=args.genus,
        twisting=twisting,
        k=args.k,
        fmt=args.fmt,
        cache_dir=None if no_cache else (args.cache_dir or settings.cache_dir),
        n=n,
        beta=beta,
        truncation=args.truncation,
        verify=args.verify,
        max_basis=settings.max_basis,
        scan_max_rank=settings.scan_max_rank,
    )


def _level_data(config: JobConfig) -> core.LevelData:
    rs = parse_group(config.group or "")
    size = len(level_weights(rs, config.level))
    if size > config.max_basis:
        raise ComputationRefused(
            f"{rs.name} level {config.level} has {size} weights, above VERLINDE_MAX_BASIS={config.max_basis}"
        )
    return core.level_data(rs, config.level)


def _ring(config: JobConfig, ld: core.LevelData) -> FusionRing:
    return cached_ring(config.cache_dir, ld.rs.family, ld.rs.rank, ld.h, lambda: core.fusion_ring(ld))


def _run_checks(config: JobConfig, ld: core.LevelData, ring: Optional[FusionRing] = None) -> List[oracle.OracleCheck]:
    return oracle.verify_all(ld, config.genus, ring=ring, max_rank=config.scan_max_rank)


def _report_checks(checks: List[oracle.OracleCheck]) -> bool:
    for c in checks:
        mark = "[green]ok[/green]" if c.passed else "[red]FAIL[/red]"
        err_console.print(f"{mark} {c.name}: {c.detail}")
    return all(c.passed for c in checks)


def _fusion_table(config: JobConfig) -> int:
    ld = _level_data(config)
    ring = _ring(config, ld)
    render.emit(console, config.fmt, ring.to_json(), ring.to_frame(), "", render.fusion_table(ring))
    return _maybe_verify(config, ld, ring)


def _verlinde_dim(config: JobConfig) -> int:
    ld = _level_data(config)
    dim = core.verlinde_dimension(ld, config.genus)
    doc = {"group": ld.group, "level": ld.h, "genus": config.genus, "dimension": dim, "f_order": core.f_order(ld)}
    if config.fmt == "text":
        console.out(str(dim), highlight=False)
    else:
        render.emit(console, config.fmt, doc, pd.DataFrame([doc]), "")
    return _maybe_verify(config, ld)


def _characters(config: JobConfig) -> int:
    ld = _level_data(config)
    points = core.regular_points(ld)
    table = core.character_table(ld)
    frame = render.characters_frame(points, table)
    render.emit(console, config.fmt, render.characters_doc(ld, points, table), frame, f"{ld.group} level {ld.h} characters")
    return _maybe_verify(config, ld)


def _regular_points(config: JobConfig) -> int:
    ld = _level_data(config)
    points = core.regular_points(ld)
    delta_sq = [core.weyl_denominator_sq(ld, p) for p in points]
    frame = render.points_frame(ld, points, delta_sq)
    doc = {"group": ld.group, "level": ld.h, "f_order": core.f_order(ld), "points": frame.to_dict(orient="records")}
    render.emit(console, config.fmt, doc, frame, f"{ld.group} level {ld.h}: |F| = {core.f_order(ld)}")
    return _maybe_verify(config, ld)


def _maybe_verify(config: JobConfig, ld: core.LevelData, ring: Optional[FusionRing] = None) -> int:
    if not config.verify:
        return 0
    return 0 if _report_checks(_run_checks(config, ld, ring)) else 1


def _verify(config: JobConfig) -> int:
    ld = _level_data(config)
    checks = _run_checks(config, ld, _ring(config, ld))
    frame = render.checks_frame(checks)
    doc = {
        "group": ld.group,
        "level": ld.h,
        "genus": config.genus,
        "checks": [{"check": c.name, "passed": bool(c.passed), "detail": c.detail} for c in checks],
    }
    render.emit(console, config.fmt, doc, frame, f"{ld.group} level {ld.h} genus {config.genus}")
    failed = [c.name for c in checks if not c.passed]
    if failed:
        err_console.print(f"[red]Oracle mismatch:[/red] {', '.join(failed)}")
        return 1
    return 0


def _so3_table(config: JobConfig) -> int:
    k = config.k or 1
    twistings = twistings_for(k) + twistings_for(k + 1)
    entries = [k_table(t) for t in twistings]
    rows = render.so3_rows(entries)
    render.emit(console, config.fmt, rows, pd.DataFrame(rows), f"SO(3) twisted K-groups, k = {k}, {k + 1}")
    if config.verify:
        bad = [t.label for t in twistings if not rank_check(t).ok]
        for label in bad:
            err_console.print(f"[red]Rank mismatch[/red] {label}")
        return 1 if bad else 0
    return 0


def _so3_fusion(config: JobConfig) -> int:
    t = config.twisting
    assert t is not None
    if (t.eps1, t.eps2) == (-1, -1) and not t.even:
        ring = graded_ring(t.k)
        if config.verify and (ring.axiom_violations() or not ring.square_sum_identity_holds()):
            err_console.print(f"[red]Graded ring check failed[/red] {ring.axiom_violations()}")
            return 1
        render.emit(console, config.fmt, render.graded_doc(ring), render.graded_frame(ring), f"Verlinde ring of {t}")
        return 0
    if (t.eps1, t.eps2) == (1, -1) and t.even:
        ring_rk = rk_ring(-1, 1, t.k)
        if config.verify and not ring_rk.representative_independent():
            err_console.print(f"[red]Products of {ring_rk.label} depend on representatives[/red]")
            return 1
        render.emit(console, config.fmt, render.rk_doc(ring_rk), render.rk_frame(ring_rk), f"{ring_rk.label} for {t}")
        return 0
    raise ComputationRefused(f"twisting {t} carries no Pontryagin product; use (+,-,even) or (-,-,odd)")


def _koszul(config: JobConfig) -> int:
    beta = config.beta
    assert beta is not None
    D = config.truncation if config.truncation is not None else config.n + 2
    dims = twisted_cohomology_dims(config.n, beta, D)
    pages = spectral_sequence_trace(config.n, beta, D)
    render.emit(
        console,
        config.fmt,
        render.koszul_doc(config.n, beta, D, dims, pages),
        render.koszul_frame(dims),
        f"H(e, s), even={dims.even} odd={dims.odd} stable={dims.stable}",
    )
    if not dims.d_squared_zero:
        err_console.print("[red]d^2 != 0[/red]")
        return 1
    if config.verify and not dims.stable:
        err_console.print(f"[red]Not stable:[/red] truncations at D = {D} and {D + 1} disagree")
        return 1
    return 0


HANDLERS = {
    "fusion-table": _fusion_table,
    "verlinde-dim": _verlinde_dim,
    "characters": _characters,
    "regular-points": _regular_points,
    "so3-table": _so3_table,
    "so3-fusion": _so3_fusion,
    "koszul": _koszul,
    "verify": _verify,
}


def run(config: JobConfig) -> int:
    try:
        config.validate()
        return HANDLERS[config.command](config)
    except InvalidInputError as e:
        err_console.print(f"[red]Invalid input:[/red] {e}")
        return 2
    except ComputationRefused as e:
        err_console.print(f"[red]Refused:[/red] {e}")
        return 1
    except ConsistencyError as e:
        err_console.print(f"[red]Consistency check failed:[/red] {e}")
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings()
        config = config_from_args(args, settings)
    except (InvalidInputError, ValueError) as e:
        err_console.print(f"[red]Invalid input:[/red] {e}")
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
