"""On-disk FusionRing cache keyed by (family, rank, level, code version)."""

import json
import os
from pathlib import Path
from typing import Any, Callable, Optional

from rich.console import Console

from src import __version__
from src.errors import CacheError
from src.lie.root_system import build, level_weights
from src.verlinde.fusion import FusionRing

console = Console(stderr=True)


def ensure_dir(path: str) -> None:
    if path:
        os.makedirs(path, exist_ok=True)


def save_json(path: str, obj: Any) -> None:
    ensure_dir(os.path.dirname(path))
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=2)


def cache_key(family: str, rank: int, level: int, version: str = __version__) -> str:
    return f"{family}{rank}_h{level}_v{version}"


def cache_path(cache_dir: Path, family: str, rank: int, level: int, version: str = __version__) -> Path:
    return Path(cache_dir) / f"fusion_{cache_key(family, rank, level, version)}.json"


def cache(ring: FusionRing, cache_dir: Path) -> Path:
    path = cache_path(cache_dir, ring.family, ring.rank, ring.level)
    save_json(str(path), {"version": __version__, "ring": ring.to_json()})
    console.print(f"[green]Saved[/green] {path}")
    return path


def load_cached(cache_dir: Path, family: str, rank: int, level: int) -> Optional[FusionRing]:
    """The cached ring, or None if it is missing. Raises CacheError on a bad file."""
    path = cache_path(cache_dir, family, rank, level)
    if not path.exists():
        return None
    try:
        with path.open("r", encoding="utf-8") as f:
            payload = json.load(f)
        if payload.get("version") != __version__:
            raise CacheError(f"{path} was written by version {payload.get('version')!r}")
        ring = FusionRing.from_json(payload["ring"])
    except (OSError, ValueError, KeyError, AttributeError) as e:
        raise CacheError(f"unreadable cache file {path}: {e}") from e
    if (ring.family, ring.rank, ring.level) != (family, rank, level):
        raise CacheError(f"{path} holds {ring.group} level {ring.level}")
    if ring.basis != tuple(level_weights(build(family, rank), level)):
        raise CacheError(f"{path} does not list the level-{level} weights of {family}{rank}")
    problems = ring.axiom_violations()
    if problems:
        raise CacheError(f"{path} fails the ring axioms: {'; '.join(problems)}")
    return ring


def cached_ring(
    cache_dir: Optional[Path],
    family: str,
    rank: int,
    level: int,
    compute: Callable[[], FusionRing],
) -> FusionRing:
    """Load from the cache when possible, otherwise compute and store. Bad files are recomputed."""
    if cache_dir is None:
        return compute()
    try:
        ring = load_cached(cache_dir, family, rank, level)
    except CacheError as e:
        console.print(f"[yellow]Ignoring cache:[/yellow] {e}")
        ring = None
    if ring is not None:
        return ring
    ring = compute()
    try:
        cache(ring, cache_dir)
    except OSError as e:
        console.print(f"[yellow]Could not write cache:[/yellow] {e}")
    return ring
