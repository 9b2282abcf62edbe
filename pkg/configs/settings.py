from dataclasses import dataclass
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class Settings:
    cache_dir: Path
    max_basis: int
    scan_max_rank: int
    no_cache: bool


def _env_int(name: str, default: int) -> int:
    v = os.getenv(name)
    if v is None or str(v).strip() == "":
        return int(default)
    try:
        return int(float(v))
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {v!r}") from None


def _env_bool(name: str, default: bool = False) -> bool:
    v = os.getenv(name)
    if v is None or str(v).strip() == "":
        return default
    return str(v).strip().lower() in {"1", "true", "yes", "y", "on"}


def _env_path(name: str, default: str) -> Path:
    v = (os.getenv(name, "") or "").strip()
    return Path(v or default)


def get_settings() -> Settings:
    cache_dir = _env_path("VERLINDE_CACHE_DIR", "artifacts/cache")
    max_basis = _env_int("VERLINDE_MAX_BASIS", 60)
    scan_max_rank = _env_int("VERLINDE_SCAN_MAX_RANK", 3)
    no_cache = _env_bool("VERLINDE_NO_CACHE", False)

    if max_basis < 1:
        raise ValueError("VERLINDE_MAX_BASIS must be >= 1")
    if scan_max_rank < 1:
        raise ValueError("VERLINDE_SCAN_MAX_RANK must be >= 1")

    return Settings(
        cache_dir=cache_dir,
        max_basis=max_basis,
        scan_max_rank=scan_max_rank,
        no_cache=no_cache,
    )
