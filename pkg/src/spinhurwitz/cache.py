"""Disk cache for character tables.

Files are JSON dumps ``{d, kind, version, rows: [{label, class, num, den}]}``
written via a temporary file and ``os.replace``.
"""

import json
import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from . import __version__

ENV_VAR = "SPINHURWITZ_CACHE_DIR"
log = logging.getLogger(__name__)

_override: Path | None = None


class CacheError(OSError):
    pass


def set_cache_dir(path) -> None:
    global _override
    _override = Path(path) if path is not None else None


def cache_dir() -> Path:
    if _override is not None:
        return _override
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "spinhurwitz"


def enabled() -> bool:
    return os.environ.get(ENV_VAR + "_DISABLE", "") == ""


def _path(kind: str, d: int) -> Path:
    return cache_dir() / f"{kind}-d{d}-v{__version__}.json"


def load(kind: str, d: int):
    if not enabled():
        return None
    path = _path(kind, d)
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("version") != __version__ or data.get("kind") != kind or data.get("d") != d:
        return None
    return {(tuple(row["label"]), tuple(row["class"])): Fraction(int(row["num"]), int(row["den"]))
            for row in data["rows"]}


def dump_table(kind: str, d: int, table) -> dict:
    rows = [{"label": list(lab), "class": list(cls), "num": str(v.numerator), "den": str(v.denominator)}
            for (lab, cls), v in table.items()]
    return {"d": d, "kind": kind, "version": __version__, "rows": rows}


def store(kind: str, d: int, table) -> bool:
    """Write a table atomically. Failures are logged and reported, never raised."""
    if not enabled():
        return False
    folder = cache_dir()
    try:
        folder.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{kind}-{d}-", suffix=".tmp", dir=folder)
        with os.fdopen(fd, "w") as fh:
            json.dump(dump_table(kind, d, table), fh, sort_keys=True)
        os.replace(tmp, _path(kind, d))
        return True
    except OSError as exc:
        log.warning("cache dir %s is not writable (%s); continuing uncached", folder, exc)
        return False


def stats() -> dict[str, list[int]]:
    """Cached degrees per table kind."""
    folder = cache_dir()
    out: dict[str, list[int]] = {}
    if not folder.exists():
        return out
    if not folder.is_dir():
        raise CacheError(f"cache path {folder} is not a directory")
    suffix = f"-v{__version__}.json"
    for f in folder.iterdir():
        if f.name.endswith(suffix) and "-d" in f.name:
            kind, _, d = f.name[: -len(suffix)].rpartition("-d")
            if d.isdigit():
                out.setdefault(kind, []).append(int(d))
    return {k: sorted(v) for k, v in sorted(out.items())}


def clear() -> int:
    folder = cache_dir()
    if not folder.exists():
        return 0
    n = 0
    try:
        for f in folder.glob("*.json"):
            f.unlink()
            n += 1
    except OSError as exc:
        raise CacheError(f"cannot clear cache dir {folder}: {exc}") from exc
    return n
