"""On-disk cache of PC-bar tables, keyed by a hash of the package source."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from functools import lru_cache
from pathlib import Path

from .graphs import DynkinGraph, format_formal_sum, parse_formal_sum
from .transforms import Witness

CACHE_ENV = "TRIANGLE_PC_CACHE_DIR"
CACHE_FILE = "pc_bar.json"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "triangle_pc"


@lru_cache(maxsize=None)
def code_version() -> str:
    h = hashlib.sha256()
    for path in sorted(Path(__file__).parent.glob("*.py")):
        h.update(path.name.encode())
        h.update(path.read_bytes())
    return h.hexdigest()[:16]


def table_to_json(table: dict[DynkinGraph, Witness]) -> dict:
    return {
        "pc_bar": [format_formal_sum(g) for g in table],
        "witnesses": {format_formal_sum(g): w.to_json() for g, w in table.items()},
    }


def table_from_json(doc: dict) -> dict[DynkinGraph, Witness]:
    ws = doc["witnesses"]
    return {parse_formal_sum(s): Witness.from_json(ws[s]) for s in doc["pc_bar"]}


class PcCache:
    """A single JSON document ``{version, <symbol>: {pc_bar, witnesses}}``.

    Any read problem is treated as a miss; write failures are ignored.
    """

    def __init__(self, directory: Path | str | None = None):
        self.path = Path(directory or default_cache_dir()) / CACHE_FILE

    def _load(self) -> dict:
        try:
            doc = json.loads(self.path.read_text())
        except (OSError, ValueError):
            return {}
        if not isinstance(doc, dict) or doc.get("version") != code_version():
            return {}
        return doc

    def get(self, symbol: str) -> dict[DynkinGraph, Witness] | None:
        entry = self._load().get(symbol)
        if entry is None:
            return None
        try:
            return table_from_json(entry)
        except (KeyError, TypeError, ValueError):
            return None

    def put(self, symbol: str, table: dict[DynkinGraph, Witness]) -> None:
        doc = self._load()
        doc["version"] = code_version()
        doc[symbol] = table_to_json(table)
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".pc_bar.", suffix=".tmp")
            with os.fdopen(fd, "w") as f:
                json.dump(doc, f, indent=1, sort_keys=True)
            os.replace(tmp, self.path)
        except OSError:
            pass
