"""On-disk result cache keyed by inputs plus a hash of the package source."""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

ENV_VAR = "ARTIN_HOMOLOGY_CACHE"


@lru_cache(maxsize=1)
def code_version() -> str:
    """sha256 over the package's Python sources and data files, 16 hex digits."""
    root = Path(__file__).resolve().parent
    h = hashlib.sha256()
    for p in sorted(root.rglob("*")):
        if p.suffix in (".py", ".json") and "__pycache__" not in p.parts:
            h.update(str(p.relative_to(root)).encode())
            h.update(p.read_bytes())
    return h.hexdigest()[:16]


def make_key(**fields) -> dict:
    key = dict(fields)
    key["code_version"] = code_version()
    return key


def key_digest(key: dict) -> str:
    return hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()


@dataclass(frozen=True)
class ResultRecord:
    key: dict
    payload: dict
    timestamp: str = ""

    def to_json(self) -> str:
        # the timestamp lives in a header so the body is byte-stable
        doc = {"header": {"timestamp": self.timestamp}, "key": self.key, "payload": self.payload}
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ResultRecord:
        doc = json.loads(text)
        return cls(doc["key"], doc["payload"], doc["header"].get("timestamp", ""))

    @classmethod
    def now(cls, key: dict, payload: dict) -> ResultRecord:
        ts = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        return cls(key, payload, ts)


class ResultCache:
    """Directory of JSON records; readers never see partial writes."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    @classmethod
    def from_env(cls, override: str | None = None) -> ResultCache | None:
        path = override or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def path(self, key: dict) -> Path:
        d = key_digest(key)
        return self.root / d[:2] / f"{d}.json"

    def get(self, key: dict) -> ResultRecord | None:
        p = self.path(key)
        try:
            rec = ResultRecord.from_json(p.read_text())
        except (FileNotFoundError, json.JSONDecodeError, KeyError):
            return None
        return rec if rec.key == key else None

    def put(self, record: ResultRecord) -> Path:
        p = self.path(record.key)
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(record.to_json())
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return p
