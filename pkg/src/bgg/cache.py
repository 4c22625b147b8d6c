"""On-disk result cache: JSON files keyed by the content hash of the request
(engine version, field, source, window, flags).  Directory from $BGG_CACHE,
default .bgg-cache."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

ENGINE_VERSION = "0.1.0"


def cache_dir() -> Path:
    return Path(os.environ.get("BGG_CACHE", ".bgg-cache"))


def cache_key(request: dict) -> str:
    payload = {"engine": ENGINE_VERSION, **request}
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_get(request: dict):
    path = cache_dir() / (cache_key(request) + ".json")
    if not path.is_file():
        return None
    with open(path) as fh:
        return json.load(fh)


def cache_put(request: dict, value) -> Path:
    d = cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    path = d / (cache_key(request) + ".json")
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        json.dump(value, fh, sort_keys=True, separators=(",", ":"))
    os.replace(tmp, path)
    return path
