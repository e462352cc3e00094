"""Versioned JSON caches for character tables and the run-manifest plumbing.

All integers are serialized as decimal strings (arbitrary precision,
language-portable).  Cache files are content-addressed: a digest over the
canonical payload is stored and re-checked on load; any mismatch or version
skew raises CacheError so callers rebuild.  I/O and corruption problems are
CacheError, never ExactnessError.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import asdict, dataclass

from . import CACHE_VERSION, __version__
from .anchars import AnTable, QuadValue, build_an_table
from .errors import CacheError
from .snchars import SnTable, build_sn_table

ENV_CACHE_DIR = "MCKAYLAB_CACHE_DIR"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def resolve_cache_dir(explicit: str | None) -> str | None:
    return explicit if explicit else os.environ.get(ENV_CACHE_DIR)


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    cache_version: int
    tool_version: str
    started_at: str
    finished_at: str
    result_digest: str


def make_report(command: str, parameters: dict, seed: int | None, result: dict, started: float) -> dict:
    """Wrap a result in its manifest; the digest covers only the canonical
    result payload, so re-runs with the same inputs must reproduce it
    byte-for-byte regardless of worker count or timing."""
    manifest = RunManifest(
        command=command,
        parameters=parameters,
        seed=seed,
        cache_version=CACHE_VERSION,
        tool_version=__version__,
        started_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(started)),
        finished_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        result_digest=digest(result),
    )
    return {"manifest": asdict(manifest), "result": result}


# -- S_n tables ----------------------------------------------------------------


def sn_table_path(cache_dir: str, n: int) -> str:
    return os.path.join(cache_dir, f"sn_{n}.table.json")


def an_table_path(cache_dir: str, n: int) -> str:
    return os.path.join(cache_dir, f"an_{n}.table.json")


def _sn_payload(table: SnTable) -> dict:
    return {
        "n": table.n,
        "classes": [
            {"parts": list(mu), "size": str(size)}
            for mu, size in zip(table.classes, table.class_sizes)
        ],
        "chars": [list(lam) for lam in table.chars],
        "values": [[str(v) for v in row] for row in table.values],
    }


def save_sn_table(table: SnTable, cache_dir: str) -> str:
    payload = _sn_payload(table)
    doc = {
        "format": "sn-table",
        "version": CACHE_VERSION,
        "digest": digest(payload),
        "payload": payload,
    }
    os.makedirs(cache_dir, exist_ok=True)
    path = sn_table_path(cache_dir, table.n)
    with open(path, "w") as fh:
        json.dump(doc, fh)
    return path


def load_sn_table(cache_dir: str, n: int, paranoid: bool = False) -> SnTable:
    path = sn_table_path(cache_dir, n)
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"cannot read {path}: {exc}") from exc
    if doc.get("format") != "sn-table" or doc.get("version") != CACHE_VERSION:
        raise CacheError(f"{path}: wrong format or version")
    payload = doc["payload"]
    if digest(payload) != doc.get("digest"):
        raise CacheError(f"{path}: digest mismatch")
    table = SnTable(
        payload["n"],
        [tuple(lam) for lam in payload["chars"]],
        [tuple(c["parts"]) for c in payload["classes"]],
        [int(c["size"]) for c in payload["classes"]],
        [[int(v) for v in row] for row in payload["values"]],
    )
    if paranoid:
        table.check_orthogonality()
    return table


def load_or_build_sn(n: int, cache_dir: str | None, paranoid: bool = False) -> SnTable:
    if cache_dir:
        try:
            return load_sn_table(cache_dir, n, paranoid)
        except CacheError:
            pass
    table = build_sn_table(n)
    if cache_dir:
        save_sn_table(table, cache_dir)
    return table


# -- A_n tables ----------------------------------------------------------------


def _an_payload(table: AnTable) -> dict:
    values = [
        [table.value(i, c).to_json() for c in range(len(table.classes))]
        for i in range(len(table.chars))
    ]
    return {
        "n": table.n,
        "classes": [
            {"parts": list(mu), "tag": tag, "size": str(size), "radicand": str(rad)}
            for (mu, tag), size, rad in zip(
                table.classes, table.class_sizes, table.class_radicands
            )
        ],
        "chars": [{"parts": list(lam), "tag": tag} for lam, tag in table.chars],
        "values": values,
    }


def save_an_table(table: AnTable, cache_dir: str) -> str:
    payload = _an_payload(table)
    doc = {
        "format": "an-table",
        "version": CACHE_VERSION,
        "digest": digest(payload),
        "payload": payload,
    }
    os.makedirs(cache_dir, exist_ok=True)
    path = an_table_path(cache_dir, table.n)
    with open(path, "w") as fh:
        json.dump(doc, fh)
    return path


def load_an_table(cache_dir: str, n: int, paranoid: bool = False) -> AnTable:
    path = an_table_path(cache_dir, n)
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"cannot read {path}: {exc}") from exc
    if doc.get("format") != "an-table" or doc.get("version") != CACHE_VERSION:
        raise CacheError(f"{path}: wrong format or version")
    payload = doc["payload"]
    if digest(payload) != doc.get("digest"):
        raise CacheError(f"{path}: digest mismatch")
    pairs = []
    for row in payload["values"]:
        prow = []
        for obj in row:
            qv = QuadValue.from_json(obj)
            x, y = 2 * qv.a, 2 * qv.b
            if x.denominator != 1 or y.denominator != 1:
                raise CacheError("non half-integer value in cached table")
            prow.append((int(x), int(y)))
        pairs.append(prow)
    table = AnTable(
        payload["n"],
        [(tuple(c["parts"]), c["tag"]) for c in payload["chars"]],
        [(tuple(c["parts"]), c["tag"]) for c in payload["classes"]],
        [int(c["size"]) for c in payload["classes"]],
        [int(c["radicand"]) for c in payload["classes"]],
        pairs,
    )
    if paranoid:
        table.check_orthogonality()
    return table


def load_or_build_an(n: int, cache_dir: str | None, paranoid: bool = False) -> AnTable:
    if cache_dir:
        try:
            return load_an_table(cache_dir, n, paranoid)
        except CacheError:
            pass
    table = build_an_table(n)
    if cache_dir:
        save_an_table(table, cache_dir)
    return table
