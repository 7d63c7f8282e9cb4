"""JSON run records.

A record echoes the graph identity, the full solver configuration, the seed
and the best assignment, so anyone holding the graph file can re-check the
reported cut. The assignment is stored run-length encoded::

    {"n": 6, "first": 0, "runs": [2, 3, 1]}   # 001110

Wall-clock fields (``wall_time`` and every ``stage_times`` entry) are the only
parts that change between identical runs; :func:`strip_timing` removes them.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from enum import Enum

import numpy as np

from .errors import QuadcutError
from .graph import Graph
from .objectives import CutSolution, cut_value

SCHEMA_VERSION = 1
TIMING_KEYS = frozenset({"wall_time", "stage_times"})


class RecordMismatchError(QuadcutError):
    """A stored assignment does not reproduce the stored cut."""


def rle_encode(z) -> dict:
    z = np.asarray(z, dtype=np.int8).ravel()
    if z.size == 0:
        return {"n": 0, "first": 0, "runs": []}
    edges = np.flatnonzero(np.diff(z)) + 1
    bounds = np.concatenate([[0], edges, [z.size]])
    return {"n": int(z.size), "first": int(z[0]), "runs": np.diff(bounds).tolist()}


def rle_decode(enc: dict) -> np.ndarray:
    runs = np.asarray(enc["runs"], dtype=np.int64)
    if runs.sum() != enc["n"]:
        raise ValueError("run lengths do not add up to n")
    bits = (np.arange(len(runs)) + int(enc["first"])) % 2
    return np.repeat(bits, runs).astype(np.int8)


def graph_fingerprint(g: Graph) -> str:
    h = hashlib.sha256()
    h.update(np.int64(g.n).tobytes())
    h.update(np.ascontiguousarray(g.edges, dtype=np.int64).tobytes())
    return h.hexdigest()[:16]


def _plain(obj):
    """Dataclasses, enums and numpy scalars to JSON-friendly values."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def config_dict(cfg) -> dict:
    return _plain(cfg)


def build_record(g: Graph, cfg, sol: CutSolution, *, graph_id: str | None = None,
                 extra: dict | None = None) -> dict:
    from . import __version__, _backend

    meta = dict(sol.meta)
    rec = {
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "backend": _backend.BACKEND,
        "graph": {"id": graph_id or g.name, "n": g.n, "m": g.m,
                  "fingerprint": graph_fingerprint(g)},
        "config": config_dict(cfg),
        "seed": sol.seed,
        "algorithm": sol.algorithm,
        "cut_value": int(sol.cut_value),
        "assignment": rle_encode(sol.assignment),
        "batch_index": sol.batch_index,
        "member_index": sol.member_index,
        "batch_trace": meta.pop("batch_trace", []),
        "phase_trace": meta.pop("phase_trace", []),
        "search_trace": meta.pop("search_trace", []),
        "stage_times": meta.pop("stage_times", {}),
        "wall_time": sol.wall_time,
        "meta": _plain(meta),
    }
    if extra:
        rec.update(_plain(extra))
    return _plain(rec)


def verify_record(rec: dict, g: Graph) -> int:
    """Re-evaluate the stored assignment on ``g``; returns the cut."""
    if rec["graph"]["n"] != g.n or rec["graph"]["m"] != g.m:
        raise RecordMismatchError("record was produced on a different graph")
    if rec["graph"].get("fingerprint") not in (None, graph_fingerprint(g)):
        raise RecordMismatchError("graph fingerprint differs")
    cut = cut_value(g, rle_decode(rec["assignment"]))
    if cut != rec["cut_value"]:
        raise RecordMismatchError(f"stored cut {rec['cut_value']} but assignment gives {cut}")
    return cut


def strip_timing(obj):
    """Copy of ``obj`` without wall-clock fields, at any depth."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True)


def write_record(rec: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rec, fh, sort_keys=True, indent=1)
        fh.write("\n")


def read_record(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
