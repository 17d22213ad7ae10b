"""Byte-stable on-disk format for trained model parameters.

Layout: magic line, one JSON header line (sorted keys) naming the model
kind, metadata, and array shapes, then the raw little-endian float64
bytes of each array in header order. Two saves of equal parameters
produce identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import SieveError

_MAGIC = b"SVMODEL1\n"


def save_params(
    path: str | Path, kind: str, meta: dict, arrays: list[tuple[str, np.ndarray]]
) -> None:
    header = {
        "kind": kind,
        "meta": meta,
        "arrays": [{"name": name, "shape": list(np.shape(arr))} for name, arr in arrays],
    }
    with open(path, "wb") as handle:
        handle.write(_MAGIC)
        handle.write(json.dumps(header, sort_keys=True).encode("utf-8"))
        handle.write(b"\n")
        for _, arr in arrays:
            handle.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def load_params(path: str | Path, expect_kind: str | None = None) -> tuple[str, dict, dict]:
    """Read (kind, meta, name -> float64 array) from a parameter file."""
    with open(path, "rb") as handle:
        magic = handle.read(len(_MAGIC))
        if magic != _MAGIC:
            raise SieveError(f"{path}: not a model parameter file")
        header = json.loads(handle.readline().decode("utf-8"))
        arrays = {}
        for spec in header["arrays"]:
            shape = tuple(spec["shape"])
            count = int(np.prod(shape)) if shape else 1
            raw = handle.read(8 * count)
            if len(raw) != 8 * count:
                raise SieveError(f"{path}: truncated array {spec['name']!r}")
            arrays[spec["name"]] = np.frombuffer(raw, dtype="<f8").reshape(shape).copy()
    kind = header.get("kind", "")
    if expect_kind is not None and kind != expect_kind:
        raise SieveError(f"{path}: expected a {expect_kind!r} model, found {kind!r}")
    return kind, header.get("meta", {}), arrays
