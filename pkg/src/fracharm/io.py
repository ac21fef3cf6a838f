"""Field snapshots: raw little-endian float64 plus a JSON sidecar.

``name.bin`` holds the array in row-major order, component axes first;
``name.json`` holds ``{"n", "N", "m", "layout": "row-major", "domain": "torus-2pi"}``
with ``m`` the number of leading components (1 for a scalar field).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .spectral import PeriodicGrid, check_same_grid


def _paths(path):
    path = Path(path)
    base = path.with_suffix("") if path.suffix in (".bin", ".json") else path
    return base.with_suffix(".bin"), base.with_suffix(".json")


def save_field(path, grid: PeriodicGrid, field) -> tuple:
    """Write ``field`` and its sidecar; returns the two paths."""
    field = np.asarray(field, dtype=float)
    check_same_grid(grid, field)
    lead = field.shape[: field.ndim - grid.n]
    m = int(np.prod(lead)) if lead else 1
    bin_path, json_path = _paths(path)
    bin_path.parent.mkdir(parents=True, exist_ok=True)
    bin_path.write_bytes(np.ascontiguousarray(field, dtype="<f8").tobytes())
    meta = {"n": grid.n, "N": grid.N, "m": m, "layout": "row-major", "domain": "torus-2pi"}
    if len(lead) > 1:
        meta["components"] = list(lead)
    json_path.write_text(json.dumps(meta, sort_keys=True) + "\n")
    return bin_path, json_path


def load_field(path) -> tuple:
    """Read a snapshot; returns ``(grid, field)``."""
    bin_path, json_path = _paths(path)
    try:
        meta = json.loads(json_path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read sidecar {json_path}: {exc}") from exc
    if meta.get("layout") != "row-major" or meta.get("domain") != "torus-2pi":
        raise ConfigError(f"unsupported snapshot layout in {json_path}")
    grid = PeriodicGrid(int(meta["n"]), int(meta["N"]))
    data = np.frombuffer(bin_path.read_bytes(), dtype="<f8")
    lead = tuple(meta.get("components", [meta["m"]] if meta["m"] > 1 else []))
    return grid, data.reshape(lead + grid.shape).astype(float)
