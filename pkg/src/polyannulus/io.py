"""Reading and writing polytopes, point clouds and results."""

import csv
import io
import json
import math

import numpy as np

from .annulus import AnnulusSolution, PointCloud
from .errors import AnnulusError, DimensionTooHigh, InputFormatError
from .polytope import Rotation, from_halfspaces, from_vertices


def _plain(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    """Deterministic JSON: sorted keys, numpy scalars converted."""
    return json.dumps(obj, indent=2, sort_keys=True, default=_plain) + "\n"


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None


def polytope_from_dict(data):
    try:
        dim = int(data["dim"])
        vertices = np.asarray(data["vertices"], dtype=float)
        halfspaces = data.get("halfspaces")
        if halfspaces:
            normals = np.asarray([h["normal"] for h in halfspaces], dtype=float)
            offsets = np.asarray([h["offset"] for h in halfspaces], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed polytope: {exc}") from None
    if halfspaces:
        return from_halfspaces(dim, vertices, normals, offsets)
    if dim > 3:
        raise DimensionTooHigh("polytopes above dimension 3 need their halfspaces")
    return from_vertices(dim, vertices)


def read_polytope(path):
    return polytope_from_dict(_load_json(path))


def write_polytope(C, path):
    with open(path, "w") as fh:
        fh.write(dumps(C.to_dict()))


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def parse_points_csv(text, dim=None):
    """Rows of ``d`` numbers; a first row with no numeric cell is taken as a header."""
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells):
            continue
        if lineno == 1 and not any(_is_number(c) for c in cells):
            continue
        try:
            values = [float(c) for c in cells]
        except ValueError:
            raise InputFormatError(f"non-numeric value in {row!r}", line=lineno) from None
        if not all(math.isfinite(v) for v in values):
            raise InputFormatError("non-finite coordinate", line=lineno)
        if dim is None:
            dim = len(values)
        if len(values) != dim:
            raise InputFormatError(f"expected {dim} columns, got {len(values)}", line=lineno)
        rows.append(values)
    if not rows:
        raise InputFormatError("no points found")
    return PointCloud(dim, np.array(rows))


def format_points_csv(points):
    pts = np.asarray(points, dtype=float)
    header = ",".join(f"x{i}" for i in range(pts.shape[1]))
    lines = [header] + [",".join(f"{v:.17g}" for v in row) for row in pts]
    return "\n".join(lines) + "\n"


def read_points(path, dim=None):
    """Load a CSV or JSON point cloud (chosen by extension)."""
    if str(path).lower().endswith(".json"):
        data = _load_json(path)
        try:
            return PointCloud(int(data["dim"]), np.asarray(data["points"], dtype=float))
        except AnnulusError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"malformed point file: {exc}") from None
    with open(path, newline="") as fh:
        return parse_points_csv(fh.read(), dim)


def write_points(points, path):
    pts = np.asarray(getattr(points, "points", points), dtype=float)
    with open(path, "w") as fh:
        if str(path).lower().endswith(".json"):
            fh.write(dumps({"dim": pts.shape[1], "points": pts.tolist()}))
        else:
            fh.write(format_points_csv(pts))


_CORE = {"center", "rotation_angles", "inner_radius", "outer_radius", "width",
         "epsilon", "evaluations", "elapsed_ms"}


def solution_from_dict(data):
    try:
        center = np.asarray(data["center"], dtype=float)
        angles = tuple(data.get("rotation_angles") or [0.0] * (center.shape[0] - 1))
        return AnnulusSolution(
            center, float(data["inner_radius"]), float(data["outer_radius"]),
            Rotation(center.shape[0], angles), data.get("epsilon"),
            int(data.get("evaluations", 1)), float(data.get("elapsed_ms", 0.0)) / 1000.0,
            {k: v for k, v in data.items() if k not in _CORE},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed result: {exc}") from None


def read_solution(path):
    return solution_from_dict(_load_json(path))


def write_solution(sol, path):
    with open(path, "w") as fh:
        fh.write(dumps(sol.to_dict()))
