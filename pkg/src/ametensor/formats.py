"""Readers and writers for the on-disk formats.

Matrix text::

    # comment
    field 2 3 1 1 0 1
    2 4 6 5
    ...

The header is ``field <p> <n> [<c0> ... <cn>]`` with the modulus given
lowest coefficient first.  Lines starting with ``#`` and blank lines are
ignored.  Negative entries are reduced mod p in prime fields.
"""

from __future__ import annotations

import io
import json
from pathlib import Path

import numpy as np

from .factor6 import Decomposition6
from .factor8 import PAIRS, Decomposition8, conditions8
from .gf import FieldSpec, field_new
from .graphstate import CircuitGate, CircuitPlan
from .linalg import FFMatrix
from .oa import OrthogonalArray


class FormatError(ValueError):
    pass


def field_header(f: FieldSpec) -> str:
    return "field " + " ".join(str(v) for v in (f.p, f.n, *f.modulus))


def parse_field_header(line: str) -> FieldSpec:
    parts = line.split()
    if not parts or parts[0] != "field":
        raise FormatError(f"expected a field header, got {line!r}")
    try:
        nums = [int(x) for x in parts[1:]]
    except ValueError as exc:
        raise FormatError(f"bad field header {line!r}") from exc
    if len(nums) < 2:
        raise FormatError("field header needs at least p and n")
    p, n, poly = nums[0], nums[1], nums[2:]
    try:
        return field_new(p, n, tuple(poly) if poly else None)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def field_dict(f: FieldSpec) -> dict:
    return {"p": f.p, "n": f.n, "poly": list(f.modulus)}


def field_from_dict(d: dict) -> FieldSpec:
    try:
        return field_new(int(d["p"]), int(d["n"]), tuple(d["poly"]) if d.get("poly") else None)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad field record {d!r}") from exc


def _content_lines(text: str):
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line


def parse_matrix(text: str, field: FieldSpec | None = None) -> tuple[FFMatrix, FieldSpec | None]:
    """Parse matrix text.

    Returns the matrix and, when the text carried a header that disagrees
    with ``field``, the field that was overridden (so callers can warn).
    The header always wins.
    """
    lines = list(_content_lines(text))
    overridden = None
    if lines and lines[0].startswith("field"):
        header = parse_field_header(lines.pop(0))
        if field is not None and field != header:
            overridden = field
        field = header
    if field is None:
        raise FormatError("no field given (add a header line or pass the field)")
    try:
        rows = [[int(x) for x in line.split()] for line in lines]
    except ValueError as exc:
        raise FormatError(f"non-integer entry: {exc}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise FormatError("matrix rows are empty or ragged")
    try:
        return FFMatrix.from_rows(field, rows), overridden
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_matrix(path, field: FieldSpec | None = None) -> tuple[FFMatrix, FieldSpec | None]:
    return parse_matrix(Path(path).read_text(), field)


def format_matrix(m: FFMatrix) -> str:
    body = "\n".join(" ".join(str(v) for v in row) for row in m.tolist())
    return f"{field_header(m.field)}\n{body}\n"


# -- orthogonal arrays -----------------------------------------------------------


def format_array_csv(arr: OrthogonalArray, field: FieldSpec | None = None) -> str:
    buf = io.StringIO()
    if field is not None:
        buf.write(f"# {field_header(field)}\n")
    np.savetxt(buf, arr.rows, fmt="%d", delimiter=",")
    return buf.getvalue()


def parse_array_csv(text: str, symbols: int | None = None) -> tuple[OrthogonalArray, FieldSpec | None]:
    field = None
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            rest = line[1:].strip()
            if rest.startswith("field"):
                field = parse_field_header(rest)
            continue
        try:
            rows.append([int(x) for x in line.split(",")])
        except ValueError as exc:
            raise FormatError(f"bad CSV row {line!r}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise FormatError("array rows are empty or ragged")
    D = symbols or (field.order if field else max(max(r) for r in rows) + 1)
    return OrthogonalArray(D, np.array(rows, dtype=np.int64)), field


# -- decompositions ----------------------------------------------------------------


def decomposition6_to_dict(d: Decomposition6) -> dict:
    return {
        "field": field_dict(d.field),
        "G": d.source.tolist(),
        "direction": d.direction,
        "condition_value": d.condition_value,
        "A": d.A.tolist(),
        "B": d.B.tolist(),
        "C": d.C.tolist(),
        "gauge": list(d.gauge),
        "verified": d.verify(),
    }


def decomposition8_to_dict(d: Decomposition8) -> dict:
    return {
        "field": field_dict(d.field),
        "G": d.source.tolist(),
        "gates": {f"{i}{j}": d.gates[i, j].tolist() for i, j in PAIRS},
        "identity_gates": [f"{i}{j}" for i, j in d.identity_gates()],
        "verified": d.verify(),
    }


def decomposition_from_dict(rec: dict) -> Decomposition6 | Decomposition8:
    """Rebuild either record type; the ``verified`` flag is recomputed, not trusted."""
    try:
        f = field_from_dict(rec["field"])
        G = FFMatrix.from_rows(f, rec["G"])
        if "gates" in rec:
            gates = {(int(k[0]), int(k[1])): FFMatrix.from_rows(f, v) for k, v in rec["gates"].items()}
            if set(gates) != set(PAIRS):
                raise FormatError("an 8-leg record needs gates 12, 13, 14, 23, 24 and 34")
            return Decomposition8(gates, G, conditions8(G))
        return Decomposition6(
            rec["direction"],
            FFMatrix.from_rows(f, rec["A"]),
            FFMatrix.from_rows(f, rec["B"]),
            FFMatrix.from_rows(f, rec["C"]),
            G,
            int(rec["condition_value"]),
            tuple(rec.get("gauge", (1, 1, 1))),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad decomposition record: {exc}") from exc


def decomposition_to_dict(d) -> dict:
    if isinstance(d, Decomposition6):
        return decomposition6_to_dict(d)
    return decomposition8_to_dict(d)


# -- circuits ------------------------------------------------------------------


def circuit_to_dict(plan: CircuitPlan) -> dict:
    gates = []
    for g in plan.gates:
        entry = {"kind": g.kind, "sites": list(g.sites), "name": g.name}
        if g.matrix is not None:
            entry["matrix"] = g.matrix.tolist()
        if g.power is not None:
            entry["power"] = g.power
        entry["droppable"] = g.droppable
        gates.append(entry)
    return {"D": plan.D, "k": plan.k, "field": field_dict(plan.field), "gates": gates}


def circuit_from_dict(rec: dict) -> CircuitPlan:
    try:
        f = field_from_dict(rec["field"]) if "field" in rec else field_new(int(rec["D"]))
        gates = []
        for g in rec["gates"]:
            mat = FFMatrix.from_rows(f, g["matrix"]) if "matrix" in g else None
            gates.append(CircuitGate(g["kind"], tuple(g["sites"]), g.get("name", ""), mat, g.get("power")))
        return CircuitPlan(int(rec["D"]), int(rec["k"]), f, tuple(gates))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad circuit record: {exc}") from exc


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
