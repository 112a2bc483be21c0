"""Canonical JSON for all wire and file formats.

Numbers are written with 17 significant digits so every double survives
a round trip exactly; given identical inputs the writer emits identical
bytes.  Complex scalars travel as two-element [re, im] arrays.

Formats:
  system   {"kind":"matrix","rows":m,"cols":n}
           {"kind":"custom","dim":d,"structure":[[re,im] x d^4]}
           (structure index order: l + d*(k + d*(j + d*i)))
  element  {"coords":[[re,im] x d]}
  map      {"dim":d,"entries":[[re,im] x d^2]}  (row-major)
  basis    {"dim_real":k,"basis":[map, ...]}
  spectral {"pairs":[{"lambda":x,"tripotent":element}, ...]}
  report   {"name","trials","max_residual","pass","seed","witnesses"[,"checks"]}
"""

from __future__ import annotations

import json
import math

import numpy as np

from .core import (
    Element,
    KIND_MATRIX,
    TripleSystem,
    element,
    make_custom_triple,
    make_matrix_triple,
)
from .derivations import DerivationBasis
from .errors import InputError
from .operators import ComplexLinearMap, complex_map
from .report import CheckReport
from .spectral import SpectralDecomposition


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        raise InputError("non-finite numbers are not serializable")
    if abs(value) < 1e16 and value == int(value):
        return repr(float(value))  # keeps "1.0" rather than "1"
    return format(value, ".17g")


def canonical_json(value) -> str:
    """Deterministic JSON text (insertion-ordered keys, 17-digit floats)."""
    pieces: list[str] = []
    _write(value, pieces)
    return "".join(pieces)


def _write(value, out: list) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(_format_float(float(value)))
    elif isinstance(value, dict):
        out.append("{")
        for index, (key, item) in enumerate(value.items()):
            if index:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _write(item, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for index, item in enumerate(value):
            if index:
                out.append(",")
            _write(item, out)
        out.append("]")
    else:
        raise InputError(f"cannot serialize value of type {type(value).__name__}")


def _pairs(values: np.ndarray) -> list:
    flat = np.asarray(values, dtype=complex).reshape(-1)
    return [[float(v.real), float(v.imag)] for v in flat]


def _unpairs(data, expected: int, what: str) -> np.ndarray:
    if not isinstance(data, list) or len(data) != expected:
        raise InputError(f"{what} must be a list of {expected} [re, im] pairs")
    out = np.empty(expected, dtype=complex)
    for index, pair in enumerate(data):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InputError(f"{what}[{index}] is not an [re, im] pair")
        try:
            out[index] = float(pair[0]) + 1j * float(pair[1])
        except (TypeError, ValueError) as exc:
            raise InputError(f"{what}[{index}] holds non-numeric entries") from exc
    return out


def system_to_dict(system: TripleSystem) -> dict:
    if system.kind == KIND_MATRIX:
        return {"kind": "matrix", "rows": system.shape[0], "cols": system.shape[1]}
    return {
        "kind": "custom",
        "dim": system.dim,
        "structure": _pairs(system.structure),
    }


def system_from_dict(data) -> TripleSystem:
    if not isinstance(data, dict):
        raise InputError("system must be a JSON object")
    kind = data.get("kind")
    if kind == "matrix":
        rows, cols = data.get("rows"), data.get("cols")
        if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
            raise InputError("matrix system needs positive integer rows and cols")
        return make_matrix_triple(rows, cols)
    if kind == "custom":
        dim = data.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise InputError("custom system needs a positive integer dim")
        structure = _unpairs(data.get("structure"), dim**4, "structure")
        return make_custom_triple(dim, structure)
    raise InputError("system kind must be 'matrix' or 'custom'")


def element_to_dict(a: Element) -> dict:
    return {"coords": _pairs(a.coords)}


def element_from_dict(system: TripleSystem, data) -> Element:
    if not isinstance(data, dict):
        raise InputError("element must be a JSON object")
    return element(system, _unpairs(data.get("coords"), system.dim, "coords"))


def map_to_dict(t: ComplexLinearMap) -> dict:
    return {"dim": t.system.dim, "entries": _pairs(t.entries)}


def map_from_dict(system: TripleSystem, data) -> ComplexLinearMap:
    if not isinstance(data, dict):
        raise InputError("map must be a JSON object")
    dim = data.get("dim")
    if dim != system.dim:
        raise InputError(f"map dimension {dim} does not match system dimension {system.dim}")
    entries = _unpairs(data.get("entries"), system.dim**2, "entries")
    return complex_map(system, entries.reshape(system.dim, system.dim))


def basis_to_dict(basis: DerivationBasis) -> dict:
    return {"dim_real": basis.dim_real, "basis": [map_to_dict(t) for t in basis.basis]}


def basis_from_dict(system: TripleSystem, data) -> DerivationBasis:
    if not isinstance(data, dict) or not isinstance(data.get("basis"), list):
        raise InputError("basis must be a JSON object with a 'basis' list")
    maps = tuple(map_from_dict(system, item) for item in data["basis"])
    dim_real = data.get("dim_real", len(maps))
    if dim_real != len(maps):
        raise InputError("dim_real does not match the number of basis maps")
    return DerivationBasis(system=system, basis=maps, dim_real=len(maps))


def decomposition_to_dict(decomposition: SpectralDecomposition) -> dict:
    return {
        "pairs": [
            {"lambda": lam, "tripotent": element_to_dict(trip)}
            for lam, trip in decomposition.pairs
        ]
    }


def report_to_dict(report: CheckReport) -> dict:
    return report.to_dict()
