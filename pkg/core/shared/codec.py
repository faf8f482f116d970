"""
JSON codecs for surfaces, bundle pairs, operator loops, sampled loops and curve parameters.

Complex numbers travel as [re, im] pairs. Decoders raise InputError
subclasses on malformed input, whatever shape the input takes.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from core.errors import InputError, MalformedLoopError
from core.numerics.clutching import SampledLoop
from core.orientation.holonomy import (
    BoundaryChangeEntry,
    CrosscapLoopData,
    OperatorLoop,
    StdBoundaryLoopData,
    TrivializationChange,
)
from core.curves.realcurves import PolyTuple, RealMapParams
from core.topology.bundles import KleinTorusPair, RealBundlePair
from core.topology.surfaces import BoundaryKind, ShSurface, parse_surface_name


def load_json(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a JSON object from a file."""
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise InputError(f"input file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON in {path}: {e}") from e
    if not isinstance(data, dict):
        raise InputError(f"{path} must hold a JSON object, got {type(data).__name__}")
    return data


def parse_json_text(text: str, label: str) -> Dict[str, Any]:
    """Parse a JSON object given inline on the command line."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON for {label}: {e}") from e
    if not isinstance(data, dict):
        raise InputError(f"{label} must be a JSON object, got {type(data).__name__}")
    return data


@contextmanager
def _decoding(what: str, error=InputError):
    """Turn shape errors from malformed JSON into `error`."""
    try:
        yield
    except InputError:
        raise
    except (TypeError, ValueError, AttributeError, KeyError) as e:
        raise error(f"bad {what}: {e}") from e


def _require(data: Dict[str, Any], key: str, error=InputError):
    if not isinstance(data, dict):
        raise error(f"expected a JSON object with field {key!r}, got {type(data).__name__}")
    if key not in data:
        raise error(f"missing field {key!r}")
    return data[key]


def _bit_table(data: Dict[str, Any], key: str) -> Dict[str, int]:
    table = data.get(key, {})
    if not isinstance(table, dict):
        raise InputError(f"{key} must map names to bits, got {type(table).__name__}")
    return {str(k): int(v) for k, v in table.items()}


# ---- Complex numbers ----

def complex_to_json(value: complex) -> List[float]:
    value = complex(value)
    return [value.real, value.imag]


def complex_from_json(value) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value, 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        with _decoding("complex number"):
            return complex(float(value[0]), float(value[1]))
    raise InputError(f"expected a complex number as [re, im], got {value!r}")


# ---- Surfaces ----

def surface_to_dict(s: ShSurface) -> Dict[str, Any]:
    return {"genus": s.genus, "boundary": [b.value for b in s.boundary]}


def surface_from_dict(data: Union[str, Dict[str, Any]]) -> ShSurface:
    """Accepts either a surface name or {"genus": g, "boundary": [...]}."""
    if isinstance(data, str):
        return parse_surface_name(data)
    with _decoding("surface"):
        return ShSurface(int(_require(data, "genus")), tuple(BoundaryKind(b) for b in data.get("boundary", [])))


# ---- Bundle pairs ----

def pair_to_dict(p: RealBundlePair) -> Dict[str, Any]:
    return {"rank": p.rank, "maslov": p.maslov, "std_w1": list(p.std_w1)}


def pair_from_dict(data: Dict[str, Any], base: ShSurface) -> RealBundlePair:
    with _decoding("bundle pair"):
        return RealBundlePair(
            rank=int(_require(data, "rank")),
            maslov=int(_require(data, "maslov")),
            std_w1=tuple(int(b) for b in data.get("std_w1", [])),
            base=base,
        )


def klein_to_dict(k: KleinTorusPair) -> Dict[str, Any]:
    return {"rank": k.rank, "twist": k.twist}


def klein_from_dict(data: Dict[str, Any]) -> KleinTorusPair:
    with _decoding("Klein torus pair"):
        return KleinTorusPair(rank=int(_require(data, "rank")), twist=int(data.get("twist", 0)))


# ---- Operator loops ----

def operator_loop_to_dict(loop: OperatorLoop) -> Dict[str, Any]:
    return {
        "surface": surface_to_dict(loop.base),
        "std": [{"w1_b": d.w1_b, "w1_alpha": d.w1_alpha, "w2_beta": d.w2_beta} for d in loop.std],
        "cc": [{"eqw2": d.eqw2} for d in loop.cc],
    }


def operator_loop_from_dict(data: Dict[str, Any]) -> OperatorLoop:
    with _decoding("loop entry", MalformedLoopError):
        return OperatorLoop(
            base=surface_from_dict(_require(data, "surface", MalformedLoopError)),
            std=tuple(StdBoundaryLoopData(**entry) for entry in data.get("std", [])),
            cc=tuple(CrosscapLoopData(**entry) for entry in data.get("cc", [])),
        )


def change_from_dict(data: Dict[str, Any]):
    """Decode {"rank", "o_R", "s_R", "o_C", "boundary": [...]} into (change, boundary entries)."""
    with _decoding("trivialization change"):
        change = TrivializationChange(
            rank=int(data.get("rank", 1)),
            o_R=_bit_table(data, "o_R"),
            s_R=_bit_table(data, "s_R"),
            o_C=_bit_table(data, "o_C"),
        )
    entries = _require(data, "boundary")
    if not isinstance(entries, list):
        raise InputError(f"boundary must be a list, got {type(entries).__name__}")
    boundary = []
    for entry in entries:
        with _decoding(f"boundary entry {entry!r}"):
            boundary.append(BoundaryChangeEntry(
                kind=BoundaryKind(_require(entry, "kind")),
                loop_class=str(_require(entry, "loop_class")),
                w1_b=int(entry.get("w1_b", 0)) & 1,
                component=str(entry.get("component", "")),
            ))
    return change, boundary


# ---- Sampled loops ----

def sampled_loop_to_dict(L: SampledLoop) -> Dict[str, Any]:
    return {
        "n": L.n,
        "samples": [[complex_to_json(x) for x in m.ravel()] for m in L.samples],
    }


def sampled_loop_from_dict(data: Dict[str, Any]) -> SampledLoop:
    """Samples are row-major lists of n² complex entries, one list per point."""
    with _decoding("sample data", MalformedLoopError):
        n = int(_require(data, "n", MalformedLoopError))
        arr = np.asarray(_require(data, "samples", MalformedLoopError), dtype=float)
    if arr.ndim < 2 or arr.shape[-1] != 2 or arr[..., 0].size != arr.shape[0] * n * n:
        raise MalformedLoopError(f"each sample must hold {n * n} [re, im] entries")
    samples = (arr[..., 0] + 1j * arr[..., 1]).reshape(-1, n, n)
    return SampledLoop(n=n, samples=samples)


# ---- Curves ----

def params_to_dict(p: RealMapParams) -> Dict[str, Any]:
    return {
        "n": p.n,
        "d": p.d,
        "A": [float(a) for a in p.A],
        "roots": [[complex_to_json(b) for b in row] for row in p.roots],
    }


def params_from_dict(data: Dict[str, Any]) -> RealMapParams:
    with _decoding("curve parameters"):
        return RealMapParams(
            n=int(_require(data, "n")),
            d=int(_require(data, "d")),
            A=[float(a) for a in _require(data, "A")],
            roots=[[complex_from_json(b) for b in row] for row in _require(data, "roots")],
        )


def poly_tuple_to_dict(t: PolyTuple) -> Dict[str, Any]:
    return {"n": t.n, "d": t.d, "coeffs": [[complex_to_json(c) for c in row] for row in t.coeffs]}


def poly_tuple_from_dict(data: Dict[str, Any]) -> PolyTuple:
    with _decoding("polynomial tuple"):
        return PolyTuple(np.array([[complex_from_json(c) for c in row] for row in _require(data, "coeffs")]))
