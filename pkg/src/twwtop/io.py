"""Canonical JSON and DOT formats.

Every writer emits sorted keys, compact separators and a trailing newline,
with vertices sorted, edges as sorted pairs in lexicographic order and
cells dimension-major.  Parsing a file and writing it again therefore
reproduces it byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from .complexes import CUBICAL, SIMPLICIAL, Complex
from .errors import ValidationError
from .exact import SolveResult
from .pipeline import PipelineReport
from .trigraph import ContractionSequence, ContractionStep, Trigraph, WidthReport

PathLike = Union[str, os.PathLike]


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from None


def _require(data, keys, what):
    if not isinstance(data, dict):
        raise ValidationError(f"{what}: expected a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise ValidationError(f"{what}: missing field(s) {', '.join(missing)}")


# trigraphs

def trigraph_to_dict(g: Trigraph) -> dict:
    return {
        "vertices": sorted(g.vertices),
        "black": [list(e) for e in sorted(g.black)],
        "red": [list(e) for e in sorted(g.red)],
    }


def trigraph_from_dict(data: dict) -> Trigraph:
    _require(data, ("vertices", "black", "red"), "trigraph")
    try:
        return Trigraph(data["vertices"], map(tuple, data["black"]), map(tuple, data["red"]))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"trigraph: {exc}") from None


# contraction sequences

def sequence_to_dict(seq: ContractionSequence) -> dict:
    return {"steps": [{"left": s.left, "right": s.right, "merged": s.merged} for s in seq]}


def sequence_from_dict(data: dict) -> ContractionSequence:
    _require(data, ("steps",), "sequence")
    steps = []
    for i, s in enumerate(data["steps"]):
        _require(s, ("left", "right", "merged"), f"sequence step {i}")
        steps.append(ContractionStep(int(s["left"]), int(s["right"]), int(s["merged"])))
    return ContractionSequence(steps)


# complexes

def _cell_to_json(kind, key):
    if kind == SIMPLICIAL:
        return list(key)
    base, dirs = key
    return {"base": list(base), "dirs": list(dirs)}


def complex_to_dict(x: Complex) -> dict:
    return {"kind": x.kind, "dim": x.dim, "cells": [_cell_to_json(x.kind, c) for c in x.cells]}


def complex_from_dict(data: dict) -> Complex:
    _require(data, ("kind", "dim", "cells"), "complex")
    kind = data["kind"]
    if kind == SIMPLICIAL:
        cells = [tuple(c) for c in data["cells"]]
    elif kind == CUBICAL:
        cells = []
        for c in data["cells"]:
            _require(c, ("base", "dirs"), "cube")
            cells.append((tuple(c["base"]), tuple(c["dirs"])))
    else:
        raise ValidationError(f"unknown complex kind {kind!r}")
    x = Complex(kind, cells)
    if x.dim != data["dim"]:
        raise ValidationError(f"complex declares dim {data['dim']} but has dim {x.dim}")
    return x


# results

def solve_result_to_dict(r: SolveResult) -> dict:
    # wall time goes to the run manifest so results stay reproducible
    return {
        "value": r.value,
        "lower_bound": r.lower_bound,
        "nodes_explored": r.nodes_explored,
        "witness": sequence_to_dict(r.witness),
    }


def solve_result_from_dict(data: dict) -> SolveResult:
    _require(data, ("value", "witness", "nodes_explored"), "solve result")
    return SolveResult(data["value"], sequence_from_dict(data["witness"]),
                       data["nodes_explored"], 0.0, data.get("lower_bound", 0))


def width_report_to_dict(r: WidthReport) -> dict:
    return {
        "valid": r.valid,
        "full": r.full,
        "width": r.width,
        "step_count": r.step_count,
        "remaining_vertices": r.remaining_vertices,
        "per_step_max_red": list(r.per_step_max_red),
        "error": r.error,
    }


def width_report_from_dict(data: dict) -> WidthReport:
    _require(data, ("valid", "width", "step_count", "remaining_vertices", "per_step_max_red"),
             "width report")
    return WidthReport(data["valid"], data["width"], list(data["per_step_max_red"]),
                       data["step_count"], data["remaining_vertices"], data.get("error"))


def pipeline_report_to_dict(r: PipelineReport, with_timings: bool = False) -> dict:
    return r.to_dict(with_timings)


def pipeline_report_from_dict(data: dict) -> PipelineReport:
    _require(data, ("d", "n", "sizes", "epoch1_width", "epoch2_width", "total_width",
                    "family_stats", "verified"), "pipeline report")
    return PipelineReport(data["d"], data["n"], data["sizes"], data["epoch1_width"],
                          data["epoch2_width"], data["total_width"], data["family_stats"],
                          data["verified"], data.get("part_order", "lex"),
                          data.get("timings", {}))


# files

def write_json(path: PathLike, data: Any) -> None:
    Path(path).write_text(dumps(data), encoding="utf-8")


def read_json(path: PathLike) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def read_trigraph(path: PathLike) -> Trigraph:
    return trigraph_from_dict(read_json(path))


def read_sequence(path: PathLike) -> ContractionSequence:
    return sequence_from_dict(read_json(path))


def read_complex(path: PathLike) -> Complex:
    return complex_from_dict(read_json(path))


# DOT

def to_dot(g: Trigraph, name: str = "G") -> str:
    """Undirected DOT; red edges carry ``color=red``, black edges are unadorned."""
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in sorted(g.vertices)]
    edges = sorted([(e, False) for e in g.black] + [(e, True) for e in g.red])
    for (u, v), red in edges:
        lines.append(f"  {u} -- {v}{' [color=red]' if red else ''};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# run manifests

def sha256_file(path: PathLike) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    command: str
    parameters: dict
    inputs: dict = field(default_factory=dict)   # path -> sha256
    outputs: list = field(default_factory=list)
    version: str = ""
    wall_time: float = 0.0
    exit_code: int = 0
    extra: dict = field(default_factory=dict)

    def add_input(self, path: PathLike) -> None:
        self.inputs[str(path)] = sha256_file(path)

    def to_dict(self) -> dict:
        return asdict(self)


def manifest_path(explicit: Optional[PathLike], primary_output: Optional[PathLike]):
    """Where a manifest goes: the explicit path, else next to the primary output, else None."""
    if explicit:
        return Path(explicit)
    if primary_output:
        return Path(f"{primary_output}.manifest.json")
    return None
