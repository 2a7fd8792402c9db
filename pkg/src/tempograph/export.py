"""Bundle and CSV serialization.

The bundle is one JSON document consumed by the viewer. Floats are written
with 17 significant digits so the file is byte-identical across runs and
round-trips exactly; non-finite floats are rejected (infinities only appear
in CSV sidecars, as the token `inf`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1


def _fmt_float(v: float) -> str:
    if not math.isfinite(v):
        raise ValueError("bundle JSON cannot carry non-finite numbers")
    if v == int(v) and abs(v) < 1e16:
        return f"{v:.1f}"
    return format(v, ".17g")


def dumps(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion-ordered dicts, 17-significant-digit
    floats."""
    pad = " " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, np.generic):
        return dumps(obj.item(), indent)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {dumps(v, indent + 2)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = obj.tolist() if isinstance(obj, np.ndarray) else list(obj)
        if not seq:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq)
        if flat:
            return "[" + ", ".join(dumps(v) for v in seq) + "]"
        items = [f"{pad}  {dumps(v, indent + 2)}" for v in seq]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


@dataclass(frozen=True)
class ExportBundle:
    """Everything the viewer needs: per-instance graphs, diagrams, MDS
    coordinates, periods and clusters, plus the pairwise distance matrix and
    an echo of the configuration."""

    dataset: dict
    config: dict
    instances: list[dict]
    distance_matrix: list[list[float]]
    schema_version: int = SCHEMA_VERSION

    def validate(self) -> None:
        n = len(self.instances)
        if len(self.distance_matrix) != n:
            raise ValueError("distance matrix size does not match instance count")
        ids = [inst["id"] for inst in self.instances]
        if ids != list(range(n)):
            raise ValueError("instance ids must be 0..n-1 in order")
        for inst in self.instances:
            for key in ("window", "vertices", "edges", "diagrams", "mds", "period", "colormap"):
                if key not in inst:
                    raise ValueError(f"instance {inst.get('id')} misses field {key!r}")

    def to_json_obj(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "dataset": self.dataset,
            "config": self.config,
            "instances": self.instances,
            "distance_matrix": self.distance_matrix,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ExportBundle":
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {obj.get('schema_version')!r}")
        bundle = cls(
            dataset=obj["dataset"],
            config=obj["config"],
            instances=obj["instances"],
            distance_matrix=obj["distance_matrix"],
            schema_version=obj["schema_version"],
        )
        bundle.validate()
        return bundle

    def to_json(self) -> str:
        self.validate()
        return dumps(self.to_json_obj()) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def read(cls, path) -> "ExportBundle":
        return cls.from_json_obj(json.loads(Path(path).read_text()))


def diagram_to_obj(pd) -> dict:
    return {
        "finite": [[b, d] for b, d in pd.finite],
        "essential": list(pd.essential),
    }


# -- CSV sidecars -----------------------------------------------------------

DISCONNECTED_TOKEN = "undefined (disconnected)"


def _csv_cell(v) -> str:
    if v is None:
        return DISCONNECTED_TOKEN
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def distance_matrix_csv(values: np.ndarray) -> str:
    lines = [",".join(_csv_cell(float(v)) for v in row) for row in values]
    return "\n".join(lines) + "\n"


def diagram_csv(pds) -> str:
    """Rows `dim,birth,death` over one or more diagrams, `inf` for
    essentials."""
    lines = ["dim,birth,death"]
    for pd in pds:
        for b, d in pd.finite:
            lines.append(f"{pd.dim},{_csv_cell(float(b))},{_csv_cell(float(d))}")
        for b in pd.essential:
            lines.append(f"{pd.dim},{_csv_cell(float(b))},inf")
    return "\n".join(lines) + "\n"


def stability_csv(study, cfg) -> str:
    header = "metric,dim,distance_q,apply_root,step,rep,w_inf,w_2,max_norm,frobenius_norm"
    lines = [header]
    for r in study.records:
        lines.append(
            ",".join(
                [
                    cfg.metric,
                    str(cfg.dim),
                    _csv_cell(cfg.q),
                    str(cfg.apply_root).lower(),
                    str(r.step),
                    str(r.rep),
                    _csv_cell(r.w_inf),
                    _csv_cell(r.w_2),
                    _csv_cell(r.max_norm),
                    _csv_cell(r.frobenius_norm),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def table1_text(rows) -> str:
    """Plain-text table of the edge-submodularity deltas."""
    out = ["A        B        C        D        | dW_2,0  dW_2,1  dW_inf,0 dW_inf,1"]
    out.append("-" * len(out[0]))
    for r in rows:
        a, b, c, d = r.graphs
        out.append(
            f"{a:<8} {b:<8} {c:<8} {d:<8} | {r.w2_0:<7.4g} {r.w2_1:<7.4g} "
            f"{r.winf_0:<8.4g} {r.winf_1:<8.4g}"
        )
    return "\n".join(out) + "\n"


def table1_csv(rows) -> str:
    lines = ["A,B,C,D,w2_dim0,w2_dim1,winf_dim0,winf_dim1"]
    for r in rows:
        lines.append(
            ",".join(list(r.graphs) + [_csv_cell(v) for v in (r.w2_0, r.w2_1, r.winf_0, r.winf_1)])
        )
    return "\n".join(lines) + "\n"


def scatter_csv(points) -> str:
    lines = ["w_eA_C,w_eA_B"]
    for x, y in points:
        lines.append(f"{_csv_cell(float(x))},{_csv_cell(float(y))}")
    return "\n".join(lines) + "\n"


def curves_csv(results, dim: int) -> str:
    lines = ["n,m,percent,delta"]
    for r in results:
        for k, v in r.curves[dim]:
            lines.append(f"{r.n},{r.m},{k},{_csv_cell(float(v))}")
    return "\n".join(lines) + "\n"


def timeline_csv(records) -> str:
    lines = ["instance,time,mds0,period,cluster,hour_of_day,day_of_week"]
    for r in records:
        cluster = "" if r.cluster is None else str(r.cluster)
        lines.append(
            f"{r.instance_id},{_csv_cell(r.time)},{_csv_cell(r.mds[0])},"
            f"{r.period},{cluster},{_csv_cell(r.hour_of_day)},{r.day_of_week}"
        )
    return "\n".join(lines) + "\n"
