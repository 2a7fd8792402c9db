"""Temporal edge-list loaders.

The native schema is line-oriented text, whitespace- or comma-separated,
`t u v [w]` per line with `#` comments. Presets remap the column orders of
SocioPatterns contact lists (`t i j [Ci Cj]`, which also carry vertex
classes) and SNAP temporal e-mail lists (`u v t`).
"""

from __future__ import annotations

from pathlib import Path

from .graphs import GraphInstance, TemporalEdgeEvent, _make_instance, canonical_edge

PRESETS = ("plain", "sociopatterns", "snap-email")


class InputFormatError(ValueError):
    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


def _tokens(line: str) -> list[str]:
    line = line.split("#", 1)[0].strip()
    if not line:
        return []
    return line.replace(",", " ").split()


def parse_edge_events(
    lines, preset: str = "plain", source: str = "<input>"
) -> tuple[list[TemporalEdgeEvent], dict[str, str]]:
    """Parse a temporal edge stream; returns (events, vertex categories)."""
    if preset not in PRESETS:
        raise ValueError(f"unknown preset {preset!r}; expected one of {PRESETS}")
    events: list[TemporalEdgeEvent] = []
    categories: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        try:
            if preset == "snap-email":
                if len(toks) != 3:
                    raise ValueError(f"expected 3 columns (u v t), got {len(toks)}")
                u, v, t = toks
                events.append(TemporalEdgeEvent(time=float(t), u=u, v=v))
            else:
                if len(toks) < 3:
                    raise ValueError(f"expected at least 3 columns, got {len(toks)}")
                t, u, v = toks[0], toks[1], toks[2]
                weight = 1.0
                if preset == "plain":
                    if len(toks) > 4:
                        raise ValueError(f"expected t u v [w], got {len(toks)} columns")
                    if len(toks) == 4:
                        weight = float(toks[3])
                else:  # sociopatterns: trailing columns are class labels
                    if len(toks) >= 5:
                        categories[u] = toks[3]
                        categories[v] = toks[4]
                events.append(TemporalEdgeEvent(time=float(t), u=u, v=v, weight=weight))
        except ValueError as exc:
            raise InputFormatError(source, lineno, str(exc)) from None
    return events, categories


def load_edge_events(path, preset: str = "plain"):
    path = Path(path)
    with open(path) as fh:
        return parse_edge_events(fh, preset=preset, source=str(path))


def load_static_graph(path) -> GraphInstance:
    """Weighted static graph from `u v [w]` lines (stability baselines)."""
    path = Path(path)
    edges: dict = {}
    vertices: set[str] = set()
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            toks = _tokens(raw)
            if not toks:
                continue
            if len(toks) not in (2, 3):
                raise InputFormatError(path, lineno, f"expected `u v [w]`, got {len(toks)} columns")
            u, v = toks[0], toks[1]
            if u == v:
                continue
            try:
                w = float(toks[2]) if len(toks) == 3 else 1.0
            except ValueError:
                raise InputFormatError(path, lineno, f"bad weight {toks[2]!r}") from None
            e = canonical_edge(u, v)
            edges[e] = edges.get(e, 0.0) + w
            vertices.update(e)
    return _make_instance(0, (0.0, 1.0), vertices, edges)


def load_vertex_categories(path) -> dict[str, str]:
    """Sidecar file with one `vertex category` pair per line."""
    path = Path(path)
    out: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            toks = _tokens(raw)
            if not toks:
                continue
            if len(toks) != 2:
                raise InputFormatError(path, lineno, f"expected `vertex category`, got {len(toks)} columns")
            out[toks[0]] = toks[1]
    return out
