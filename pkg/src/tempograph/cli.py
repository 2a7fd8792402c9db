"""Command-line surface.

`tempograph pipeline` runs ingest -> embed -> persist -> compare -> MDS and
writes the viewer bundle (plus optional CSV sidecars). `tempograph
experiment` dispatches the validation experiments (edge-submodularity table,
property suite, scatter/curve studies, edge-deletion stability).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import export
from .analysis import (
    DiagramDistanceConfig,
    classical_mds,
    embed,
    kmeans_periods,
    make_timeline,
    pairwise_diagram_distances,
    split_periods,
)
from .distances import EssentialPolicy
from .experiments import (
    focus_awareness,
    property_suite,
    stability_study,
    table1_deltas,
    weight_awareness,
)
from .graphs import generate_gnm, ingest_temporal_edges
from .io import InputFormatError, load_edge_events, load_static_graph, load_vertex_categories
from .persistence import compute_persistence, rips_filtration

log = logging.getLogger("tempograph")

DEFAULT_EXPERIMENT_SEED = 6
DEFAULT_STABILITY_SEED = 5


def _resolve_threads(value) -> int:
    if value is not None:
        return max(1, int(value))
    env = os.environ.get("TEMPOGRAPH_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _parse_essential(text: str) -> EssentialPolicy:
    if text == "drop":
        return EssentialPolicy("drop")
    if text.startswith("cap="):
        return EssentialPolicy("cap", float(text[4:]))
    raise argparse.ArgumentTypeError("essential policy must be `drop` or `cap=VALUE`")


def _parse_k_eig(text: str):
    if text in ("all", "auto"):
        return text
    return int(text)


def _add_config_flags(p: argparse.ArgumentParser, metric="sp", scheme="length"):
    p.add_argument("--metric", choices=["sp", "ct"], default=metric)
    p.add_argument("--weight-scheme", choices=["length", "inverse"], default=scheme)
    p.add_argument("--k-eig", type=_parse_k_eig, default="auto", metavar="N|all|auto")
    p.add_argument("--dim", type=int, choices=[0, 1], default=0)
    p.add_argument("--distance", choices=["bottleneck", "wasserstein"], default="wasserstein")
    p.add_argument("--q", type=float, default=2.0)
    root = p.add_mutually_exclusive_group()
    root.add_argument("--root", dest="apply_root", action="store_true", default=True)
    root.add_argument("--no-root", dest="apply_root", action="store_false")
    p.add_argument("--essential", type=_parse_essential, default=EssentialPolicy("drop"),
                   metavar="drop|cap=V")
    p.add_argument("--threads", type=int, default=None)


def _config_from_args(args) -> DiagramDistanceConfig:
    return DiagramDistanceConfig(
        metric=args.metric,
        dim=args.dim,
        distance=args.distance,
        q=args.q,
        apply_root=args.apply_root,
        essential=args.essential,
        weight_scheme=args.weight_scheme,
        k_eig=args.k_eig,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tempograph")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    pipe = sub.add_parser("pipeline", help="run the full analysis on a temporal edge list")
    pipe.add_argument("input", help="temporal edge list (`t u v [w]` lines)")
    pipe.add_argument("--preset", choices=["plain", "sociopatterns", "snap-email"], default="plain")
    pipe.add_argument("--categories", help="vertex category sidecar (`v category` lines)")
    pipe.add_argument("--window", type=float, default=86400.0, help="window length (default 1 day)")
    pipe.add_argument("--overlap", type=float, default=0.0, help="overlap fraction in [0, 1)")
    pipe.add_argument("--per-window-vertices", action="store_true")
    _add_config_flags(pipe)
    pipe.add_argument("--period", type=int, default=7, help="instances per period")
    pipe.add_argument("--k", type=int, default=2, help="k-means cluster count")
    pipe.add_argument("--mds-dims", type=int, default=2)
    pipe.add_argument("--seed", type=int, default=7)
    pipe.add_argument("--out", default="bundle.json")
    pipe.add_argument("--csv-dir", help="also write CSV sidecars into this directory")
    pipe.set_defaults(func=cmd_pipeline)

    exp = sub.add_parser("experiment", help="run the validation experiments")
    esub = exp.add_subparsers(dest="experiment", required=True)

    t1 = esub.add_parser("table1", help="edge-submodularity deltas on exemplar graphs")
    t1.add_argument("--out-dir", default="experiments")
    t1.set_defaults(func=cmd_table1)

    props = esub.add_parser("properties", help="full property suite (1-5)")
    _add_config_flags(props, metric="ct")
    props.add_argument("--seed", type=int, default=DEFAULT_EXPERIMENT_SEED)
    props.add_argument("--dims", type=int, nargs="+", choices=[0, 1], default=[0])
    props.add_argument("--out-dir", default="experiments")
    props.set_defaults(func=cmd_properties)

    p2 = esub.add_parser("property2", help="weight-awareness scatter study")
    _add_config_flags(p2, metric="ct")
    p2.add_argument("--seed", type=int, default=DEFAULT_EXPERIMENT_SEED)
    p2.add_argument("--dims", type=int, nargs="+", choices=[0, 1], default=[0])
    p2.add_argument("--out-dir", default="experiments")
    p2.set_defaults(func=cmd_property2)

    p4 = esub.add_parser("property4", help="focus-awareness corruption curves")
    _add_config_flags(p4, metric="ct")
    p4.add_argument("--seed", type=int, default=DEFAULT_EXPERIMENT_SEED)
    p4.add_argument("--dims", type=int, nargs="+", choices=[0, 1], default=[0])
    p4.add_argument("--out-dir", default="experiments")
    p4.set_defaults(func=cmd_property4)

    st = esub.add_parser("stability", help="edge-deletion stability study")
    _add_config_flags(st)
    st.add_argument("--baseline", help="static weighted edge list (`u v [w]`); default: G_{n,m} surrogate")
    st.add_argument("--n", type=int, default=554)
    st.add_argument("--m", type=int, default=2276)
    st.add_argument("--steps", type=int, default=20)
    st.add_argument("--reps", type=int, default=20)
    st.add_argument("--seed", type=int, default=DEFAULT_STABILITY_SEED)
    st.add_argument("--out-dir", default="experiments")
    st.set_defaults(func=cmd_stability)

    return parser


def run_pipeline(args) -> export.ExportBundle:
    events, preset_cats = load_edge_events(args.input, preset=args.preset)
    categories = dict(preset_cats)
    if args.categories:
        categories.update(load_vertex_categories(args.categories))

    tvg = ingest_temporal_edges(
        events,
        window_length=args.window,
        overlap_fraction=args.overlap,
        categories=categories,
        per_window_vertices=args.per_window_vertices,
    )
    cfg = _config_from_args(args)
    threads = _resolve_threads(args.threads)

    def embed_and_persist(g):
        d = embed(g, cfg)
        if not d.is_finite():
            log.warning("instance %d is disconnected; +inf pairs never enter the filtration", g.id)
        pd0, pd1 = compute_persistence(rips_filtration(d))
        return d, pd0, pd1

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_instance = list(pool.map(embed_and_persist, tvg.instances))
    else:
        per_instance = [embed_and_persist(g) for g in tvg.instances]

    diagrams = [row[1] if cfg.dim == 0 else row[2] for row in per_instance]

    cap_cfg = cfg
    if cfg.essential.mode == "cap":
        needed = max((d for pd in diagrams for _, d in pd.finite), default=0.0)
        if cfg.essential.value < needed:
            log.warning(
                "essential cap %g is below the largest finite death %g; raising it",
                cfg.essential.value, needed,
            )
            cap_cfg = DiagramDistanceConfig(
                metric=cfg.metric, dim=cfg.dim, distance=cfg.distance, q=cfg.q,
                apply_root=cfg.apply_root, essential=EssentialPolicy("cap", needed),
                weight_scheme=cfg.weight_scheme, k_eig=cfg.k_eig,
            )

    if len(diagrams) >= 2:
        dmat = pairwise_diagram_distances(diagrams, cap_cfg, threads=threads)
    else:
        dmat = np.zeros((len(diagrams), len(diagrams)))
    coords = classical_mds(dmat, args.mds_dims)
    records = make_timeline(tvg, coords, args.period)

    segments = split_periods(records, args.period)
    n_full = sum(1 for s in segments if s.full)
    if 1 <= args.k <= n_full:
        records, _ = kmeans_periods(segments, args.k, args.seed)
    else:
        log.warning("k=%d exceeds the %d full periods; skipping clustering", args.k, n_full)

    essential_echo = {"mode": cfg.essential.mode}
    if cfg.essential.mode == "cap":
        essential_echo["value"] = float(cfg.essential.value)

    instances = []
    for g, (d, pd0, pd1), rec in zip(tvg.instances, per_instance, records):
        instances.append(
            {
                "id": g.id,
                "window": [g.window[0], g.window[1]],
                "midpoint": g.midpoint(),
                "vertices": [
                    {"id": v, **({"category": g.categories[v]} if v in g.categories else {})}
                    for v in g.vertices
                ],
                "edges": [[u, v, w] for (u, v), w in g.sorted_edges()],
                "diagrams": {"0": export.diagram_to_obj(pd0), "1": export.diagram_to_obj(pd1)},
                "mds": list(rec.mds),
                "period": rec.period,
                "cluster": rec.cluster,
                "colormap": {"hour_of_day": rec.hour_of_day, "day_of_week": rec.day_of_week},
            }
        )

    bundle = export.ExportBundle(
        dataset={
            "source": str(args.input),
            "preset": args.preset,
            "window_length": float(args.window),
            "overlap_fraction": float(args.overlap),
            "stride": tvg.stride,
            "n_instances": len(tvg.instances),
            "n_events": len(events),
            "dropped_events": tvg.dropped_events,
        },
        config={
            "metric": cfg.metric,
            "weight_scheme": cfg.weight_scheme,
            "k_eig": cfg.k_eig if isinstance(cfg.k_eig, str) else int(cfg.k_eig),
            "dim": cfg.dim,
            "distance": cfg.distance,
            "q": float(cfg.q),
            "apply_root": cfg.apply_root,
            "essential": essential_echo,
            "period": int(args.period),
            "k": int(args.k),
            "mds_dims": int(args.mds_dims),
            "seed": int(args.seed),
        },
        instances=instances,
        distance_matrix=[[float(v) for v in row] for row in dmat],
    )

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    bundle.write(out)
    log.info("wrote %s (%d instances)", out, len(instances))

    if args.csv_dir:
        csv_dir = Path(args.csv_dir)
        csv_dir.mkdir(parents=True, exist_ok=True)
        (csv_dir / "diagram_distances.csv").write_text(export.distance_matrix_csv(dmat))
        (csv_dir / "timeline.csv").write_text(export.timeline_csv(records))
        for g, (d, pd0, pd1) in zip(tvg.instances, per_instance):
            (csv_dir / f"distances_{g.id:04d}.csv").write_text(export.distance_matrix_csv(d.values))
            (csv_dir / f"diagrams_{g.id:04d}.csv").write_text(export.diagram_csv([pd0, pd1]))
    return bundle


def cmd_pipeline(args) -> int:
    run_pipeline(args)
    return 0


def cmd_table1(args) -> int:
    rows = table1_deltas()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "table1.csv").write_text(export.table1_csv(rows))
    text = export.table1_text(rows)
    (out_dir / "table1.txt").write_text(text)
    print(text, end="")
    return 0


def cmd_properties(args) -> int:
    cfg = _config_from_args(args)
    report = property_suite(cfg, seed=args.seed, dims=tuple(args.dims),
                            threads=_resolve_threads(args.threads))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "table1.csv").write_text(export.table1_csv(report.table1))
    (out_dir / "table1.txt").write_text(export.table1_text(report.table1))
    lines = []
    for dim in args.dims:
        for kind in ("bottleneck", "wasserstein"):
            row = report.edge_importance.base_row(dim, kind)
            lines.append(f"P1 edge importance   dim {dim} {kind:<11}: "
                         + " ".join(f"{v:.4g}" for v in row))
            row = report.node_awareness.base_row(dim, kind)
            lines.append(f"P5 node awareness    dim {dim} {kind:<11}: "
                         + " ".join(f"{v:.4g}" for v in row))
        for r in report.weight_awareness:
            lines.append(
                f"P2 weight awareness  dim {dim} G_{{{r.n},{r.m}}}: "
                f"{r.satisfied_fraction(dim) * 100:.1f}% satisfied"
            )
        for r in report.focus_awareness:
            deltas = " ".join(f"{v:+.3g}" for _, v in r.curves[dim])
            lines.append(f"P4 focus awareness   dim {dim} G_{{{r.n},{r.m}}}: {deltas}")
    summary = "\n".join(lines) + "\n"
    (out_dir / "properties.txt").write_text(summary)
    for gi, r in enumerate(report.weight_awareness):
        for dim in args.dims:
            (out_dir / f"property2_dim{dim}_A{gi + 1}.csv").write_text(
                export.scatter_csv(r.points[dim])
            )
    for dim in args.dims:
        (out_dir / f"property4_dim{dim}.csv").write_text(
            export.curves_csv(report.focus_awareness, dim)
        )
    print(summary, end="")
    print(export.table1_text(report.table1), end="")
    return 0


def cmd_property2(args) -> int:
    cfg = _config_from_args(args)
    results = weight_awareness(cfg, seed=args.seed, dims=tuple(args.dims),
                               threads=_resolve_threads(args.threads))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for gi, r in enumerate(results):
        for dim in args.dims:
            path = out_dir / f"property2_dim{dim}_A{gi + 1}.csv"
            path.write_text(export.scatter_csv(r.points[dim]))
            print(f"G_{{{r.n},{r.m}}} dim {dim}: {r.satisfied_fraction(dim) * 100:.1f}% "
                  f"satisfied -> {path}")
    return 0


def cmd_property4(args) -> int:
    cfg = _config_from_args(args)
    results = focus_awareness(cfg, seed=args.seed, dims=tuple(args.dims))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for dim in args.dims:
        path = out_dir / f"property4_dim{dim}.csv"
        path.write_text(export.curves_csv(results, dim))
        for r in results:
            deltas = " ".join(f"{v:+.3g}" for _, v in r.curves[dim])
            print(f"G_{{{r.n},{r.m}}} dim {dim}: {deltas}")
    return 0


def cmd_stability(args) -> int:
    if args.baseline:
        g0 = load_static_graph(args.baseline)
    else:
        g0 = generate_gnm(args.n, args.m, seed=args.seed)
    cfg = _config_from_args(args)
    study = stability_study(
        g0,
        cfg,
        steps=tuple(range(1, args.steps + 1)),
        reps=args.reps,
        seed=args.seed,
        threads=_resolve_threads(args.threads),
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "stability.csv"
    path.write_text(export.stability_csv(study, cfg))
    w2 = study.per_step("w_2")
    lines = ["step  median(W_2)  undefined_norms"]
    for s in study.steps:
        undef = sum(1 for r in study.records if r.step == s and r.max_norm is None)
        lines.append(f"{s:>4}  {float(np.median(w2[s])):>11.4g}  {undef:>3}/{args.reps}")
    summary = "\n".join(lines) + "\n"
    (out_dir / "stability.txt").write_text(summary)
    print(summary, end="")
    print(f"wrote {path} ({len(study.records)} records)")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
