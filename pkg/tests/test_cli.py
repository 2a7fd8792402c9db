import json
from pathlib import Path

import pytest

from tempograph.cli import main

FIXTURE = str(Path(__file__).resolve().parent.parent / "fixtures" / "contacts_small.txt")
FIXTURE_CATS = str(
    Path(__file__).resolve().parent.parent / "fixtures" / "contacts_small_categories.txt"
)


def run_pipeline(tmp_path, *extra):
    out = tmp_path / "bundle.json"
    code = main(["pipeline", FIXTURE, "--out", str(out), *extra])
    assert code == 0
    return out


def test_twenty_event_stream_gives_two_instances(tmp_path):
    stream = tmp_path / "events.txt"
    lines = [f"{i * 0.5} a b" for i in range(10)] + [f"{5 + i * 0.5} c d" for i in range(10)]
    stream.write_text("\n".join(lines) + "\n")
    out = tmp_path / "b.json"
    code = main(["pipeline", str(stream), "--window", "5", "--out", str(out), "--k", "1", "--period", "1"])
    assert code == 0
    bundle = json.loads(out.read_text())
    assert len(bundle["instances"]) == 2
    for inst in bundle["instances"]:
        assert set(inst["diagrams"].keys()) == {"0", "1"}


def test_default_flags_succeed_on_bundled_fixture(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["pipeline", FIXTURE]) == 0
    bundle = json.loads((tmp_path / "bundle.json").read_text())
    assert bundle["dataset"]["n_instances"] == 16


def test_same_invocation_is_byte_identical(tmp_path):
    a = run_pipeline(tmp_path / "a", "--seed", "7")
    b = run_pipeline(tmp_path / "b", "--seed", "7")
    assert a.read_bytes() == b.read_bytes()


def test_thread_count_is_byte_identical(tmp_path):
    a = run_pipeline(tmp_path / "a", "--threads", "1")
    b = run_pipeline(tmp_path / "b", "--threads", "3")
    assert a.read_bytes() == b.read_bytes()


def test_bundle_round_trip(tmp_path):
    from tempograph.export import ExportBundle

    path = run_pipeline(tmp_path)
    bundle = ExportBundle.read(path)
    path2 = tmp_path / "again.json"
    bundle.write(path2)
    assert path.read_bytes() == path2.read_bytes()


def test_malformed_input_exits_nonzero_with_lineno(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 a b\nnot-a-number a b\n")
    code = main(["pipeline", str(bad), "--out", str(tmp_path / "x.json")])
    assert code == 2
    err = capsys.readouterr().err
    assert "bad.txt:2" in err


def test_categories_and_csv_sidecars(tmp_path):
    out = tmp_path / "bundle.json"
    csv_dir = tmp_path / "csv"
    code = main(
        [
            "pipeline",
            FIXTURE,
            "--categories",
            FIXTURE_CATS,
            "--out",
            str(out),
            "--csv-dir",
            str(csv_dir),
        ]
    )
    assert code == 0
    bundle = json.loads(out.read_text())
    vert = bundle["instances"][0]["vertices"][0]
    assert vert == {"id": "a", "category": "staff"}
    assert (csv_dir / "diagram_distances.csv").exists()
    assert (csv_dir / "timeline.csv").exists()
    assert (csv_dir / "distances_0000.csv").exists()
    assert (csv_dir / "diagrams_0015.csv").exists()


def test_cap_policy_pipeline_runs(tmp_path):
    out = run_pipeline(tmp_path, "--essential", "cap=100")
    bundle = json.loads(out.read_text())
    assert bundle["config"]["essential"] == {"mode": "cap", "value": 100.0}


def test_pipeline_distances_match_library(tmp_path):
    # the exported matrix under --no-root/--essential drop must equal direct
    # library computation with the same config
    import numpy as np

    from tempograph.analysis import DiagramDistanceConfig, diagram, pairwise_diagram_distances
    from tempograph.graphs import ingest_temporal_edges
    from tempograph.io import load_edge_events

    out = run_pipeline(
        tmp_path, "--distance", "wasserstein", "--q", "2", "--no-root", "--essential", "drop"
    )
    bundle = json.loads(out.read_text())

    events, _ = load_edge_events(FIXTURE)
    tvg = ingest_temporal_edges(events, window_length=86400.0)
    cfg = DiagramDistanceConfig(metric="sp", dim=0, distance="wasserstein", q=2.0, apply_root=False)
    pds = [diagram(g, cfg) for g in tvg.instances]
    expected = pairwise_diagram_distances(pds, cfg)
    assert np.allclose(np.array(bundle["distance_matrix"]), expected, atol=1e-12)


def test_experiment_table1(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(["experiment", "table1"]) == 0
    csv_lines = (tmp_path / "experiments" / "table1.csv").read_text().splitlines()
    assert len(csv_lines) == 5  # header + 4 rows
    assert csv_lines[0].count(",") == 7  # 4 graph columns + 4 delta columns
    out = capsys.readouterr().out
    assert "C5" in out and "e1K9" in out


def test_experiment_stability_record_count(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(
        ["experiment", "stability", "--n", "20", "--m", "50", "--steps", "3", "--reps", "2", "--seed", "3"]
    )
    assert code == 0
    lines = (tmp_path / "experiments" / "stability.csv").read_text().splitlines()
    assert len(lines) == 1 + 3 * 2


def test_experiment_property4_writes_curves(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(["experiment", "property4", "--seed", "6"])
    assert code == 0
    lines = (tmp_path / "experiments" / "property4_dim0.csv").read_text().splitlines()
    assert lines[0] == "n,m,percent,delta"
    assert len(lines) == 1 + 3 * 7  # three graphs, seven corruption levels


@pytest.mark.slow
def test_experiment_property2_writes_three_scatter_files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(["experiment", "property2", "--seed", "6"])
    assert code == 0
    files = sorted((tmp_path / "experiments").glob("property2_dim0_A*.csv"))
    assert [f.name for f in files] == [
        "property2_dim0_A1.csv",
        "property2_dim0_A2.csv",
        "property2_dim0_A3.csv",
    ]
    # one scatter point per edge of each generated graph
    for f, m in zip(files, (200, 250, 300)):
        assert len(f.read_text().splitlines()) == 1 + m
