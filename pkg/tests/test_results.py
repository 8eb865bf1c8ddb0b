import xml.etree.ElementTree as ET

import pytest

from helpers import wrap_sections, region_of
from mvee.charts import line_chart
from mvee.results import (
    EmptySelection,
    ResultStore,
    SchemaIngestError,
    UnknownMethodResult,
    export_report,
    ingest_run,
    latest_build_series,
    mixed_build_series,
    series_to_dict,
    store_from_jsonl,
    store_to_jsonl,
)
from mvee.versions import BuildInput, VersionGraph, record_build


def entry(section, sel, value, metric="runtime"):
    return {"section": section, "params": {"selectivity": sel},
            "metric": metric, "value": value, "unit": "ms"}


def single_method_graph(bodies_per_build, modified_flags=None):
    """Graph for one method 'B' advanced across the given bodies."""
    graph = VersionGraph.for_methods(["B"])
    outcome_log = []
    for n, body in enumerate(bodies_per_build):
        modified = bool(modified_flags and modified_flags[n])
        region = region_of(wrap_sections({"B": body}), "B", f"build{n}")
        outcome_log.append(
            record_build(graph, f"build{n}", {"B": BuildInput(modified, region)})
        )
    return graph, outcome_log


BODY_V0 = "\tmovq\t$1, %rax\n"
BODY_V1 = "\tmovq\t$2, %rax\n"


def test_fork_outcome_appends_under_new_version():
    graph, log = single_method_graph([BODY_V0, BODY_V1])
    store = ResultStore()
    ingest_run([entry("B", 1.0, 700.0)], log[0], store, "build0")
    ingest_run([entry("B", 1.0, 812.0)], log[1], store, "build1")
    assert len(store) == 2
    v0 = store.for_version("B", 0, "runtime")
    assert len(v0) == 1 and v0[0].value == 700.0  # untouched by the fork


def test_unchanged_outcome_replaces_same_key():
    graph, log = single_method_graph([BODY_V0, BODY_V0])
    store = ResultStore()
    ingest_run([entry("B", 1.0, 700.0)], log[0], store, "build0")
    ingest_run([entry("B", 1.0, 650.0)], log[1], store, "build1")
    assert len(store) == 1
    assert store.for_version("B", 0, "runtime")[0].value == 650.0


def test_unknown_method_entry_rejected():
    graph, log = single_method_graph([BODY_V0])
    with pytest.raises(UnknownMethodResult):
        ingest_run([entry("X", 1.0, 1.0)], log[0], ResultStore(), "build0")


@pytest.mark.parametrize("bad", [
    {"section": "B", "params": {}, "metric": "runtime", "value": float("nan"), "unit": "ms"},
    {"section": "B", "params": {}, "metric": "runtime", "unit": "ms"},
    {"section": "B", "params": "notdict", "metric": "runtime", "value": 1.0, "unit": "ms"},
    {"section": "B", "params": {}, "metric": "runtime", "value": True, "unit": "ms"},
])
def test_schema_violations_rejected(bad):
    graph, log = single_method_graph([BODY_V0])
    with pytest.raises(SchemaIngestError):
        ingest_run([bad], log[0], ResultStore(), "build0")


def test_reingest_is_idempotent():
    graph, log = single_method_graph([BODY_V0, BODY_V0])
    store = ResultStore()
    entries = [entry("B", s, 10.0 * s) for s in (0.25, 0.5, 1.0)]
    ingest_run(entries, log[1], store, "build1")
    once = store_to_jsonl(store)
    ingest_run(entries, log[1], store, "build1")
    assert store_to_jsonl(store) == once


def test_export_contains_every_relevant_version_and_nothing_else():
    graph, log = single_method_graph([BODY_V0, BODY_V1, BODY_V1])
    store = ResultStore()
    ingest_run([entry("B", 1.0, 700.0)], log[0], store, "build0")
    ingest_run([entry("B", 1.0, 812.0)], log[1], store, "build1")
    series = export_report(store, graph, "runtime", "selectivity")
    assert sorted(s.label for s in series) == ["B.V0", "B.V1"]

    # a merge makes older versions irrelevant even though their data remains
    region = region_of(wrap_sections({"B": BODY_V1}), "B", "b3")
    record_build(graph, "build3", {"B": BuildInput(True, region)})
    store2 = ResultStore()
    ingest_run([entry("B", 1.0, 500.0)], {"B": graph.methods["B"].steps[-1][1]},
               store2, "build3")
    series = export_report(store2, graph, "runtime", "selectivity")
    assert [s.label for s in series] == ["B.V2"]


def test_empty_selection_raises():
    graph, log = single_method_graph([BODY_V0])
    with pytest.raises(EmptySelection):
        export_report(ResultStore(), graph, "runtime", "selectivity")


def test_single_record_single_point_series():
    graph, log = single_method_graph([BODY_V0])
    store = ResultStore()
    ingest_run([entry("B", 0.5, 3.25)], log[0], store, "build0")
    [series] = export_report(store, graph, "runtime", "selectivity")
    assert series.label == "B.V0"
    assert [(p.param, p.value) for p in series.points] == [(0.5, 3.25)]


def crossing_fixture():
    """V0 fast below full selectivity, V1 fast at full; the last build
    reverted to V0 and re-measured only the full-selectivity point."""
    graph, log = single_method_graph([BODY_V0, BODY_V1, BODY_V0])
    store = ResultStore()
    sweep0 = [entry("B", s, v) for s, v in [(0.25, 10), (0.5, 12), (0.75, 14), (1.0, 40)]]
    sweep1 = [entry("B", s, v) for s, v in [(0.25, 20), (0.5, 22), (0.75, 24), (1.0, 25)]]
    ingest_run(sweep0, log[0], store, "build0")
    ingest_run(sweep1, log[1], store, "build1")
    ingest_run([entry("B", 1.0, 40.0)], log[2], store, "build2")
    return graph, store


def test_mixed_build_series_splices_versions():
    graph, store = crossing_fixture()
    [series] = mixed_build_series(store, graph, "runtime", "selectivity")
    assert series.label == "B"
    assert series.version is None
    by_param = {p.param: p for p in series.points}
    # low selectivities kept the newer V1 measurements, the full-selectivity
    # point was re-measured last under V0: the spliced worst-case baseline
    assert by_param[0.25].version == 1
    assert by_param[1.0].version == 0
    assert {p.version for p in series.points} == {0, 1}


def test_latest_build_series_shows_single_version():
    graph, store = crossing_fixture()
    [series] = latest_build_series(store, graph, "runtime", "selectivity")
    assert series.label == "B.V0"
    assert {p.version for p in series.points} == {0}
    assert len(series.points) == 4


def test_full_report_shows_both_crossing_series():
    graph, store = crossing_fixture()
    series = export_report(store, graph, "runtime", "selectivity")
    assert sorted(s.label for s in series) == ["B.V0", "B.V1"]
    doc = series_to_dict("runtime", "selectivity", series)
    assert len(doc["series"]) == 2
    for s in doc["series"]:
        assert all({"param", "value", "build", "version"} <= set(p)
                   for p in s["points"])


def test_chart_is_valid_xml_with_one_polyline_per_series():
    graph, store = crossing_fixture()
    series = export_report(store, graph, "runtime", "selectivity")
    svg = line_chart(series, "runtime", "selectivity", "demo chart")
    root = ET.fromstring(svg)
    polylines = [el for el in root.iter() if el.tag.endswith("polyline")]
    assert len(polylines) == len(series)


def test_demo_problem_modes_bundles_both_charts():
    from mvee.results import demo_problem_modes

    graph, store = crossing_fixture()
    modes = demo_problem_modes(store, graph, "runtime", "selectivity")
    assert set(modes) == {"mixed_builds", "latest_build"}
    for payload in modes.values():
        ET.fromstring(payload["svg"])
        assert payload["series"]["series"]
    assert len(modes["mixed_builds"]["series"]["series"]) == 1
    assert modes["latest_build"]["series"]["series"][0]["label"] == "B.V0"


def test_single_version_store_makes_all_charts_identical():
    from mvee.results import demo_problem_modes

    graph, log = single_method_graph([BODY_V0])
    store = ResultStore()
    ingest_run([entry("B", s, 5.0 * s) for s in (0.5, 1.0)], log[0], store, "build0")
    full = series_to_dict("runtime", "selectivity",
                          export_report(store, graph, "runtime", "selectivity"))
    modes = demo_problem_modes(store, graph, "runtime", "selectivity")
    single_points = modes["latest_build"]["series"]["series"][0]["points"]
    mixed_points = modes["mixed_builds"]["series"]["series"][0]["points"]
    full_points = full["series"][0]["points"]
    assert single_points == full_points == mixed_points


def test_store_jsonl_round_trip_byte_stable():
    graph, store = crossing_fixture()
    text = store_to_jsonl(store)
    assert store_to_jsonl(store_from_jsonl(text)) == text


def test_empty_store_serializes_to_empty_text():
    assert store_to_jsonl(ResultStore()) == ""
    assert len(store_from_jsonl("")) == 0
