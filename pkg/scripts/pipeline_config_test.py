import os

import pytest
import yaml

from labourflow.tools.pipeline.PipelineConfig import PipelineConfig
from scripts.fixtures import write_lines


def write_config(tmp_path, values):
    for name in ("registry.jsonl", "queries.jsonl", "postings.jsonl", "indicators.csv"):
        write_lines(tmp_path / name, [])
    doc = {"paths": {"registry": "registry.jsonl", "queries": "queries.jsonl",
                     "postings": "postings.jsonl", "indicators": "indicators.csv"},
           "kmeans": {"k": 4}}
    for section, fields in values.items():
        if isinstance(fields, dict):
            doc.setdefault(section, {}).update(fields)
        else:
            doc[section] = fields
    path = str(tmp_path / "pipeline.yaml")
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(doc, f)
    return path


def test_valid_configuration(tmp_path):
    config = PipelineConfig.load(write_config(tmp_path, {}))
    assert config.validate() == []
    assert config.get("hits", "tol") == 1e-10
    assert config.get("louvain", "resolutions") == [1.0]
    assert config.workers == 1
    assert config.quarters() is None


def test_paths_are_relative_to_the_file(tmp_path):
    config = PipelineConfig.load(write_config(tmp_path, {}))
    assert config.path("registry") == os.path.join(str(tmp_path), "registry.jsonl")
    assert config.output_dir == os.path.join(str(tmp_path), "output")


def test_non_positive_tolerance_names_the_field(tmp_path):
    problems = PipelineConfig.load(write_config(tmp_path, {"hits": {"tol": 0}})).validate()
    assert len(problems) == 1
    assert "hits.tol" in problems[0]


def test_missing_registry(tmp_path):
    path = write_config(tmp_path, {})
    os.remove(str(tmp_path / "registry.jsonl"))
    problems = PipelineConfig.load(path).validate()
    assert len(problems) == 1
    assert problems[0].startswith("paths.registry")


def test_unknown_field(tmp_path):
    with pytest.raises(ValueError, match="louvain.gamma"):
        PipelineConfig.load(write_config(tmp_path, {"louvain": {"gamma": 1.0}}))
    with pytest.raises(ValueError, match="colour"):
        PipelineConfig({"colour": "blue"})


def test_stage_subsets_only_need_their_inputs(tmp_path):
    path = write_config(tmp_path, {"kmeans": {"k": None}})
    os.remove(str(tmp_path / "queries.jsonl"))
    config = PipelineConfig.load(path)
    checkpoints = tmp_path / "output" / "checkpoints"
    checkpoints.mkdir(parents=True)
    write_lines(checkpoints / "flow_intents.csv", [])
    assert config.validate(["graph", "metrics", "communities"]) == []
    problems = config.validate()
    assert any(p.startswith("paths.queries") for p in problems)
    assert any(p.startswith("kmeans.k") for p in problems)


def test_every_range_is_checked(tmp_path):
    config = PipelineConfig.load(write_config(tmp_path, {
        "quarters": ["2020Q1", "2020Q9"],
        "hits": {"max_iter": 0, "top_k": -1},
        "louvain": {"resolutions": [1.0, -2.0], "seed": "zero"},
        "dictionary": {"min_freq": 0, "top_drop": -1},
        "kmeans": {"k": 0, "tol": -1.0},
        "demand": {"groupings": ["tier", "continent"]},
        "report": {"formats": ["xml"], "quarter_pairs": [["2020Q1"]],
                   "correlate_quarter": "later"},
        "workers": 0}))
    fields = sorted(p.split(":")[0] for p in config.validate())
    assert fields == ["demand.groupings", "dictionary.min_freq", "dictionary.top_drop",
                      "hits.max_iter", "hits.top_k", "kmeans.k", "kmeans.tol",
                      "louvain.resolutions", "louvain.seed", "quarters", "report.correlate_quarter",
                      "report.formats", "report.quarter_pairs", "workers"]


def test_override(tmp_path):
    config = PipelineConfig.load(write_config(tmp_path, {"quarters": ["2020Q2", "2020Q1"],
                                                         "report": {"quarter_pairs": [
                                                             ["2020Q1", "2020Q2"]]}}))
    config.override(workers=3, output=str(tmp_path / "elsewhere"), formats=["json"])
    assert config.workers == 3
    assert config.output_dir == str(tmp_path / "elsewhere")
    assert config.get("report", "formats") == ["json"]
    assert [str(q) for q in config.quarters()] == ["2020Q1", "2020Q2"]
    assert [(str(a), str(b)) for a, b in config.quarter_pairs()] == [("2020Q1", "2020Q2")]


def test_shipped_configuration():
    path = os.path.join(os.path.dirname(__file__), "..", "configuration", "pipeline.yaml")
    config = PipelineConfig.load(path)
    assert config.get("dictionary", "stoplist").endswith(os.path.join("configuration",
                                                                      "stoplist.txt"))
    problems = config.validate()
    assert problems
    assert all(p.startswith("paths.") for p in problems)


def test_checkpoints_of_skipped_stages(tmp_path):
    config = PipelineConfig.load(write_config(tmp_path, {"report": {"indicator": "GDP"}}))
    checkpoints = os.path.join(str(tmp_path), "output", "checkpoints")
    assert config.validate() == []
    assert config.validate(["ingest", "graph", "metrics"]) == []

    problems = config.validate(["metrics"])
    assert problems == ["checkpoints: %s does not exist, run stage graph first" %
                        os.path.join(checkpoints, "flow_graph.csv")]

    problems = config.validate(["correlate", "report"])
    assert [p.split(", run stage ")[1] for p in problems] == \
        ["metrics first", "demand first", "demand first", "demand first", "demand first"]

    os.makedirs(checkpoints)
    for name in ("city_metrics.csv", "demand_tier.csv", "demand_city.csv",
                 "demand_region.csv", "demand_country.csv"):
        write_lines(os.path.join(checkpoints, name), [])
    assert config.validate(["correlate", "report"]) == []
    problems = config.validate(["report"])
    assert problems == ["checkpoints: %s does not exist, run stage correlate first" %
                        os.path.join(checkpoints, "correlation.csv")]
