import filecmp
import json
import os

import numpy as np
import pytest
import yaml

from labourflow.geo.Registry import Registry
from labourflow.representations.Errors import ScenarioError
from labourflow.synth.Generator import Generator, largest_remainder
from labourflow.synth.GroundTruth import GroundTruth
from labourflow.synth.NameBook import NameBook
from labourflow.synth.Scenario import Scenario
from labourflow.tools.pipeline.PipelineConfig import PipelineConfig
from scripts.fixtures import SMALL_SCENARIO

FILES = ["registry", "queries", "postings", "ground_truth", "indicators", "stoplist", "config"]


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    directory = str(tmp_path_factory.mktemp("corpus"))
    paths = Generator(Scenario(**SMALL_SCENARIO)).generate(directory)
    return paths, GroundTruth.load(paths["ground_truth"])


def test_scenario_defaults():
    scenario = Scenario()
    assert scenario.n_cities == 52
    assert scenario.categories == ["express", "manufacture", "passenger-transport",
                                   "white-collar"]
    assert scenario.city_ids()[:2] == ["C001", "C002"]
    assert scenario.noise["malformed_lines"] == 10


def test_scenario_partial_noise():
    scenario = Scenario(noise={"duplicates": 0.0})
    assert scenario.noise["duplicates"] == 0.0
    assert scenario.noise["non_job"] == 0.2


def test_unknown_scenario_field():
    with pytest.raises(ScenarioError, match="cities"):
        Scenario(cities=10)


@pytest.mark.parametrize("params", [
    {"tiers": {"T1": 1}},
    {"provinces": 0},
    {"intra_intensity": 20.0, "inter_intensity": 5.0},
    {"quarter_scale": [1.0]},
    {"blackholes": {"C999": 10}},
    {"blackholes": {"C001": 0}},
    {"kmeans_k": 3},
    {"noise": {"non_job": 1.0}},
    {"noise": {"non_job": 0.5, "province_only": 0.5}},
    {"generic_title_words": ["Hiring"]},
    {"demand_mixture": {"T1": {"white-collar": 0.5}, "NewT1": {"white-collar": 1.0},
                        "T2": {"white-collar": 1.0}, "T3": {"white-collar": 1.0},
                        "T4": {"white-collar": 1.0}, "T5": {"white-collar": 1.0}}},
    {"category_pools": {"white-collar": ["clerk", "analyst", "engineer"],
                        "manufacture": ["clerk", "welder", "machinist"],
                        "express": ["courier", "parcel", "sorter"],
                        "passenger-transport": ["driver", "taxi", "coach"]}},
])
def test_infeasible_scenarios(params):
    with pytest.raises(ScenarioError):
        Scenario(**params)


def test_load_scenario(tmp_path):
    path = str(tmp_path / "scenario.yaml")
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(SMALL_SCENARIO, f)
    scenario = Scenario.load(path)
    assert scenario.n_cities == 20
    assert [str(q) for q in scenario.quarters] == ["2020Q1", "2020Q2"]
    assert Scenario(**scenario.to_dict()).to_dict() == scenario.to_dict()


def test_largest_remainder():
    assert largest_remainder(10, {"a": 0.5, "b": 0.25, "c": 0.25}) == {"a": 5, "b": 3, "c": 2}
    assert largest_remainder(0, {"a": 1.0}) == {"a": 0}
    rng = np.random.default_rng(3)
    for _ in range(50):
        shares = rng.dirichlet(np.ones(5))
        total = int(rng.integers(0, 500))
        counts = largest_remainder(total, dict(("c%d" % i, s) for i, s in enumerate(shares)))
        assert sum(counts.values()) == total
        for i, s in enumerate(shares):
            assert abs(counts["c%d" % i] - total * s) < 1.0


def test_name_book_is_prefix_free():
    book = NameBook(np.random.default_rng(5))
    names = [book.fresh() for _ in range(200)]
    assert names == book.names
    for name in names:
        assert name[0].isupper() and name[1:].islower()
        assert not any(a != name and (a.startswith(name) or name.startswith(a)) for a in names)
    assert not book.accepts(names[0])
    assert not book.accepts(names[0] + "x")


def test_generated_files(corpus):
    paths, _ = corpus
    assert sorted(paths) == sorted(FILES)
    for role in FILES:
        assert os.path.getsize(paths[role]) > 0
    config = PipelineConfig.load(paths["config"])
    assert config.validate() == []
    assert config.path("registry") == paths["registry"]
    assert config.get("kmeans", "k") == 6


def test_generated_registry(corpus):
    paths, truth = corpus
    registry = Registry.load(paths["registry"])
    assert registry.city_ids == ["C%03d" % i for i in range(1, 21)]
    assert sorted(truth.communities) == registry.city_ids
    assert registry.provinces() == ["P01", "P02", "P03", "P04"]
    for city_id in registry.city_ids:
        city = registry.get(city_id)
        assert registry.locate_point(city.centroid) == city_id
        assert city.tier == truth.tiers[city_id]
        assert city.province_id == truth.provinces[city_id]
    for ambiguity in truth.ambiguities:
        district = registry.get(ambiguity["district_id"])
        assert district.official_name == ambiguity["surface"]
        assert district.province_id != registry.get(ambiguity["city_id"]).province_id
    assert len(truth.ambiguities) == SMALL_SCENARIO["ambiguous_districts"]


def test_ground_truth_is_consistent(corpus):
    paths, truth = corpus
    assert truth.quarters() == ["2020Q1", "2020Q2"]
    assert truth.blackholes == SMALL_SCENARIO["blackholes"]
    for q in truth.quarters():
        net = truth.net_inflow(q)
        assert sum(net.values()) == 0
        for city_id, surplus in truth.blackholes.items():
            assert net[city_id] == surplus
        assert all(o != d for o, d in truth.flows[q])

    flows = sum(sum(truth.flows[q].values()) for q in truth.quarters())
    assert truth.totals["intents"] == flows
    assert truth.totals["malformed"] == 10
    with open(paths["queries"], encoding="utf-8") as f:
        lines = f.read().splitlines()
    assert len(lines) == sum(truth.totals.values())

    with open(paths["postings"], encoding="utf-8") as f:
        postings = [json.loads(line) for line in f]
    known = [p for p in postings if p["working_city"] != "X999"]
    assert len(known) == truth.postings()
    assert len(postings) - len(known) == 20


def test_planted_demand_follows_the_mixture(corpus):
    _, truth = corpus
    scenario = Scenario(**SMALL_SCENARIO)
    for tier in ("T1", "T3", "T5"):
        mixture = truth.tier_mixture(tier)
        assert sum(mixture.values()) == pytest.approx(1.0)
        for category, share in scenario.demand_mixture[tier].items():
            assert mixture[category] == pytest.approx(share, abs=0.01)


def test_generation_is_deterministic(tmp_path):
    small = dict(SMALL_SCENARIO, tiers={"T1": 2, "T2": 4, "T4": 2}, provinces=2,
                 ambiguous_districts=2)
    a = Generator(Scenario(**small)).generate(str(tmp_path / "a"))
    b = Generator(Scenario(**small)).generate(str(tmp_path / "b"))
    for role in FILES:
        assert filecmp.cmp(a[role], b[role], shallow=False), role
    c = Generator(Scenario(**dict(small, seed=8))).generate(str(tmp_path / "c"))
    assert not filecmp.cmp(a["queries"], c["queries"], shallow=False)


def test_shipped_scenario_is_the_default():
    path = os.path.join(os.path.dirname(__file__), "..", "configuration", "scenario.yaml")
    assert Scenario.load(path).to_dict() == Scenario().to_dict()
