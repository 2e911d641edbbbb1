import itertools

import numpy as np
import pytest

from labourflow.demand.ClusterModel import ClusterModel, assign_category, label_by_pools, \
    load_labels
from labourflow.demand.DemandSeries import DemandSeries, demand_series, group_of
from labourflow.demand.KMeans import KMeans, kmeans_fit, scalable_seeding
from labourflow.demand.KeywordDictionary import KeywordDictionary, load_stoplist
from labourflow.demand.Tokenizer import WhitespaceTokenizer
from labourflow.ingest.Diagnostics import Diagnostics
from labourflow.representations.Errors import ClusteringError, EmptyDictionaryError
from labourflow.representations.JobPosting import JobPosting
from labourflow.representations.Quarter import Quarter
from labourflow.synth.Scenario import DEFAULT_CATEGORY_POOLS
from scripts.fixtures import china_registry, cst_timestamp, write_lines

Q1 = Quarter(2020, 1)
Q2 = Quarter(2020, 2)
TS1 = cst_timestamp(2020, 2, 1)
TS2 = cst_timestamp(2020, 5, 1)


def posting(posting_id, city, title, timestamp=TS1):
    return JobPosting(str(posting_id), timestamp, city, title, "")


def sse(points):
    return float(((points - points.mean(axis=0)) ** 2).sum())


def best_two_split(x):
    n = len(x)
    best = None
    for mask in range(1, 2 ** (n - 1)):
        left = np.array([(mask >> i) & 1 == 1 for i in range(n)])
        cost = sse(x[left]) + sse(x[~left])
        if best is None or cost < best:
            best = cost
    return best


def pool_titles(rng, n):
    categories = sorted(DEFAULT_CATEGORY_POOLS)
    titles = []
    truth = []
    for _ in range(n):
        category = categories[int(rng.integers(len(categories)))]
        words = rng.choice(DEFAULT_CATEGORY_POOLS[category], size=3, replace=False)
        titles.append(" ".join(words))
        truth.append(category)
    return titles, truth


def test_tokenizer():
    tokenize = WhitespaceTokenizer()
    assert tokenize("  senior  accountant\tanalyst ") == ["senior", "accountant", "analyst"]
    assert tokenize("") == []
    assert tokenize(None) == []


def test_dictionary_build():
    titles = ["senior accountant", "senior analyst", "senior accountant", "junior welder",
              "a senior welder"]
    dictionary = KeywordDictionary.build(titles, min_freq=2, top_drop=1)
    assert dictionary.keywords == ["accountant", "welder"]
    assert dictionary.frequencies == [2, 2]
    assert dictionary.index("welder") == 1
    assert dictionary.index("senior") is None

    stopped = KeywordDictionary.build(titles, min_freq=2, top_drop=1, stoplist=["welder"])
    assert stopped.keywords == ["accountant"]
    assert KeywordDictionary.build(titles, min_freq=1, top_drop=0).keywords == \
        ["senior", "accountant", "welder", "analyst", "junior"]


def test_dictionary_errors():
    with pytest.raises(EmptyDictionaryError):
        KeywordDictionary.build(["a b c"], min_freq=1, top_drop=0)
    with pytest.raises(EmptyDictionaryError):
        KeywordDictionary.build(["senior accountant"], min_freq=2, top_drop=0)
    with pytest.raises(ValueError):
        KeywordDictionary.build(["senior accountant"], min_freq=0)
    with pytest.raises(ValueError):
        KeywordDictionary(["welder", "welder"])
    with pytest.raises(ValueError):
        KeywordDictionary(["welder"], stoplist=["welder"])


def test_vectorize():
    dictionary = KeywordDictionary(["accountant", "welder"])
    vector = dictionary.vectorize("accountant accountant senior welder", posting_id="p1")
    assert vector.posting_id == "p1"
    assert vector.values.tolist() == pytest.approx([2.0 / 3.0, 1.0 / 3.0])
    assert vector.vectorizable
    assert not dictionary.vectorize("senior manager").vectorizable


def test_dictionary_save_load_and_stoplist(tmp_path):
    dictionary = KeywordDictionary(["accountant", "welder"], [12, 7])
    path = str(tmp_path / "keywords.tsv")
    dictionary.save(path)
    loaded = KeywordDictionary.load(path)
    assert loaded.keywords == ["accountant", "welder"]
    assert loaded.frequencies == [12, 7]
    assert (loaded.min_freq, loaded.top_drop, loaded.stoplist) == (1000, 50, [])

    built = KeywordDictionary.build(["senior welder", "welder helper", "senior accountant",
                                     "accountant clerk", "welder"], min_freq=1, top_drop=1,
                                     stoplist=["senior"])
    built.save(path)
    loaded = KeywordDictionary.load(path)
    assert loaded.keywords == built.keywords == ["accountant", "clerk", "helper"]
    assert (loaded.min_freq, loaded.top_drop, loaded.stoplist) == (1, 1, ["senior"])

    stoplist = write_lines(tmp_path / "stoplist.txt", ["# descriptive words", "senior", "",
                                                       "junior "])
    assert load_stoplist(stoplist) == ["senior", "junior"]


def test_kmeans_matches_best_split():
    rng = np.random.default_rng(53)
    for _ in range(5):
        x = np.vstack([rng.normal(0.0, 0.5, size=(6, 2)), rng.normal(10.0, 0.5, size=(5, 2))])
        model = kmeans_fit(x, 2, seed=1)
        assert model.objective == pytest.approx(best_two_split(x))


def test_kmeans_objective_never_increases():
    rng = np.random.default_rng(59)
    x = rng.random((200, 5))
    model = KMeans(k=6, seed=2).fit(x)
    history = model.objective_history
    assert len(history) >= 2
    assert all(b <= a + 1e-9 for a, b in zip(history, history[1:]))


def test_kmeans_is_deterministic():
    rng = np.random.default_rng(61)
    x = rng.random((100, 4))
    a = KMeans(k=5, seed=7).fit(x)
    b = KMeans(k=5, seed=7).fit(x)
    assert np.array_equal(a.centroids, b.centroids)
    assert a.objective_history == b.objective_history


def test_kmeans_errors():
    with pytest.raises(ValueError):
        KMeans(k=0)
    with pytest.raises(ClusteringError):
        KMeans(k=3).fit(np.array([[0.0, 1.0], [0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(ClusteringError):
        KMeans(k=1).fit(np.zeros((0, 2)))


def test_scalable_seeding_picks_distinct_centers():
    x = np.repeat(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]), 20, axis=0)
    centers = scalable_seeding(x, 3, np.random.default_rng(0))
    assert centers.shape == (3, 2)
    assert np.unique(centers, axis=0).shape[0] == 3


def test_cluster_model():
    model = ClusterModel([[0.0, 0.0], [2.0, 0.0]], {1: "express"}, [4.0, 3.0])
    assert model.labels == {0: "cluster-0", 1: "express"}
    assert model.objective == 3.0
    assert model.predict([1.9, 0.1]) == 1
    # equidistant points go to the lowest index
    assert model.predict(np.array([[1.0, 0.0], [0.1, 0.0]])).tolist() == [0, 0]
    with pytest.raises(ValueError):
        ClusterModel([[0.0, 0.0]], {3: "express"})
    with pytest.raises(ValueError):
        ClusterModel([[np.nan, 0.0]])


def test_cluster_model_save_load_and_labels(tmp_path):
    dictionary = KeywordDictionary(["accountant", "analyst", "courier", "parcel"])
    model = ClusterModel([[0.6, 0.4, 0.0, 0.0], [0.0, 0.1, 0.2, 0.7]], None, [2.0])
    assert model.top_keywords(dictionary, 2) == {0: ["accountant", "analyst"],
                                                 1: ["parcel", "courier"]}
    path = str(tmp_path / "cluster_model.json")
    model.save(path)
    loaded = ClusterModel.load(path)
    assert np.array_equal(loaded.centroids, model.centroids)
    assert loaded.labels == model.labels

    template = str(tmp_path / "cluster_labels.yaml")
    model.with_labels({0: "white-collar", 1: "express"}).save_label_template(template,
                                                                             dictionary)
    assert load_labels(template) == {0: "white-collar", 1: "express"}
    plain = write_lines(tmp_path / "labels.yaml", ["0: manufacture", "1: express"])
    assert load_labels(plain) == {0: "manufacture", 1: "express"}


def test_label_by_pools_and_assign_category():
    dictionary = KeywordDictionary(["accountant", "analyst", "courier", "parcel"])
    model = ClusterModel([[0.6, 0.4, 0.0, 0.0], [0.0, 0.1, 0.2, 0.7]])
    labelled = label_by_pools(model, dictionary, {"white-collar": ["accountant", "analyst"],
                                                  "express": ["courier", "parcel", "truck"]})
    assert labelled.labels == {0: "white-collar", 1: "express"}
    assert assign_category(posting(1, "BJ", "courier parcel"), labelled, dictionary) == "express"
    assert assign_category(posting(2, "BJ", "senior analyst"), labelled, dictionary) == \
        "white-collar"
    assert assign_category(posting(3, "BJ", "senior manager"), labelled, dictionary) == \
        "unclassified"
    with pytest.raises(ValueError):
        label_by_pools(model, dictionary, {})


def test_titles_are_classified_into_their_pool():
    rng = np.random.default_rng(67)
    titles, truth = pool_titles(rng, 400)
    dictionary = KeywordDictionary.build(titles, min_freq=1, top_drop=0)
    vectors = np.array([dictionary.vectorize(t).values for t in titles])
    model = label_by_pools(KMeans(k=8, seed=0).fit(vectors), dictionary, DEFAULT_CATEGORY_POOLS)
    postings = [posting(i, "BJ", t) for i, t in enumerate(titles)]
    found = [assign_category(p, model, dictionary) for p in postings]
    accuracy = np.mean([a == b for a, b in zip(found, truth)])
    assert accuracy >= 0.95


def test_group_of():
    registry = china_registry()
    assert group_of(registry.get("LN_SY"), "tier") == "T2"
    assert group_of(registry.get("LN_SY"), "city") == "LN_SY"
    assert group_of(registry.get("LN_SY"), "region") == "P_LN"
    assert group_of(registry.get("LN_SY"), "country") == "ALL"
    with pytest.raises(ValueError):
        group_of(registry.get("LN_SY"), "continent")


def demand_fixture():
    postings = [posting(1, "BJ", "x"), posting(2, "SH", "x"), posting(3, "SH", "x"),
                posting(4, "LN_SY", "x"), posting(5, "BJ", "x"), posting(6, "ATLANTIS", "x"),
                posting(7, "BJ", "x", TS2), posting(8, "BJ", "x", TS2),
                posting(9, "BJ", "x", TS2), posting(10, "LN_SY", "x", TS2)]
    categories = ["express", "express", "manufacture", "express", "unclassified", "express",
                  "express", "express", "white-collar", "manufacture"]
    return postings, categories


def test_demand_series_counts():
    postings, categories = demand_fixture()
    diagnostics = Diagnostics()
    series = DemandSeries.from_categories(postings, categories, china_registry(), "tier",
                                          diagnostics)
    assert diagnostics["postings_unknown_city"] == 1
    assert series.quarters() == [Q1, Q2]
    assert series.groups() == ["T1", "T2"]
    assert series.categories() == ["express", "manufacture", "white-collar"]
    assert series.count(Q1, "T1", "express") == 2
    assert series.count(Q1, "T1", "manufacture") == 1
    assert series.unclassified(Q1) == 1
    assert series.unclassified(Q1, "T2") == 0
    assert series.total(Q1) + series.unclassified(Q1) + series.total(Q2) == 9
    assert series.category_share(Q1, "T1") == pytest.approx({"express": 2.0 / 3.0,
                                                              "manufacture": 1.0 / 3.0})
    assert series.group_share(Q1, "express") == pytest.approx({"T1": 2.0 / 3.0,
                                                               "T2": 1.0 / 3.0})
    with pytest.raises(ValueError):
        series.category_share(Q1, "T5")


def test_demand_series_rollup_and_ratios():
    postings, categories = demand_fixture()
    series = DemandSeries.from_categories(postings, categories, china_registry(), "region")
    blue = series.rollup({"blue-collar": ["manufacture", "express"]})
    assert blue.categories() == ["blue-collar", "white-collar"]
    assert blue.count(Q1, "P_SH", "blue-collar") == 2
    assert blue.unclassified(Q1, "P_BJ") == 1
    with pytest.raises(ValueError):
        series.rollup({"a": ["express"], "b": ["express"]})

    ratios = series.increase_ratios(Q1, Q2)
    assert ratios[("P_BJ", "express")] == 1.0
    assert ratios[("P_SH", "express")] == -1.0
    assert ratios[("P_LN", "manufacture")] is None


def test_demand_series_save_and_load(tmp_path):
    postings, categories = demand_fixture()
    series = DemandSeries.from_categories(postings, categories, china_registry(), "city")
    path = str(tmp_path / "demand_city.csv")
    series.save(path)
    loaded = DemandSeries.load(path, "city")
    assert loaded.cells == series.cells
    assert loaded.rows() == series.rows()
    assert series.rows()[0] == ("2020Q1", "BJ", "express", 1)
    assert ("2020Q1", "BJ", "unclassified", 1) in series.rows()


def test_demand_series_checks():
    with pytest.raises(ValueError):
        DemandSeries("continent")
    with pytest.raises(ValueError):
        DemandSeries("tier", {(Q1, "T1", "express"): -1})


def test_demand_series_classifies_postings():
    dictionary = KeywordDictionary(["accountant", "analyst", "courier", "parcel"])
    model = ClusterModel([[0.5, 0.5, 0.0, 0.0], [0.0, 0.0, 0.5, 0.5]],
                         {0: "white-collar", 1: "express"})
    postings = [posting(1, "BJ", "accountant"), posting(2, "GD_SZ", "parcel courier"),
                posting(3, "SH", "courier"), posting(4, "SH", "manager")]
    series = demand_series(postings, model, china_registry(), "country", dictionary)
    assert series.rows() == [("2020Q1", "ALL", "express", 2), ("2020Q1", "ALL", "unclassified", 1),
                             ("2020Q1", "ALL", "white-collar", 1)]


def test_every_pool_title_shares_words_within_its_category():
    for words in DEFAULT_CATEGORY_POOLS.values():
        for a, b in itertools.combinations(itertools.combinations(words, 3), 2):
            assert len(set(a) & set(b)) >= 2
