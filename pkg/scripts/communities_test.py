import numpy as np
import pytest

from labourflow.communities.Agreement import adjusted_agreement
from labourflow.communities.Louvain import Louvain, louvain
from labourflow.communities.Modularity import matrix_modularity, modularity, symmetrized
from labourflow.communities.Partition import Partition
from labourflow.representations.Errors import UndefinedModularityError
from scripts.fixtures import graph_from_matrix, planted_weights, random_weights, set_partitions


def double_loop_modularity(w, labels, resolution=1.0):
    s = np.asarray(w, dtype=float) + np.asarray(w, dtype=float).T
    k = s.sum(axis=1)
    two_m = s.sum()
    q = 0.0
    for i in range(len(s)):
        for j in range(len(s)):
            if labels[i] == labels[j]:
                q += s[i, j] - resolution * k[i] * k[j] / two_m
    return q / two_m


def labels_of(blocks, n):
    labels = np.zeros(n, dtype=int)
    for c, block in enumerate(blocks):
        labels[block] = c
    return labels


def best_partition(w, resolution=1.0):
    s = symmetrized(graph_from_matrix(w))
    n = len(w)
    best = None
    for blocks in set_partitions(list(range(n))):
        labels = labels_of(blocks, n)
        q = matrix_modularity(s, labels, resolution)
        if best is None or q > best[0]:
            best = (q, labels)
    return best


def two_cliques_with_bridge():
    w = np.zeros((8, 8))
    for block in ([0, 1, 2, 3], [4, 5, 6, 7]):
        for i in block:
            for j in block:
                if i < j:
                    w[i, j] = 1.0
    w[3, 4] = 1.0
    return w


def cliques_of_cliques():
    """
    Four cliques of five nodes. Cliques 0 and 1 form one super-group, 2 and 3 another.
    """
    clique = np.repeat(np.arange(4), 5)
    group = clique // 2
    w = np.where(clique[:, None] == clique[None, :], 250.0,
                 np.where(group[:, None] == group[None, :], 40.0, 1.0))
    np.fill_diagonal(w, 0.0)
    return w


def test_modularity_examples():
    w = np.zeros((4, 4))
    w[0, 1] = 1.0
    w[2, 3] = 1.0
    graph = graph_from_matrix(w)
    nodes = graph.nodes
    assert modularity(graph, dict(zip(nodes, [0, 0, 1, 1]))) == pytest.approx(0.5)
    assert modularity(graph, dict(zip(nodes, [0, 1, 0, 1]))) == pytest.approx(-0.5)
    assert modularity(graph, dict(zip(nodes, [0, 0, 0, 0]))) == pytest.approx(0.0)


def test_modularity_matches_double_loop():
    rng = np.random.default_rng(31)
    for _ in range(50):
        n = int(rng.integers(2, 8))
        w = random_weights(rng, n, density=0.6)
        if not w.any():
            continue
        labels = rng.integers(0, 3, size=n)
        resolution = float(rng.choice([0.5, 1.0, 2.0]))
        graph = graph_from_matrix(w)
        q = modularity(graph, dict(zip(graph.nodes, labels)), resolution)
        assert q == pytest.approx(double_loop_modularity(w, labels, resolution), abs=1e-12)


def test_modularity_errors():
    graph = graph_from_matrix([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        modularity(graph, {"N00": 0})
    with pytest.raises(ValueError):
        modularity(graph, {"N00": 0, "N01": 0}, resolution=0.0)
    with pytest.raises(UndefinedModularityError):
        modularity(graph_from_matrix(np.zeros((3, 3))), {"N00": 0, "N01": 0, "N02": 1})


def test_louvain_finds_the_best_partition_of_two_cliques():
    w = two_cliques_with_bridge()
    graph = graph_from_matrix(w)
    partition = louvain(graph)
    best_q, best_labels = best_partition(w)
    assert partition.modularity == pytest.approx(best_q)
    assert partition.modularity == pytest.approx(11.0 / 26.0)
    assert partition.communities() == [["N00", "N01", "N02", "N03"],
                                       ["N04", "N05", "N06", "N07"]]
    assert adjusted_agreement(partition.assignment, dict(zip(graph.nodes, best_labels))) == 1.0


def test_louvain_modularity_is_bounded_by_the_optimum():
    rng = np.random.default_rng(37)
    for _ in range(10):
        w = random_weights(rng, 7, density=0.4)
        if not w.any():
            continue
        best_q, _ = best_partition(w)
        graph = graph_from_matrix(w)
        partition = louvain(graph)
        singletons = matrix_modularity(symmetrized(graph), np.arange(7))
        assert singletons - 1e-12 <= partition.modularity <= best_q + 1e-12


def test_resolution_controls_granularity():
    graph = graph_from_matrix(cliques_of_cliques())
    counts = [Louvain(resolution=r).fit(graph).n_communities for r in (0.5, 1.0, 2.0)]
    assert counts == sorted(counts)
    assert counts == [2, 4, 4]


def test_louvain_recovers_planted_communities():
    rng = np.random.default_rng(41)
    scores = []
    for _ in range(20):
        w, truth = planted_weights(rng, [10, 10, 10, 10], intra=12.0, inter=1.0)
        graph = graph_from_matrix(w)
        partition = louvain(graph)
        scores.append(adjusted_agreement(partition.assignment, dict(zip(graph.nodes, truth))))
    assert np.mean(scores) >= 0.95


def test_louvain_is_deterministic():
    rng = np.random.default_rng(43)
    graph = graph_from_matrix(random_weights(rng, 15, density=0.3))
    a = Louvain(seed=3).fit(graph)
    b = Louvain(seed=3).fit(graph)
    assert a.assignment == b.assignment
    assert a.modularity == b.modularity


def test_louvain_partition_is_dense_and_consistent():
    rng = np.random.default_rng(47)
    graph = graph_from_matrix(random_weights(rng, 12, density=0.3))
    partition = louvain(graph, resolution=1.5)
    assert partition.resolution == 1.5
    assert partition.modularity == pytest.approx(modularity(graph, partition, 1.5))
    first_seen = []
    for node in graph.nodes:
        c = partition.community_of(node)
        if c not in first_seen:
            first_seen.append(c)
    assert first_seen == list(range(partition.n_communities))


def test_louvain_errors():
    with pytest.raises(ValueError):
        Louvain(resolution=0.0)
    with pytest.raises(UndefinedModularityError):
        louvain(graph_from_matrix(np.zeros((3, 3))))


def test_partition_save_and_load(tmp_path):
    partition = Partition({"BJ": 0, "SH": 1, "GD_SZ": 1}, 0.5, 0.123456789)
    path = str(tmp_path / "partition.txt")
    partition.save(path)
    with open(path, encoding="utf-8") as f:
        assert f.readline() == "# resolution=0.5 modularity=0.123456789\n"
    loaded = Partition.load(path)
    assert loaded.assignment == partition.assignment
    assert loaded.resolution == 0.5
    assert loaded.modularity == 0.123456789
    assert loaded.communities() == [["BJ"], ["GD_SZ", "SH"]]


def test_partition_checks():
    with pytest.raises(ValueError):
        Partition({"BJ": 0, "SH": 2}, 1.0, 0.0)
    with pytest.raises(ValueError):
        Partition({"BJ": 0}, 0.0, 0.0)
    assert Partition.dense(["a", "b", "c", "d"], [7, 3, 7, 9]) == {"a": 0, "b": 1, "c": 0,
                                                                   "d": 2}


def test_adjusted_agreement():
    a = {"a": 0, "b": 0, "c": 1, "d": 1}
    assert adjusted_agreement(a, a) == 1.0
    assert adjusted_agreement(a, {"a": 5, "b": 5, "c": 2, "d": 2}) == 1.0
    assert adjusted_agreement(a, {"a": 0, "b": 1, "c": 0, "d": 1}) == pytest.approx(-0.5)
    assert adjusted_agreement({"a": 0}, {"a": 3}) == 1.0
    with pytest.raises(ValueError):
        adjusted_agreement(a, {"a": 0})


def test_one_community_scores_zero():
    rng = np.random.default_rng(53)
    for _ in range(30):
        w = random_weights(rng, int(rng.integers(2, 9)), density=0.5)
        if not w.any():
            continue
        graph = graph_from_matrix(w)
        assert modularity(graph, dict.fromkeys(graph.nodes, 0)) == pytest.approx(0.0, abs=1e-12)
