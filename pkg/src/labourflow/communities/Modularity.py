import numpy as np

from labourflow.representations.Errors import UndefinedModularityError


def symmetrized(graph):
    """
    S = W + W^T, the undirected view of a flow graph.
    :param graph: FlowGraph.
    :return: n x n array.
    """
    w = graph.weights
    return w + w.T


def matrix_modularity(s, labels, resolution=1.0):
    """
    Q = 1/2m sum_ij (S_ij - resolution k_i k_j / 2m) [same community], on a symmetric weight
    matrix whose diagonal holds self-loop weights.
    :param s: Symmetric n x n array.
    :param labels: Community label per node.
    :param resolution: Positive null-model multiplier.
    :return: float
    """
    if not resolution > 0:
        raise ValueError("Resolution must be positive, got %r" % resolution)
    two_m = s.sum()
    if two_m <= 0:
        raise UndefinedModularityError("Modularity of a graph without edges")
    labels = np.asarray(labels)
    _, dense = np.unique(labels, return_inverse=True)
    k = s.sum(axis=1)
    n_comm = dense.max() + 1 if len(dense) else 0
    membership = np.zeros((len(dense), n_comm))
    membership[np.arange(len(dense)), dense] = 1.0
    internal = np.einsum("ic,ij,jc->", membership, s, membership)
    totals = membership.T.dot(k)
    return float((internal - resolution * totals.dot(totals) / two_m) / two_m)


def modularity(graph, partition, resolution=1.0):
    """
    Modularity of a partition of a flow graph, on its symmetrized weights.
    :param graph: FlowGraph.
    :param partition: Partition or dict city_id -> community id covering every node.
    :param resolution: Positive resolution.
    :return: float
    """
    assignment = getattr(partition, "assignment", partition)
    missing = [c for c in graph.nodes if c not in assignment]
    if missing:
        raise ValueError("Partition does not cover %d nodes, e.g. %s" % (len(missing), missing[0]))
    return matrix_modularity(symmetrized(graph), [assignment[c] for c in graph.nodes],
                             resolution)
