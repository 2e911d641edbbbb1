from collections import namedtuple

import numpy as np

from labourflow.flow_graph.CityMetrics import CityMetrics
from labourflow.representations.Constants import HITS_MAX_ITER, HITS_TOL
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)

HitsResult = namedtuple("HitsResult", ["authority", "hub", "iterations", "degenerate"])


def degree_metrics(graph):
    """
    Inflow is the column sum of W (flow arriving), outflow the row sum (flow leaving).
    :param graph: FlowGraph.
    :return: (inflow, outflow, net_inflow) arrays in node order.
    """
    w = graph.weights
    inflow = w.sum(axis=0)
    outflow = w.sum(axis=1)
    return inflow, outflow, inflow - outflow


def transition_matrix(graph):
    """
    Row-normalized weights. Cities without outflow keep a zero row.
    :param graph: FlowGraph.
    :return: n x n array.
    """
    w = graph.weights
    out = w.sum(axis=1)
    p = np.zeros_like(w)
    rows = out > 0
    p[rows] = w[rows] / out[rows, None]
    return p


def _l1(v):
    s = v.sum()
    if s <= 0:
        return v
    return v / s


def hits(graph, tol=HITS_TOL, max_iter=HITS_MAX_ITER):
    """
    Authority and Hub scores by power iteration on the row-normalized graph P:
    A <- normalize(P^T H), then H <- normalize(P A), from a uniform start. Both vectors are
    L1-normalized, so scores are shares summing to 1.
    :param graph: FlowGraph.
    :param tol: Stops when no score changes by tol or more.
    :param max_iter: Iteration cap.
    :return: HitsResult. On a graph without edges the scores are uniform and degenerate is True.
    """
    if not tol > 0:
        raise ValueError("HITS tolerance must be positive, got %r" % tol)
    if max_iter < 1:
        raise ValueError("HITS needs at least one iteration, got %r" % max_iter)

    n = graph.n
    if n == 0:
        return HitsResult(np.zeros(0), np.zeros(0), 0, True)
    uniform = np.full(n, 1.0 / n)
    if graph.is_empty():
        logger.warning("Flow graph of %s has no edge, HITS scores are uniform", graph.quarter)
        return HitsResult(uniform, uniform.copy(), 0, True)

    p = transition_matrix(graph)
    a = uniform.copy()
    h = uniform.copy()
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        new_a = _l1(p.T.dot(h))
        new_h = _l1(p.dot(new_a))
        change = max(np.abs(new_a - a).max(), np.abs(new_h - h).max())
        a = new_a
        h = new_h
        if change < tol:
            break
    else:
        logger.warning("HITS on %s stopped after %d iterations without converging",
                       graph.quarter, max_iter)
    return HitsResult(a, h, iterations, False)


def city_metrics(graph, tol=HITS_TOL, max_iter=HITS_MAX_ITER):
    """
    Every metric of every city of a graph.
    :param graph: FlowGraph.
    :param tol: HITS tolerance.
    :param max_iter: HITS iteration cap.
    :return: List of CityMetrics in node order.
    """
    inflow, outflow, net = degree_metrics(graph)
    result = hits(graph, tol, max_iter)
    return [CityMetrics(city, float(inflow[i]), float(outflow[i]), float(net[i]),
                        float(result.authority[i]), float(result.hub[i]),
                        bool(net[i] > 0), bool(net[i] < 0))
            for i, city in enumerate(graph.nodes)]
