import numpy as np
import pandas as pd

from labourflow.representations.Errors import MixedQuarterError, UnknownCityError
from labourflow.representations.Quarter import Quarter
from labourflow.tools.AtomicFile import atomic_path

EDGE_COLUMNS = ["quarter", "origin", "destination", "weight"]


class FlowGraph:
    """
    Directed origin-destination graph of one quarter. W[i][j] is the number of flow intents
    from nodes[i] to nodes[j]; the diagonal is always zero.
    """

    def __init__(self, quarter, nodes, weights=None):
        """
        :param quarter: Quarter.
        :param nodes: Ordered list of distinct city ids.
        :param weights: n x n non-negative array, zeros if None.
        """
        nodes = list(nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("Duplicated node in flow graph")
        n = len(nodes)
        if weights is None:
            weights = np.zeros((n, n))
        weights = np.array(weights, dtype=float)
        if weights.shape != (n, n):
            raise ValueError("Weight matrix shape %s does not match %d nodes" %
                             (weights.shape, n))
        if np.any(weights < 0):
            raise ValueError("Negative edge weight")
        if np.any(np.diag(weights) != 0):
            raise ValueError("Self loop in flow graph")
        weights.flags.writeable = False

        self.__quarter = quarter
        self.__nodes = nodes
        self.__index = dict((c, i) for i, c in enumerate(nodes))
        self.__weights = weights

    @staticmethod
    def build(intents, registry, quarter=None):
        """
        Counts the flow intents of one quarter. Every registry city is a node.
        :param intents: Iterable of FlowIntent, all in the same quarter.
        :param registry: Registry.
        :param quarter: Expected quarter; taken from the first intent if None.
        :return: FlowGraph
        """
        nodes = registry.city_ids
        index = dict((c, i) for i, c in enumerate(nodes))
        rows = []
        cols = []
        for intent in intents:
            if quarter is None:
                quarter = intent.quarter
            elif intent.quarter != quarter:
                raise MixedQuarterError("Intent of %s in the graph of %s" %
                                        (intent.quarter, quarter))
            try:
                rows.append(index[intent.origin])
                cols.append(index[intent.destination])
            except KeyError as e:
                raise UnknownCityError("Flow intent with unknown city %s" % e)
            if intent.origin == intent.destination:
                raise ValueError("Flow intent from a city to itself: %s" % intent.origin)

        weights = np.zeros((len(nodes), len(nodes)))
        np.add.at(weights, (np.array(rows, dtype=int), np.array(cols, dtype=int)), 1.0)
        return FlowGraph(quarter, nodes, weights)

    @property
    def quarter(self):
        return self.__quarter

    @property
    def nodes(self):
        return self.__nodes

    @property
    def n(self):
        return len(self.__nodes)

    @property
    def weights(self):
        """
        Read-only weight matrix, rows are origins and columns destinations.
        """
        return self.__weights

    def index(self, city_id):
        return self.__index[city_id]

    def weight(self, origin, destination):
        return self.__weights[self.__index[origin], self.__index[destination]]

    def total_weight(self):
        return float(self.__weights.sum())

    def is_empty(self):
        return not np.any(self.__weights)

    def edges(self):
        """
        Non-zero edges in node order.
        :return: List of (origin, destination, weight).
        """
        rows, cols = np.nonzero(self.__weights)
        return [(self.__nodes[i], self.__nodes[j], float(self.__weights[i, j]))
                for i, j in zip(rows, cols)]


def build_graphs(intents, registry, quarters=None):
    """
    One graph per quarter.
    :param intents: Iterable of FlowIntent.
    :param registry: Registry.
    :param quarters: Quarters to build, including empty ones; every quarter present if None.
    :return: Dict Quarter -> FlowGraph, sorted by quarter.
    """
    by_quarter = {}
    for intent in intents:
        by_quarter.setdefault(intent.quarter, []).append(intent)
    if quarters is None:
        quarters = sorted(by_quarter)
    return dict((q, FlowGraph.build(by_quarter.get(q, []), registry, q))
                for q in sorted(quarters))


def save_graphs(graphs, path):
    """
    Writes the edge-list checkpoint (quarter, origin, destination, weight), atomically.
    :param graphs: Dict Quarter -> FlowGraph.
    :param path: Destination CSV.
    """
    rows = []
    for quarter in sorted(graphs):
        for origin, destination, weight in graphs[quarter].edges():
            rows.append((str(quarter), origin, destination, int(round(weight))))
    df = pd.DataFrame(rows, columns=EDGE_COLUMNS)
    with atomic_path(path) as tmp:
        df.to_csv(tmp, index=False, lineterminator="\n")


def load_graphs(path, registry, quarters=None):
    """
    Reads an edge-list checkpoint back into graphs over the registry cities.
    :param path: Edge-list CSV.
    :param registry: Registry.
    :param quarters: Quarters to return, including ones without edges; all in the file if None.
    :return: Dict Quarter -> FlowGraph.
    """
    df = pd.read_csv(path, dtype={"quarter": str, "origin": str, "destination": str},
                     keep_default_na=False)
    nodes = registry.city_ids
    index = dict((c, i) for i, c in enumerate(nodes))
    matrices = {}
    for row in df.itertuples(index=False):
        quarter = Quarter.parse(row.quarter)
        if quarter not in matrices:
            matrices[quarter] = np.zeros((len(nodes), len(nodes)))
        try:
            matrices[quarter][index[row.origin], index[row.destination]] = float(row.weight)
        except KeyError as e:
            raise UnknownCityError("%s: unknown city %s" % (path, e))
    if quarters is None:
        quarters = sorted(matrices)
    return dict((q, FlowGraph(q, nodes, matrices.get(q))) for q in sorted(quarters))
