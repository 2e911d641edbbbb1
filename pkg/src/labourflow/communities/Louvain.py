import numpy as np

from labourflow.communities.Modularity import matrix_modularity, modularity, symmetrized
from labourflow.communities.Partition import Partition
from labourflow.representations.Constants import LOUVAIN_MIN_GAIN, LOUVAIN_MOVE_EPS, \
    LOUVAIN_RESOLUTION, LOUVAIN_SEED
from labourflow.representations.Errors import UndefinedModularityError
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)


class Louvain:
    """
    Louvain community detection on the symmetrized flow graph. Each level moves nodes between
    neighbouring communities while modularity improves, then collapses communities into
    super-nodes whose self-loops carry the internal weight. Levels stop when modularity gains
    less than LOUVAIN_MIN_GAIN.

    Usage:
        partition = Louvain(resolution=1.0, seed=0).fit(graph)
    """

    def __init__(self, resolution=LOUVAIN_RESOLUTION, seed=LOUVAIN_SEED):
        if not resolution > 0:
            raise ValueError("Resolution must be positive, got %r" % resolution)
        self.__resolution = float(resolution)
        self.__seed = seed

    @property
    def resolution(self):
        return self.__resolution

    @property
    def seed(self):
        return self.__seed

    def fit(self, graph):
        """
        :param graph: FlowGraph with at least one edge.
        :return: Partition
        """
        s = symmetrized(graph)
        if s.sum() <= 0:
            raise UndefinedModularityError("Louvain on a graph without edges (%s)" % graph.quarter)

        labels = self.fit_matrix(s)
        partition = Partition(Partition.dense(graph.nodes, labels), self.__resolution, 0.0)
        q = modularity(graph, partition, self.__resolution)
        partition = Partition(partition.assignment, self.__resolution, q)
        logger.info("Louvain on %s at resolution %g: %d communities, modularity %.6f",
                    graph.quarter, self.__resolution, partition.n_communities, q)
        return partition

    def fit_matrix(self, s):
        """
        Runs every level on a symmetric weight matrix.
        :param s: Symmetric n x n array with positive total weight.
        :return: int array, community label of every original node.
        """
        rng = np.random.default_rng(self.__seed)
        n = s.shape[0]
        labels = np.arange(n)
        current = s
        best_q = matrix_modularity(s, labels, self.__resolution)

        while True:
            level, moved = self.__move_nodes(current, rng)
            if not moved:
                break
            dense = np.unique(level, return_inverse=True)[1]
            candidate = dense[labels]
            q = matrix_modularity(s, candidate, self.__resolution)
            if q - best_q < LOUVAIN_MIN_GAIN:
                break
            labels = candidate
            best_q = q
            current = self.__aggregate(current, dense)
            logger.debug("Louvain level: %d super-nodes, modularity %.9f", current.shape[0], q)

        return labels

    def __move_nodes(self, s, rng):
        """
        Local moving phase, nodes visited in one seeded random order per level.
        :return: (community label per node, whether any node moved)
        """
        n = s.shape[0]
        gamma = self.__resolution
        k = s.sum(axis=1)
        two_m = k.sum()
        community = np.arange(n)
        totals = k.copy()
        order = rng.permutation(n)
        moved = False

        improved = True
        while improved:
            improved = False
            for i in order:
                old = community[i]
                totals[old] -= k[i]
                row = s[i].copy()
                row[i] = 0.0
                links = np.bincount(community, weights=row, minlength=n)
                gains = links - gamma * k[i] * totals / two_m

                neighbours = np.unique(community[row > 0])
                best = old
                best_gain = gains[old]
                # neighbours come sorted, so ties keep the smallest community id
                for c in neighbours:
                    if gains[c] > best_gain + LOUVAIN_MOVE_EPS:
                        best = c
                        best_gain = gains[c]

                community[i] = best
                totals[best] += k[i]
                if best != old:
                    improved = True
                    moved = True
        return community, moved

    @staticmethod
    def __aggregate(s, dense):
        """
        Collapses communities into super-nodes, M^T S M.
        """
        membership = np.zeros((s.shape[0], dense.max() + 1))
        membership[np.arange(s.shape[0]), dense] = 1.0
        return membership.T.dot(s).dot(membership)


def louvain(graph, resolution=LOUVAIN_RESOLUTION, seed=LOUVAIN_SEED):
    return Louvain(resolution, seed).fit(graph)
