import numpy as np
from scipy.spatial.distance import cdist

from labourflow.demand.ClusterModel import ClusterModel
from labourflow.representations.Constants import KMEANS_MAX_ITER, KMEANS_OVERSAMPLING, \
    KMEANS_SEED, KMEANS_SEEDING_ROUNDS, KMEANS_TOL
from labourflow.representations.Errors import ClusteringError
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)


def _min_sqdist(x, centers):
    return cdist(x, centers, "sqeuclidean").min(axis=1)


def _weighted_kmeanspp(points, weights, k, rng, centers=None):
    """
    k-means++ over weighted points, starting from optional given centers. Stops early when every
    remaining point coincides with a center.
    :return: Array of at most k centers.
    """
    chosen = [] if centers is None else list(centers)
    while len(chosen) < k:
        if chosen:
            p = weights * _min_sqdist(points, np.array(chosen))
        else:
            p = weights.astype(float)
        total = p.sum()
        if total <= 0:
            break
        chosen.append(points[rng.choice(len(points), p=p / total)])
    return np.array(chosen)


def scalable_seeding(x, k, rng, oversampling=KMEANS_OVERSAMPLING,
                     rounds=KMEANS_SEEDING_ROUNDS):
    """
    k-means|| initialization: a few rounds oversample about oversampling * k points each,
    proportionally to their squared distance to the current candidates; the weighted candidates
    are then reduced to k centers with k-means++.
    :param x: n x N data.
    :param k: Number of centers.
    :param rng: numpy Generator.
    :return: k x N array.
    """
    n = x.shape[0]
    candidates = x[[rng.integers(n)]]
    ell = oversampling * k
    for _ in range(rounds):
        d2 = _min_sqdist(x, candidates)
        phi = d2.sum()
        if phi <= 0:
            break
        picked = rng.random(n) < np.minimum(1.0, ell * d2 / phi)
        if picked.any():
            candidates = np.vstack([candidates, x[picked]])

    nearest = cdist(x, candidates, "sqeuclidean").argmin(axis=1)
    weights = np.bincount(nearest, minlength=len(candidates)).astype(float)
    centers = _weighted_kmeanspp(candidates, weights, k, rng)
    if len(centers) < k:
        # candidates hold fewer distinct points than k
        centers = _weighted_kmeanspp(x, np.ones(n), k, rng, centers)
    return centers


class KMeans:
    """
    Lloyd iterations from scalable seeding. Deterministic for a given seed.

    Usage:
        model = KMeans(k=8, seed=0).fit(vectors)
    """

    def __init__(self, k, seed=KMEANS_SEED, max_iter=KMEANS_MAX_ITER, tol=KMEANS_TOL):
        if k < 1:
            raise ValueError("k must be >= 1, got %r" % k)
        if max_iter < 1:
            raise ValueError("max_iter must be >= 1, got %r" % max_iter)
        if tol < 0:
            raise ValueError("tol must be >= 0, got %r" % tol)
        self.k = int(k)
        self.seed = seed
        self.max_iter = int(max_iter)
        self.tol = float(tol)

    def fit(self, vectors):
        """
        :param vectors: n x N array with at least k distinct rows.
        :return: ClusterModel with default labels and the objective after each assignment.
        """
        x = np.asarray(vectors, dtype=float)
        if x.ndim != 2 or x.shape[0] == 0:
            raise ClusteringError("Nothing to cluster")
        distinct = np.unique(x, axis=0).shape[0]
        if self.k > distinct:
            raise ClusteringError("k=%d exceeds the %d distinct vectors" % (self.k, distinct))

        rng = np.random.default_rng(self.seed)
        centers = scalable_seeding(x, self.k, rng)
        history = []
        for iteration in range(1, self.max_iter + 1):
            d = cdist(x, centers, "sqeuclidean")
            assigned = d.argmin(axis=1)
            closest = d[np.arange(len(x)), assigned]
            history.append(float(closest.sum()))

            new_centers = self.__update(x, assigned, closest, centers)
            shift = np.sqrt(((new_centers - centers) ** 2).sum(axis=1)).max()
            centers = new_centers
            if shift <= self.tol:
                break

        d = cdist(x, centers, "sqeuclidean")
        history.append(float(d.min(axis=1).sum()))
        logger.info("KMeans k=%d: %d iterations, objective %.6f", self.k, iteration, history[-1])
        return ClusterModel(centers, objective_history=history)

    def __update(self, x, assigned, closest, centers):
        """
        Centroid step. Empty clusters are re-seeded on the points farthest from their centroid.
        """
        new_centers = np.array(centers, copy=True)
        counts = np.bincount(assigned, minlength=self.k)
        for c in np.flatnonzero(counts):
            new_centers[c] = x[assigned == c].mean(axis=0)
        empty = np.flatnonzero(counts == 0)
        if len(empty):
            # farthest first, ties to the lowest index
            order = sorted(range(len(x)), key=lambda i: (-closest[i], i))
            for c, i in zip(empty, order):
                new_centers[c] = x[i]
        return new_centers


def kmeans_fit(vectors, k, seed=KMEANS_SEED, max_iter=KMEANS_MAX_ITER, tol=KMEANS_TOL):
    return KMeans(k, seed, max_iter, tol).fit(vectors)
