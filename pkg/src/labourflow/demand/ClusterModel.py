import json

import numpy as np
import yaml
from scipy.spatial.distance import cdist

from labourflow.representations.Constants import TOP_KEYWORDS, UNCLASSIFIED
from labourflow.tools.AtomicFile import write_text


class ClusterModel:
    """
    Fitted KMeans centroids with a category label per cluster.
    """

    def __init__(self, centroids, labels=None, objective_history=None):
        """
        :param centroids: k x N array.
        :param labels: Dict cluster id -> category name; "cluster-<id>" for missing ones.
        :param objective_history: Within-cluster sum of squares after each assignment step.
        """
        centroids = np.array(centroids, dtype=float)
        if centroids.ndim != 2 or centroids.shape[0] < 1:
            raise ValueError("Centroids must be a non-empty k x N matrix")
        if not np.all(np.isfinite(centroids)):
            raise ValueError("Centroids must be finite")
        labels = dict((int(c), str(name)) for c, name in (labels or {}).items())
        unknown = set(labels) - set(range(centroids.shape[0]))
        if unknown:
            raise ValueError("Label for unknown cluster %d" % min(unknown))
        self.__centroids = centroids
        self.__labels = dict((c, labels.get(c, "cluster-%d" % c))
                             for c in range(centroids.shape[0]))
        self.__history = list(objective_history or [])

    @property
    def k(self):
        return self.__centroids.shape[0]

    @property
    def centroids(self):
        return self.__centroids

    @property
    def labels(self):
        return self.__labels

    @property
    def objective_history(self):
        return self.__history

    @property
    def objective(self):
        return self.__history[-1] if self.__history else None

    def predict(self, vectors):
        """
        Nearest centroid by squared Euclidean distance, ties to the lowest index.
        :param vectors: m x N array, or a single vector.
        :return: int array of cluster ids, or an int for a single vector.
        """
        x = np.asarray(vectors, dtype=float)
        single = x.ndim == 1
        d = cdist(np.atleast_2d(x), self.__centroids, "sqeuclidean")
        clusters = d.argmin(axis=1)
        return int(clusters[0]) if single else clusters

    def category(self, cluster_id):
        return self.__labels[cluster_id]

    def with_labels(self, labels):
        """
        :param labels: Dict cluster id -> category name.
        :return: Copy of the model with new labels.
        """
        return ClusterModel(self.__centroids, labels, self.__history)

    def top_keywords(self, dictionary, n=TOP_KEYWORDS):
        """
        Heaviest centroid dimensions of every cluster, for manual labelling.
        :param dictionary: KeywordDictionary the vectors were built with.
        :param n: Keywords per cluster.
        :return: Dict cluster id -> list of keywords, heaviest first.
        """
        result = {}
        for c in range(self.k):
            weights = self.__centroids[c]
            order = sorted((i for i in range(len(weights)) if weights[i] > 0),
                           key=lambda i: (-weights[i], i))
            result[c] = [dictionary.keywords[i] for i in order[:n]]
        return result

    def save(self, path):
        data = {"k": self.k,
                "centroids": self.__centroids.tolist(),
                "labels": dict((str(c), name) for c, name in self.__labels.items()),
                "objective_history": self.__history}
        write_text(path, json.dumps(data, ensure_ascii=False, sort_keys=True) + "\n")

    @staticmethod
    def load(path):
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        return ClusterModel(data["centroids"], data.get("labels"), data.get("objective_history"))

    def save_label_template(self, path, dictionary, n=TOP_KEYWORDS):
        """
        Writes an editable YAML file listing every cluster's label and top keywords.
        """
        top = self.top_keywords(dictionary, n)
        doc = dict((c, {"label": self.__labels[c], "top_keywords": top[c]})
                   for c in range(self.k))
        write_text(path, yaml.safe_dump(doc, allow_unicode=True, sort_keys=True))


def load_labels(path):
    """
    Reads a label file, either the YAML template (cluster -> {label: ...}) or a plain
    cluster -> label mapping.
    :param path: YAML file.
    :return: Dict cluster id -> category name.
    """
    with open(path, encoding="utf-8") as f:
        doc = yaml.safe_load(f) or {}
    labels = {}
    for cluster, value in doc.items():
        labels[int(cluster)] = value["label"] if isinstance(value, dict) else value
    return labels


def label_by_pools(model, dictionary, pools):
    """
    Labels each cluster with the category whose seed keywords carry the most centroid weight.
    :param model: ClusterModel.
    :param dictionary: KeywordDictionary.
    :param pools: Dict category -> list of seed keywords.
    :return: ClusterModel with the new labels.
    """
    categories = sorted(pools)
    if not categories:
        raise ValueError("No keyword pool to label clusters with")
    labels = {}
    for c in range(model.k):
        scores = []
        for category in categories:
            dims = [dictionary.index(w) for w in pools[category]]
            scores.append(sum(model.centroids[c, i] for i in dims if i is not None))
        labels[c] = categories[int(np.argmax(scores))]
    return model.with_labels(labels)


def assign_category(posting, model, dictionary, tokenizer=None):
    """
    Category of a job posting, from the nearest centroid of its title vector.
    :param posting: JobPosting.
    :param model: Labelled ClusterModel.
    :param dictionary: KeywordDictionary.
    :param tokenizer: Title tokenizer, whitespace by default.
    :return: Category name, "unclassified" when the title has no keyword.
    """
    if tokenizer is None:
        vector = dictionary.vectorize(posting.title, posting_id=posting.posting_id)
    else:
        vector = dictionary.vectorize(posting.title, tokenizer, posting.posting_id)
    if not vector.vectorizable:
        return UNCLASSIFIED
    return model.category(model.predict(vector.values))
