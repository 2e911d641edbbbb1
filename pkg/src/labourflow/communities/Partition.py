import re

import numpy as np
import pandas as pd

from labourflow.tools.AtomicFile import atomic_path

_HEADER_RE = re.compile(r"^#\s*resolution=(\S+)\s+modularity=(\S+)\s*$")


class Partition:
    """
    Assignment of every graph node to one community. Community ids are dense from 0, numbered
    by first appearance in node order.
    """

    def __init__(self, assignment, resolution, modularity):
        """
        :param assignment: Dict city_id -> community id, or list of (city_id, community id).
        :param resolution: Resolution the partition was computed with.
        :param modularity: Modularity of the partition at that resolution.
        """
        self.__assignment = dict(assignment)
        ids = set(self.__assignment.values())
        if ids != set(range(len(ids))):
            raise ValueError("Community ids must be dense from 0")
        if not resolution > 0:
            raise ValueError("Resolution must be positive, got %r" % resolution)
        self.__resolution = float(resolution)
        self.__modularity = float(modularity)

    @staticmethod
    def dense(nodes, labels):
        """
        Renumbers arbitrary labels densely by first appearance.
        :param nodes: Node ids.
        :param labels: One hashable label per node.
        :return: Dict node -> dense id.
        """
        renumber = {}
        assignment = {}
        for node, label in zip(nodes, labels):
            if label not in renumber:
                renumber[label] = len(renumber)
            assignment[node] = renumber[label]
        return assignment

    @property
    def assignment(self):
        return self.__assignment

    @property
    def resolution(self):
        return self.__resolution

    @property
    def modularity(self):
        return self.__modularity

    @property
    def n_communities(self):
        return len(set(self.__assignment.values()))

    def community_of(self, city_id):
        return self.__assignment[city_id]

    def communities(self):
        """
        :return: List of sorted member lists, indexed by community id.
        """
        members = [[] for _ in range(self.n_communities)]
        for city_id in sorted(self.__assignment):
            members[self.__assignment[city_id]].append(city_id)
        return members

    def labels(self, nodes):
        """
        :param nodes: Ordered node ids, all assigned.
        :return: int array of community ids.
        """
        return np.array([self.__assignment[c] for c in nodes], dtype=int)

    def save(self, path):
        """
        Writes "# resolution=... modularity=..." followed by (city_id, cluster_id) rows,
        atomically.
        :param path: Destination file.
        """
        df = pd.DataFrame(sorted(self.__assignment.items()), columns=["city_id", "cluster_id"])
        with atomic_path(path) as tmp:
            with open(tmp, "w", encoding="utf-8", newline="\n") as f:
                f.write("# resolution=%r modularity=%r\n" % (self.__resolution,
                                                             self.__modularity))
                df.to_csv(f, index=False, lineterminator="\n")

    @staticmethod
    def load(path):
        """
        :param path: File written by save.
        :return: Partition
        """
        with open(path, encoding="utf-8") as f:
            header = f.readline()
            m = _HEADER_RE.match(header)
            if m is None:
                raise ValueError("%s: missing resolution/modularity header" % path)
            df = pd.read_csv(f, dtype={"city_id": str}, keep_default_na=False)
        return Partition(zip(df["city_id"], (int(c) for c in df["cluster_id"])),
                         float(m.group(1)), float(m.group(2)))

    def __repr__(self):
        return "Partition(%d communities, resolution=%g, modularity=%.6f)" % \
               (self.n_communities, self.__resolution, self.__modularity)
