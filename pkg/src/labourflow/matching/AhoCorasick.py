from collections import deque


class AhoCorasickNode:
    """Node in the goto trie."""

    __slots__ = ("goto", "fail", "out", "depth")

    def __init__(self, depth=0):
        self.goto = {}
        self.fail = None
        self.out = []  # pattern ids ending here, own and inherited through fail links
        self.depth = depth


class AhoCorasick:
    """
    Character-level Aho-Corasick automaton. Reports every occurrence of every pattern,
    overlapping ones included, in time linear in the text length plus the number of matches.

    Usage:
        ac = AhoCorasick()
        ac.add_pattern("beijing")
        ac.add_pattern("jing")
        ac.build()
        ac.search("beijing jobs")  # [(0, 7, 0), (3, 7, 1)]
    """

    def __init__(self):
        self.__root = AhoCorasickNode()
        self.__patterns = []
        self.__built = False

    @property
    def patterns(self):
        return self.__patterns

    def add_pattern(self, pattern):
        """
        Inserts a pattern in the trie. Invalidates a previous build.
        :param pattern: Non-empty string.
        :return: int, id of the pattern (its insertion index).
        """
        if not pattern:
            raise ValueError("Empty pattern")
        node = self.__root
        for i, char in enumerate(pattern):
            child = node.goto.get(char)
            if child is None:
                child = AhoCorasickNode(i + 1)
                node.goto[char] = child
            node = child
        pattern_id = len(self.__patterns)
        self.__patterns.append(pattern)
        node.out.append(pattern_id)
        self.__built = False
        return pattern_id

    def build(self):
        """
        Computes failure links breadth first and merges the outputs along them.
        """
        root = self.__root
        queue = deque()
        for node in root.goto.values():
            node.fail = root
            queue.append(node)

        while queue:
            current = queue.popleft()
            for char, node in current.goto.items():
                queue.append(node)
                failure = current.fail
                while failure is not None and char not in failure.goto:
                    failure = failure.fail
                node.fail = root if failure is None else failure.goto[char]
                node.out = node.out + node.fail.out

        self.__built = True

    def search(self, text):
        """
        Finds every pattern occurrence.
        :param text: String to scan.
        :return: List of (start, end, pattern_id), sorted by start then end.
        """
        if not self.__built:
            self.build()

        root = self.__root
        node = root
        matches = []
        for i, char in enumerate(text):
            while node is not root and char not in node.goto:
                node = node.fail
            node = node.goto.get(char, root)
            for pattern_id in node.out:
                matches.append((i + 1 - len(self.__patterns[pattern_id]), i + 1, pattern_id))

        matches.sort()
        return matches
