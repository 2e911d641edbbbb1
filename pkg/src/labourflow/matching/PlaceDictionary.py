from labourflow.matching.AhoCorasick import AhoCorasick
from labourflow.representations.Errors import EmptyDictionaryError
from labourflow.representations.MatchCandidate import MatchCandidate


class PlaceDictionary:
    """
    Official names and aliases of every province, city and district, compiled into an
    Aho-Corasick automaton. A surface string may refer to several places.
    """

    def __init__(self, patterns):
        """
        Builds the automaton.
        :param patterns: Dict surface string -> list of place ids.
        """
        if not patterns:
            raise EmptyDictionaryError("Place dictionary has no patterns")
        self.__automaton = AhoCorasick()
        self.__candidates = []
        for surface in sorted(patterns):
            self.__automaton.add_pattern(surface)
            self.__candidates.append(tuple(sorted(set(patterns[surface]))))
        self.__by_surface = dict(zip(self.__automaton.patterns, self.__candidates))
        self.__automaton.build()

    @staticmethod
    def build(registry):
        """
        Collects every official name and alias of the registry.
        :param registry: Registry.
        :return: PlaceDictionary
        """
        if len(registry) == 0:
            raise EmptyDictionaryError("Empty registry")
        patterns = {}
        for region in registry.regions():
            for name in region.names:
                if name:
                    patterns.setdefault(name, set()).add(region.id)
        return PlaceDictionary(patterns)

    @property
    def patterns(self):
        """
        Surface strings with their candidate place ids.
        :return: List of (surface, tuple of ids), sorted by surface.
        """
        return list(zip(self.__automaton.patterns, self.__candidates))

    def candidates(self, surface):
        """
        Place ids a surface string may refer to.
        :param surface: String.
        :return: Tuple of ids, empty when the string is not in the dictionary.
        """
        return self.__by_surface.get(surface, ())

    def match(self, text):
        """
        Finds every place-name occurrence, overlapping ones included, by increasing span.
        :param text: Query text or clicked title. None or empty gives no match.
        :return: List of MatchCandidate.
        """
        if not text:
            return []
        patterns = self.__automaton.patterns
        return [MatchCandidate(patterns[i], start, end, self.__candidates[i])
                for start, end, i in self.__automaton.search(text)]

    def __len__(self):
        return len(self.__candidates)


def match_places(dictionary, text):
    return dictionary.match(text)
