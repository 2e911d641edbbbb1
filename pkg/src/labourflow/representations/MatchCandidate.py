from collections import namedtuple


class MatchCandidate(namedtuple("MatchCandidate", ["surface", "start", "end", "candidates"])):
    """
    A place-name mention: the matched text, its [start, end) character span and the ids of
    every place that name may refer to.
    """

    __slots__ = ()

    @property
    def span(self):
        return self.start, self.end
