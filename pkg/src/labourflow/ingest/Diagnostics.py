from collections import Counter

LINES_READ = "lines_read"
MALFORMED = "malformed"
FILTERED_NON_JOB = "filtered_non_job"
DUPLICATES = "duplicates"
DROPPED_NO_ORIGIN = "dropped_no_origin"
DROPPED_NO_DESTINATION = "dropped_no_destination"
DROPPED_SAME_CITY = "dropped_same_city"
INTENTS = "intents"
POSTINGS_READ = "postings_read"
POSTINGS_MALFORMED = "postings_malformed"
POSTINGS_UNKNOWN_CITY = "postings_unknown_city"


class Diagnostics:
    """
    Named counters of skipped and dropped records. Merging is associative and commutative, so
    counters from different partitions can be combined in any order.
    """

    def __init__(self, counts=None):
        self.__counts = Counter(counts or {})

    def add(self, name, n=1):
        self.__counts[name] += n

    def merge(self, other):
        """
        Adds the counters of another Diagnostics into this one.
        :param other: Diagnostics.
        :return: self
        """
        self.__counts.update(other.to_dict())
        return self

    def __add__(self, other):
        return Diagnostics(self.to_dict()).merge(other)

    def __getitem__(self, name):
        return self.__counts[name]

    def __eq__(self, other):
        return isinstance(other, Diagnostics) and self.to_dict() == other.to_dict()

    def to_dict(self):
        return dict((k, self.__counts[k]) for k in sorted(self.__counts))

    def __repr__(self):
        return "Diagnostics(" + ", ".join("%s=%d" % kv for kv in self.to_dict().items()) + ")"
