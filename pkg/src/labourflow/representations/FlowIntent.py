from collections import namedtuple


class FlowIntent(namedtuple("FlowIntent", ["origin", "destination", "quarter"])):
    """
    One cross-city job search intention: origin city, destination city and Quarter.
    origin and destination are always different.
    """

    __slots__ = ()

    def __str__(self):
        return "%s -> %s (%s)" % (self.origin, self.destination, self.quarter)
