from collections import namedtuple

import numpy as np


class TitleVector(namedtuple("TitleVector", ["posting_id", "values"])):
    """
    Keyword-frequency vector of a job title, normalized to sum to 1. A title without any
    dictionary keyword gets an all-zero vector and cannot be clustered.
    """

    __slots__ = ()

    @property
    def vectorizable(self):
        return bool(np.any(self.values))
