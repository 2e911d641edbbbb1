from collections import namedtuple

import numpy as np
from scipy import stats

from labourflow.representations.Constants import CORRELATION_METHODS, MIN_CORRELATION_SAMPLES
from labourflow.representations.Errors import UndefinedCorrelationError

CorrelationResult = namedtuple("CorrelationResult", ["method", "r", "p_value", "n"])


def _samples(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise UndefinedCorrelationError("Samples must be 1-d and of equal length, got %s and %s"
                                        % (x.shape, y.shape))
    if len(x) < MIN_CORRELATION_SAMPLES:
        raise UndefinedCorrelationError("Correlation needs at least %d samples, got %d" %
                                        (MIN_CORRELATION_SAMPLES, len(x)))
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise UndefinedCorrelationError("Samples must be finite")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise UndefinedCorrelationError("Zero variance sample")
    return x, y


def _result(method, r, p, n):
    return CorrelationResult(method, min(1.0, max(-1.0, float(r))),
                             min(1.0, max(0.0, float(p))), n)


def pearson(x, y):
    """
    Two-sided p-value from the Student-t distribution with n-2 degrees of freedom.
    :param x: Sample, at least 3 values with non-zero variance.
    :param y: Sample of the same length.
    :return: CorrelationResult
    """
    x, y = _samples(x, y)
    r, p = stats.pearsonr(x, y)
    return _result("pearson", r, p, len(x))


def spearman(x, y):
    """
    Pearson correlation of average ranks.
    """
    x, y = _samples(x, y)
    r, p = stats.spearmanr(x, y)
    return _result("spearman", r, p, len(x))


def kendall(x, y):
    """
    Kendall tau-b, with a two-sided p-value from the tie-corrected normal approximation.
    """
    x, y = _samples(x, y)
    tau, p = stats.kendalltau(x, y, variant="b", method="asymptotic")
    return _result("kendall", tau, p, len(x))


METHODS = {"pearson": pearson, "spearman": spearman, "kendall": kendall}


def correlate(x, y, method):
    """
    :param method: One of pearson, spearman, kendall.
    :return: CorrelationResult
    """
    if method not in METHODS:
        raise ValueError("Unknown correlation method %r, expected one of %s" %
                         (method, ", ".join(CORRELATION_METHODS)))
    return METHODS[method](x, y)
