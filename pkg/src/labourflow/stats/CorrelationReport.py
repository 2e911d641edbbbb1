from collections import namedtuple

import pandas as pd

from labourflow.representations.Constants import CORRELATION_METHODS
from labourflow.representations.Errors import UndefinedCorrelationError
from labourflow.stats.Correlation import correlate
from labourflow.tools.AtomicFile import atomic_path
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)

# Report name -> CityMetrics field
SCORES = [("Inflow", "inflow"), ("Outflow", "outflow"), ("Hub", "hub"),
          ("Authority", "authority")]

CorrelationRow = namedtuple("CorrelationRow", ["score_name", "indicator", "method", "r",
                                               "p_value", "n"])


def correlation_report(metrics, indicator, indicator_name, methods=None):
    """
    Correlations of every flow score with an economic indicator, over the cities that have both.
    Scores whose correlation is undefined are left out with a warning.
    :param metrics: Iterable of CityMetrics of one quarter.
    :param indicator: Dict city_id -> value.
    :param indicator_name: Name written in the report.
    :param methods: Correlation methods, all three by default.
    :return: List of CorrelationRow.
    """
    methods = methods or CORRELATION_METHODS
    by_city = dict((m.city_id, m) for m in metrics)
    cities = sorted(c for c in by_city if c in indicator)
    y = [indicator[c] for c in cities]
    rows = []
    for score_name, field in SCORES:
        x = [by_city[c].value(field) for c in cities]
        for method in methods:
            try:
                result = correlate(x, y, method)
            except UndefinedCorrelationError as e:
                logger.warning("No %s correlation for %s vs %s: %s", method, score_name,
                               indicator_name, e)
                continue
            rows.append(CorrelationRow(score_name, indicator_name, method, result.r,
                                       result.p_value, result.n))
    return rows


def save_correlation_report(rows, path, fmt="csv"):
    df = pd.DataFrame([tuple(r) for r in rows], columns=list(CorrelationRow._fields))
    with atomic_path(path) as tmp:
        if fmt == "json":
            df.to_json(tmp, orient="records", lines=True, double_precision=15, force_ascii=False)
        else:
            df.to_csv(tmp, index=False, lineterminator="\n", float_format="%.12g")
