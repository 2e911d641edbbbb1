from collections import namedtuple

import pandas as pd

from labourflow.representations.Quarter import Quarter
from labourflow.tools.AtomicFile import atomic_path


class CityMetrics(namedtuple("CityMetrics", ["city_id", "inflow", "outflow", "net_inflow",
                                             "authority", "hub", "blackhole", "volcano"])):
    """
    Flow metrics of one city in one quarter. Inflow counts intents arriving at the city,
    outflow intents leaving it.
    """

    __slots__ = ()

    @property
    def net_outflow(self):
        return -self.net_inflow

    def value(self, name):
        """
        A metric by name, net_outflow included.
        :param name: Field name.
        :return: float
        """
        return getattr(self, name)


METRIC_COLUMNS = ["quarter"] + list(CityMetrics._fields)


def save_metrics(metrics_by_quarter, path, fmt="csv"):
    """
    Writes one row per (quarter, city), atomically.
    :param metrics_by_quarter: Dict Quarter -> list of CityMetrics.
    :param path: Destination file.
    :param fmt: "csv" or "json" (line-JSON records).
    """
    rows = []
    for quarter in sorted(metrics_by_quarter):
        for m in metrics_by_quarter[quarter]:
            rows.append((str(quarter),) + tuple(m))
    df = pd.DataFrame(rows, columns=METRIC_COLUMNS)
    with atomic_path(path) as tmp:
        if fmt == "json":
            df.to_json(tmp, orient="records", lines=True, double_precision=15, force_ascii=False)
        else:
            df.to_csv(tmp, index=False, lineterminator="\n", float_format="%.12g")


def load_metrics(path):
    """
    Reads a CSV written by save_metrics.
    :param path: Metrics CSV.
    :return: Dict Quarter -> list of CityMetrics, in file order.
    """
    df = pd.read_csv(path, dtype={"quarter": str, "city_id": str}, keep_default_na=False)
    result = {}
    for row in df.itertuples(index=False):
        m = CityMetrics(row.city_id, float(row.inflow), float(row.outflow), float(row.net_inflow),
                        float(row.authority), float(row.hub), _as_bool(row.blackhole),
                        _as_bool(row.volcano))
        result.setdefault(Quarter.parse(row.quarter), []).append(m)
    return result


def _as_bool(value):
    if isinstance(value, str):
        return value.strip().lower() == "true"
    return bool(value)
