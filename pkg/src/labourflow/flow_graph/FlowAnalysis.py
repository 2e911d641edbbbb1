from collections import namedtuple

import numpy as np

from labourflow.representations.Errors import UndefinedRatioError

RATIO_METRICS = ["inflow", "outflow", "authority", "hub"]

ProvinceProfile = namedtuple("ProvinceProfile", ["province_id", "cities", "blackholes",
                                                 "volcanoes", "all_volcano"])


def detect_blackholes_volcanoes(metrics, top_k=0):
    """
    Black holes have a positive net inflow, volcanoes a positive net outflow. Each list is
    ranked by decreasing surplus, ties by city id.
    :param metrics: Iterable of CityMetrics.
    :param top_k: Length cap of each list, 0 keeps all.
    :return: (blackholes, volcanoes), lists of city ids.
    """
    if top_k < 0:
        raise ValueError("top_k must be >= 0, got %r" % top_k)
    metrics = list(metrics)
    blackholes = sorted((m for m in metrics if m.net_inflow > 0),
                        key=lambda m: (-m.net_inflow, m.city_id))
    volcanoes = sorted((m for m in metrics if m.net_inflow < 0),
                       key=lambda m: (m.net_inflow, m.city_id))
    if top_k:
        blackholes = blackholes[:top_k]
        volcanoes = volcanoes[:top_k]
    return [m.city_id for m in blackholes], [m.city_id for m in volcanoes]


def increase_ratio(metric_t1, metric_t2):
    """
    Relative change between two quarters.
    :param metric_t1: Baseline value, must not be 0.
    :param metric_t2: Later value.
    :return: (metric_t2 - metric_t1) / metric_t1
    """
    if metric_t1 == 0:
        raise UndefinedRatioError("Increase ratio from a zero baseline")
    return (metric_t2 - metric_t1) / metric_t1


def increase_ratio_table(metrics_t1, metrics_t2, names=None):
    """
    Per-city increase ratios of several metrics. A zero baseline gives None for that cell.
    :param metrics_t1: Iterable of CityMetrics of the baseline quarter.
    :param metrics_t2: Iterable of CityMetrics of the later quarter.
    :param names: Metric names, inflow, outflow, authority and hub by default.
    :return: Dict city_id -> dict name -> float or None, over the cities of both quarters.
    """
    names = names or RATIO_METRICS
    later = dict((m.city_id, m) for m in metrics_t2)
    table = {}
    for m1 in metrics_t1:
        m2 = later.get(m1.city_id)
        if m2 is None:
            continue
        row = {}
        for name in names:
            try:
                row[name] = increase_ratio(m1.value(name), m2.value(name))
            except UndefinedRatioError:
                row[name] = None
        table[m1.city_id] = row
    return dict((c, table[c]) for c in sorted(table))


def tier_medians(ratios, registry):
    """
    Median of a per-city value within each city tier. Undefined values are ignored.
    :param ratios: Dict city_id -> float or None.
    :param registry: Registry.
    :return: Dict tier -> median, tiers without values left out.
    """
    medians = {}
    for tier, cities in registry.cities_by_tier().items():
        values = [ratios[c] for c in cities if ratios.get(c) is not None]
        if values:
            medians[tier] = float(np.median(values))
    return medians


def province_profile(metrics, registry):
    """
    Black-hole and volcano counts per province, with a flag for provinces where every city is a
    volcano.
    :param metrics: Iterable of CityMetrics.
    :param registry: Registry.
    :return: List of ProvinceProfile sorted by province id.
    """
    by_city = dict((m.city_id, m) for m in metrics)
    profiles = []
    for province in registry.provinces():
        cities = [c for c in registry.cities_in_province(province) if c in by_city]
        blackholes = sum(1 for c in cities if by_city[c].blackhole)
        volcanoes = sum(1 for c in cities if by_city[c].volcano)
        profiles.append(ProvinceProfile(province, len(cities), blackholes, volcanoes,
                                        bool(cities) and volcanoes == len(cities)))
    return profiles
