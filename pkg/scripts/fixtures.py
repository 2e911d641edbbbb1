import json
from datetime import datetime

import numpy as np

from labourflow.flow_graph.FlowGraph import FlowGraph
from labourflow.geo.Registry import Registry
from labourflow.representations.City import City
from labourflow.representations.CityShape import CityShape
from labourflow.representations.Constants import DISTRICT, PREFECTURE_CITY, PROVINCE
from labourflow.representations.GeoPoint import GeoPoint
from labourflow.representations.Quarter import CST, Quarter
from labourflow.representations.Ring import Ring

JOB = u"招聘"

# Small corpus for end-to-end runs
SMALL_SCENARIO = {
    "seed": 7,
    "tiers": {"T1": 2, "NewT1": 2, "T2": 4, "T3": 4, "T4": 4, "T5": 4},
    "provinces": 4,
    "blackholes": {"C001": 120, "C002": 80},
    "intra_intensity": 40.0,
    "inter_intensity": 5.0,
    "quarters": ["2020Q1", "2020Q2"],
    "quarter_scale": [1.0, 1.5],
    "ambiguous_districts": 3,
    "postings_per_city": {"T1": 120, "NewT1": 100, "T2": 80, "T3": 60, "T4": 50, "T5": 40},
    "kmeans_k": 6,
}


def square(lat0, lon0, side=1.0):
    """
    Flat closed ring of a square from its lower-left corner.
    """
    return [lat0, lon0, lat0, lon0 + side, lat0 + side, lon0 + side, lat0 + side, lon0,
            lat0, lon0]


def city(city_id, name, province_id, lat0, lon0, side=1.0, tier="T2", aliases=None):
    return City(city_id, name, province_id, PREFECTURE_CITY,
                GeoPoint(lat0 + side / 2, lon0 + side / 2),
                CityShape([Ring.from_flat(square(lat0, lon0, side))]), aliases, tier)


def district(district_id, name, parent, lat0, lon0, side=0.25):
    return City(district_id, name, parent.province_id, DISTRICT,
                GeoPoint(lat0 + side / 2, lon0 + side / 2),
                CityShape([Ring.from_flat(square(lat0, lon0, side))]),
                parent_city_id=parent.id)


def province(province_id, name, lat, lon):
    return City(province_id, name, province_id, PROVINCE, GeoPoint(lat, lon))


def china_regions():
    """
    A few provinces, cities and districts with the classic ambiguous "Chaoyang": a district of
    Beijing and a city of Liaoning. "Pearl" is an alias shared by Guangzhou and Shenyang.
    """
    beijing = city("BJ", "Beijing", "P_BJ", 39.0, 116.0, tier="T1", aliases=["Peking"])
    shenzhen = city("GD_SZ", "Shenzhen", "P_GD", 22.0, 113.0, tier="T1")
    return [
        province("P_BJ", "Beijing Municipality", 39.5, 116.5),
        province("P_LN", "Liaoning", 41.5, 122.0),
        province("P_GD", "Guangdong", 23.0, 113.5),
        province("P_SH", "Shanghai Municipality", 31.5, 121.5),
        beijing,
        district("BJ_CY", "Chaoyang", beijing, 39.5, 116.5),
        city("LN_CY", "Chaoyang", "P_LN", 41.0, 120.0, tier="T4"),
        city("LN_SY", "Shenyang", "P_LN", 41.0, 123.0, tier="T2", aliases=["Pearl"]),
        shenzhen,
        district("GD_FT", "Futian", shenzhen, 22.0, 113.0),
        city("GD_GZ", "Guangzhou", "P_GD", 23.0, 113.0, tier="T1", aliases=["Canton", "Pearl"]),
        city("SH", "Shanghai", "P_SH", 31.0, 121.0, tier="T1"),
    ]


def china_registry():
    return Registry(china_regions())


# Interior points of each city, away from the districts
POINTS = {"BJ": (39.2, 116.2), "LN_CY": (41.5, 120.5), "LN_SY": (41.5, 123.5),
          "GD_SZ": (22.7, 113.7), "GD_GZ": (23.5, 113.5), "SH": (31.5, 121.5)}


def random_regions(rng, n_provinces=4, n_cities=12, cols=4, names=8):
    """
    Grid of overlapping city squares, each with one district, named from a small pool so that
    names collide across provinces. Names stay unique within a province.
    :param rng: numpy Generator.
    :return: List of City.
    """
    pool = ["Name%d" % i for i in range(names)]
    used = dict(("P%d" % p, set()) for p in range(n_provinces))

    def fresh(province_id):
        free = [n for n in pool if n not in used[province_id]]
        if not free:
            free = ["%sName%d" % (province_id, len(used[province_id]))]
        name = free[int(rng.integers(len(free)))]
        used[province_id].add(name)
        return name

    regions = [province("P%d" % p, "Province%d" % p, float(p), 0.0) for p in range(n_provinces)]
    for i in range(n_cities):
        row, col = divmod(i, cols)
        province_id = "P%d" % int(rng.integers(n_provinces))
        c = city("C%02d" % i, fresh(province_id), province_id, float(row), float(col),
                 side=float(rng.uniform(0.9, 1.3)))
        regions.append(c)
        regions.append(district("D%02d" % i, fresh(province_id), c,
                                row + float(rng.uniform(0.0, 0.5)),
                                col + float(rng.uniform(0.0, 0.5)),
                                side=float(rng.uniform(0.2, 0.5))))
    return regions


def cst_timestamp(year, month, day, hour=12, minute=0):
    return datetime(year, month, day, hour, minute, tzinfo=CST).timestamp()


def query_line(timestamp, point, text, title=None):
    return json.dumps({"timestamp": timestamp, "lat": point[0], "lon": point[1],
                       "query_text": text, "clicked_title": title}, ensure_ascii=False)


def write_lines(path, lines):
    with open(str(path), "w", encoding="utf-8") as f:
        for line in lines:
            f.write(line + "\n")
    return str(path)


def graph_from_matrix(w, quarter="2020Q1", prefix="N"):
    """
    :param w: n x n weights.
    :return: FlowGraph over nodes N00, N01, ...
    """
    w = np.asarray(w, dtype=float)
    return FlowGraph(Quarter.parse(quarter), ["%s%02d" % (prefix, i) for i in range(len(w))], w)


def random_weights(rng, n, density=0.5, high=20):
    w = rng.integers(1, high, size=(n, n)) * (rng.random((n, n)) < density)
    np.fill_diagonal(w, 0)
    return w.astype(float)


def set_partitions(items):
    """
    Every partition of a list, as lists of blocks.
    """
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]
        yield [[first]] + smaller


def planted_weights(rng, sizes, intra, inter):
    """
    Directed Poisson weights, intensity intra inside a block and inter across blocks.
    :return: (n x n weights, block label per node)
    """
    labels = np.repeat(np.arange(len(sizes)), sizes)
    same = labels[:, None] == labels[None, :]
    w = rng.poisson(np.where(same, intra, inter)).astype(float)
    np.fill_diagonal(w, 0)
    return w, labels
