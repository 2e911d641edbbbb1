import json
import math

import numpy as np
import pytest

from labourflow.geo.Registry import Registry
from labourflow.representations.City import City
from labourflow.representations.Errors import CoordinateError, RegistryError, \
    UnknownCityError
from labourflow.representations.GeoPoint import GeoPoint
from labourflow.representations.Ring import Ring
from scripts.fixtures import china_registry, china_regions, random_regions, square, write_lines


def ray_cast(lat, lon, flat):
    """
    Even-odd rule over a flat closed ring, horizontal ray towards increasing lon.
    """
    pts = [(flat[i], flat[i + 1]) for i in range(0, len(flat), 2)]
    inside = False
    for (a_lat, a_lon), (b_lat, b_lon) in zip(pts, pts[1:]):
        if (a_lat > lat) != (b_lat > lat):
            cross = a_lon + (lat - a_lat) * (b_lon - a_lon) / (b_lat - a_lat)
            if lon < cross:
                inside = not inside
    return inside


def brute_force_locate(regions, lat, lon):
    by_id = dict((r.id, r) for r in regions)
    hits = [r for r in regions if not r.is_province() and
            any(ray_cast(lat, lon, ring.to_flat()) for ring in r.shape.rings)]
    if not hits:
        return None
    best = sorted(hits, key=lambda r: (-r.admin_rank, r.id))[0]
    return by_id[best.parent_city_id].id if best.is_district() else best.id


def test_load_three_cities(tmp_path):
    records = [{"city_id": "A", "official_name": "Alpha", "province_id": "P",
                "admin_level": "prefecture_city", "tier": "T2", "centroid": [0.5, 0.5],
                "polygon": square(0.0, 0.0)},
               {"city_id": "B", "official_name": "Beta", "province_id": "P",
                "admin_level": "prefecture_city", "tier": "T3", "centroid": [0.5, 1.5],
                "polygon": [square(0.0, 1.0)]},
               {"city_id": "C", "official_name": "Gamma", "province_id": "P",
                "admin_level": "prefecture_city", "tier": "T5", "centroid": [0.5, 2.5],
                "aliases": ["G"], "polygon": square(0.0, 2.0)}]
    path = write_lines(tmp_path / "registry.jsonl", [json.dumps(r) for r in records])
    registry = Registry.load(path)
    assert len(registry) == 3
    assert registry.city_ids == ["A", "B", "C"]
    assert registry.get("C").aliases == ["G"]
    assert registry.locate_point((0.5, 0.5)) == "A"


def test_unclosed_ring_names_the_city(tmp_path):
    open_ring = square(0.0, 0.0)[:-2] + [0.0, 0.5]
    record = {"city_id": "BAD", "official_name": "Bad", "province_id": "P",
              "admin_level": "prefecture_city", "centroid": [0.5, 0.5], "polygon": open_ring}
    path = write_lines(tmp_path / "registry.jsonl", [json.dumps(record)])
    with pytest.raises(RegistryError, match="BAD"):
        Registry.load(path)


def test_dangling_parent(tmp_path):
    record = {"city_id": "D1", "official_name": "Dist", "province_id": "P",
              "admin_level": "district", "centroid": [0.5, 0.5], "polygon": square(0.0, 0.0),
              "parent_city_id": "MISSING"}
    path = write_lines(tmp_path / "registry.jsonl", [json.dumps(record)])
    with pytest.raises(RegistryError, match="dangling parent"):
        Registry.load(path)


def test_numeric_ids(tmp_path):
    records = [{"city_id": 100, "official_name": "Province", "province_id": 100,
                "admin_level": "province", "centroid": [0.5, 0.5]},
               {"city_id": 110, "official_name": "City", "province_id": 100,
                "admin_level": "prefecture_city", "tier": "T3", "centroid": [1.0, 1.0],
                "polygon": square(0.0, 0.0, 2.0)},
               {"city_id": 111, "official_name": "Dist", "province_id": 100,
                "admin_level": "district", "centroid": [0.5, 0.5], "polygon": square(0.0, 0.0),
                "parent_city_id": 110}]
    path = write_lines(tmp_path / "registry.jsonl", [json.dumps(r) for r in records])
    registry = Registry.load(path)
    assert registry.city_ids == ["110"]
    assert registry.get("111").parent_city_id == "110"
    assert registry.city_of("111") == "110"
    assert registry.locate_point((0.5, 0.5)) == "110"


def test_unparsable_line_reports_line_number(tmp_path):
    path = write_lines(tmp_path / "registry.jsonl", ['{"city_id": "A"'])
    with pytest.raises(RegistryError, match=":1:"):
        Registry.load(path)


def test_duplicated_official_name_in_province():
    regions = china_regions()
    regions.append(City("BJ2", "Beijing", "P_BJ", "prefecture_city", GeoPoint(0.0, 0.0)))
    with pytest.raises(RegistryError, match="already used"):
        Registry(regions)


def test_save_and_load_keep_every_region(tmp_path):
    registry = china_registry()
    path = str(tmp_path / "registry.jsonl")
    registry.save(path)
    loaded = Registry.load(path)
    assert [r.to_dict() for r in loaded] == [r.to_dict() for r in registry]


def test_locate_point():
    registry = china_registry()
    assert registry.locate_point((39.2, 116.2)) == "BJ"
    # inside the Chaoyang district of Beijing
    assert registry.locate_point(GeoPoint(39.6, 116.6)) == "BJ"
    assert registry.locate_point((22.1, 113.1)) == "GD_SZ"
    assert registry.locate_point((0.0, 0.0)) is None


def test_boundary_points_are_inside():
    registry = china_registry()
    assert registry.locate_point((31.0, 121.5)) == "SH"
    assert registry.locate_point((32.0, 122.0)) == "SH"


def test_overlap_picks_smallest_id():
    # GD_GZ and GD_SZ share the edge lat = 23
    assert china_registry().locate_point((23.0, 113.5)) == "GD_GZ"


def test_invalid_coordinates():
    with pytest.raises(CoordinateError):
        china_registry().locate_point((95.0, 0.0))


def test_locate_point_matches_ray_casting():
    rng = np.random.default_rng(3)
    regions = random_regions(rng, n_cities=20, cols=5)
    registry = Registry(regions)
    for _ in range(1000):
        lat = float(rng.uniform(-0.5, 4.5))
        lon = float(rng.uniform(-0.5, 5.5))
        assert registry.locate_point((lat, lon)) == brute_force_locate(regions, lat, lon)


def test_ring_contains():
    ring = Ring.from_flat(square(0.0, 0.0))
    assert ring.contains(GeoPoint(0.5, 0.5))
    assert ring.contains(GeoPoint(0.0, 0.3))
    assert not ring.contains(GeoPoint(1.5, 0.5))


def test_city_distance():
    regions = [c for c in china_regions() if c.id in ("P_BJ", "BJ", "SH", "P_SH")]
    registry = Registry(regions)
    assert registry.city_distance("BJ", "BJ") == 0.0
    assert registry.city_distance("BJ", "SH") == registry.city_distance("SH", "BJ")

    a = GeoPoint(0.0, 0.0)
    b = GeoPoint(0.0, 90.0)
    assert a.dist(b) == pytest.approx(math.pi / 2 * 6371.0, abs=1e-6)
    assert a.dist(b) == pytest.approx(10007.5, abs=0.1)


def test_city_distance_triangle_inequality():
    rng = np.random.default_rng(5)
    registry = Registry(random_regions(rng, n_cities=20, cols=5))
    ids = registry.city_ids
    for _ in range(300):
        a, b, c = (str(v) for v in rng.choice(ids, size=3))
        assert registry.city_distance(a, c) <= \
            registry.city_distance(a, b) + registry.city_distance(b, c) + 1e-9
    for _ in range(300):
        p, q, r = (GeoPoint(float(rng.uniform(-89, 89)), float(rng.uniform(-179, 179)))
                   for _ in range(3))
        assert p.dist(r) <= p.dist(q) + q.dist(r) + 1e-9


def test_unknown_city():
    with pytest.raises(UnknownCityError):
        china_registry().get("NOWHERE")


def test_hierarchy_views():
    registry = china_registry()
    assert registry.city_of("BJ_CY") == "BJ"
    assert registry.city_of("LN_CY") == "LN_CY"
    assert registry.city_of("P_LN") is None
    assert registry.cities_by_tier()["T1"] == ["BJ", "GD_GZ", "GD_SZ", "SH"]
    assert registry.cities_by_tier()["T5"] == []
    assert registry.cities_in_province("P_LN") == ["LN_CY", "LN_SY"]
    assert registry.provinces() == ["P_BJ", "P_GD", "P_LN", "P_SH"]


def test_load_indicators(tmp_path):
    registry = china_registry()
    path = write_lines(tmp_path / "indicators.csv",
                       ["city_id,name,value", "BJ,GDP-2020,36102.6", "SH,GDP-2020,38700.6",
                        "BJ,population-2020,2189.3"])
    table = registry.load_indicators(path)
    assert table.names() == ["GDP-2020", "population-2020"]
    assert table.get("GDP-2020") == pytest.approx({"BJ": 36102.6, "SH": 38700.6})

    bad = write_lines(tmp_path / "bad.csv", ["city_id,name,value", "XX,GDP-2020,1.0"])
    with pytest.raises(RegistryError, match="unknown city XX"):
        registry.load_indicators(bad)
