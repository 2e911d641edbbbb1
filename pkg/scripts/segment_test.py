import random

import pytest

from labourflow.representations.Constants import EPS
from labourflow.representations.GeoPoint import GeoPoint
from labourflow.representations.Segment import Segment


def approx_dist(s, p, pts_per_seg=2001):
    """
    Approximate minimum distance between a segment and a point, by iterating through a number of
    points inside the segment.
    :param s: Segment.
    :param p: GeoPoint.
    :param pts_per_seg: Number of points the segment will be divided in.
    :return: float
    """
    d = (s.b - s.a) * (1.0 / (pts_per_seg - 1))
    return min((s.a + d * i).planar_dist(p) for i in range(pts_per_seg))


def random_point():
    return GeoPoint(random.uniform(-1, 1), random.uniform(-1, 1))


def test_dist_to_point():
    random.seed(2)
    for _ in range(100):
        s = Segment(random_point(), random_point())
        p = random_point()
        # Sampling step bounds the approximation error
        step = s.length() / 2000
        assert s.dist_to_point(p) <= approx_dist(s, p) + EPS
        assert approx_dist(s, p) - s.dist_to_point(p) <= step


def test_degenerate_segment():
    a = GeoPoint(1.0, 2.0)
    s = Segment(a, GeoPoint(1.0, 2.0))
    assert s.length() == 0.0
    assert s.dist_to_point(GeoPoint(4.0, 6.0)) == pytest.approx(5.0)


def test_contains():
    s = Segment(GeoPoint(0.0, 0.0), GeoPoint(2.0, 2.0))
    assert s.contains(GeoPoint(1.0, 1.0))
    assert s.contains(GeoPoint(2.0, 2.0))
    assert not s.contains(GeoPoint(1.0, 1.1))
    assert not s.contains(GeoPoint(3.0, 3.0))


def test_crosses_ray():
    s = Segment(GeoPoint(0.0, 1.0), GeoPoint(2.0, 1.0))
    assert s.crosses_ray(GeoPoint(1.0, 0.0))
    assert not s.crosses_ray(GeoPoint(1.0, 2.0))
    assert not s.crosses_ray(GeoPoint(3.0, 0.0))
    # Half-open on latitude: the upper vertex is not counted, the lower one is
    assert not s.crosses_ray(GeoPoint(2.0, 0.0))
    assert s.crosses_ray(GeoPoint(0.0, 0.0))
    # Horizontal edges are never crossed
    assert not Segment(GeoPoint(1.0, 1.0), GeoPoint(1.0, 3.0)).crosses_ray(GeoPoint(1.0, 0.0))


def test_shared_vertex_is_counted_once():
    random.seed(3)
    for _ in range(100):
        a, b, c = random_point(), random_point(), random_point()
        p = GeoPoint(b.lat, min(a.lon, b.lon, c.lon) - 1.0)
        crossings = Segment(a, b).crosses_ray(p) + Segment(b, c).crosses_ray(p)
        # One crossing if the path a -> b -> c passes through the latitude of b
        if (a.lat > b.lat) != (c.lat > b.lat):
            assert crossings == 1
        else:
            assert crossings in (0, 2)
