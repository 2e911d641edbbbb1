from labourflow.representations.Constants import EPS


class Segment:
    """
    Represents a polygon edge AB in the (lat, lon) plane.
    """

    __slots__ = ("a", "b")

    def __init__(self, _a, _b):
        self.a = _a
        self.b = _b

    def length(self):
        """
        Length of the segment, in degrees.
        :return: float, distance AB.
        """
        return self.a.planar_dist(self.b)

    def dist_to_point(self, p):
        """
        Calculates the minimum planar distance to a given point.
        :param p: GeoPoint.
        :return: float, distance to the point.
        """
        ab = self.b - self.a
        ap = p - self.a
        den = ab.inner(ab)
        if den < EPS * EPS:
            return self.a.planar_dist(p)

        # Projection parameter clamped to the segment
        t = max(0.0, min(1.0, ap.inner(ab) / den))
        return (self.a + ab * t).planar_dist(p)

    def contains(self, p):
        """
        Checks if the segment contains a point, up to EPS.
        :param p: GeoPoint
        :return: Boolean, True if the point is on the segment.
        """
        return self.dist_to_point(p) < EPS

    def crosses_ray(self, p):
        """
        Checks if the horizontal ray starting at p towards increasing longitude crosses the
        segment. Uses the half-open rule on latitude so shared vertices are counted once.
        :param p: GeoPoint, start of the ray.
        :return: Boolean
        """
        a, b = self.a, self.b
        if (a.lat > p.lat) == (b.lat > p.lat):
            return False
        lon_at = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat)
        return p.lon < lon_at

    def __repr__(self):
        return "[" + self.a.__repr__() + " -> " + self.b.__repr__() + "]"
