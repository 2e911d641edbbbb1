import math

from labourflow.representations.Constants import EPS, EARTH_RADIUS_KM
from labourflow.representations.Errors import CoordinateError


class GeoPoint:
    """
    A (lat, lon) location in degrees. Polygon tests treat lat/lon as planar coordinates,
    distances use the great circle.
    """

    __slots__ = ("lat", "lon")

    def __init__(self, lat=0.0, lon=0.0):
        """
        Default constructor.
        :param lat: Latitude in degrees, [-90, 90].
        :param lon: Longitude in degrees, [-180, 180].
        """
        self.lat = float(lat)
        self.lon = float(lon)

    @staticmethod
    def checked(lat, lon):
        """
        Builds a point, rejecting out-of-range coordinates.
        :param lat: Latitude in degrees.
        :param lon: Longitude in degrees.
        :return: GeoPoint
        """
        lat = float(lat)
        lon = float(lon)
        if not (-90.0 <= lat <= 90.0) or not (-180.0 <= lon <= 180.0):
            raise CoordinateError("Coordinate out of range: (%r, %r)" % (lat, lon))
        return GeoPoint(lat, lon)

    def dist(self, p):
        """
        Great-circle distance to another point, haversine formula.
        :param p: Another GeoPoint.
        :return: float, distance in km.
        """
        phi_1 = math.radians(self.lat)
        phi_2 = math.radians(p.lat)
        d_phi = phi_2 - phi_1
        d_lambda = math.radians(p.lon - self.lon)
        h = math.sin(d_phi / 2) ** 2 + \
            math.cos(phi_1) * math.cos(phi_2) * math.sin(d_lambda / 2) ** 2
        return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))

    def planar_dist(self, p):
        """
        Euclidean distance in the (lat, lon) plane.
        :param p: Another GeoPoint.
        :return: float, degrees.
        """
        return math.hypot(self.lat - p.lat, self.lon - p.lon)

    def inner(self, p):
        return self.lat * p.lat + self.lon * p.lon

    def __eq__(self, p):
        return isinstance(p, GeoPoint) and self.planar_dist(p) < EPS

    def __ne__(self, p):
        return not self.__eq__(p)

    def __hash__(self):
        return hash((round(self.lat, 9), round(self.lon, 9)))

    def __add__(self, p):
        return GeoPoint(self.lat + p.lat, self.lon + p.lon)

    def __sub__(self, p):
        return GeoPoint(self.lat - p.lat, self.lon - p.lon)

    def __mul__(self, k):
        return GeoPoint(self.lat * k, self.lon * k)

    def __repr__(self):
        return "(" + str(self.lat) + ", " + str(self.lon) + ")"
