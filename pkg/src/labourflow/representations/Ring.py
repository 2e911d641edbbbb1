from labourflow.representations.GeoPoint import GeoPoint
from labourflow.representations.Segment import Segment


class Ring:
    """
    Simple closed polygon ring in the (lat, lon) plane. The first vertex equals the last one.
    """

    def __init__(self, vertices):
        """
        Basic constructor.
        :param vertices: List of GeoPoint, closed (first == last).
        """
        self.__vertices = vertices
        self.__segments = [Segment(vertices[i], vertices[i + 1])
                           for i in range(len(vertices) - 1)]
        lats = [v.lat for v in vertices]
        lons = [v.lon for v in vertices]
        self.__bbox = (min(lats), min(lons), max(lats), max(lons))

    @staticmethod
    def from_flat(coords):
        """
        Builds a ring from a flat coordinate array [lat0, lon0, lat1, lon1, ...].
        :param coords: List of floats, even length.
        :return: Ring
        """
        if len(coords) % 2 != 0:
            raise ValueError("Flat coordinate array has odd length %d" % len(coords))
        return Ring([GeoPoint(coords[i], coords[i + 1]) for i in range(0, len(coords), 2)])

    @property
    def vertices(self):
        return self.__vertices

    @property
    def bbox(self):
        """
        Bounding box.
        :return: Tuple (min_lat, min_lon, max_lat, max_lon).
        """
        return self.__bbox

    def is_closed(self):
        return len(self.__vertices) >= 2 and self.__vertices[0] == self.__vertices[-1]

    def to_flat(self):
        flat = []
        for v in self.__vertices:
            flat.append(v.lat)
            flat.append(v.lon)
        return flat

    def on_boundary(self, point):
        for s in self.__segments:
            if s.contains(point):
                return True
        return False

    def contains(self, point):
        """
        Even-odd ray casting. Points on the boundary count as inside.
        :param point: GeoPoint to be checked.
        :return: True if the ring contains point.
        """
        min_lat, min_lon, max_lat, max_lon = self.__bbox
        if point.lat < min_lat or point.lat > max_lat or \
                point.lon < min_lon or point.lon > max_lon:
            return False
        if self.on_boundary(point):
            return True

        inside = False
        for s in self.__segments:
            if s.crosses_ray(point):
                inside = not inside
        return inside

    def __repr__(self):
        return "Ring(" + str(len(self.__vertices)) + " vertices)"
