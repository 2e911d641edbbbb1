import json

import numpy as np

from labourflow.geo.IndicatorTable import IndicatorTable
from labourflow.representations.City import City
from labourflow.representations.Constants import PREFECTURE_CITY, TIERS
from labourflow.representations.Errors import RegistryError, UnknownCityError
from labourflow.representations.GeoPoint import GeoPoint
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)


class Registry:
    """
    The city universe: names, aliases, administrative hierarchy, tiers and polygons. Immutable
    after construction, so it can be shared between threads and worker processes.
    """

    def __init__(self, cities):
        """
        Builds the registry and checks every invariant.
        :param cities: Iterable of City objects.
        """
        self.__cities = {}
        for city in cities:
            if city.id in self.__cities:
                raise RegistryError("Duplicated city_id %s" % city.id)
            self.__cities[city.id] = city
        self.__check_invariants()

        # Prefecture cities are the nodes of the flow graphs
        self.__city_ids = sorted(c.id for c in self.__cities.values()
                                 if c.admin_level == PREFECTURE_CITY)

        # Bounding boxes of every locatable region, for a vectorized prefilter
        self.__located = sorted((c for c in self.__cities.values()
                                 if not c.is_province() and not c.shape.is_empty()),
                                key=lambda c: c.id)
        if self.__located:
            self.__bboxes = np.array([c.shape.bbox for c in self.__located], dtype=float)
        else:
            self.__bboxes = np.zeros((0, 4), dtype=float)

    @staticmethod
    def load(path):
        """
        Loads a line-JSON registry file, one City record per line.
        :param path: Path of the registry file.
        :return: Registry
        """
        cities = []
        with open(path, encoding="utf-8") as f:
            for line_number, line in enumerate(f, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    cities.append(City.from_dict(json.loads(line)))
                except (ValueError, KeyError, TypeError) as e:
                    raise RegistryError("%s:%d: cannot parse city record (%s)" %
                                        (path, line_number, e))
        registry = Registry(cities)
        logger.info("Loaded %d regions (%d cities) from %s", len(cities),
                    len(registry.city_ids), path)
        return registry

    def load_indicators(self, path):
        """
        Reads an indicator file whose city ids must all exist in this registry.
        :param path: Path of the indicator CSV file.
        :return: IndicatorTable
        """
        return IndicatorTable.load(path, self)

    def save(self, path):
        with open(path, "w", encoding="utf-8") as f:
            for city_id in sorted(self.__cities):
                f.write(json.dumps(self.__cities[city_id].to_dict(), ensure_ascii=False,
                                   sort_keys=True) + "\n")

    @property
    def city_ids(self):
        """
        Sorted ids of every prefecture-level city.
        :return: List of strings.
        """
        return self.__city_ids

    def get(self, city_id):
        """
        Region by id.
        :param city_id: Region id.
        :return: City
        """
        try:
            return self.__cities[city_id]
        except KeyError:
            raise UnknownCityError("Unknown city id %r" % city_id)

    def regions(self):
        """
        Every region sorted by id, provinces and districts included.
        :return: List of City.
        """
        return [self.__cities[k] for k in sorted(self.__cities)]

    def city_of(self, region_id):
        """
        Prefecture city a region rolls up to: districts map to their parent, cities to
        themselves and provinces to None.
        :param region_id: Region id.
        :return: City id or None.
        """
        region = self.get(region_id)
        if region.is_district():
            return region.parent_city_id
        if region.is_province():
            return None
        return region.id

    def locate_point(self, point):
        """
        Finds the city containing a point. When several regions contain it, the most specific
        administrative level wins, then the smallest id. Districts resolve to their city.
        :param point: GeoPoint or (lat, lon) tuple.
        :return: City id or None.
        """
        if not isinstance(point, GeoPoint):
            point = GeoPoint.checked(point[0], point[1])
        else:
            point = GeoPoint.checked(point.lat, point.lon)
        if not self.__located:
            return None

        b = self.__bboxes
        mask = (b[:, 0] <= point.lat) & (point.lat <= b[:, 2]) & \
               (b[:, 1] <= point.lon) & (point.lon <= b[:, 3])
        best = None
        for i in np.flatnonzero(mask):
            city = self.__located[i]
            if city.shape.contains(point):
                # Candidates are visited by increasing id, so ties keep the smallest id
                if best is None or city.admin_rank > best.admin_rank:
                    best = city
        if best is None:
            return None
        return self.city_of(best.id)

    def city_distance(self, a, b):
        """
        Great-circle distance between two region centroids.
        :param a: Region id.
        :param b: Region id.
        :return: float, km.
        """
        city_a = self.get(a)
        city_b = self.get(b)
        if a == b:
            return 0.0
        return city_a.centroid.dist(city_b.centroid)

    def cities_by_tier(self):
        """
        Prefecture cities grouped by tier.
        :return: Dict tier -> sorted list of city ids, every tier present.
        """
        groups = dict((t, []) for t in TIERS)
        for city_id in self.__city_ids:
            tier = self.__cities[city_id].tier
            if tier is not None:
                groups[tier].append(city_id)
        return groups

    def cities_in_province(self, province_id):
        return [c for c in self.__city_ids if self.__cities[c].province_id == province_id]

    def provinces(self):
        return sorted(set(self.__cities[c].province_id for c in self.__city_ids))

    def __check_invariants(self):
        """
        Raises RegistryError naming the first region that breaks an invariant.
        """
        names = {}
        for city_id in sorted(self.__cities):
            city = self.__cities[city_id]
            for ring in city.shape.rings:
                if len(ring.vertices) < 4:
                    raise RegistryError("City %s: polygon ring has %d vertices, needs at least 4"
                                        % (city_id, len(ring.vertices)))
                if not ring.is_closed():
                    raise RegistryError("City %s: polygon ring is not closed" % city_id)

            if city.is_district():
                parent = self.__cities.get(city.parent_city_id)
                if parent is None or parent.admin_level != PREFECTURE_CITY:
                    raise RegistryError("City %s: dangling parent %r" %
                                        (city_id, city.parent_city_id))

            key = (city.official_name, city.province_id)
            if key in names:
                raise RegistryError("City %s: official name %r already used by %s in province %s"
                                    % (city_id, city.official_name, names[key], city.province_id))
            names[key] = city_id

    def __len__(self):
        return len(self.__cities)

    def __contains__(self, city_id):
        return city_id in self.__cities

    def __iter__(self):
        return iter(self.regions())
