from labourflow.representations.CityShape import CityShape
from labourflow.representations.Constants import ADMIN_LEVELS, ADMIN_RANK, TIERS
from labourflow.representations.GeoPoint import GeoPoint
from labourflow.representations.Ring import Ring


class City:
    """
    Geographic and administrative identity of a region: a province, a prefecture-level city or
    a district. Provinces are their own province_id. Districts point to their city through
    parent_city_id.
    """

    def __init__(self, city_id, official_name, province_id, admin_level, centroid,
                 shape=None, aliases=None, tier=None, parent_city_id=None):
        """
        Stores values.
        :param city_id: Opaque stable identifier.
        :param official_name: Official name, used for place matching.
        :param province_id: Id of the province the region belongs to.
        :param admin_level: One of Constants.ADMIN_LEVELS.
        :param centroid: GeoPoint.
        :param shape: CityShape, can be empty for provinces.
        :param aliases: List of alternative names.
        :param tier: One of Constants.TIERS, or None for provinces and districts.
        :param parent_city_id: For districts, the prefecture city containing them.
        """
        self.__id = city_id
        self.__name = official_name
        self.__province_id = province_id
        self.__admin_level = admin_level
        self.__centroid = centroid
        self.__shape = shape if shape is not None else CityShape()
        self.__aliases = list(aliases) if aliases else []
        self.__tier = tier
        self.__parent_city_id = parent_city_id

    @property
    def id(self):
        return self.__id

    @property
    def official_name(self):
        return self.__name

    @property
    def aliases(self):
        return self.__aliases

    @property
    def names(self):
        """
        Official name followed by the aliases.
        :return: List of strings.
        """
        return [self.__name] + self.__aliases

    @property
    def province_id(self):
        return self.__province_id

    @property
    def admin_level(self):
        return self.__admin_level

    @property
    def admin_rank(self):
        """
        Rank of the administrative level: 0 for provinces, 2 for districts.
        :return: int
        """
        return ADMIN_RANK[self.__admin_level]

    @property
    def tier(self):
        return self.__tier

    @property
    def centroid(self):
        return self.__centroid

    @property
    def shape(self):
        return self.__shape

    @property
    def parent_city_id(self):
        return self.__parent_city_id

    def is_province(self):
        return self.__admin_level == ADMIN_LEVELS[0]

    def is_district(self):
        return self.__admin_level == ADMIN_LEVELS[2]

    @staticmethod
    def from_dict(d):
        """
        Builds a city from a registry record. Polygons are lists of flat coordinate arrays.
        :param d: Dict with the City fields.
        :return: City
        """
        tier = d.get("tier")
        if tier is not None and tier not in TIERS:
            raise ValueError("unknown tier %r" % tier)
        if d["admin_level"] not in ADMIN_LEVELS:
            raise ValueError("unknown admin_level %r" % d["admin_level"])
        lat, lon = d["centroid"]
        polygon = d.get("polygon") or []
        # A single flat ring is accepted as well as a list of rings
        if polygon and not isinstance(polygon[0], list):
            polygon = [polygon]
        return City(str(d["city_id"]), d["official_name"], str(d["province_id"]),
                    d["admin_level"], GeoPoint.checked(lat, lon),
                    CityShape([Ring.from_flat(r) for r in polygon]),
                    d.get("aliases") or [], tier,
                    str(d["parent_city_id"]) if d.get("parent_city_id") is not None else None)

    def to_dict(self):
        return {
            "city_id": self.__id,
            "official_name": self.__name,
            "aliases": list(self.__aliases),
            "province_id": self.__province_id,
            "admin_level": self.__admin_level,
            "tier": self.__tier,
            "centroid": [self.__centroid.lat, self.__centroid.lon],
            "polygon": [r.to_flat() for r in self.__shape.rings],
            "parent_city_id": self.__parent_city_id,
        }

    def __eq__(self, city):
        return isinstance(city, City) and self.__id == city.id

    def __hash__(self):
        return hash(self.__id)

    def __repr__(self):
        return "City(" + self.__id + ", " + self.__name + ", " + self.__admin_level + ")"
