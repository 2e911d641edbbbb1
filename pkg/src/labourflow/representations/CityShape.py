class CityShape:
    """
    Collection of rings covering one region. A point inside any ring is inside the region.
    """

    def __init__(self, rings=None):
        """
        Basic constructor. Stores a list with all the rings.
        :param rings: List of Ring objects.
        """
        if rings is None:
            rings = []
        self.__rings = rings

    @property
    def rings(self):
        return self.__rings

    @property
    def bbox(self):
        """
        Bounding box of all rings, None when the shape is empty.
        :return: Tuple (min_lat, min_lon, max_lat, max_lon) or None.
        """
        if not self.__rings:
            return None
        boxes = [r.bbox for r in self.__rings]
        return (min(b[0] for b in boxes), min(b[1] for b in boxes),
                max(b[2] for b in boxes), max(b[3] for b in boxes))

    def is_empty(self):
        return len(self.__rings) == 0

    def contains(self, point):
        """
        Checks if any of the rings contains a point.
        :param point: GeoPoint to be checked.
        :return: True if any ring contains point.
        """
        for ring in self.__rings:
            if ring.contains(point):
                return True
        return False
