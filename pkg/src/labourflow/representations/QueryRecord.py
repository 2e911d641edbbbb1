from collections import namedtuple

from labourflow.representations.GeoPoint import GeoPoint
from labourflow.representations.Quarter import checked_timestamp


class QueryRecord(namedtuple("QueryRecord", ["timestamp", "lat", "lon", "query_text",
                                             "clicked_title"])):
    """
    One search-log row: epoch timestamp, query location, query text and the title of the clicked
    page (None when nothing was clicked).
    """

    __slots__ = ()

    @staticmethod
    def from_dict(d):
        """
        Builds a record from a parsed log line, checking its invariants.
        :param d: Dict with timestamp, lat, lon, query_text and optional clicked_title.
        :return: QueryRecord
        """
        timestamp = checked_timestamp(d["timestamp"])
        p = GeoPoint.checked(d["lat"], d["lon"])
        text = d.get("query_text")
        if text is None:
            text = ""
        if not isinstance(text, str):
            raise ValueError("query_text is not a string")
        title = d.get("clicked_title")
        if title is not None and not isinstance(title, str):
            raise ValueError("clicked_title is not a string")
        return QueryRecord(timestamp, p.lat, p.lon, text, title)

    @property
    def location(self):
        return GeoPoint(self.lat, self.lon)

    def to_dict(self):
        return {"timestamp": self.timestamp, "lat": self.lat, "lon": self.lon,
                "query_text": self.query_text, "clicked_title": self.clicked_title}
