import functools
import re
from datetime import datetime

from dateutil import tz

from labourflow.representations.Constants import CST_OFFSET_HOURS
from labourflow.representations.Errors import TimestampError

CST = tz.tzoffset("CST", CST_OFFSET_HOURS * 3600)

_QUARTER_RE = re.compile(r"^(\d{4})Q([1-4])$")


def _cst_datetime(timestamp):
    try:
        return datetime.fromtimestamp(timestamp, CST)
    except (OverflowError, OSError, ValueError):
        raise TimestampError("Timestamp out of range: %r" % timestamp)


def checked_timestamp(value):
    """
    Epoch seconds of a log line, rejected unless they fall on a calendar day in UTC+8.
    :param value: Number or numeric string.
    :return: float
    """
    timestamp = float(value)
    if not timestamp > 0:
        raise TimestampError("Non-positive timestamp %r" % value)
    _cst_datetime(timestamp)
    return timestamp


@functools.total_ordering
class Quarter:
    """
    Calendar quarter in China Standard Time, written like 2020Q1.
    """

    __slots__ = ("year", "q")

    def __init__(self, year, q):
        if not 1 <= q <= 4:
            raise ValueError("Quarter number must be in 1..4, got %r" % q)
        self.year = int(year)
        self.q = int(q)

    @staticmethod
    def parse(text):
        """
        Parses a quarter id.
        :param text: String like "2020Q1".
        :return: Quarter
        """
        m = _QUARTER_RE.match(str(text).strip())
        if m is None:
            raise ValueError("Not a quarter id: %r" % text)
        return Quarter(int(m.group(1)), int(m.group(2)))

    @staticmethod
    def from_timestamp(timestamp):
        """
        Quarter containing a timestamp, in UTC+8.
        :param timestamp: Epoch seconds, must not be before 1970.
        :return: Quarter
        """
        if timestamp is None or timestamp < 0:
            raise TimestampError("Timestamp before 1970: %r" % timestamp)
        dt = _cst_datetime(timestamp)
        return Quarter(dt.year, (dt.month - 1) // 3 + 1)

    def next(self):
        if self.q == 4:
            return Quarter(self.year + 1, 1)
        return Quarter(self.year, self.q + 1)

    def start(self):
        """
        First instant of the quarter.
        :return: timezone-aware datetime in CST.
        """
        return datetime(self.year, 3 * (self.q - 1) + 1, 1, tzinfo=CST)

    def __eq__(self, other):
        return isinstance(other, Quarter) and (self.year, self.q) == (other.year, other.q)

    def __lt__(self, other):
        return (self.year, self.q) < (other.year, other.q)

    def __hash__(self):
        return hash((self.year, self.q))

    def __str__(self):
        return "%dQ%d" % (self.year, self.q)

    def __repr__(self):
        return "Quarter(" + str(self) + ")"


def quarter_of(timestamp):
    """
    Calendar quarter of a timestamp in China Standard Time.
    :param timestamp: Epoch seconds.
    :return: Quarter
    """
    return Quarter.from_timestamp(timestamp)


def cst_day(timestamp):
    """
    Calendar day of a timestamp in China Standard Time.
    :param timestamp: Epoch seconds.
    :return: String YYYY-MM-DD.
    """
    return _cst_datetime(timestamp).strftime("%Y-%m-%d")
