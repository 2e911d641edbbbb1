import json

from labourflow.ingest.Diagnostics import LINES_READ, MALFORMED, POSTINGS_MALFORMED, \
    POSTINGS_READ, POSTINGS_UNKNOWN_CITY
from labourflow.representations.JobPosting import JobPosting
from labourflow.representations.QueryRecord import QueryRecord
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)

QUERY_COLUMNS = ["timestamp", "lat", "lon", "query_text", "clicked_title"]
POSTING_COLUMNS = ["publish_timestamp", "working_city", "title", "description"]

PARSE_ERRORS = (ValueError, KeyError, TypeError)


def _split_line(line, columns):
    """
    Reads a line-JSON object, or a tab-separated line with the given columns. A missing or empty
    last column is read as None.
    """
    line = line.rstrip("\r\n")
    if line.lstrip().startswith("{"):
        d = json.loads(line)
        if not isinstance(d, dict):
            raise ValueError("Not a JSON object")
        return d
    fields = line.split("\t")
    if len(fields) == len(columns) - 1:
        fields.append("")
    if len(fields) != len(columns):
        raise ValueError("Expected %d tab-separated fields, got %d" % (len(columns), len(fields)))
    d = dict(zip(columns, fields))
    if d[columns[-1]] == "":
        d[columns[-1]] = None
    return d


def parse_query_line(line):
    """
    :param line: One query-log line, line-JSON or tab-separated.
    :return: QueryRecord
    """
    return QueryRecord.from_dict(_split_line(line, QUERY_COLUMNS))


def parse_posting_line(line, default_id=None):
    """
    :param line: One posting line, line-JSON or tab-separated.
    :param default_id: Posting id when the line has none.
    :return: JobPosting
    """
    return JobPosting.from_dict(_split_line(line, POSTING_COLUMNS), default_id)


def read_lines(path):
    """
    Non-blank lines of a file with their 1-based line numbers.
    :param path: File path.
    :return: List of (line_number, line).
    """
    with open(path, encoding="utf-8") as f:
        return [(i, line) for i, line in enumerate(f, 1) if line.strip()]


def read_query_log(path, diagnostics=None):
    """
    Parses a query log, skipping malformed lines.
    :param path: Query-log path.
    :param diagnostics: Optional Diagnostics.
    :return: Generator of QueryRecord.
    """
    for line_number, line in read_lines(path):
        if diagnostics is not None:
            diagnostics.add(LINES_READ)
        try:
            yield parse_query_line(line)
        except PARSE_ERRORS as e:
            logger.debug("%s:%d: skipped malformed query (%s)", path, line_number, e)
            if diagnostics is not None:
                diagnostics.add(MALFORMED)


def read_postings(path, registry, diagnostics=None):
    """
    Parses a posting file. Malformed lines and postings in cities missing from the registry are
    skipped and counted. Postings in a district are moved to its city.
    :param path: Posting file path.
    :param registry: Registry.
    :param diagnostics: Optional Diagnostics.
    :return: List of JobPosting, in file order.
    """
    postings = []
    for line_number, line in read_lines(path):
        if diagnostics is not None:
            diagnostics.add(POSTINGS_READ)
        try:
            posting = parse_posting_line(line, default_id=str(line_number))
        except PARSE_ERRORS as e:
            logger.debug("%s:%d: skipped malformed posting (%s)", path, line_number, e)
            if diagnostics is not None:
                diagnostics.add(POSTINGS_MALFORMED)
            continue
        city = registry.city_of(posting.working_city) if posting.working_city in registry else None
        if city is None:
            logger.debug("%s:%d: skipped posting in unknown city %s", path, line_number,
                         posting.working_city)
            if diagnostics is not None:
                diagnostics.add(POSTINGS_UNKNOWN_CITY)
            continue
        postings.append(posting._replace(working_city=city))
    return postings
