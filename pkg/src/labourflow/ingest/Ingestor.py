from labourflow.ingest.Deduplicator import dedup_key
from labourflow.ingest.Diagnostics import Diagnostics, DUPLICATES, FILTERED_NON_JOB, INTENTS, \
    LINES_READ, MALFORMED
from labourflow.ingest.FlowExtractor import resolve_record
from labourflow.ingest.LogReader import PARSE_ERRORS, parse_query_line, read_lines, read_postings
from labourflow.ingest.QueryFilter import is_job_query
from labourflow.matching.PlaceDictionary import PlaceDictionary
from labourflow.representations.Constants import DEFAULT_JOB_KEYWORDS
from labourflow.representations.FlowIntent import FlowIntent
from labourflow.tools.Logger import get_logger
from labourflow.tools.ProcessManager import WorkerPool

logger = get_logger(__name__)

# Per-process state, set by _init_worker
_state = {}

PARTITIONS_PER_WORKER = 4


def _init_worker(registry, keywords):
    _state["registry"] = registry
    _state["dictionary"] = PlaceDictionary.build(registry)
    _state["keywords"] = keywords


def _process_partition(lines):
    """
    Parses, filters, locates and resolves one partition of the query log. Deduplication needs
    the whole log and is left to the caller.
    :param lines: List of (line_number, line).
    :return: (list of (dedup key, FlowIntent or drop counter name), Diagnostics)
    """
    registry = _state["registry"]
    dictionary = _state["dictionary"]
    keywords = _state["keywords"]
    diagnostics = Diagnostics()
    outcomes = []
    for line_number, line in lines:
        diagnostics.add(LINES_READ)
        try:
            record = parse_query_line(line)
        except PARSE_ERRORS as e:
            logger.debug("line %d: skipped malformed query (%s)", line_number, e)
            diagnostics.add(MALFORMED)
            continue
        if not is_job_query(record, keywords):
            diagnostics.add(FILTERED_NON_JOB)
            continue
        origin = registry.locate_point(record.location)
        outcomes.append((dedup_key(record, origin),
                         resolve_record(record, origin, registry, dictionary)))
    return outcomes, diagnostics


def partition(items, n):
    """
    Splits a list into at most n contiguous chunks of near-equal size.
    :param items: List.
    :param n: Number of chunks, at least 1.
    :return: List of lists, none empty.
    """
    n = max(1, min(n, len(items)))
    size, extra = divmod(len(items), n)
    chunks = []
    start = 0
    for i in range(n):
        end = start + size + (1 if i < extra else 0)
        if end > start:
            chunks.append(items[start:end])
        start = end
    return chunks


class Ingestor:
    """
    Turns a raw query log into flow intents and a raw posting file into normalized postings.
    Query partitions are processed in parallel and merged in file order, so the output never
    depends on the number of workers.
    """

    def __init__(self, registry, keywords=None, dedup=True, workers=1):
        """
        :param registry: Registry.
        :param keywords: Job keywords, the default Chinese ones if None.
        :param dedup: Whether duplicated queries are collapsed.
        :param workers: Number of worker processes.
        """
        self.__registry = registry
        self.__keywords = list(keywords) if keywords else list(DEFAULT_JOB_KEYWORDS)
        self.__dedup = dedup
        self.__workers = max(1, int(workers))

    @property
    def keywords(self):
        return self.__keywords

    def ingest_queries(self, path):
        """
        :param path: Query-log path.
        :return: (list of FlowIntent in file order, Diagnostics)
        """
        lines = read_lines(path)
        logger.info("Read %d query lines from %s", len(lines), path)
        pool = WorkerPool(self.__workers, _init_worker, (self.__registry, self.__keywords))
        results = pool.map(_process_partition,
                           partition(lines, self.__workers * PARTITIONS_PER_WORKER))
        return self.merge(results)

    def merge(self, results):
        """
        Merges partition results in order, deduplicating across partitions.
        :param results: List of (outcomes, Diagnostics) as returned by the partition workers.
        :return: (list of FlowIntent, Diagnostics)
        """
        diagnostics = Diagnostics()
        intents = []
        seen = set()
        for outcomes, partial in results:
            diagnostics.merge(partial)
            for key, outcome in outcomes:
                if self.__dedup:
                    if key in seen:
                        diagnostics.add(DUPLICATES)
                        continue
                    seen.add(key)
                if isinstance(outcome, FlowIntent):
                    diagnostics.add(INTENTS)
                    intents.append(outcome)
                else:
                    diagnostics.add(outcome)
        return intents, diagnostics

    def ingest_postings(self, path):
        """
        :param path: Posting file path.
        :return: (list of JobPosting, Diagnostics)
        """
        diagnostics = Diagnostics()
        postings = read_postings(path, self.__registry, diagnostics)
        logger.info("Read %d valid postings from %s", len(postings), path)
        return postings, diagnostics
