from labourflow.ingest.Diagnostics import DUPLICATES
from labourflow.representations.Quarter import cst_day


def dedup_key(record, origin):
    """
    Two queries are duplicates when they share the CST day, the query text, the clicked title
    and the located city.
    :param record: QueryRecord.
    :param origin: City id the record was located in, or None.
    :return: Hashable tuple.
    """
    return cst_day(record.timestamp), record.query_text, record.clicked_title, origin


def dedup(records, registry, diagnostics=None):
    """
    Collapses duplicated queries, keeping the first occurrence in input order.
    :param records: Iterable of QueryRecord.
    :param registry: Registry used to locate each query.
    :param diagnostics: Optional Diagnostics counting the removed records.
    :return: Generator of QueryRecord.
    """
    seen = set()
    for record in records:
        key = dedup_key(record, registry.locate_point(record.location))
        if key in seen:
            if diagnostics is not None:
                diagnostics.add(DUPLICATES)
            continue
        seen.add(key)
        yield record
