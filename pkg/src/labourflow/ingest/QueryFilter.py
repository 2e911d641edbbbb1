from labourflow.ingest.Diagnostics import FILTERED_NON_JOB
from labourflow.representations.Constants import DEFAULT_JOB_KEYWORDS


def is_job_query(record, keywords):
    """
    True if a keyword appears in the query text or in the clicked title.
    :param record: QueryRecord.
    :param keywords: Non-empty list of strings.
    :return: bool
    """
    title = record.clicked_title or ""
    for keyword in keywords:
        if keyword in record.query_text or keyword in title:
            return True
    return False


def filter_job_queries(records, keywords=None, diagnostics=None):
    """
    Keeps the job-search queries of a stream.
    :param records: Iterable of QueryRecord.
    :param keywords: Job keywords, the two Chinese job-search words by default.
    :param diagnostics: Optional Diagnostics counting the dropped records.
    :return: Generator of QueryRecord.
    """
    if keywords is None:
        keywords = DEFAULT_JOB_KEYWORDS
    keywords = [k for k in keywords if k]
    if not keywords:
        raise ValueError("Keyword list is empty")

    for record in records:
        if is_job_query(record, keywords):
            yield record
        elif diagnostics is not None:
            diagnostics.add(FILTERED_NON_JOB)
