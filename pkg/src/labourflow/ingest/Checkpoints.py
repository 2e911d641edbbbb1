import pandas as pd

from labourflow.representations.FlowIntent import FlowIntent
from labourflow.representations.JobPosting import JobPosting
from labourflow.representations.Quarter import Quarter
from labourflow.tools.AtomicFile import atomic_path

INTENT_COLUMNS = list(FlowIntent._fields)
POSTING_COLUMNS = list(JobPosting._fields)


def _read_csv(path):
    # Every column as text; "NA" in a title stays a title
    return pd.read_csv(path, dtype=str, keep_default_na=False)


def save_flow_intents(intents, path):
    """
    Writes the flow-intent checkpoint (origin, destination, quarter), atomically.
    :param intents: Iterable of FlowIntent.
    :param path: Destination CSV.
    """
    df = pd.DataFrame([(i.origin, i.destination, str(i.quarter)) for i in intents],
                      columns=INTENT_COLUMNS)
    with atomic_path(path) as tmp:
        df.to_csv(tmp, index=False, lineterminator="\n")


def load_flow_intents(path):
    """
    :param path: Flow-intent CSV.
    :return: List of FlowIntent.
    """
    df = _read_csv(path)
    quarters = {}
    intents = []
    for origin, destination, quarter in zip(df["origin"], df["destination"], df["quarter"]):
        if quarter not in quarters:
            quarters[quarter] = Quarter.parse(quarter)
        intents.append(FlowIntent(origin, destination, quarters[quarter]))
    return intents


def save_postings(postings, path):
    """
    Writes normalized postings, atomically.
    :param postings: Iterable of JobPosting.
    :param path: Destination CSV.
    """
    df = pd.DataFrame([tuple(p) for p in postings], columns=POSTING_COLUMNS)
    with atomic_path(path) as tmp:
        df.to_csv(tmp, index=False, lineterminator="\n", float_format="%.3f")


def load_postings(path):
    """
    :param path: Posting CSV written by save_postings.
    :return: List of JobPosting.
    """
    df = _read_csv(path)
    return [JobPosting(row.posting_id, float(row.publish_timestamp), row.working_city, row.title,
                       row.description)
            for row in df.itertuples(index=False)]
