import pandas as pd

from labourflow.tools.AtomicFile import atomic_path


def write_table(rows, columns, path, fmt="csv"):
    """
    Writes rows atomically, as CSV (undefined values left empty) or line-JSON (null).
    :param rows: Iterable of tuples.
    :param columns: Column names.
    :param path: Destination file.
    :param fmt: "csv" or "json".
    """
    df = pd.DataFrame([tuple(r) for r in rows], columns=columns)
    with atomic_path(path) as tmp:
        if fmt == "json":
            df.to_json(tmp, orient="records", lines=True, double_precision=15, force_ascii=False)
        else:
            df.to_csv(tmp, index=False, lineterminator="\n", float_format="%.12g", na_rep="")


def read_table(path):
    """
    :param path: CSV file written by write_table.
    :return: pandas.DataFrame, text columns kept as strings.
    """
    return pd.read_csv(path, keep_default_na=False, dtype=str)
