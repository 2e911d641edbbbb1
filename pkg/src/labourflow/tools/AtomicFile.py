import contextlib
import os
import tempfile


@contextlib.contextmanager
def atomic_path(path):
    """
    Yields a temporary path in the directory of path. On a clean exit the temporary file
    replaces path; on an exception it is removed and path is left untouched.

    Usage:
        with atomic_path("out/metrics.csv") as tmp:
            df.to_csv(tmp)
    :param path: Final destination.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix="." + os.path.basename(path) + ".", suffix=".tmp",
                               dir=directory)
    os.close(fd)
    try:
        yield tmp
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def write_text(path, text):
    """
    Atomically writes a whole text file in UTF-8.
    :param path: Destination.
    :param text: Content.
    """
    with atomic_path(path) as tmp:
        with open(tmp, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
