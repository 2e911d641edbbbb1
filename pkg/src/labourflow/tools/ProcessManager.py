import multiprocessing
import os
import signal

import psutil

from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)


def default_workers():
    """
    Number of physical cores, 1 when it cannot be detected.
    :return: int
    """
    return psutil.cpu_count(logical=False) or 1


class ProcessManager:
    """
    Cleans up the worker processes spawned by a process.
    """

    def __init__(self, pid=None):
        self.pid = pid if pid is not None else os.getpid()

    def close_all_child(self):
        """
        Sends SIGTERM to every child process, recursively.
        """
        try:
            children = psutil.Process(self.pid).children(recursive=True)
        except psutil.NoSuchProcess:
            return

        for child in children:
            try:
                os.kill(child.pid, signal.SIGTERM)
            except OSError:
                pass
        psutil.wait_procs(children, timeout=5)


class WorkerPool:
    """
    Maps a function over work items, in worker processes when more than one worker is
    configured. Results always come back in item order, whatever the scheduling.
    """

    def __init__(self, workers=1, initializer=None, initargs=()):
        """
        :param workers: Maximum number of processes. 1 runs everything inline.
        :param initializer: Function called once per worker before any item.
        :param initargs: Arguments of the initializer.
        """
        self.__workers = max(1, int(workers))
        self.__initializer = initializer
        self.__initargs = initargs

    @property
    def workers(self):
        return self.__workers

    def map(self, func, items):
        """
        Applies func to every item.
        :param func: Picklable top-level function.
        :param items: List of picklable items.
        :return: List of results, same order as items.
        """
        items = list(items)
        processes = min(self.__workers, len(items))
        if processes <= 1:
            if self.__initializer is not None:
                self.__initializer(*self.__initargs)
            return [func(item) for item in items]

        logger.debug("Starting %d worker processes for %d items", processes, len(items))
        pool = multiprocessing.Pool(processes, self.__initializer, self.__initargs)
        try:
            results = pool.map(func, items, chunksize=1)
            pool.close()
            return results
        except BaseException:
            pool.terminate()
            ProcessManager().close_all_child()
            raise
        finally:
            pool.join()
