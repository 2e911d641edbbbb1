import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def get_logger(name):
    """
    Module logger. Handlers are only installed by configure_logging, so library users keep
    control of the output.
    :param name: Usually __name__.
    :return: logging.Logger
    """
    return logging.getLogger(name)


def configure_logging(quiet=False, stream=None):
    """
    Sets up the root "labourflow" logger for command-line use.
    :param quiet: If True, only warnings and errors are shown.
    :param stream: Output stream, stderr by default.
    """
    logger = logging.getLogger("labourflow")
    logger.handlers = []
    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(logging.WARNING if quiet else logging.INFO)
    logger.propagate = False
