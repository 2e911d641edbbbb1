class RegistryError(ValueError):
    """
    Registry or indicator file could not be parsed, or a city breaks a registry invariant.
    """
    pass


class CoordinateError(ValueError):
    """
    Latitude or longitude outside its valid range.
    """
    pass


class UnknownCityError(KeyError):
    """
    A city id that does not exist in the registry.
    """
    pass


class EmptyDictionaryError(ValueError):
    """
    A place or keyword dictionary ended up with no entries.
    """
    pass


class TimestampError(ValueError):
    pass


class MixedQuarterError(ValueError):
    pass


class UndefinedRatioError(ZeroDivisionError):
    """
    Increase ratio asked for with a zero baseline.
    """
    pass


class UndefinedModularityError(ValueError):
    pass


class UndefinedCorrelationError(ValueError):
    """
    Correlation asked for on samples that are too small or have zero variance.
    """
    pass


class ClusteringError(ValueError):
    pass


class ScenarioError(ValueError):
    pass


class MissingCheckpointError(RuntimeError):
    """
    A stage needs the output of an upstream stage that was never produced.
    """

    def __init__(self, stage, path):
        """
        :param stage: Name of the stage that produces the missing file.
        :param path: Path of the missing checkpoint.
        """
        RuntimeError.__init__(self, "Missing checkpoint %s, run the '%s' stage first" %
                              (path, stage))
        self.stage = stage
        self.path = path
