import math

import pandas as pd

from labourflow.representations.Errors import RegistryError
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)


class IndicatorTable:
    """
    Per-city economic indicators (e.g. GDP-2020), read from (city_id, name, value) rows.
    """

    def __init__(self, values=None):
        """
        :param values: Dict name -> dict city_id -> float.
        """
        self.__values = values if values is not None else {}

    @staticmethod
    def load(path, registry=None):
        """
        Reads an indicator CSV file with header city_id,name,value.
        :param path: Path of the file.
        :param registry: If given, every city id must exist in it.
        :return: IndicatorTable
        """
        try:
            df = pd.read_csv(path, dtype={"city_id": str, "name": str})
        except (ValueError, OSError) as e:
            raise RegistryError("%s: cannot parse indicator file (%s)" % (path, e))
        missing = {"city_id", "name", "value"} - set(df.columns)
        if missing:
            raise RegistryError("%s: missing columns %s" % (path, ", ".join(sorted(missing))))

        values = {}
        for i, row in enumerate(df.itertuples(index=False), 2):
            try:
                value = float(row.value)
            except (TypeError, ValueError):
                raise RegistryError("%s:%d: value %r is not a number" % (path, i, row.value))
            if not math.isfinite(value):
                raise RegistryError("%s:%d: value is not finite" % (path, i))
            if registry is not None and row.city_id not in registry:
                raise RegistryError("%s:%d: unknown city %s" % (path, i, row.city_id))
            values.setdefault(row.name, {})[row.city_id] = value

        logger.info("Loaded %d indicator rows from %s", len(df), path)
        return IndicatorTable(values)

    def names(self):
        return sorted(self.__values)

    def get(self, name):
        """
        Values of one indicator.
        :param name: Indicator name.
        :return: Dict city_id -> float.
        """
        if name not in self.__values:
            raise KeyError("Unknown indicator %r" % name)
        return self.__values[name]
