import copy
import os

import yaml

from labourflow.representations.Constants import DEFAULT_JOB_KEYWORDS, DICTIONARY_MIN_FREQ, \
    DICTIONARY_TOP_DROP, GROUPINGS, HITS_MAX_ITER, HITS_TOL, KMEANS_MAX_ITER, KMEANS_SEED, \
    KMEANS_TOL, LOUVAIN_RESOLUTION, LOUVAIN_SEED, REPORT_FORMATS
from labourflow.representations.Quarter import Quarter
from labourflow.tools.pipeline.StageInputs import missing_checkpoints

DEFAULTS = {
    "paths": {"registry": None, "queries": None, "postings": None, "indicators": None,
              "output": "output"},
    "ingest": {"keywords": list(DEFAULT_JOB_KEYWORDS), "dedup": True},
    "quarters": [],
    "hits": {"tol": HITS_TOL, "max_iter": HITS_MAX_ITER, "top_k": 0},
    "louvain": {"resolutions": [LOUVAIN_RESOLUTION], "seed": LOUVAIN_SEED},
    "dictionary": {"min_freq": DICTIONARY_MIN_FREQ, "top_drop": DICTIONARY_TOP_DROP,
                   "stoplist": None},
    "kmeans": {"k": None, "seed": KMEANS_SEED, "max_iter": KMEANS_MAX_ITER, "tol": KMEANS_TOL,
               "labels": None, "label_pools": None},
    "demand": {"groupings": list(GROUPINGS), "category_groups": {}},
    "report": {"formats": ["csv"], "quarter_pairs": [], "indicator": None,
               "correlate_quarter": None},
    "workers": 1,
}

# Paths resolved against the configuration file's directory
PATH_FIELDS = [("paths", "registry"), ("paths", "queries"), ("paths", "postings"),
               ("paths", "indicators"), ("paths", "output"), ("dictionary", "stoplist"),
               ("kmeans", "labels")]


def _merge(defaults, values, prefix=""):
    unknown = set(values) - set(defaults)
    if unknown:
        raise ValueError("Unknown configuration field %s%s" % (prefix, sorted(unknown)[0]))
    merged = copy.deepcopy(defaults)
    for key, value in values.items():
        if isinstance(defaults[key], dict) and defaults[key] and isinstance(value, dict):
            merged[key] = _merge(defaults[key], value, prefix + key + ".")
        else:
            merged[key] = value
    return merged


class PipelineConfig:
    """
    Pipeline configuration, read from YAML. Fields are grouped by stage (paths, ingest, hits,
    louvain, dictionary, kmeans, demand, report) and missing ones take their default value.

    Usage:
        config = PipelineConfig.load("pipeline.yaml")
        problems = config.validate()
    """

    def __init__(self, values=None, base_dir="."):
        """
        :param values: Nested dict of configuration values.
        :param base_dir: Directory relative paths are resolved against.
        """
        self.__values = _merge(DEFAULTS, values or {})
        self.__base_dir = os.path.abspath(base_dir)
        for section, key in PATH_FIELDS:
            path = self.__values[section][key]
            if path is not None:
                self.__values[section][key] = os.path.normpath(
                    os.path.join(self.__base_dir, str(path)))

    @staticmethod
    def load(path):
        """
        :param path: YAML file.
        :return: PipelineConfig
        """
        with open(path, encoding="utf-8") as f:
            doc = yaml.safe_load(f) or {}
        if not isinstance(doc, dict):
            raise ValueError("%s: configuration must be a mapping" % path)
        return PipelineConfig(doc, os.path.dirname(os.path.abspath(path)))

    def override(self, workers=None, output=None, formats=None):
        """
        Applies command-line overrides. Relative paths are taken from the current directory.
        """
        if workers is not None:
            self.__values["workers"] = workers
        if output is not None:
            self.__values["paths"]["output"] = os.path.abspath(output)
        if formats is not None:
            self.__values["report"]["formats"] = list(formats)
        return self

    def get(self, section, key=None):
        """
        :param section: Section name, e.g. "hits".
        :param key: Field of the section, the whole section if None.
        """
        if key is None:
            return self.__values[section]
        return self.__values[section][key]

    def path(self, key):
        return self.__values["paths"][key]

    @property
    def output_dir(self):
        return self.__values["paths"]["output"]

    @property
    def workers(self):
        return self.__values["workers"]

    def quarters(self):
        """
        :return: Configured quarters, sorted, or None to take every quarter of the data.
        """
        quarters = self.__values["quarters"]
        if not quarters:
            return None
        return sorted(Quarter.parse(q) for q in quarters)

    def quarter_pairs(self):
        return [(Quarter.parse(a), Quarter.parse(b)) for a, b in
                self.__values["report"]["quarter_pairs"]]

    def validate(self, stages=None):
        """
        Checks paths, parameter ranges and the checkpoints read from earlier runs.
        :param stages: Stages about to run; input files of other stages are not required.
        :return: List of problems, each naming the offending field. Empty when valid.
        """
        problems = []
        v = self.__values
        stages = set(stages) if stages is not None else None

        def needs(*names):
            return stages is None or bool(stages & set(names))

        required = [("registry", True), ("queries", needs("ingest")),
                    ("postings", needs("ingest")),
                    ("indicators", needs("correlate") and v["report"]["indicator"] is not None)]
        for key, is_required in required:
            path = v["paths"][key]
            if path is None:
                if is_required:
                    problems.append("paths.%s: missing" % key)
            elif is_required and not os.path.isfile(path):
                problems.append("paths.%s: file %s does not exist" % (key, path))
        for section, key in [("dictionary", "stoplist"), ("kmeans", "labels")]:
            path = v[section][key]
            if path is not None and not os.path.isfile(path):
                problems.append("%s.%s: file %s does not exist" % (section, key, path))

        keywords = v["ingest"]["keywords"]
        if not isinstance(keywords, list) or not [k for k in keywords if k]:
            problems.append("ingest.keywords: must be a non-empty list")
        if not isinstance(v["ingest"]["dedup"], bool):
            problems.append("ingest.dedup: must be true or false")

        for q in v["quarters"] or []:
            if not _is_quarter(q):
                problems.append("quarters: %r is not a quarter like 2020Q1" % (q,))

        if not _is_number(v["hits"]["tol"]) or not v["hits"]["tol"] > 0:
            problems.append("hits.tol: must be > 0")
        if not _is_int(v["hits"]["max_iter"]) or v["hits"]["max_iter"] < 1:
            problems.append("hits.max_iter: must be an integer >= 1")
        if not _is_int(v["hits"]["top_k"]) or v["hits"]["top_k"] < 0:
            problems.append("hits.top_k: must be an integer >= 0")

        resolutions = v["louvain"]["resolutions"]
        if not isinstance(resolutions, list) or not resolutions or \
                not all(_is_number(r) and r > 0 for r in resolutions):
            problems.append("louvain.resolutions: must be a non-empty list of numbers > 0")
        if not _is_int(v["louvain"]["seed"]):
            problems.append("louvain.seed: must be an integer")

        if not _is_int(v["dictionary"]["min_freq"]) or v["dictionary"]["min_freq"] < 1:
            problems.append("dictionary.min_freq: must be an integer >= 1")
        if not _is_int(v["dictionary"]["top_drop"]) or v["dictionary"]["top_drop"] < 0:
            problems.append("dictionary.top_drop: must be an integer >= 0")

        k = v["kmeans"]["k"]
        if needs("demand") and (not _is_int(k) or k < 1):
            problems.append("kmeans.k: must be an integer >= 1")
        if not _is_int(v["kmeans"]["seed"]):
            problems.append("kmeans.seed: must be an integer")
        if not _is_int(v["kmeans"]["max_iter"]) or v["kmeans"]["max_iter"] < 1:
            problems.append("kmeans.max_iter: must be an integer >= 1")
        if not _is_number(v["kmeans"]["tol"]) or v["kmeans"]["tol"] < 0:
            problems.append("kmeans.tol: must be >= 0")
        pools = v["kmeans"]["label_pools"]
        if pools is not None and (not isinstance(pools, dict) or not pools):
            problems.append("kmeans.label_pools: must be a mapping category -> keywords")

        groupings = v["demand"]["groupings"]
        if not isinstance(groupings, list) or not groupings or \
                any(g not in GROUPINGS for g in groupings):
            problems.append("demand.groupings: must be a non-empty subset of %s" %
                            ", ".join(GROUPINGS))
        if not isinstance(v["demand"]["category_groups"], dict):
            problems.append("demand.category_groups: must be a mapping")

        formats = v["report"]["formats"]
        if not isinstance(formats, list) or not formats or \
                any(f not in REPORT_FORMATS for f in formats):
            problems.append("report.formats: must be a non-empty subset of %s" %
                            ", ".join(REPORT_FORMATS))
        pairs = v["report"]["quarter_pairs"]
        if not isinstance(pairs, list) or \
                not all(isinstance(p, list) and len(p) == 2 and all(_is_quarter(q) for q in p)
                        for p in pairs):
            problems.append("report.quarter_pairs: must be a list of [quarter, quarter] pairs")
        cq = v["report"]["correlate_quarter"]
        if cq is not None and not _is_quarter(cq):
            problems.append("report.correlate_quarter: %r is not a quarter" % (cq,))

        if not _is_int(v["workers"]) or v["workers"] < 1:
            problems.append("workers: must be an integer >= 1")
        # Needs a valid output directory and groupings
        if not problems:
            for path, producer in missing_checkpoints(self, stages):
                problems.append("checkpoints: %s does not exist, run stage %s first" %
                                (path, producer))
        return problems

    def to_dict(self):
        return copy.deepcopy(self.__values)


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_quarter(value):
    try:
        Quarter.parse(value)
        return True
    except ValueError:
        return False
