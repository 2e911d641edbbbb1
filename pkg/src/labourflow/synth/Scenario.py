import yaml

from labourflow.representations.Constants import SYNTH_MIN_COMMUNITY_RATIO, \
    SYNTH_TITLE_POOL_WORDS, TIERS
from labourflow.representations.Errors import ScenarioError
from labourflow.representations.Quarter import Quarter

SHARE_TOL = 1e-9

DEFAULT_CATEGORY_POOLS = {
    "white-collar": ["accountant", "analyst", "engineer", "programmer"],
    "manufacture": ["assembler", "welder", "machinist", "packer"],
    "express": ["courier", "parcel", "sorter", "logistics"],
    "passenger-transport": ["driver", "chauffeur", "taxi", "coach"],
}

DEFAULT_DEMAND_MIXTURE = {
    "T1": {"white-collar": 0.55, "manufacture": 0.15, "express": 0.2, "passenger-transport": 0.1},
    "NewT1": {"white-collar": 0.45, "manufacture": 0.25, "express": 0.2,
              "passenger-transport": 0.1},
    "T2": {"white-collar": 0.35, "manufacture": 0.35, "express": 0.18,
           "passenger-transport": 0.12},
    "T3": {"white-collar": 0.25, "manufacture": 0.45, "express": 0.15,
           "passenger-transport": 0.15},
    "T4": {"white-collar": 0.2, "manufacture": 0.5, "express": 0.12, "passenger-transport": 0.18},
    "T5": {"white-collar": 0.15, "manufacture": 0.55, "express": 0.1, "passenger-transport": 0.2},
}

DEFAULTS = {
    "seed": 0,
    "tiers": {"T1": 4, "NewT1": 6, "T2": 10, "T3": 10, "T4": 10, "T5": 12},
    "provinces": 6,
    "blackholes": {"C001": 400, "C002": 300, "C005": 200},
    "intra_intensity": 80.0,
    "inter_intensity": 10.0,
    "quarters": ["2019Q4", "2020Q1", "2020Q2", "2020Q3"],
    "quarter_scale": [1.0, 0.6, 1.1, 1.2],
    "ambiguous_districts": 4,
    "postings_per_city": {"T1": 1200, "NewT1": 800, "T2": 600, "T3": 450, "T4": 350, "T5": 300},
    "demand_mixture": DEFAULT_DEMAND_MIXTURE,
    "category_pools": DEFAULT_CATEGORY_POOLS,
    "category_groups": {"blue-collar": ["manufacture", "express", "passenger-transport"]},
    "generic_title_words": ["hiring", "urgent"],
    "stoplist": ["excellent", "generous"],
    "noise": {"non_job": 0.2, "province_only": 0.05, "same_city": 0.02, "out_of_grid": 0.01,
              "duplicates": 0.03, "title_only_destination": 0.1, "unclassified_postings": 0.01,
              "district_postings": 0.05, "unknown_city_postings": 10, "malformed_lines": 10},
    "kmeans_k": 8,
}


class Scenario:
    """
    Parameters of a synthetic corpus with planted ground truth: cities per tier, provinces (the
    planted communities), black holes with their per-quarter net inflow surplus, flow
    intensities, quarters and the job-category mixture of every tier.
    """

    def __init__(self, **params):
        unknown = set(params) - set(DEFAULTS)
        if unknown:
            raise ScenarioError("Unknown scenario field %s" % sorted(unknown)[0])
        values = dict(DEFAULTS)
        values.update(params)
        noise = dict(DEFAULTS["noise"])
        noise.update(params.get("noise") or {})
        values["noise"] = noise

        self.seed = int(values["seed"])
        self.tiers = dict((t, int(values["tiers"].get(t, 0))) for t in TIERS)
        self.n_provinces = int(values["provinces"])
        self.blackholes = dict((str(c), int(s)) for c, s in values["blackholes"].items())
        self.intra_intensity = float(values["intra_intensity"])
        self.inter_intensity = float(values["inter_intensity"])
        self.quarters = [Quarter.parse(q) for q in values["quarters"]]
        self.quarter_scale = [float(s) for s in values["quarter_scale"]]
        self.ambiguous_districts = int(values["ambiguous_districts"])
        self.postings_per_city = dict((t, int(values["postings_per_city"].get(t, 0)))
                                      for t in TIERS)
        self.demand_mixture = dict((t, dict(m)) for t, m in values["demand_mixture"].items())
        self.category_pools = dict((c, list(p)) for c, p in values["category_pools"].items())
        self.category_groups = dict((g, list(c)) for g, c in values["category_groups"].items())
        self.generic_title_words = list(values["generic_title_words"])
        self.stoplist = list(values["stoplist"])
        self.noise = noise
        self.kmeans_k = int(values["kmeans_k"])
        self.validate()

    @staticmethod
    def load(path):
        """
        :param path: YAML file with any subset of the scenario fields.
        :return: Scenario
        """
        with open(path, encoding="utf-8") as f:
            doc = yaml.safe_load(f) or {}
        if not isinstance(doc, dict):
            raise ScenarioError("%s: scenario must be a mapping" % path)
        return Scenario(**doc)

    @property
    def n_cities(self):
        return sum(self.tiers.values())

    @property
    def categories(self):
        return sorted(self.category_pools)

    def city_ids(self):
        return ["C%03d" % (i + 1) for i in range(self.n_cities)]

    def validate(self):
        """
        Raises ScenarioError on the first infeasible parameter.
        """
        if any(n < 0 for n in self.tiers.values()):
            raise ScenarioError("Negative city count in tiers")
        if self.n_cities < 2:
            raise ScenarioError("A scenario needs at least 2 cities")
        if not 1 <= self.n_provinces <= self.n_cities:
            raise ScenarioError("provinces must be between 1 and the number of cities")
        if self.inter_intensity < 0 or self.intra_intensity <= 0:
            raise ScenarioError("Flow intensities must be positive")
        if self.intra_intensity < SYNTH_MIN_COMMUNITY_RATIO * self.inter_intensity:
            raise ScenarioError("intra_intensity must be at least %g times inter_intensity" %
                                SYNTH_MIN_COMMUNITY_RATIO)
        if not self.quarters:
            raise ScenarioError("No quarter")
        if len(self.quarter_scale) != len(self.quarters):
            raise ScenarioError("quarter_scale needs one value per quarter")
        if any(s <= 0 for s in self.quarter_scale):
            raise ScenarioError("quarter_scale values must be positive")

        ids = set(self.city_ids())
        for city, surplus in self.blackholes.items():
            if city not in ids:
                raise ScenarioError("Black hole %s is not a scenario city" % city)
            if surplus <= 0:
                raise ScenarioError("Black hole %s needs a positive surplus" % city)

        categories = set(self.category_pools)
        if not categories:
            raise ScenarioError("No job category")
        for tier, n in self.tiers.items():
            if n == 0:
                continue
            mixture = self.demand_mixture.get(tier)
            if mixture is None:
                raise ScenarioError("No demand mixture for tier %s" % tier)
            if set(mixture) - categories:
                raise ScenarioError("Tier %s mixes unknown category %s" %
                                    (tier, sorted(set(mixture) - categories)[0]))
            if any(s < 0 for s in mixture.values()):
                raise ScenarioError("Negative share in the demand mixture of tier %s" % tier)
            if abs(sum(mixture.values()) - 1.0) > SHARE_TOL:
                raise ScenarioError("Demand mixture of tier %s sums to %r, not 1" %
                                    (tier, sum(mixture.values())))
            if self.postings_per_city.get(tier, 0) < 0:
                raise ScenarioError("Negative posting count for tier %s" % tier)

        for category, pool in self.category_pools.items():
            if len(set(pool)) < SYNTH_TITLE_POOL_WORDS:
                raise ScenarioError("Category %s needs at least %d keywords" %
                                    (category, SYNTH_TITLE_POOL_WORDS))
        words = [w for pool in self.category_pools.values() for w in pool]
        if len(set(words)) != len(words):
            raise ScenarioError("A keyword appears in two category pools")
        if any(len(w) < 2 or w != w.lower() or " " in w
               for w in words + self.generic_title_words + self.stoplist):
            raise ScenarioError("Title words must be lowercase single words of 2+ characters")

        for name in ("non_job", "province_only", "same_city", "out_of_grid", "duplicates",
                     "title_only_destination", "unclassified_postings", "district_postings"):
            if not 0 <= self.noise[name] < 1:
                raise ScenarioError("noise.%s must be in [0, 1)" % name)
        if self.noise["non_job"] + self.noise["province_only"] + self.noise["same_city"] + \
                self.noise["out_of_grid"] >= 1:
            raise ScenarioError("Query noise shares must sum to less than 1")
        if self.kmeans_k < len(categories):
            raise ScenarioError("kmeans_k must be at least the number of categories")

    def to_dict(self):
        return {
            "seed": self.seed,
            "tiers": self.tiers,
            "provinces": self.n_provinces,
            "blackholes": self.blackholes,
            "intra_intensity": self.intra_intensity,
            "inter_intensity": self.inter_intensity,
            "quarters": [str(q) for q in self.quarters],
            "quarter_scale": self.quarter_scale,
            "ambiguous_districts": self.ambiguous_districts,
            "postings_per_city": self.postings_per_city,
            "demand_mixture": self.demand_mixture,
            "category_pools": self.category_pools,
            "category_groups": self.category_groups,
            "generic_title_words": self.generic_title_words,
            "stoplist": self.stoplist,
            "noise": self.noise,
            "kmeans_k": self.kmeans_k,
        }
