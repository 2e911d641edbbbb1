import pandas as pd

from labourflow.demand.ClusterModel import assign_category
from labourflow.ingest.Diagnostics import POSTINGS_UNKNOWN_CITY
from labourflow.flow_graph.FlowAnalysis import increase_ratio
from labourflow.representations.Constants import COUNTRY_GROUP, GROUPINGS, UNCLASSIFIED
from labourflow.representations.Errors import UndefinedRatioError
from labourflow.representations.Quarter import Quarter, quarter_of
from labourflow.tools.AtomicFile import atomic_path
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)

SERIES_COLUMNS = ["quarter", "group", "category", "count"]
UNTIERED = "untiered"


def group_of(city, grouping):
    """
    Group a city falls into.
    :param city: City.
    :param grouping: "tier", "city", "region" (province) or "country".
    :return: Group name.
    """
    if grouping == "tier":
        return city.tier or UNTIERED
    if grouping == "city":
        return city.id
    if grouping == "region":
        return city.province_id
    if grouping == "country":
        return COUNTRY_GROUP
    raise ValueError("Unknown grouping %r, expected one of %s" % (grouping, ", ".join(GROUPINGS)))


class DemandSeries:
    """
    Job posting counts per (quarter, group, category). Unclassified postings are kept out of
    the cells and counted per (quarter, group), so cells plus unclassified add up to the input.
    """

    def __init__(self, grouping, cells=None, unclassified=None):
        """
        :param grouping: Grouping name.
        :param cells: Dict (Quarter, group, category) -> count.
        :param unclassified: Dict (Quarter, group) -> count.
        """
        if grouping not in GROUPINGS:
            raise ValueError("Unknown grouping %r" % grouping)
        self.grouping = grouping
        self.__cells = dict((key, n) for key, n in (cells or {}).items() if n)
        self.__unclassified = dict((key, n) for key, n in (unclassified or {}).items() if n)
        if any(n < 0 for n in self.__cells.values()) or \
                any(n < 0 for n in self.__unclassified.values()):
            raise ValueError("Negative posting count")

    @staticmethod
    def from_categories(postings, categories, registry, grouping, diagnostics=None):
        """
        Counts already classified postings.
        :param postings: Iterable of JobPosting.
        :param categories: Category of each posting, same order.
        :param registry: Registry.
        :param grouping: Grouping name.
        :param diagnostics: Optional Diagnostics counting postings in unknown cities.
        :return: DemandSeries
        """
        cells = {}
        unclassified = {}
        for posting, category in zip(postings, categories):
            if posting.working_city not in registry:
                if diagnostics is not None:
                    diagnostics.add(POSTINGS_UNKNOWN_CITY)
                logger.debug("Posting %s in unknown city %s skipped", posting.posting_id,
                             posting.working_city)
                continue
            group = group_of(registry.get(posting.working_city), grouping)
            quarter = quarter_of(posting.publish_timestamp)
            if category == UNCLASSIFIED:
                unclassified[(quarter, group)] = unclassified.get((quarter, group), 0) + 1
            else:
                key = (quarter, group, category)
                cells[key] = cells.get(key, 0) + 1
        return DemandSeries(grouping, cells, unclassified)

    @property
    def cells(self):
        return self.__cells

    def count(self, quarter, group, category):
        return self.__cells.get((quarter, group, category), 0)

    def unclassified(self, quarter, group=None):
        """
        Unclassified postings of a quarter, in one group or all of them.
        """
        return sum(n for (q, g), n in self.__unclassified.items()
                   if q == quarter and (group is None or g == group))

    def quarters(self):
        return sorted(set(q for q, _, _ in self.__cells) | set(q for q, _ in self.__unclassified))

    def groups(self):
        return sorted(set(g for _, g, _ in self.__cells) | set(g for _, g in self.__unclassified))

    def categories(self):
        return sorted(set(c for _, _, c in self.__cells))

    def total(self, quarter, group=None):
        """
        Classified postings of a quarter, in one group or all of them.
        """
        return sum(n for (q, g, _), n in self.__cells.items()
                   if q == quarter and (group is None or g == group))

    def category_share(self, quarter, group):
        """
        :return: Dict category -> fraction of the group's classified postings in that quarter.
        """
        counts = dict((c, n) for (q, g, c), n in self.__cells.items()
                      if q == quarter and g == group)
        total = sum(counts.values())
        if total == 0:
            raise ValueError("No classified posting for group %s in %s" % (group, quarter))
        return dict((c, counts[c] / total) for c in sorted(counts))

    def group_share(self, quarter, category):
        """
        :return: Dict group -> fraction of the category's postings held by that group.
        """
        counts = dict((g, n) for (q, g, c), n in self.__cells.items()
                      if q == quarter and c == category)
        total = sum(counts.values())
        if total == 0:
            raise ValueError("No posting of category %s in %s" % (category, quarter))
        return dict((g, counts[g] / total) for g in sorted(counts))

    def rollup(self, category_groups):
        """
        Merges categories into super-categories, e.g. blue-collar = manufacture + express.
        Categories outside every group keep their own name.
        :param category_groups: Dict super-category -> list of categories.
        :return: DemandSeries
        """
        parent = {}
        for name, members in category_groups.items():
            for member in members:
                if member in parent:
                    raise ValueError("Category %s in two groups" % member)
                parent[member] = name
        cells = {}
        for (q, g, c), n in self.__cells.items():
            key = (q, g, parent.get(c, c))
            cells[key] = cells.get(key, 0) + n
        return DemandSeries(self.grouping, cells, self.__unclassified)

    def increase_ratios(self, t1, t2):
        """
        Per (group, category) increase ratio of posting counts, None for a zero baseline.
        :return: Dict (group, category) -> float or None.
        """
        keys = sorted(set((g, c) for q, g, c in self.__cells if q in (t1, t2)))
        ratios = {}
        for g, c in keys:
            try:
                ratios[(g, c)] = increase_ratio(self.count(t1, g, c), self.count(t2, g, c))
            except UndefinedRatioError:
                ratios[(g, c)] = None
        return ratios

    def rows(self):
        """
        Sorted (quarter, group, category, count) rows, unclassified counts included.
        """
        rows = [(str(q), g, c, n) for (q, g, c), n in self.__cells.items()]
        rows += [(str(q), g, UNCLASSIFIED, n) for (q, g), n in self.__unclassified.items()]
        return sorted(rows, key=lambda r: (Quarter.parse(r[0]), r[1], r[2]))

    def save(self, path, fmt="csv"):
        df = pd.DataFrame(self.rows(), columns=SERIES_COLUMNS)
        with atomic_path(path) as tmp:
            if fmt == "json":
                df.to_json(tmp, orient="records", lines=True, force_ascii=False)
            else:
                df.to_csv(tmp, index=False, lineterminator="\n")

    @staticmethod
    def load(path, grouping):
        df = pd.read_csv(path, dtype={"quarter": str, "group": str, "category": str},
                         keep_default_na=False)
        cells = {}
        unclassified = {}
        for quarter, group, category, count in zip(df["quarter"], df["group"], df["category"],
                                                   df["count"]):
            quarter = Quarter.parse(quarter)
            if category == UNCLASSIFIED:
                unclassified[(quarter, group)] = int(count)
            else:
                cells[(quarter, group, category)] = int(count)
        return DemandSeries(grouping, cells, unclassified)


def demand_series(postings, model, registry, grouping, dictionary, tokenizer=None,
                  diagnostics=None):
    """
    Classifies postings with a labelled model and counts them per (quarter, group, category).
    :param postings: List of JobPosting.
    :param model: Labelled ClusterModel.
    :param registry: Registry.
    :param grouping: "tier", "city", "region" or "country".
    :param dictionary: KeywordDictionary.
    :param tokenizer: Title tokenizer.
    :param diagnostics: Optional Diagnostics.
    :return: DemandSeries
    """
    postings = list(postings)
    categories = [assign_category(p, model, dictionary, tokenizer) for p in postings]
    return DemandSeries.from_categories(postings, categories, registry, grouping, diagnostics)
