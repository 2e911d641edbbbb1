import json

from labourflow.representations.Constants import UNCLASSIFIED


class GroundTruth:
    """
    Planted facts of a generated corpus, read back from its ground-truth file.
    """

    def __init__(self, records):
        """
        :param records: Iterable of ground-truth dicts.
        """
        self.scenario = {}
        self.communities = {}
        self.tiers = {}
        self.provinces = {}
        self.blackholes = {}
        self.flows = {}
        self.demand = {}
        self.ambiguities = []
        self.category_pools = {}
        self.totals = {}
        for r in records:
            kind = r["type"]
            if kind == "scenario":
                self.scenario = r["scenario"]
            elif kind == "community":
                self.communities[r["city_id"]] = r["community"]
                self.tiers[r["city_id"]] = r["tier"]
                self.provinces[r["city_id"]] = r["province_id"]
            elif kind == "blackhole":
                self.blackholes[r["city_id"]] = r["surplus"]
            elif kind == "flow":
                self.flows.setdefault(r["quarter"], {})[(r["origin"], r["destination"])] = \
                    r["count"]
            elif kind == "demand":
                self.demand[(r["quarter"], r["city_id"], r["category"])] = r["count"]
            elif kind == "ambiguity":
                self.ambiguities.append(r)
            elif kind == "category_pool":
                self.category_pools[r["category"]] = r["keywords"]
            elif kind == "totals":
                self.totals = dict((k, v) for k, v in r.items() if k != "type")
            else:
                raise ValueError("Unknown ground-truth record type %r" % kind)

    @staticmethod
    def load(path):
        with open(path, encoding="utf-8") as f:
            return GroundTruth(json.loads(line) for line in f if line.strip())

    def quarters(self):
        return list(self.scenario.get("quarters", sorted(self.flows)))

    def inflow(self, quarter):
        """
        :param quarter: Quarter id string.
        :return: Dict city_id -> planted inflow, every city present.
        """
        totals = dict.fromkeys(self.communities, 0)
        for (_, destination), n in self.flows.get(quarter, {}).items():
            totals[destination] += n
        return totals

    def outflow(self, quarter):
        totals = dict.fromkeys(self.communities, 0)
        for (origin, _), n in self.flows.get(quarter, {}).items():
            totals[origin] += n
        return totals

    def net_inflow(self, quarter):
        inflow = self.inflow(quarter)
        outflow = self.outflow(quarter)
        return dict((c, inflow[c] - outflow[c]) for c in inflow)

    def tier_mixture(self, tier):
        """
        Planted category shares of a tier over all quarters, unclassified postings left out.
        :return: Dict category -> share.
        """
        counts = {}
        for (_, city_id, category), n in self.demand.items():
            if self.tiers[city_id] == tier and category != UNCLASSIFIED:
                counts[category] = counts.get(category, 0) + n
        total = float(sum(counts.values()))
        return dict((c, counts[c] / total) for c in sorted(counts)) if total else {}

    def postings(self, quarter=None):
        """
        Number of generated postings in known cities, unclassified ones included.
        """
        return sum(n for (q, _, _), n in self.demand.items() if quarter is None or q == quarter)
