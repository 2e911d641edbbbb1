import json
import math
import os
from collections import namedtuple

import numpy as np
import pandas as pd
import yaml

from labourflow.geo.Registry import Registry
from labourflow.representations.City import City
from labourflow.representations.CityShape import CityShape
from labourflow.representations.Constants import DEFAULT_JOB_KEYWORDS, DISTRICT, \
    PREFECTURE_CITY, PROVINCE, SECONDS_PER_DAY, SYNTH_CELL_DEG, SYNTH_DAY_END_HOUR, \
    SYNTH_DAY_START_HOUR, SYNTH_GRID_ORIGIN, SYNTH_TITLE_POOL_WORDS, TIERS, UNCLASSIFIED
from labourflow.representations.Errors import ScenarioError
from labourflow.representations.GeoPoint import GeoPoint
from labourflow.representations.Ring import Ring
from labourflow.synth.NameBook import NameBook
from labourflow.tools.AtomicFile import atomic_path, write_text
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)

REGISTRY_FILE = "registry.jsonl"
QUERIES_FILE = "queries.jsonl"
POSTINGS_FILE = "postings.jsonl"
GROUND_TRUTH_FILE = "ground_truth.jsonl"
INDICATORS_FILE = "indicators.csv"
STOPLIST_FILE = "stoplist.txt"
CONFIG_FILE = "pipeline.yaml"

FILLERS = ["work", "jobs", "salary", "today", "nearby", "fulltime", "parttime", "shift",
           "weekly", "pay", "apply", "openings", "vacancy", "staff", "position", "night",
           "morning", "contract", "temporary", "experienced"]

# Relative weight of each way of naming a destination
MENTION_FORMS = [("name", 0.6), ("alias", 0.25), ("district", 0.15)]
PROVINCE_PREFIX_SHARE = 0.3  # mentions preceded by the province name
KEYWORD_IN_TEXT_SHARE = 0.8  # otherwise the keyword is only in the clicked title
STOPWORD_SHARE = 0.3  # titles carrying one stoplist word
MAX_KEY_ATTEMPTS = 40  # tries before a serial word makes a query unique

INDICATOR_BASE = {"T1": 30000.0, "NewT1": 15000.0, "T2": 7000.0, "T3": 3500.0, "T4": 2000.0,
                  "T5": 1000.0}  # GDP, 100 million yuan
POPULATION_BASE = {"T1": 2000.0, "NewT1": 1200.0, "T2": 700.0, "T3": 450.0, "T4": 300.0,
                   "T5": 200.0}  # 10 thousand people

_CityInfo = namedtuple("_CityInfo", ["index", "id", "name", "alias", "province_id", "tier",
                                     "community", "lat0", "lon0", "district_id",
                                     "district_name", "shadow_province"])


def square(lat0, lon0, side):
    """
    Closed counter-clockwise square ring from its lower-left corner.
    """
    return Ring.from_flat([lat0, lon0, lat0, lon0 + side, lat0 + side, lon0 + side,
                           lat0 + side, lon0, lat0, lon0])


def largest_remainder(total, shares):
    """
    Splits an integer total proportionally to shares, handing the leftover units to the largest
    fractional parts, ties by name.
    :param total: int.
    :param shares: Dict name -> share, summing to 1.
    :return: Dict name -> int, summing to total.
    """
    names = sorted(shares)
    raw = dict((n, total * shares[n]) for n in names)
    counts = dict((n, int(math.floor(raw[n]))) for n in names)
    left = total - sum(counts.values())
    for n in sorted(names, key=lambda n: (-(raw[n] - counts[n]), n))[:left]:
        counts[n] += 1
    return counts


def _dumps(d):
    return json.dumps(d, ensure_ascii=False, sort_keys=True)


class Generator:
    """
    Writes a synthetic corpus with planted ground truth: a grid of square cities, a query log
    whose flow intents follow the planted communities and black holes, job postings following
    the demand mixture, indicators and a ready-to-run pipeline configuration. The output only
    depends on the scenario seed.

    Usage:
        ground_truth = Generator(Scenario.load("scenario.yaml")).generate("out/")
    """

    def __init__(self, scenario, keywords=None):
        """
        :param scenario: Scenario.
        :param keywords: Job keywords embedded in queries, the default Chinese ones if None.
        """
        self.__scenario = scenario
        self.__keywords = list(keywords) if keywords else list(DEFAULT_JOB_KEYWORDS)
        self.__rng = np.random.default_rng(scenario.seed)
        self.__serial = 0
        self.__cities = []
        self.__provinces = {}
        self.__registry = None
        self.__ambiguities = []
        self.__flows = {}
        self.__expected = {}
        self.__demand = {}

    @property
    def registry(self):
        return self.__registry

    @property
    def flows(self):
        """
        Planted flow counts.
        :return: Dict Quarter -> n x n int array over the registry city ids.
        """
        return self.__flows

    def generate(self, output_dir):
        """
        Generates every file into output_dir.
        :param output_dir: Destination directory, created if missing.
        :return: Dict file role -> path.
        """
        os.makedirs(output_dir, exist_ok=True)
        self.build_registry()
        self.plant_flows()
        queries = self.make_queries()
        postings = self.make_postings()

        paths = dict((role, os.path.join(output_dir, name)) for role, name in [
            ("registry", REGISTRY_FILE), ("queries", QUERIES_FILE), ("postings", POSTINGS_FILE),
            ("ground_truth", GROUND_TRUTH_FILE), ("indicators", INDICATORS_FILE),
            ("stoplist", STOPLIST_FILE), ("config", CONFIG_FILE)])

        with atomic_path(paths["registry"]) as tmp:
            self.__registry.save(tmp)
        write_text(paths["queries"], "".join(line + "\n" for line in queries))
        write_text(paths["postings"], "".join(line + "\n" for line in postings))
        write_text(paths["ground_truth"], "".join(_dumps(r) + "\n" for r in self.ground_truth()))
        self.write_indicators(paths["indicators"])
        write_text(paths["stoplist"], "".join(w + "\n" for w in self.__scenario.stoplist))
        write_text(paths["config"], yaml.safe_dump(self.pipeline_config(), allow_unicode=True,
                                                   sort_keys=True))
        logger.info("Generated %d queries and %d postings in %s", len(queries), len(postings),
                    output_dir)
        return paths

    def build_registry(self):
        """
        Provinces, one square city per grid cell and one district in the lower-left quarter of
        every city. A few districts are named after a city of another province.
        :return: Registry
        """
        s = self.__scenario
        book = NameBook(self.__rng)
        n = s.n_cities
        if s.ambiguous_districts > n // 2:
            raise ScenarioError("At most %d ambiguous districts for %d cities" % (n // 2, n))

        province_ids = ["P%02d" % (p + 1) for p in range(s.n_provinces)]
        province_names = dict((p, book.fresh()) for p in province_ids)
        tiers = [t for t in TIERS for _ in range(s.tiers[t])]
        cols = int(math.ceil(math.sqrt(n)))

        draft = []
        for i, city_id in enumerate(s.city_ids()):
            row, col = divmod(i, cols)
            draft.append(dict(index=i, id=city_id, name=book.fresh(), alias=book.fresh(),
                              province_id=province_ids[i % s.n_provinces], tier=tiers[i],
                              community=i % s.n_provinces,
                              lat0=SYNTH_GRID_ORIGIN[0] + row * SYNTH_CELL_DEG,
                              lon0=SYNTH_GRID_ORIGIN[1] + col * SYNTH_CELL_DEG,
                              district_id="D%03d" % (i + 1), district_name=None,
                              shadow_province=None))

        # District of a late city named like an early city of another province
        hosts = set()
        for k in range(s.ambiguous_districts):
            target = draft[k]
            host = next((c for c in reversed(draft)
                         if c["index"] not in hosts and c["index"] >= n // 2
                         and c["province_id"] != target["province_id"]), None)
            if host is None:
                raise ScenarioError("No district can share the name of %s" % target["id"])
            hosts.add(host["index"])
            host["district_name"] = target["name"]
            host["shadowed"] = True  # its district name must not be used as a mention
            target["shadow_province"] = host["province_id"]
            self.__ambiguities.append({"surface": target["name"], "city_id": target["id"],
                                       "district_id": host["district_id"],
                                       "district_province": host["province_id"]})
        for c in draft:
            if c["district_name"] is None:
                c["district_name"] = book.fresh()

        regions = []
        for c in draft:
            side = SYNTH_CELL_DEG
            centre = GeoPoint(c["lat0"] + side / 2, c["lon0"] + side / 2)
            regions.append(City(c["id"], c["name"], c["province_id"], PREFECTURE_CITY, centre,
                                CityShape([square(c["lat0"], c["lon0"], side)]), [c["alias"]],
                                c["tier"]))
            regions.append(City(c["district_id"], c["district_name"], c["province_id"], DISTRICT,
                                GeoPoint(c["lat0"] + side / 4, c["lon0"] + side / 4),
                                CityShape([square(c["lat0"], c["lon0"], side / 2)]),
                                parent_city_id=c["id"]))
            shadowed = c.pop("shadowed", False)
            self.__cities.append(_CityInfo(**dict(c, district_name=None if shadowed
                                                  else c["district_name"])))

        for p in province_ids:
            members = [c for c in self.__cities if c.province_id == p]
            lat = sum(c.lat0 for c in members) / len(members) + SYNTH_CELL_DEG / 2
            lon = sum(c.lon0 for c in members) / len(members) + SYNTH_CELL_DEG / 2
            regions.append(City(p, province_names[p], p, PROVINCE, GeoPoint(lat, lon)))
        self.__provinces = province_names

        self.__registry = Registry(regions)
        return self.__registry

    def plant_flows(self):
        """
        Symmetric Poisson counts for every city pair, denser inside communities, then the
        black-hole surplus sent from the other cities of each black hole's community.
        :return: Dict Quarter -> n x n int array.
        """
        s = self.__scenario
        n = len(self.__cities)
        community = [c.community for c in self.__cities]
        for q, scale in zip(s.quarters, s.quarter_scale):
            w = np.zeros((n, n), dtype=np.int64)
            for a in range(n):
                for b in range(a + 1, n):
                    lam = s.intra_intensity if community[a] == community[b] \
                        else s.inter_intensity
                    k = self.__rng.poisson(lam * scale)
                    w[a, b] += k
                    w[b, a] += k
            for city_id in sorted(s.blackholes):
                hole = self.__registry.city_ids.index(city_id)
                origins = [c.index for c in self.__cities
                           if c.community == community[hole] and c.id not in s.blackholes]
                if not origins:
                    raise ScenarioError("Black hole %s has no other city in its community" %
                                        city_id)
                for j in range(s.blackholes[city_id]):
                    w[origins[j % len(origins)], hole] += 1
            self.__flows[q] = w
        return self.__flows

    # Queries

    def __point_in(self, city):
        margin = SYNTH_CELL_DEG / 50
        span = SYNTH_CELL_DEG - 2 * margin
        return (round(city.lat0 + margin + self.__rng.random() * span, 6),
                round(city.lon0 + margin + self.__rng.random() * span, 6))

    def __point_outside(self):
        # South of the grid
        return (round(SYNTH_GRID_ORIGIN[0] - 5.0 + self.__rng.random(), 6),
                round(SYNTH_GRID_ORIGIN[1] + self.__rng.random(), 6))

    def __when(self, quarter, day=None):
        """
        :return: (day index within the quarter, epoch timestamp between 08:00 and 20:00 CST)
        """
        start = quarter.start()
        if day is None:
            days = (quarter.next().start() - start).days
            day = int(self.__rng.integers(days))
        second = int(self.__rng.integers(SYNTH_DAY_START_HOUR * 3600, SYNTH_DAY_END_HOUR * 3600))
        return day, int(start.timestamp()) + day * SECONDS_PER_DAY + second

    def __mention(self, dest, origin):
        """
        Tokens naming a destination city, never ambiguous from the origin's point of view.
        """
        forms = [(f, w) for f, w in MENTION_FORMS if f != "district" or dest.district_name]
        weights = np.array([w for _, w in forms])
        form = forms[self.__rng.choice(len(forms), p=weights / weights.sum())][0]
        if form == "name" and origin is not None and dest.shadow_province == origin.province_id:
            form = "alias"
        surface = {"name": dest.name, "alias": dest.alias, "district": dest.district_name}[form]
        if self.__rng.random() < PROVINCE_PREFIX_SHARE:
            return [self.__provinces[dest.province_id], surface]
        return [surface]

    def __fillers(self, attempt):
        k = int(self.__rng.integers(0, 3))
        words = [FILLERS[i] for i in self.__rng.choice(len(FILLERS), size=k, replace=False)]
        if attempt >= MAX_KEY_ATTEMPTS:
            words.append("ref%d" % self.__serial)
        return words

    def __query(self, quarter, origin, point, place, job, title_place, keys, day=None):
        """
        Builds one query whose deduplication key was never used.
        :return: (record dict, day index)
        """
        for attempt in range(MAX_KEY_ATTEMPTS + 1):
            self.__serial += 1
            day_index, timestamp = self.__when(quarter, day)
            fillers = self.__fillers(attempt)
            keyword = self.__keywords[int(self.__rng.integers(len(self.__keywords)))]
            title = None
            if not job:
                text = place + fillers
                if self.__rng.random() < 0.5:
                    title = self.__fillers(0) + ["news"]
            elif title_place:
                text = [keyword] + fillers
                title = place + ["jobs"]
            elif self.__rng.random() < KEYWORD_IN_TEXT_SHARE:
                text = place + [keyword] + fillers
            else:
                text = place + fillers
                title = [keyword, "jobs"]
            text = " ".join(text)
            title = " ".join(title) if title is not None else None
            key = (str(quarter), day_index, text, title, origin.id if origin else None)
            if key in keys:
                continue
            keys.add(key)
            return {"timestamp": timestamp, "lat": point[0], "lon": point[1], "query_text": text,
                    "clicked_title": title}, day_index
        raise RuntimeError("Could not build a unique query")

    def make_queries(self):
        """
        Query-log lines: one query per planted flow intent, duplicates of some of them, non-job
        queries, province-only queries, same-city queries, queries from outside every city and a
        few malformed lines at the end.
        :return: List of lines.
        """
        s = self.__scenario
        noise = s.noise
        cities = self.__cities
        n = len(cities)
        records = []
        expected = dict.fromkeys(["intents", "duplicates", "filtered_non_job",
                                  "dropped_no_destination", "dropped_same_city",
                                  "dropped_no_origin", "malformed"], 0)
        keys = set()

        def random_city():
            return cities[int(self.__rng.integers(n))]

        for q in s.quarters:
            w = self.__flows[q]
            flow_records = []
            for a, b in zip(*np.nonzero(w)):
                origin = cities[a]
                for _ in range(int(w[a, b])):
                    title_place = self.__rng.random() < noise["title_only_destination"]
                    flow_records.append(self.__query(q, origin, self.__point_in(origin),
                                                     self.__mention(cities[b], origin), True,
                                                     title_place, keys))
            records += [r for r, _ in flow_records]
            expected["intents"] += len(flow_records)

            dup_count = int(round(len(flow_records) * noise["duplicates"]))
            for i in sorted(self.__rng.choice(len(flow_records), size=dup_count, replace=False)):
                original, day = flow_records[i]
                _, timestamp = self.__when(q, day)
                records.append(dict(original, timestamp=timestamp))
            expected["duplicates"] += dup_count

            shares = noise["non_job"] + noise["province_only"] + noise["same_city"] + \
                noise["out_of_grid"]
            total = len(flow_records) / (1.0 - shares)
            for _ in range(int(round(total * noise["non_job"]))):
                origin = random_city()
                place = self.__mention(random_city(), origin) if self.__rng.random() < 0.5 else []
                records.append(self.__query(q, origin, self.__point_in(origin), place, False,
                                            False, keys)[0])
                expected["filtered_non_job"] += 1
            province_ids = sorted(self.__provinces)
            for _ in range(int(round(total * noise["province_only"]))):
                origin = random_city()
                province = province_ids[int(self.__rng.integers(len(province_ids)))]
                records.append(self.__query(q, origin, self.__point_in(origin),
                                            [self.__provinces[province]], True, False, keys)[0])
                expected["dropped_no_destination"] += 1
            for _ in range(int(round(total * noise["same_city"]))):
                origin = random_city()
                records.append(self.__query(q, origin, self.__point_in(origin), [origin.name],
                                            True, False, keys)[0])
                expected["dropped_same_city"] += 1
            for _ in range(int(round(total * noise["out_of_grid"]))):
                records.append(self.__query(q, None, self.__point_outside(),
                                            self.__mention(random_city(), None), True, False,
                                            keys)[0])
                expected["dropped_no_origin"] += 1

        order = sorted(range(len(records)), key=lambda i: (records[i]["timestamp"], i))
        lines = [_dumps(records[i]) for i in order]

        bad = ['{"timestamp": 1577836800, "lat": 31.0',
               _dumps({"timestamp": 1577836800, "lat": 123.0, "lon": 100.0,
                       "query_text": self.__keywords[0]}),
               _dumps({"lat": 30.0, "lon": 100.0, "query_text": self.__keywords[0]}),
               "not\ta query"]
        for i in range(int(noise["malformed_lines"])):
            lines.append(bad[i % len(bad)])
        expected["malformed"] = int(noise["malformed_lines"])
        self.__expected = expected
        return lines

    # Postings

    def __title(self, category):
        s = self.__scenario
        words = list(s.generic_title_words)
        if category == UNCLASSIFIED:
            if s.stoplist:
                words.append(s.stoplist[int(self.__rng.integers(len(s.stoplist)))])
        else:
            pool = s.category_pools[category]
            words += [pool[i] for i in self.__rng.choice(len(pool), size=SYNTH_TITLE_POOL_WORDS,
                                                          replace=False)]
            if s.stoplist and self.__rng.random() < STOPWORD_SHARE:
                words.append(s.stoplist[int(self.__rng.integers(len(s.stoplist)))])
        return " ".join(words[i] for i in self.__rng.permutation(len(words)))

    def make_postings(self):
        """
        Posting lines. Every city posts postings_per_city[tier] jobs per quarter (times the
        quarter scale), split across categories by its tier mixture.
        :return: List of lines.
        """
        s = self.__scenario
        noise = s.noise
        postings = []
        for q, scale in zip(s.quarters, s.quarter_scale):
            for city in self.__cities:
                n = int(round(s.postings_per_city[city.tier] * scale))
                unclassified = int(round(n * noise["unclassified_postings"]))
                counts = largest_remainder(n - unclassified, s.demand_mixture[city.tier])
                counts[UNCLASSIFIED] = unclassified
                for category in sorted(counts):
                    if counts[category]:
                        self.__demand[(q, city.id, category)] = counts[category]
                    for _ in range(counts[category]):
                        working = city.district_id \
                            if self.__rng.random() < noise["district_postings"] else city.id
                        postings.append((self.__when(q)[1], working, self.__title(category)))
            for _ in range(int(noise["unknown_city_postings"])):
                postings.append((self.__when(q)[1], "X999", self.__title(s.categories[0])))

        order = sorted(range(len(postings)), key=lambda i: (postings[i][0], i))
        lines = []
        for serial, i in enumerate(order, 1):
            timestamp, working, title = postings[i]
            lines.append(_dumps({"posting_id": "J%07d" % serial, "publish_timestamp": timestamp,
                                 "working_city": working, "title": title,
                                 "description": title + " apply now"}))
        return lines

    def write_indicators(self, path):
        rows = []
        for city in self.__cities:
            for name, base in (("GDP-2020", INDICATOR_BASE), ("population-2020", POPULATION_BASE)):
                value = base[city.tier] * math.exp(0.1 * self.__rng.standard_normal())
                rows.append((city.id, name, round(value, 2)))
        df = pd.DataFrame(rows, columns=["city_id", "name", "value"])
        with atomic_path(path) as tmp:
            df.to_csv(tmp, index=False, lineterminator="\n")

    # Ground truth

    def ground_truth(self):
        """
        Line-JSON records: the scenario, planted communities and black holes, flow counts,
        demand counts, ambiguous names, category pools and the expected ingest counters.
        :return: List of dicts.
        """
        s = self.__scenario
        records = [{"type": "scenario", "scenario": s.to_dict()}]
        for city in self.__cities:
            records.append({"type": "community", "city_id": city.id, "community": city.community,
                            "tier": city.tier, "province_id": city.province_id})
        for city_id in sorted(s.blackholes):
            records.append({"type": "blackhole", "city_id": city_id,
                            "surplus": s.blackholes[city_id]})
        ids = self.__registry.city_ids
        for q in s.quarters:
            w = self.__flows[q]
            for a, b in zip(*np.nonzero(w)):
                records.append({"type": "flow", "quarter": str(q), "origin": ids[a],
                                "destination": ids[b], "count": int(w[a, b])})
        for (q, city_id, category) in sorted(self.__demand, key=lambda k: (k[0], k[1], k[2])):
            records.append({"type": "demand", "quarter": str(q), "city_id": city_id,
                            "category": category, "count": self.__demand[(q, city_id, category)]})
        for a in self.__ambiguities:
            records.append(dict(a, type="ambiguity"))
        for category in s.categories:
            records.append({"type": "category_pool", "category": category,
                            "keywords": s.category_pools[category]})
        records.append(dict(self.__expected, type="totals"))
        return records

    def pipeline_config(self):
        """
        Pipeline configuration matching the generated files, paths relative to them.
        """
        s = self.__scenario
        return {
            "paths": {"registry": REGISTRY_FILE, "queries": QUERIES_FILE,
                      "postings": POSTINGS_FILE, "indicators": INDICATORS_FILE,
                      "output": "output"},
            "ingest": {"keywords": self.__keywords, "dedup": True},
            "quarters": [str(q) for q in s.quarters],
            "hits": {"tol": 1e-10, "max_iter": 1000, "top_k": 0},
            "louvain": {"resolutions": [0.5, 1.0, 2.0], "seed": 0},
            "dictionary": {"min_freq": 5, "top_drop": len(s.generic_title_words),
                           "stoplist": STOPLIST_FILE},
            "kmeans": {"k": s.kmeans_k, "seed": 0, "max_iter": 300, "tol": 1e-8,
                       "label_pools": s.category_pools},
            "demand": {"groupings": ["tier", "city", "region", "country"],
                       "category_groups": s.category_groups},
            "report": {"formats": ["csv"],
                       "quarter_pairs": [[str(s.quarters[0]), str(q)] for q in s.quarters[1:]],
                       "indicator": "GDP-2020"},
            "workers": 1,
        }
