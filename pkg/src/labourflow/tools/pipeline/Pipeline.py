import json
import os
import time

import numpy as np

from labourflow.communities.Louvain import Louvain
from labourflow.communities.Partition import Partition
from labourflow.demand.ClusterModel import assign_category, label_by_pools, load_labels
from labourflow.demand.DemandSeries import DemandSeries
from labourflow.demand.KMeans import kmeans_fit
from labourflow.demand.KeywordDictionary import KeywordDictionary, load_stoplist
from labourflow.flow_graph.Centrality import city_metrics
from labourflow.flow_graph.CityMetrics import load_metrics, save_metrics
from labourflow.flow_graph.FlowAnalysis import RATIO_METRICS, detect_blackholes_volcanoes, \
    increase_ratio_table, province_profile, tier_medians
from labourflow.flow_graph.FlowGraph import build_graphs, load_graphs, save_graphs
from labourflow.geo.Registry import Registry
from labourflow.ingest.Checkpoints import load_flow_intents, load_postings, save_flow_intents, \
    save_postings
from labourflow.ingest.Diagnostics import MALFORMED, POSTINGS_MALFORMED
from labourflow.ingest.Ingestor import Ingestor
from labourflow.representations.Constants import STAGES, UNCLASSIFIED
from labourflow.representations.Errors import MissingCheckpointError
from labourflow.representations.Quarter import Quarter, quarter_of
from labourflow.stats.CorrelationReport import correlation_report, save_correlation_report
from labourflow.tools.AtomicFile import write_text
from labourflow.tools.Logger import get_logger
from labourflow.tools.ProcessManager import WorkerPool
from labourflow.tools.pipeline.StageInputs import CHECKPOINT_DIR, CITY_METRICS, CORRELATION, \
    FLOW_GRAPH, FLOW_INTENTS, PARTITION_DIR, POSTINGS, demand_checkpoint
from labourflow.tools.pipeline.Tables import read_table, write_table

logger = get_logger(__name__)

REPORT_DIR = "report"

CATEGORY_COLUMNS = ["posting_id", "quarter", "working_city", "category"]


def _quarter_metrics(args):
    graph, tol, max_iter = args
    return city_metrics(graph, tol, max_iter)


def _fit_partition(args):
    graph, resolution, seed = args
    return Louvain(resolution, seed).fit(graph)


def resolution_tag(resolution):
    return "%g" % resolution


class Pipeline:
    """
    Runs the analysis stages in order: ingest, graph, metrics, communities, demand, correlate and
    report. Every stage reads the checkpoints of the stages before it and writes its own outputs
    atomically, so stages can be run one by one and re-run.

    Usage:
        Pipeline(PipelineConfig.load("pipeline.yaml")).run(["graph", "metrics"])
    """

    def __init__(self, config):
        """
        :param config: PipelineConfig.
        """
        self.__config = config
        self.__registry = None
        out = config.output_dir
        self.__checkpoints = os.path.join(out, CHECKPOINT_DIR)
        self.__reports = os.path.join(out, REPORT_DIR)

    @property
    def registry(self):
        if self.__registry is None:
            self.__registry = Registry.load(self.__config.path("registry"))
        return self.__registry

    def checkpoint(self, name):
        return os.path.join(self.__checkpoints, name)

    def report_path(self, name):
        return os.path.join(self.__reports, name)

    def run(self, stages=None):
        """
        Runs the given stages in pipeline order.
        :param stages: Iterable of stage names, every stage if None.
        :return: Dict stage -> summary dict.
        """
        stages = set(stages) if stages is not None else set(STAGES)
        unknown = stages - set(STAGES)
        if unknown:
            raise ValueError("Unknown stage %s, expected some of %s" %
                             (sorted(unknown)[0], ", ".join(STAGES)))
        summaries = {}
        for stage in STAGES:
            if stage not in stages:
                continue
            logger.info("Stage %s: started", stage)
            start = time.time()
            summaries[stage] = getattr(self, stage)()
            logger.info("Stage %s: done in %.1f s %s", stage, time.time() - start,
                        json.dumps(summaries[stage], sort_keys=True))
        return summaries

    def __require(self, path, stage):
        if not os.path.exists(path):
            raise MissingCheckpointError(stage, path)
        return path

    def __quarters_of(self, items):
        configured = self.__config.quarters()
        if configured is not None:
            return configured
        return sorted(set(items))

    def __graphs(self):
        path = self.__require(self.checkpoint(FLOW_GRAPH), "graph")
        return load_graphs(path, self.registry, self.__config.quarters())

    def __metrics(self):
        return load_metrics(self.__require(self.checkpoint(CITY_METRICS), "metrics"))

    def __pool(self):
        return WorkerPool(self.__config.workers)

    # Stages

    def ingest(self):
        config = self.__config
        ingestor = Ingestor(self.registry, config.get("ingest", "keywords"),
                            config.get("ingest", "dedup"), config.workers)
        intents, diagnostics = ingestor.ingest_queries(config.path("queries"))
        postings, posting_diagnostics = ingestor.ingest_postings(config.path("postings"))
        diagnostics.merge(posting_diagnostics)

        save_flow_intents(intents, self.checkpoint(FLOW_INTENTS))
        save_postings(postings, self.checkpoint(POSTINGS))
        write_text(self.checkpoint("ingest_diagnostics.json"),
                   json.dumps(diagnostics.to_dict(), sort_keys=True, indent=1) + "\n")

        if diagnostics[MALFORMED] or diagnostics[POSTINGS_MALFORMED]:
            logger.warning("Skipped %d malformed query lines and %d malformed posting lines",
                           diagnostics[MALFORMED], diagnostics[POSTINGS_MALFORMED])
        logger.info("Ingest diagnostics: %s", diagnostics)
        return {"intents": len(intents), "postings": len(postings)}

    def graph(self):
        intents = load_flow_intents(self.__require(self.checkpoint(FLOW_INTENTS),
                                                   "ingest"))
        quarters = self.__quarters_of(i.quarter for i in intents)
        wanted = set(quarters)
        graphs = build_graphs((i for i in intents if i.quarter in wanted), self.registry,
                              quarters)
        save_graphs(graphs, self.checkpoint(FLOW_GRAPH))
        return dict((str(q), int(g.total_weight())) for q, g in graphs.items())

    def metrics(self):
        graphs = self.__graphs()
        hits = self.__config.get("hits")
        quarters = sorted(graphs)
        results = self.__pool().map(_quarter_metrics, [(graphs[q], hits["tol"], hits["max_iter"])
                                                       for q in quarters])
        metrics = dict(zip(quarters, results))
        save_metrics(metrics, self.checkpoint(CITY_METRICS))
        summary = {}
        for q in quarters:
            blackholes, volcanoes = detect_blackholes_volcanoes(metrics[q], hits["top_k"])
            summary[str(q)] = {"blackholes": len(blackholes), "volcanoes": len(volcanoes)}
        return summary

    def communities(self):
        graphs = self.__graphs()
        louvain = self.__config.get("louvain")
        jobs = []
        for q in sorted(graphs):
            if graphs[q].is_empty():
                logger.warning("No flow in %s, no community detection", q)
                continue
            for resolution in louvain["resolutions"]:
                jobs.append((graphs[q], float(resolution), louvain["seed"]))
        partitions = self.__pool().map(_fit_partition, jobs)

        summary = {}
        for (graph, resolution, _), partition in zip(jobs, partitions):
            name = "partition_%s_r%s.txt" % (graph.quarter, resolution_tag(resolution))
            partition.save(os.path.join(self.checkpoint(PARTITION_DIR), name))
            summary["%s@%s" % (graph.quarter, resolution_tag(resolution))] = \
                partition.n_communities
        return summary

    def demand(self):
        config = self.__config
        postings = load_postings(self.__require(self.checkpoint(POSTINGS), "ingest"))
        quarters = set(self.__quarters_of(quarter_of(p.publish_timestamp) for p in postings))
        postings = [p for p in postings if quarter_of(p.publish_timestamp) in quarters]

        d = config.get("dictionary")
        stoplist = load_stoplist(d["stoplist"]) if d["stoplist"] else []
        dictionary = KeywordDictionary.build((p.title for p in postings),
                                             min_freq=d["min_freq"], top_drop=d["top_drop"],
                                             stoplist=stoplist)
        vectors = [dictionary.vectorize(p.title, posting_id=p.posting_id) for p in postings]
        matrix = np.array([v.values for v in vectors if v.vectorizable])
        logger.info("%d of %d titles vectorized", len(matrix), len(vectors))

        k = config.get("kmeans")
        model = kmeans_fit(matrix, k["k"], k["seed"], k["max_iter"], k["tol"])
        if k["labels"]:
            model = model.with_labels(load_labels(k["labels"]))
        elif k["label_pools"]:
            model = label_by_pools(model, dictionary, k["label_pools"])

        dictionary.save(self.checkpoint("keywords.tsv"))
        model.save(self.checkpoint("cluster_model.json"))
        model.save_label_template(self.checkpoint("cluster_labels.yaml"), dictionary)

        categories = [assign_category(p, model, dictionary) for p in postings]
        write_table([(p.posting_id, str(quarter_of(p.publish_timestamp)), p.working_city, c)
                     for p, c in zip(postings, categories)],
                    CATEGORY_COLUMNS, self.checkpoint("posting_categories.csv"))
        for grouping in config.get("demand", "groupings"):
            series = DemandSeries.from_categories(postings, categories, self.registry, grouping)
            series.save(self.checkpoint(demand_checkpoint(grouping)))
        return {"keywords": len(dictionary), "clusters": model.k,
                "unclassified": sum(1 for c in categories if c == UNCLASSIFIED)}

    def correlate(self):
        config = self.__config
        name = config.get("report", "indicator")
        if name is None:
            logger.info("No indicator configured, nothing to correlate")
            return {"rows": 0}
        metrics = self.__metrics()
        quarter = config.get("report", "correlate_quarter")
        quarter = Quarter.parse(quarter) if quarter else max(metrics)
        if quarter not in metrics:
            raise MissingCheckpointError("metrics", "%s (quarter %s)" %
                                         (self.checkpoint(CITY_METRICS), quarter))
        indicators = self.registry.load_indicators(config.path("indicators"))
        rows = correlation_report(metrics[quarter], indicators.get(name), name)
        save_correlation_report(rows, self.checkpoint(CORRELATION))
        return {"rows": len(rows), "quarter": str(quarter)}

    def report(self):
        config = self.__config
        metrics = self.__metrics()
        written = 0
        for fmt in config.get("report", "formats"):
            written += self.__report_metrics(metrics, fmt)
            written += self.__report_ratios(metrics, fmt)
            written += self.__report_demand(fmt)
            written += self.__report_correlation(fmt)
        written += self.__report_partitions(sorted(metrics))
        return {"files": written}

    # Report parts

    def __report_metrics(self, metrics, fmt):
        top_k = self.__config.get("hits", "top_k")
        files = 0
        for q in sorted(metrics):
            save_metrics({q: metrics[q]}, self.report_path("metrics_%s.%s" % (q, fmt)), fmt)
            blackholes, volcanoes = detect_blackholes_volcanoes(metrics[q], top_k)
            net = dict((m.city_id, m.net_inflow) for m in metrics[q])
            rows = [("blackhole", rank, c, net[c]) for rank, c in enumerate(blackholes, 1)]
            rows += [("volcano", rank, c, net[c]) for rank, c in enumerate(volcanoes, 1)]
            write_table(rows, ["kind", "rank", "city_id", "net_inflow"],
                        self.report_path("blackholes_%s.%s" % (q, fmt)), fmt)
            write_table(province_profile(metrics[q], self.registry),
                        ["province_id", "cities", "blackholes", "volcanoes", "all_volcano"],
                        self.report_path("provinces_%s.%s" % (q, fmt)), fmt)
            files += 3
        return files

    def __report_ratios(self, metrics, fmt):
        files = 0
        for t1, t2 in self.__config.quarter_pairs():
            if t1 not in metrics or t2 not in metrics:
                raise MissingCheckpointError("metrics", "%s (quarters %s and %s)" %
                                             (self.checkpoint(CITY_METRICS), t1, t2))
            table = increase_ratio_table(metrics[t1], metrics[t2])
            rows = [(c, self.registry.get(c).tier) + tuple(table[c][m] for m in RATIO_METRICS)
                    for c in table]
            write_table(rows, ["city_id", "tier"] + RATIO_METRICS,
                        self.report_path("increase_ratios_%s_%s.%s" % (t1, t2, fmt)), fmt)
            medians = []
            for m in RATIO_METRICS:
                by_tier = tier_medians(dict((c, table[c][m]) for c in table), self.registry)
                medians += [(tier, m, value) for tier, value in sorted(by_tier.items())]
            write_table(medians, ["tier", "metric", "median"],
                        self.report_path("tier_medians_%s_%s.%s" % (t1, t2, fmt)), fmt)
            files += 2
        return files

    def __report_demand(self, fmt):
        config = self.__config
        groups = config.get("demand", "category_groups")
        files = 0
        for grouping in config.get("demand", "groupings"):
            path = self.__require(self.checkpoint(demand_checkpoint(grouping)), "demand")
            variants = [("", DemandSeries.load(path, grouping))]
            if groups:
                variants.append(("_rollup", variants[0][1].rollup(groups)))
            for suffix, series in variants:
                series.save(self.report_path("demand_%s%s.%s" % (grouping, suffix, fmt)), fmt)
                shares = []
                for q in series.quarters():
                    for g in series.groups():
                        if series.total(q, g) == 0:
                            continue
                        for c, share in series.category_share(q, g).items():
                            shares.append((str(q), g, c, share))
                write_table(shares, ["quarter", "group", "category", "share"],
                            self.report_path("demand_shares_%s%s.%s" % (grouping, suffix, fmt)),
                            fmt)
                files += 2
                for t1, t2 in config.quarter_pairs():
                    ratios = series.increase_ratios(t1, t2)
                    write_table([(g, c, r) for (g, c), r in sorted(ratios.items())],
                                ["group", "category", "increase_ratio"],
                                self.report_path("demand_increase_%s%s_%s_%s.%s" %
                                                 (grouping, suffix, t1, t2, fmt)), fmt)
                    files += 1
        return files

    def __report_correlation(self, fmt):
        if self.__config.get("report", "indicator") is None:
            return 0
        df = read_table(self.__require(self.checkpoint(CORRELATION), "correlate"))
        rows = [(r.score_name, r.indicator, r.method, float(r.r), float(r.p_value), int(r.n))
                for r in df.itertuples(index=False)]
        save_correlation_report(rows, self.report_path("correlation.%s" % fmt), fmt)
        return 1

    def __report_partitions(self, quarters):
        empty = None
        files = 0
        for q in quarters:
            for resolution in self.__config.get("louvain", "resolutions"):
                name = "partition_%s_r%s.txt" % (q, resolution_tag(float(resolution)))
                source = os.path.join(self.checkpoint(PARTITION_DIR), name)
                if not os.path.exists(source):
                    if empty is None:
                        empty = set(g.quarter for g in self.__graphs().values() if g.is_empty())
                    if q in empty:
                        continue
                    raise MissingCheckpointError("communities", source)
                Partition.load(source).save(os.path.join(self.__reports, PARTITION_DIR, name))
                files += 1
        return files
