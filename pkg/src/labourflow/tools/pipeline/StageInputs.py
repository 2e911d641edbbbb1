import os

from labourflow.representations.Constants import STAGES

CHECKPOINT_DIR = "checkpoints"
PARTITION_DIR = "partitions"

FLOW_INTENTS = "flow_intents.csv"
POSTINGS = "postings.csv"
FLOW_GRAPH = "flow_graph.csv"
CITY_METRICS = "city_metrics.csv"
CORRELATION = "correlation.csv"


def demand_checkpoint(grouping):
    return "demand_%s.csv" % grouping


def stage_inputs(stage, config):
    """
    Checkpoints a stage reads, each with the stage writing it.
    :param stage: Stage name.
    :param config: PipelineConfig.
    :return: List of (checkpoint name, producing stage).
    """
    indicator = config.get("report", "indicator") is not None
    if stage == "graph":
        return [(FLOW_INTENTS, "ingest")]
    if stage in ("metrics", "communities"):
        return [(FLOW_GRAPH, "graph")]
    if stage == "demand":
        return [(POSTINGS, "ingest")]
    if stage == "correlate":
        return [(CITY_METRICS, "metrics")] if indicator else []
    if stage == "report":
        inputs = [(CITY_METRICS, "metrics")]
        inputs += [(demand_checkpoint(g), "demand") for g in config.get("demand", "groupings")]
        if indicator:
            inputs.append((CORRELATION, "correlate"))
        return inputs
    return []


def missing_checkpoints(config, stages=None):
    """
    Checkpoints the given stages read that are not on disk and that no earlier stage of the same
    run writes. Partition files are per quarter and are only checked by the report stage itself.
    :param config: PipelineConfig.
    :param stages: Stages about to run, every stage if None.
    :return: List of (checkpoint path, producing stage).
    """
    stages = set(stages) if stages is not None else set(STAGES)
    directory = os.path.join(config.output_dir, CHECKPOINT_DIR)
    missing = []
    for stage in STAGES:
        if stage not in stages:
            continue
        for name, producer in stage_inputs(stage, config):
            path = os.path.join(directory, name)
            if producer in stages or os.path.exists(path) or (path, producer) in missing:
                continue
            missing.append((path, producer))
    return missing
