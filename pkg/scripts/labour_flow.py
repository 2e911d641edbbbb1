#!/usr/bin/env python3

import os
import sys
from argparse import ArgumentParser

LOCATION = os.path.realpath(os.path.join(os.getcwd(), os.path.dirname(__file__)))
sys.path.insert(0, os.path.join(LOCATION, "..", "src"))

from labourflow.representations.Constants import REPORT_FORMATS, STAGES  # noqa: E402
from labourflow.synth.Generator import Generator  # noqa: E402
from labourflow.synth.Scenario import Scenario  # noqa: E402
from labourflow.tools.Logger import configure_logging, get_logger  # noqa: E402
from labourflow.tools.pipeline.Pipeline import Pipeline  # noqa: E402
from labourflow.tools.pipeline.PipelineConfig import PipelineConfig  # noqa: E402
from labourflow.tools.ProcessManager import default_workers  # noqa: E402

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_FAILED = 2

logger = get_logger("labourflow.cli")


def workers_arg(text):
    if text == "auto":
        return default_workers()
    return int(text)


def make_parser():
    parser = ArgumentParser(description="Labour flow intention analytics")
    parser.add_argument("-q", "--quiet", action="store_true", dest="quiet",
                        help="Only print warnings and errors")
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    for name, text in [("run", "Run pipeline stages"), ("validate", "Check a configuration")]:
        command = commands.add_parser(name, help=text)
        command.add_argument("--config", required=True, help="Pipeline YAML file")
        command.add_argument("--stages", default=None,
                             help="Comma-separated subset of %s" % ",".join(STAGES))
        command.add_argument("--workers", type=workers_arg, default=None,
                             help="Worker processes, or auto for one per physical core")
        command.add_argument("--output", default=None, help="Output directory")
        command.add_argument("--format", action="append", choices=REPORT_FORMATS, default=None,
                             dest="formats", help="Report format, may be repeated")

    generate = commands.add_parser("generate", help="Generate a synthetic corpus")
    generate.add_argument("--scenario", default=None, help="Scenario YAML file")
    generate.add_argument("--output", required=True, help="Output directory")
    return parser


def parse_stages(text):
    """
    :param text: Comma-separated stage names or None.
    :return: List of stages, or None for every stage.
    """
    if text is None:
        return None
    stages = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in stages if s not in STAGES]
    if unknown or not stages:
        raise ValueError("--stages: unknown stage %s, expected some of %s" %
                         (unknown[0] if unknown else "''", ",".join(STAGES)))
    return stages


def load_config(args):
    """
    :return: (PipelineConfig, stages, problems)
    """
    try:
        stages = parse_stages(args.stages)
        config = PipelineConfig.load(args.config).override(args.workers, args.output,
                                                           args.formats)
    except (OSError, ValueError) as e:
        return None, None, [str(e)]
    return config, stages, config.validate(stages)


def report_problems(problems):
    for problem in problems:
        print("invalid configuration: %s" % problem, file=sys.stderr)


def run(args):
    config, stages, problems = load_config(args)
    if problems:
        report_problems(problems)
        return EXIT_INVALID
    Pipeline(config).run(stages)
    return EXIT_OK


def validate(args):
    _, _, problems = load_config(args)
    if problems:
        report_problems(problems)
        return EXIT_INVALID
    logger.info("Configuration %s is valid", args.config)
    return EXIT_OK


def generate(args):
    try:
        scenario = Scenario.load(args.scenario) if args.scenario else Scenario()
    except (OSError, ValueError) as e:
        report_problems([str(e)])
        return EXIT_INVALID
    paths = Generator(scenario).generate(args.output)
    logger.info("Corpus written, run it with --config %s", paths["config"])
    return EXIT_OK


def main(argv=None):
    args = make_parser().parse_args(argv)
    configure_logging(args.quiet)
    try:
        return {"run": run, "validate": validate, "generate": generate}[args.command](args)
    except Exception as e:
        logger.debug("Failure", exc_info=True)
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
