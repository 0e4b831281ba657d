"""
Command-line entry point for dal-perf.

Parses flags (and an optional YAML run file) into a RunConfig, configures
logging, dispatches to the command functions and maps errors to exit codes.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, NoReturn

from pydantic import ValidationError

from . import __version__
from .commands import COMMANDS, write_artifact
from .config import DalConfig, RunConfig, Settings, learner_from_flags, load_run_file
from .errors import DalError, UsageError
from .framework import dump_json

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# flag dest -> learner hyperparameter
LEARNER_FLAGS = ("epochs", "hidden_units", "l1_lambda", "learning_rate", "tune")


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError("INVALID_ARGUMENTS", message, {"usage": self.format_usage().strip()})


def _depth(text: str) -> str | int:
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"depth must be 'auto' or an integer, got '{text}'") from e


def _shared_flags() -> argparse.ArgumentParser:
    """Flags accepted by every subcommand; all default to None so the run file can fill them."""
    shared = CliParser(add_help=False)

    io_group = shared.add_argument_group("input/output")
    io_group.add_argument("--data", type=Path, help="Dataset CSV (options first, performance last)")
    io_group.add_argument("--kinds", type=Path, help="JSON sidecar forcing option kinds")
    io_group.add_argument("--model", type=Path, help="Model file")
    io_group.add_argument("--in", dest="input", type=Path, help="Configurations CSV to predict")
    io_group.add_argument("--out", type=Path, help="Output file (default: stdout)")
    io_group.add_argument("--format", choices=["json", "table"], help="Report format")
    io_group.add_argument("--config", type=Path, help="YAML run file with DalConfig defaults")
    io_group.add_argument("--timing", action="store_true", default=None, help="Report per-run training time")
    io_group.add_argument("--with-division", action="store_true", default=None,
                          help="Add the routed division id to predictions")
    io_group.add_argument("--log-level", help="Logging level (default: LOG_LEVEL or INFO)")

    model_group = shared.add_argument_group("model")
    model_group.add_argument("--scheme", choices=["label", "scaled", "scaled_label", "onehot", "one_hot"])
    model_group.add_argument("--learner", choices=["linear", "cart", "rnet"])
    model_group.add_argument("--depth", type=_depth, help="'auto' or a fixed division depth")
    model_group.add_argument("--indicator", choices=["mu_hv", "hv"])
    model_group.add_argument("--divider", choices=["cart", "kmeans", "agglomerative", "dbscan"],
                             help="Divide with the CART (default) or a clusterer")
    model_group.add_argument("--recipe", action="append", dest="recipes",
                             help="framework:learner[@n]; repeat for compare")
    model_group.add_argument("--seed", type=int)
    model_group.add_argument("--jobs", type=int)

    eval_group = shared.add_argument_group("evaluation")
    eval_group.add_argument("--runs", type=int)
    eval_group.add_argument("--train-size", help="Training rows, an integer or 'kn' (k x options)")

    params = shared.add_argument_group("parameters")
    params.add_argument("--min-leaf", type=int, help="Dividing tree minimum leaf size")
    params.add_argument("--max-depth", type=int, help="Dividing tree maximum depth")
    params.add_argument("--merge-min-size", type=int)
    params.add_argument("--clusters", type=int, help="Cluster count for kmeans and agglomerative")
    params.add_argument("--smote-k", type=int)
    params.add_argument("--n-trees", type=int)
    params.add_argument("--features-per-split", type=int)
    params.add_argument("--epochs", type=int)
    params.add_argument("--hidden-units", type=int)
    params.add_argument("--l1-lambda", type=float)
    params.add_argument("--learning-rate", type=float)
    params.add_argument("--tune", action=argparse.BooleanOptionalAction, default=None,
                        help="Grid-tune rnet width and L1 strength")
    return shared


def build_parser() -> CliParser:
    """Parser with one subcommand per command function."""
    parser = CliParser(prog="dal", description="Divide-and-learn configuration performance prediction")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    shared = _shared_flags()
    helps = {
        "train": "Train a model",
        "predict": "Predict configurations with a saved model",
        "evaluate": "Bootstrap evaluation of one recipe",
        "compare": "Evaluate and Scott-Knott rank several recipes",
        "inspect-divisions": "Show divisions and indicator values per depth",
        "encode": "Write the encoded feature matrix",
    }
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[shared], help=helps[name])
    return parser


def _nested(base: dict[str, Any], key: str) -> dict[str, Any]:
    value = base.get(key) or {}
    if not isinstance(value, dict):
        raise UsageError("INVALID_CONFIG_FILE", f"Run file key '{key}' must be a mapping", {"key": key})
    return dict(value)


def _put(target: dict[str, Any], key: str, value: Any) -> None:
    if value is not None:
        target[key] = value


def build_run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """
    Merge the run file, environment settings and flags into a RunConfig.

    Explicit flags win over the run file, which wins over the environment.

    Args:
        args: Parsed arguments
        settings: Environment settings

    Returns:
        Validated RunConfig

    Raises:
        UsageError: If any value is invalid
    """
    dal: dict[str, Any] = load_run_file(args.config) if args.config else {}

    _put(dal, "scheme", args.scheme)
    _put(dal, "depth", args.depth)
    _put(dal, "indicator", args.indicator)
    _put(dal, "divider", args.divider)
    dal["jobs"] = args.jobs if args.jobs is not None else dal.get("jobs", settings.jobs)

    cart = _nested(dal, "cart")
    _put(cart, "min_leaf", args.min_leaf)
    _put(cart, "max_depth", args.max_depth)
    dal["cart"] = cart

    smote = _nested(dal, "smote")
    _put(smote, "k", args.smote_k)
    dal["smote"] = smote

    rf = _nested(dal, "rf")
    _put(rf, "n_trees", args.n_trees)
    _put(rf, "features_per_split", args.features_per_split)
    dal["rf"] = rf

    merge = _nested(dal, "merge")
    _put(merge, "min_size", args.merge_min_size)
    dal["merge"] = merge

    cluster = _nested(dal, "cluster")
    _put(cluster, "n_clusters", args.clusters)
    dal["cluster"] = cluster

    learner = dal.get("learner") or {}
    if isinstance(learner, str):
        learner = {"kind": learner}
    learner = dict(learner)
    if args.learner is not None and args.learner != learner.get("kind"):
        learner = {"kind": args.learner}
    flags = {flag: value for flag in LEARNER_FLAGS if (value := getattr(args, flag)) is not None}
    overrides = {**learner, **flags}
    dal["learner"] = learner_from_flags(learner.get("kind", "rnet"), overrides)

    try:
        config = DalConfig(**dal)
        return RunConfig(
            command=args.command,
            data=args.data,
            model=args.model,
            input=args.input,
            out=args.out,
            kinds=args.kinds,
            format=args.format or "json",
            seed=args.seed if args.seed is not None else settings.default_seed,
            runs=args.runs if args.runs is not None else 30,
            train_size=args.train_size,
            recipes=tuple(args.recipes or ()),
            timing=bool(args.timing),
            with_division=bool(args.with_division),
            dal=config,
        )
    except ValidationError as e:
        errors = [{"loc": ".".join(str(p) for p in err["loc"]), "msg": err["msg"]} for err in e.errors()]
        raise UsageError("INVALID_PARAMETER", str(e), {"errors": errors}) from e


def _report_error(error: DalError) -> int:
    sys.stderr.write(dump_json(error.to_dict()).decode("utf-8"))
    return error.exit_code


def main(argv: list[str] | None = None) -> int:
    """
    Run the CLI.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Exit code: 0 ok, 1 usage, 2 data error, 3 internal
    """
    try:
        args = build_parser().parse_args(argv)
        settings = Settings.from_env()
        level = (args.log_level or settings.log_level).upper()
        try:
            logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
        except ValueError as e:
            raise UsageError("INVALID_LOG_LEVEL", f"Unknown log level '{level}'", {"level": level}) from e
        run = build_run_config(args, settings)
        logger.info(f"Running {run.command} (seed={run.seed}, jobs={run.dal.jobs})")

        match run.command:
            case "train" | "predict" | "evaluate" | "compare" | "inspect-divisions" | "encode":
                payload = COMMANDS[run.command](run)
            case _:
                raise UsageError("UNKNOWN_COMMAND", f"Unknown command: {run.command}")

        write_artifact(payload, run.out)
        return 0
    except DalError as e:
        return _report_error(e)
    except Exception as e:
        logger.exception(f"Internal error: {e}")
        return _report_error(DalError("INTERNAL_ERROR", str(e), {"type": type(e).__name__}))


if __name__ == "__main__":
    sys.exit(main())
