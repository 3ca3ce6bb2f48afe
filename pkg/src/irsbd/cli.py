"""Command-line entry point: ``irsbd --config scenario.cfg --out se.csv``."""
import argparse
import logging
import sys

from .config import ScenarioConfig, load_config, parse_power_range
from .errors import ConfigError, NumericalError
from .output import emit_csv, emit_plot_data, format_csv
from .sweep import run_sweep
from .txrx import MethodId

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4

log = logging.getLogger("irsbd")


def build_parser():
    p = argparse.ArgumentParser(prog="irsbd", description=__doc__)
    p.add_argument("--config", help="key = value scenario file")
    p.add_argument("--methods", help="comma list of " + ",".join(m.value for m in MethodId))
    p.add_argument("--realizations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--power", help="start:step:stop in dBm")
    p.add_argument("--out", help="CSV output path (stdout if omitted)")
    p.add_argument("--plot-data", help="directory for plot data files")
    p.add_argument("--se-mode", choices=["det", "scalar"])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args):
    cfg = load_config(args.config) if args.config else ScenarioConfig()
    overrides = {}
    if args.methods:
        overrides["methods"] = tuple(MethodId(m.strip().upper()) for m in args.methods.split(","))
    if args.realizations is not None:
        overrides["realizations"] = args.realizations
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.power:
        overrides["power_sweep_dbm"] = parse_power_range(args.power)
    if args.se_mode:
        overrides["se_mode"] = args.se_mode
    return cfg.with_overrides(**overrides) if overrides else cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        result = run_sweep(cfg, workers=args.workers)
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    try:
        if args.out:
            emit_csv(result, args.out)
        else:
            sys.stdout.write(format_csv(result))
        if args.plot_data:
            emit_plot_data(result, args.plot_data)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
