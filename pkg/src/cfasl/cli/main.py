# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import argparse
import sys

from pydantic import ValidationError

from ..constants import (
    EXIT_FAILURE,
    EXIT_INTERRUPTED,
    EXIT_INVALID_ARGUMENTS,
    EXIT_IO_FAILURE,
    EXIT_NUMERICAL_FAILURE,
)
from ..exceptions import (
    ConfigurationError,
    CorruptArchiveError,
    InvalidArgumentError,
    NumericalError,
    UsageError,
)
from .analyze import add_analyze_parser, handle_analyze_command
from .data import add_gen_data_parser, handle_gen_data_command
from .evaluate import add_eval_parser, handle_eval_command
from .train import add_train_parser, handle_train_command
from .utils import add_config_argument, display_version, setup_logging


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfasl", description="Composite symmetry learning for disentangled VAEs"
    )

    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable verbose (debug) logging"
    )

    parser.add_argument(
        "--version",
        action="version",
        version="%(prog)s (use 'cfasl version' for detailed info)",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    add_train_parser(subparsers)
    add_eval_parser(subparsers)
    add_analyze_parser(subparsers)
    add_gen_data_parser(subparsers)

    subparsers.add_parser("version", help="Show package version and environment info")

    config_parser = subparsers.add_parser("config", help="Configuration management")
    config_subparsers = config_parser.add_subparsers(
        dest="config_command", required=True
    )
    show_parser = config_subparsers.add_parser(
        "show", help="Display the resolved run configuration"
    )
    add_config_argument(show_parser)

    return parser


def display_config(args: argparse.Namespace) -> None:
    from ..training import load_run_config  # noqa: PLC0415
    from .display import display_config_table  # noqa: PLC0415

    display_config_table(load_run_config(args.config).snapshot())


def main() -> None:
    parser = create_parser()
    args = parser.parse_args()

    setup_logging(args.verbose)

    try:
        if args.command == "train":
            handle_train_command(args)
        elif args.command == "eval":
            handle_eval_command(args)
        elif args.command == "analyze":
            handle_analyze_command(args)
        elif args.command == "gen-data":
            handle_gen_data_command(args)
        elif args.command == "version":
            display_version()
        elif args.command == "config":
            if args.config_command == "show":
                display_config(args)
        else:
            parser.print_help()
            sys.exit(EXIT_FAILURE)
    except KeyboardInterrupt:
        print("\nInterrupted by user.")
        sys.exit(EXIT_INTERRUPTED)
    except NumericalError as e:
        print(f"Error: {e}", file=sys.stderr)
        if e.dump_path is not None:
            print(f"Diagnostic dump: {e.dump_path}", file=sys.stderr)
        sys.exit(EXIT_NUMERICAL_FAILURE)
    except (
        InvalidArgumentError,
        ConfigurationError,
        UsageError,
        ValidationError,
    ) as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_INVALID_ARGUMENTS)
    except (CorruptArchiveError, OSError) as e:
        print(f"I/O error: {e}", file=sys.stderr)
        sys.exit(EXIT_IO_FAILURE)
    except Exception as e:
        print(f"Unexpected error: {e}", file=sys.stderr)
        sys.exit(EXIT_FAILURE)


if __name__ == "__main__":
    main()
