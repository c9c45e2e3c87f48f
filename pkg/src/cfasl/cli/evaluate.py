# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import argparse
from pathlib import Path

from ..constants import (
    DEFAULT_FVM_TRIALS,
    DEFAULT_PRUNE_THRESHOLD,
    DEFAULT_SAMPLES_PER_VOTE,
    DEFAULT_SEED,
    REPORT_FILE,
)
from .display import display_metric_report


def add_eval_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("eval", help="Score a checkpoint with FVM or m-FVM_k")
    parser.add_argument("checkpoint", type=Path, help="Checkpoint file")
    parser.add_argument("--metric", default="fvm", help="fvm or m_fvm (default: fvm)")
    parser.add_argument("--k", type=int, help="Fixed factors per trial (m_fvm)")
    parser.add_argument("--trials", type=int, default=DEFAULT_FVM_TRIALS)
    parser.add_argument("--samples-per-vote", type=int, default=DEFAULT_SAMPLES_PER_VOTE)
    parser.add_argument("--prune-threshold", type=float, default=DEFAULT_PRUNE_THRESHOLD)
    parser.add_argument("--global-samples", type=int, help="Images for global variance")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--workers", type=int, help="Run trials on a thread pool")
    parser.add_argument(
        "--output", type=Path, help=f"Report path (default: <checkpoint dir>/{REPORT_FILE})"
    )


def handle_eval_command(args: argparse.Namespace) -> None:
    from ..data import load_dataset  # noqa: PLC0415
    from ..metrics import evaluate_metric  # noqa: PLC0415
    from ..training import load_checkpoint, restore_model  # noqa: PLC0415

    checkpoint = load_checkpoint(args.checkpoint)
    dataset = load_dataset(checkpoint.config.dataset)
    model = restore_model(checkpoint, dataset.channels)

    report = evaluate_metric(
        args.metric,
        model.represent,
        dataset,
        k=args.k,
        trials=args.trials,
        samples_per_vote=args.samples_per_vote,
        prune_threshold=args.prune_threshold,
        seed=args.seed,
        global_samples=args.global_samples,
        max_workers=args.workers,
        config=checkpoint.config.snapshot(),
    )

    output = args.output or args.checkpoint.parent / REPORT_FILE
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(report.model_dump_json(indent=2))
    display_metric_report(report)
    print(f"Report: {output}")
