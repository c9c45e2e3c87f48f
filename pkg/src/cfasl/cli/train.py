# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import argparse
import time

from ..equivariance import ABLATION_ROWS, LOSS_TERMS, ablation_mask_from_row
from ..exceptions import UsageError
from .display import display_loss_summary
from .utils import add_config_argument, collect_overrides

# argparse dest -> RunConfig field
TRAIN_OVERRIDES = {
    "output_dir": "output_dir",
    "steps": "steps",
    "batch_size": "batch_size",
    "learning_rate": "learning_rate",
    "seed": "seed",
    "latent_dim": "latent_dim",
    "num_sections": "num_sections",
    "elements_per_section": "elements_per_section",
    "codebook_scale": "codebook_scale",
    "epsilon": "epsilon",
    "threshold": "threshold",
    "gumbel_temperature": "gumbel_temperature",
    "log_every": "log_every",
    "checkpoint_every": "checkpoint_every",
    "objective": "objective.kind",
    "beta": "objective.beta",
    "likelihood": "objective.likelihood",
    "dataset": "dataset.kind",
    "data_path": "dataset.path",
    "image_size": "dataset.image_size",
    "subsample": "dataset.subsample",
}


def add_train_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("train", help="Train a CFASL model")
    add_config_argument(parser)
    parser.add_argument("--output-dir", type=str, help="Run directory")
    parser.add_argument("--steps", type=int, help="Optimizer steps (default: 2000)")
    parser.add_argument("--batch-size", type=int, help="Even mini-batch size (default: 64)")
    parser.add_argument("--learning-rate", type=float, help="Adam learning rate")
    parser.add_argument("--seed", type=int, help="Seed of every random stream")
    parser.add_argument("--latent-dim", type=int, help="Latent dimension D")
    parser.add_argument("--num-sections", type=int, help="|S| (must equal D)")
    parser.add_argument("--elements-per-section", type=int, help="|SS|")
    parser.add_argument("--codebook-scale", type=float, help="Generator init scale")
    parser.add_argument("--epsilon", type=float, help="Decoder equivariance weight")
    parser.add_argument("--threshold", type=float, help="Change threshold for targets")
    parser.add_argument("--gumbel-temperature", type=float, help="Switch temperature")
    parser.add_argument("--log-every", type=int, help="Progress log cadence")
    parser.add_argument("--checkpoint-every", type=int, help="Checkpoint cadence")
    parser.add_argument(
        "--objective", choices=["beta_vae", "beta_tcvae"], help="Base VAE objective"
    )
    parser.add_argument("--beta", type=float, help="KL / TC weight")
    parser.add_argument(
        "--likelihood", choices=["bernoulli", "continuous_bernoulli"], help="Decoder likelihood"
    )
    parser.add_argument(
        "--dataset", choices=["synthetic", "synthetic_dir", "dsprites"], help="Data source"
    )
    parser.add_argument("--data-path", type=str, help="Dataset directory or archive")
    parser.add_argument("--image-size", type=int, help="Image side (16, 32 or 64)")
    parser.add_argument("--subsample", type=float, help="Keep this fraction of the data")
    parser.add_argument(
        "--ablation-row",
        type=int,
        help=f"Use one of the {len(ABLATION_ROWS)} predefined loss on/off rows (1-based)",
    )
    parser.add_argument(
        "--disable",
        action="append",
        metavar="TERM",
        help=f"Turn a loss term off (repeatable): {', '.join(LOSS_TERMS)}",
    )
    parser.add_argument("--resume", type=str, help="Checkpoint to resume from")


def build_train_overrides(args: argparse.Namespace) -> dict:
    overrides = collect_overrides(args, TRAIN_OVERRIDES)
    mask: dict[str, bool] = {}
    if args.ablation_row is not None:
        if not 1 <= args.ablation_row <= len(ABLATION_ROWS):
            raise UsageError(
                f"--ablation-row must be in [1, {len(ABLATION_ROWS)}], got {args.ablation_row}"
            )
        mask.update(ablation_mask_from_row(ABLATION_ROWS[args.ablation_row - 1]))
    for term in args.disable or []:
        mask[term] = False
    if mask:
        overrides["ablation_mask"] = mask
    return overrides


def handle_train_command(args: argparse.Namespace) -> None:
    from ..training import Trainer, load_run_config  # noqa: PLC0415

    config = load_run_config(args.config, build_train_overrides(args))
    trainer = Trainer(config)
    print(f"Training into {config.output_dir} ({config.steps} steps)")

    start = time.time()
    result = trainer.train(resume=args.resume)
    duration = time.time() - start

    if result.last_losses:
        display_loss_summary(result.last_losses, result.final_step, duration)
    if result.checkpoints:
        print(f"Checkpoint: {result.checkpoints[-1]}")
    print(f"Loss log: {result.loss_log}")
