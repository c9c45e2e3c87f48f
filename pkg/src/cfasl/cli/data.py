# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import argparse
from pathlib import Path

from ..constants import DEFAULT_SEED


def add_gen_data_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "gen-data", help="Render the synthetic shapes dataset to a directory"
    )
    parser.add_argument("output_dir", type=Path, help="Directory to write")
    parser.add_argument("--positions-x", type=int, default=8)
    parser.add_argument("--positions-y", type=int, default=8)
    parser.add_argument("--scales", type=int, default=4, help="0 drops the scale factor")
    parser.add_argument("--shapes", type=int, default=0, help="0 drops the shape factor")
    parser.add_argument("--image-size", type=int, default=16)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)


def handle_gen_data_command(args: argparse.Namespace) -> None:
    from ..data import generate_synthetic, save_synthetic  # noqa: PLC0415
    from ..types import SyntheticGrid  # noqa: PLC0415

    grid = SyntheticGrid(
        positions_x=args.positions_x,
        positions_y=args.positions_y,
        scales=args.scales or None,
        shapes=args.shapes or None,
    )
    dataset = generate_synthetic(grid, args.image_size, args.seed)
    save_synthetic(dataset, args.output_dir)
    sizes = dict(zip(dataset.factor_names, dataset.factor_sizes))
    print(f"Wrote {len(dataset)} images {sizes} to {args.output_dir}")
    for warning in dataset.warnings:
        print(f"Warning: {warning}")
