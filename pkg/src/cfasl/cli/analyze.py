# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import argparse
from pathlib import Path

from ..constants import DEFAULT_EIGEN_SAMPLES, DEFAULT_SCATTER_SAMPLES, DEFAULT_SEED
from ..exceptions import UsageError
from .display import display_speedup
from .utils import add_config_argument, parse_assignments

ANALYSES = ("scatter", "eigen", "swap", "decompose", "replay", "speedup")


def add_analyze_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("analyze", help="Export qualitative analyses")
    parser.add_argument("analysis", choices=ANALYSES, help="Analysis to run")
    parser.add_argument("--checkpoint", type=Path, help="Checkpoint file")
    parser.add_argument("--output-dir", type=Path, help="Export directory")
    parser.add_argument("--n", type=int, help="Number of sampled images")
    parser.add_argument("--dims", type=int, nargs=3, help="Scatter dimensions")
    parser.add_argument(
        "--fix", action="append", metavar="FACTOR=VALUE", help="Fix a factor (scatter)"
    )
    parser.add_argument("--color-factor", type=str, help="Factor used for coloring")
    parser.add_argument(
        "--rows", type=int, nargs="+", help="Dataset rows of the images (swap/decompose/replay)"
    )
    parser.add_argument("--num-dims", type=int, help="Dimensions to swap")
    parser.add_argument("--repeats", type=int, default=100, help="Timing repeats (speedup)")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    add_config_argument(parser)


def _factor_index(dataset, name: str) -> int:
    if name.isdigit():
        return int(name)
    if name not in dataset.factor_names:
        raise UsageError(
            f"Unknown factor '{name}'. Valid factors: {', '.join(dataset.factor_names)}"
        )
    return dataset.factor_names.index(name)


def _require(args: argparse.Namespace, analysis: str, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"analysis '{analysis}' requires {', '.join(missing)}")


def _rows(args: argparse.Namespace, count: int | None, analysis: str) -> list[int]:
    _require(args, analysis, "rows")
    if count is not None and len(args.rows) != count:
        raise UsageError(f"analysis '{analysis}' needs exactly {count} --rows")
    if count is None and len(args.rows) < 2:
        raise UsageError(f"analysis '{analysis}' needs at least 2 --rows")
    return args.rows


def run_speedup(args: argparse.Namespace) -> None:
    import torch  # noqa: PLC0415

    from ..composition import (  # noqa: PLC0415
        AttentionHeads,
        PairStatistics,
        measure_composition_speedup,
    )
    from ..symmetry import init_codebook  # noqa: PLC0415
    from ..training import load_checkpoint, load_run_config, restore_model  # noqa: PLC0415

    if args.checkpoint is not None:
        checkpoint = load_checkpoint(args.checkpoint)
        model = restore_model(checkpoint, checkpoint.channels)
        codebook, heads = model.codebook, model.heads
    else:
        config = load_run_config(args.config, {"seed": args.seed})
        codebook = init_codebook(
            config.num_sections,
            config.elements_per_section,
            config.latent_dim,
            config.codebook_scale,
            config.seed,
        )
        heads = AttentionHeads(
            config.num_sections, config.elements_per_section, config.latent_dim
        )
    generator = torch.Generator().manual_seed(args.seed)
    dim = codebook.latent_dim
    mu1, mu2 = torch.randn(2, dim, generator=generator)
    stats = PairStatistics(mu1, torch.ones(dim), mu2, torch.ones(dim))
    display_speedup(measure_composition_speedup(codebook, heads, stats, args.repeats))


def handle_analyze_command(args: argparse.Namespace) -> None:
    if args.analysis == "speedup":
        run_speedup(args)
        return

    import torch  # noqa: PLC0415

    from .. import analysis  # noqa: PLC0415
    from ..data import load_dataset  # noqa: PLC0415
    from ..training import load_checkpoint, restore_model  # noqa: PLC0415
    from ..types import FactorQuery  # noqa: PLC0415

    _require(args, args.analysis, "checkpoint")
    checkpoint = load_checkpoint(args.checkpoint)
    dataset = load_dataset(checkpoint.config.dataset)
    model = restore_model(checkpoint, dataset.channels)
    output_dir = args.output_dir or args.checkpoint.parent / "analysis"
    generator = torch.Generator().manual_seed(args.seed)

    match args.analysis:
        case "scatter":
            fixed = {
                _factor_index(dataset, name): int(value)
                for name, value in parse_assignments(args.fix, "--fix").items()
            }
            color = _factor_index(dataset, args.color_factor or "0")
            table = analysis.latent_scatter_export(
                model,
                dataset,
                FactorQuery.from_mapping(fixed),
                n=args.n or DEFAULT_SCATTER_SAMPLES,
                dims=tuple(args.dims) if args.dims else None,
                color_factor=color,
                generator=generator,
            )
            path = analysis.export_scatter_csv(table, output_dir / "scatter.csv")
            print(f"Scatter of dims {table.dims} ({len(table.rows)} rows): {path}")
        case "eigen":
            heatmap = analysis.eigenvector_heatmap(
                model, dataset, n=args.n or DEFAULT_EIGEN_SAMPLES, generator=generator
            )
            path = analysis.export_heatmap_csv(heatmap, output_dir / "eigenvectors.csv")
            print(f"One-hotness {heatmap.one_hotness:.4f}: {path}")
        case "swap":
            _require(args, "swap", "num_dims")
            x1, x2 = dataset.get_images(_rows(args, 2, "swap"))
            record = analysis.dimension_swap_traversal(model, x1, x2, args.num_dims)
            paths = analysis.export_frames(
                record.decoded_images, output_dir, "swap", record.metadata()
            )
            print(f"Swapped dims {record.edited_dims}: {len(paths)} frames in {output_dir}")
        case "decompose":
            x1, x2 = dataset.get_images(_rows(args, 2, "decompose"))
            record = analysis.composite_decomposition(model, x1, x2)
            paths = analysis.export_frames(
                record.frames, output_dir, "decompose", record.metadata()
            )
            print(
                f"Active sections {record.active_sections}: {len(paths)} frames "
                f"in {output_dir}"
            )
        case "replay":
            images = dataset.get_images(_rows(args, None, "replay"))
            record = analysis.sequential_symmetry_replay(model, images)
            paths = analysis.export_frames(
                record.replay_images, output_dir, "replay", record.metadata()
            )
            print(f"{len(paths)} replay frames in {output_dir}")
