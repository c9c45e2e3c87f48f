# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import itertools

import numpy as np
import torch

from ..exceptions import InvalidArgumentError
from ..logging import get_logger
from ..types import SyntheticGrid
from .dataset import FactorDataset

logger = get_logger("data.synthetic")

SHAPE_NAMES = ("square", "ellipse", "triangle")
IMAGE_SIZES = (16, 32, 64)


def side_lengths(scales: int | None, image_size: int) -> list[int]:
    """Shape side in pixels per scale level, from image_size/4 up to image_size/2."""
    smallest, largest = image_size // 4, image_size // 2
    if scales is None:
        return [largest]
    return [
        smallest + round(level * (largest - smallest) / (scales - 1))
        for level in range(scales)
    ]


def shape_mask(shape: str, side: int) -> np.ndarray:
    """Binary side x side raster of an axis-aligned shape filling its box."""
    centers = np.arange(side) + 0.5
    rows, cols = np.meshgrid(centers, centers, indexing="ij")
    half = side / 2.0
    if shape == "square":
        return np.ones((side, side), dtype=np.uint8)
    if shape == "ellipse":
        inside = ((rows - half) / half) ** 2 + ((cols - half) / half) ** 2 <= 1.0
        return inside.astype(np.uint8)
    if shape == "triangle":
        # Apex at the top centre, base along the bottom row
        inside = np.abs(cols - half) <= rows / 2.0 + 0.25
        return inside.astype(np.uint8)
    raise InvalidArgumentError(f"Unknown shape: {shape}")


def _offset(position: int, count: int, side: int, largest: int, image_size: int):
    spacing = max(1, (image_size - largest) // (count - 1))
    start = position * spacing
    return start, start + side > image_size


def generate_synthetic(
    grid: SyntheticGrid | None = None, image_size: int = 16, seed: int = 0
) -> FactorDataset:
    """Render every factor combination of the grid once.

    Factors are (shape, scale, pos_x, pos_y) with dropped factors omitted; the
    row order is the Cartesian product with pos_y varying fastest.
    """
    grid = grid or SyntheticGrid()
    if image_size not in IMAGE_SIZES:
        raise InvalidArgumentError(
            f"image_size must be one of {IMAGE_SIZES}, got {image_size}"
        )

    names: list[str] = []
    sizes: list[int] = []
    if grid.shapes is not None:
        names.append("shape")
        sizes.append(grid.shapes)
    if grid.scales is not None:
        names.append("scale")
        sizes.append(grid.scales)
    names += ["pos_x", "pos_y"]
    sizes += [grid.positions_x, grid.positions_y]

    sides = side_lengths(grid.scales, image_size)
    largest = max(sides)
    shapes = SHAPE_NAMES[: grid.shapes] if grid.shapes is not None else SHAPE_NAMES[:1]
    masks = {(s, side): shape_mask(s, side) for s in shapes for side in sides}

    combos = list(itertools.product(*(range(size) for size in sizes)))
    images = np.zeros((len(combos), 1, image_size, image_size), dtype=np.uint8)
    warnings: list[str] = []
    for row, combo in enumerate(combos):
        values = dict(zip(names, combo))
        shape = shapes[values.get("shape", 0)]
        side = sides[values.get("scale", len(sides) - 1)]
        left, clip_x = _offset(values["pos_x"], grid.positions_x, side, largest, image_size)
        top, clip_y = _offset(values["pos_y"], grid.positions_y, side, largest, image_size)
        if clip_x or clip_y:
            left = min(left, image_size - side)
            top = min(top, image_size - side)
            warnings.append(f"row {row}: shape clamped to image bounds at {combo}")
        images[row, 0, top : top + side, left : left + side] = masks[(shape, side)]

    if warnings:
        logger.warning(
            f"{len(warnings)} rendered shapes overflowed the image and were clamped"
        )
    # Rendering is deterministic; seed is recorded for the manifest
    logger.debug(
        f"Synthetic dataset: {len(combos)} images {image_size}x{image_size}, "
        f"factors {dict(zip(names, sizes))}, seed={seed}"
    )
    return FactorDataset(
        torch.from_numpy(images),
        torch.tensor(combos, dtype=torch.long),
        sizes,
        names,
        warnings,
        seed=seed,
    )
