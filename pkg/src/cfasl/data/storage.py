# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import zipfile
from pathlib import Path

import numpy as np
import torch
from pydantic import ValidationError

from ..constants import (
    DSPRITES_FACTOR_NAMES,
    DSPRITES_FACTOR_SIZES,
    DSPRITES_NUM_IMAGES,
    SYNTHETIC_FACTORS,
    SYNTHETIC_IMAGES,
    SYNTHETIC_MANIFEST,
)
from ..exceptions import CorruptArchiveError
from ..logging import get_logger
from ..types import SyntheticManifest
from .dataset import FactorDataset

logger = get_logger("data.storage")


def save_synthetic(ds: FactorDataset, directory: str | Path) -> Path:
    """Write manifest.json plus little-endian float32 images and int32 factors."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = SyntheticManifest(
        factor_names=list(ds.factor_names),
        factor_sizes=list(ds.factor_sizes),
        image_size=ds.image_size,
        channels=ds.channels,
        num_images=len(ds),
        seed=ds.seed,
        images_file=SYNTHETIC_IMAGES,
        factors_file=SYNTHETIC_FACTORS,
    )
    ds.all_images().numpy().astype("<f4").tofile(directory / manifest.images_file)
    ds.factors.numpy().astype("<i4").tofile(directory / manifest.factors_file)
    (directory / SYNTHETIC_MANIFEST).write_text(manifest.model_dump_json(indent=2))
    logger.info(f"Saved {len(ds)} images to {directory}")
    return directory


def _read_flat(path: Path, dtype: str, count: int, root: Path) -> np.ndarray:
    if not path.is_file():
        raise CorruptArchiveError(f"missing data file {path.name}", root)
    values = np.fromfile(path, dtype=dtype)
    if values.size != count:
        raise CorruptArchiveError(
            f"{path.name} holds {values.size} values, expected {count}", root
        )
    return values


def load_synthetic(directory: str | Path) -> FactorDataset:
    directory = Path(directory)
    manifest_path = directory / SYNTHETIC_MANIFEST
    if not manifest_path.is_file():
        raise CorruptArchiveError(f"missing {SYNTHETIC_MANIFEST}", directory)
    try:
        manifest = SyntheticManifest.model_validate_json(manifest_path.read_text())
    except ValidationError as e:
        raise CorruptArchiveError(f"invalid manifest: {e}", directory) from e

    shape = (
        manifest.num_images,
        manifest.channels,
        manifest.image_size,
        manifest.image_size,
    )
    images = _read_flat(
        directory / manifest.images_file,
        manifest.images_dtype,
        int(np.prod(shape)),
        directory,
    ).reshape(shape)
    factors = _read_flat(
        directory / manifest.factors_file,
        manifest.factors_dtype,
        manifest.num_images * len(manifest.factor_sizes),
        directory,
    ).reshape(manifest.num_images, len(manifest.factor_sizes))

    try:
        dataset = FactorDataset(
            torch.from_numpy(images.astype(np.float32)),
            torch.from_numpy(factors.astype(np.int64)),
            manifest.factor_sizes,
            manifest.factor_names,
            seed=manifest.seed,
        )
    except ValueError as e:
        raise CorruptArchiveError(str(e), directory) from e
    logger.debug(f"Loaded {len(dataset)} images from {directory}")
    return dataset


def load_dsprites(path: str | Path, validate_counts: bool = True) -> FactorDataset:
    """Load the dSprites .npz archive (keys imgs and latents_classes).

    The latents_classes column for color is dropped; images stay uint8 and are
    cast to [0, 1] floats on access.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"dSprites archive not found: {path}")
    try:
        with np.load(path, allow_pickle=False) as archive:
            missing = {"imgs", "latents_classes"} - set(archive.files)
            if missing:
                raise CorruptArchiveError(
                    f"missing arrays: {', '.join(sorted(missing))}", path
                )
            images = archive["imgs"]
            classes = archive["latents_classes"]
    except (zipfile.BadZipFile, ValueError, OSError, EOFError) as e:
        raise CorruptArchiveError(f"unreadable archive: {e}", path) from e

    if images.ndim != 3 or classes.ndim != 2 or classes.shape[1] != 6:
        raise CorruptArchiveError(
            f"unexpected array shapes imgs={images.shape} "
            f"latents_classes={classes.shape}",
            path,
        )
    if images.shape[0] != classes.shape[0]:
        raise CorruptArchiveError("imgs and latents_classes row counts differ", path)
    if validate_counts and images.shape[0] != DSPRITES_NUM_IMAGES:
        raise CorruptArchiveError(
            f"expected {DSPRITES_NUM_IMAGES} images, found {images.shape[0]}", path
        )

    factors = classes[:, 1:].astype(np.int64)
    try:
        dataset = FactorDataset(
            torch.from_numpy(images.astype(np.uint8)).unsqueeze(1),
            torch.from_numpy(factors),
            DSPRITES_FACTOR_SIZES,
            DSPRITES_FACTOR_NAMES,
        )
    except ValueError as e:
        raise CorruptArchiveError(str(e), path) from e
    logger.info(f"Loaded dSprites: {len(dataset)} images from {path}")
    return dataset
