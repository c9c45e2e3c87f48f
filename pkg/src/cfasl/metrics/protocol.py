# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from collections import Counter
from collections.abc import Callable, Hashable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import torch

from ..data import FactorDataset
from ..exceptions import DegenerateRepresentationError, InvalidArgumentError
from ..logging import get_logger

logger = get_logger("metrics.protocol")

Representation = Callable[[torch.Tensor], torch.Tensor]
TrialFn = Callable[[torch.Generator], Hashable]

# Global statistics draw at most this many passes over the dataset
GLOBAL_SAMPLE_PASSES = 4


@dataclass(frozen=True)
class GlobalStatistics:
    """Per-dimension spread of the representation over the whole dataset."""

    variance: np.ndarray
    std: np.ndarray
    active_dims: np.ndarray


def encode_numpy(representation: Representation, images: torch.Tensor) -> np.ndarray:
    with torch.no_grad():
        latents = representation(images)
    latents = torch.as_tensor(latents).detach().cpu().to(torch.float64).numpy()
    if latents.ndim != 2 or latents.shape[0] != images.shape[0]:
        raise InvalidArgumentError(
            f"representation returned shape {latents.shape}, expected "
            f"({images.shape[0]}, D)"
        )
    return latents


def global_statistics(
    representation: Representation,
    ds: FactorDataset,
    num_samples: int,
    prune_threshold: float,
    generator: torch.Generator | None = None,
) -> GlobalStatistics:
    """Estimate global variance and prune dimensions whose raw variance is below threshold."""
    num_samples = min(num_samples, GLOBAL_SAMPLE_PASSES * len(ds))
    rows = torch.randint(len(ds), (max(num_samples, 2),), generator=generator)
    latents = encode_numpy(representation, ds.get_images(rows))
    variance = latents.var(axis=0, ddof=1)
    active = np.flatnonzero(variance >= prune_threshold)
    pruned = latents.shape[1] - len(active)
    if pruned:
        logger.warning(
            f"Pruned {pruned} of {latents.shape[1]} dimensions with variance "
            f"< {prune_threshold}"
        )
    if len(active) == 0:
        raise DegenerateRepresentationError(
            f"all {latents.shape[1]} latent dimensions pruned "
            f"(variance < {prune_threshold})"
        )
    return GlobalStatistics(variance=variance, std=np.sqrt(variance), active_dims=active)


def normalize_latents(latents: np.ndarray, global_std: np.ndarray) -> np.ndarray:
    """Divide every dimension by its global standard deviation."""
    latents = np.asarray(latents, dtype=np.float64)
    global_std = np.asarray(global_std, dtype=np.float64)
    if latents.ndim != 2 or global_std.shape != (latents.shape[1],):
        raise InvalidArgumentError(
            f"latents {latents.shape} and global_std {global_std.shape} do not match"
        )
    if not (global_std > 0).all():
        zero = np.flatnonzero(~(global_std > 0)).tolist()
        raise DegenerateRepresentationError(f"zero global std in dimensions {zero}")
    return latents / global_std


def trial_generators(seed: int, trials: int) -> list[torch.Generator]:
    """One independent torch generator per trial, spawned from a SeedSequence."""
    children = np.random.SeedSequence(seed).spawn(trials)
    seeds = [int(child.generate_state(1, dtype=np.uint64)[0] >> 1) for child in children]
    return [torch.Generator().manual_seed(seed) for seed in seeds]


def run_trials(
    trial: TrialFn, trials: int, seed: int, max_workers: int | None = None
) -> Counter:
    """Tally the outcome of every trial; independent of max_workers."""
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    generators = trial_generators(seed, trials)
    if max_workers is None or max_workers <= 1:
        return Counter(trial(generator) for generator in generators)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return Counter(pool.map(trial, generators))


def check_protocol(ds: FactorDataset, samples_per_vote: int, prune_threshold: float):
    if ds.num_factors < 2:
        raise InvalidArgumentError(
            f"metric needs a dataset with >= 2 factors, got {ds.num_factors}"
        )
    if samples_per_vote < 2:
        raise InvalidArgumentError(
            f"samples_per_vote must be >= 2, got {samples_per_vote}"
        )
    if prune_threshold < 0:
        raise InvalidArgumentError(
            f"prune_threshold must be >= 0, got {prune_threshold}"
        )
