# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from collections import Counter, defaultdict
from typing import Any

import numpy as np
import torch

from ..constants import (
    DEFAULT_FVM_TRIALS,
    DEFAULT_PRUNE_THRESHOLD,
    DEFAULT_SAMPLES_PER_VOTE,
    DEFAULT_SEED,
    METRIC_FVM,
    METRIC_MFVM,
)
from ..data import FactorDataset, random_query, sample_with_fixed_factors
from ..exceptions import DegenerateRepresentationError, InvalidArgumentError
from ..logging import get_logger
from ..types import MetricReport
from .protocol import (
    GlobalStatistics,
    Representation,
    check_protocol,
    encode_numpy,
    global_statistics,
    normalize_latents,
    run_trials,
)

logger = get_logger("metrics")

METRICS = (METRIC_FVM, METRIC_MFVM)


def modal_accuracy(tally: Counter) -> float:
    """Sum over keys of the most frequent paired value, divided by all votes.

    tally maps (key, value) -> count; each key is classified as its modal value.
    """
    total = sum(tally.values())
    if total == 0:
        return 0.0
    best: dict[Any, int] = defaultdict(int)
    for (key, _), count in tally.items():
        best[key] = max(best[key], count)
    return sum(best.values()) / total


def _lowest_std_dims(
    representation: Representation,
    images: torch.Tensor,
    stats: GlobalStatistics,
    k: int,
) -> tuple[int, ...]:
    latents = encode_numpy(representation, images)[:, stats.active_dims]
    normalized = normalize_latents(latents, stats.std[stats.active_dims])
    spread = normalized.std(axis=0, ddof=1)
    order = np.argsort(spread, kind="stable")[:k]
    return tuple(sorted(int(stats.active_dims[i]) for i in order))


def collect_votes(
    representation: Representation,
    ds: FactorDataset,
    k: int,
    trials: int,
    samples_per_vote: int,
    stats: GlobalStatistics,
    seed: int,
    max_workers: int | None = None,
) -> Counter:
    """(fixed factor subset, k lowest-std dimension subset) -> number of trials."""
    if len(stats.active_dims) < k:
        raise DegenerateRepresentationError(
            f"only {len(stats.active_dims)} active dimensions, need k={k}"
        )

    def trial(generator: torch.Generator):
        query = random_query(ds, k, generator)
        images, _ = sample_with_fixed_factors(ds, query, samples_per_vote, generator)
        dims = _lowest_std_dims(representation, images, stats, k)
        return query.fixed_factors, dims

    return run_trials(trial, trials, seed, max_workers)


def fvm(
    representation: Representation,
    ds: FactorDataset,
    trials: int = DEFAULT_FVM_TRIALS,
    samples_per_vote: int = DEFAULT_SAMPLES_PER_VOTE,
    prune_threshold: float = DEFAULT_PRUNE_THRESHOLD,
    seed: int = DEFAULT_SEED,
    global_samples: int | None = None,
    max_workers: int | None = None,
    config: dict[str, Any] | None = None,
) -> MetricReport:
    """Factor-VAE metric: majority-vote accuracy of fixed factor -> argmin-variance dimension.

    Args:
        representation: Maps (n, C, H, W) images to (n, D) posterior means
        ds: Dataset with ground-truth factors
        trials: Number of votes
        samples_per_vote: Images per vote, all sharing one fixed factor
        prune_threshold: Dimensions with global variance below this are ignored
        seed: Seed of the per-trial RNG streams
        global_samples: Images used for the global variance estimate
        max_workers: Run votes on a thread pool of this size
        config: Run configuration snapshot stored in the report
    """
    check_protocol(ds, samples_per_vote, prune_threshold)
    stats = global_statistics(
        representation,
        ds,
        global_samples or samples_per_vote * trials,
        prune_threshold,
        torch.Generator().manual_seed(seed),
    )
    tally = collect_votes(
        representation, ds, 1, trials, samples_per_vote, stats, seed, max_workers
    )
    # Classify each argmin dimension as its most frequent factor
    by_dimension = Counter(
        {(dims[0], factors[0]): count for (factors, dims), count in tally.items()}
    )
    score = modal_accuracy(by_dimension)
    logger.info(f"FVM = {score:.4f} over {trials} votes")
    return MetricReport(
        name=METRIC_FVM,
        score=score,
        trials=trials,
        prune_threshold=prune_threshold,
        votes_per_trial=samples_per_vote,
        seed=seed,
        active_dims=stats.active_dims.tolist(),
        config=config,
    )


def m_fvm(
    representation: Representation,
    ds: FactorDataset,
    k: int,
    trials: int = DEFAULT_FVM_TRIALS,
    samples_per_vote: int = DEFAULT_SAMPLES_PER_VOTE,
    prune_threshold: float = DEFAULT_PRUNE_THRESHOLD,
    seed: int = DEFAULT_SEED,
    global_samples: int | None = None,
    max_workers: int | None = None,
    config: dict[str, Any] | None = None,
) -> MetricReport:
    """Multi-factor FVM: fix k factors per trial and vote with the k lowest-std dimensions.

    The score sums, over every observed factor subset, the count of its most
    frequent dimension subset, divided by the number of trials.
    """
    if not 2 <= k <= ds.num_factors - 1:
        raise InvalidArgumentError(
            f"k must be in [2, {ds.num_factors - 1}] for {ds.num_factors} factors, got {k}"
        )
    check_protocol(ds, samples_per_vote, prune_threshold)
    stats = global_statistics(
        representation,
        ds,
        global_samples or samples_per_vote * trials,
        prune_threshold,
        torch.Generator().manual_seed(seed),
    )
    tally = collect_votes(
        representation, ds, k, trials, samples_per_vote, stats, seed, max_workers
    )
    score = modal_accuracy(tally)
    logger.info(f"m-FVM_{k} = {score:.4f} over {trials} trials")
    return MetricReport.for_multi_factor(
        name=METRIC_MFVM,
        score=score,
        k=k,
        trials=trials,
        prune_threshold=prune_threshold,
        votes_per_trial=samples_per_vote,
        seed=seed,
        active_dims=stats.active_dims.tolist(),
        config=config,
    )


def evaluate_metric(
    name: str,
    representation: Representation,
    ds: FactorDataset,
    k: int | None = None,
    **kwargs: Any,
) -> MetricReport:
    """Dispatch by metric name; k is required for m_fvm and rejected for fvm."""
    if name == METRIC_FVM:
        if k not in (None, 1):
            raise InvalidArgumentError(f"metric '{METRIC_FVM}' does not take k (got {k})")
        return fvm(representation, ds, **kwargs)
    if name == METRIC_MFVM:
        if k is None:
            raise InvalidArgumentError(f"metric '{METRIC_MFVM}' requires k")
        return m_fvm(representation, ds, k, **kwargs)
    raise InvalidArgumentError(
        f"Unknown metric: {name}. Valid metrics: {', '.join(METRICS)}"
    )
