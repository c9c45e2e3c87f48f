# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from dataclasses import dataclass, field
from pathlib import Path

import torch

from ..composition import compose, prediction_loss
from ..constants import LOSS_LOG_FILE
from ..data import FactorDataset, load_dataset
from ..equivariance import (
    LossBreakdown,
    decoder_equiv_loss,
    encoder_equiv_loss,
    total_objective,
)
from ..exceptions import ConfigurationError, NumericalError
from ..logging import get_logger
from ..symmetry import (
    commutativity_loss,
    parallel_loss,
    perpendicular_loss,
    sparsity_loss,
)
from ..types import ObjectiveConfig
from ..vae import (
    CFASLModel,
    EncoderOutput,
    elbo_beta_tcvae,
    gaussian_kl,
    make_pair_batch,
    reconstruction_loss,
    reparameterize,
)
from .checkpoint import Checkpoint, checkpoint_path, load_checkpoint, save_checkpoint
from .config import RunConfig
from .tracking import LossLog

logger = get_logger("training")


def build_model(config: RunConfig, channels: int = 1) -> CFASLModel:
    """Fresh model for a config; weights are deterministic in config.seed."""
    torch.manual_seed(config.seed)
    return CFASLModel(
        image_size=config.dataset.image_size,
        channels=channels,
        latent_dim=config.latent_dim,
        num_sections=config.num_sections,
        elements_per_section=config.elements_per_section,
        codebook_scale=config.codebook_scale,
        seed=config.seed,
    )


def restore_model(checkpoint: Checkpoint, channels: int | None = None) -> CFASLModel:
    """Eval-mode model from a checkpoint; channels default to the stored encoder's."""
    if channels is None:
        channels = checkpoint.channels
    model = build_model(checkpoint.config, channels)
    model.load_state_dict(checkpoint.model_state)
    model.eval()
    return model


@dataclass
class TrainResult:
    final_step: int
    checkpoints: list[Path] = field(default_factory=list)
    loss_log: Path | None = None
    last_losses: dict[str, float] = field(default_factory=dict)


class Trainer:
    """Single-process CFASL training loop.

    One torch.Generator drives every random draw (mini-batches, pairing,
    reparameterization, Gumbel noise, pair sampling in the codebook losses),
    and its state travels with each checkpoint.
    """

    def __init__(self, config: RunConfig, dataset: FactorDataset | None = None):
        self.config = config
        self.dataset = dataset if dataset is not None else load_dataset(config.dataset)
        if self.dataset.image_size != config.dataset.image_size:
            raise ConfigurationError(
                f"dataset images are {self.dataset.image_size}px, config says "
                f"{config.dataset.image_size}px"
            )
        if len(self.dataset) < config.batch_size:
            raise ConfigurationError(
                f"batch_size {config.batch_size} exceeds dataset size {len(self.dataset)}"
            )

        self.objective = self._resolve_objective(config.objective)
        self.model = build_model(config, self.dataset.channels)
        self.optimizer = torch.optim.Adam(self.model.parameters(), lr=config.learning_rate)
        self.generator = torch.Generator().manual_seed(config.seed)
        self.step = 0
        self.output_dir = Path(config.output_dir)
        self.loss_log = LossLog(self.output_dir / LOSS_LOG_FILE)

    def _resolve_objective(self, objective: ObjectiveConfig) -> ObjectiveConfig:
        if objective.kind == "beta_tcvae" and objective.dataset_size is None:
            return objective.model_copy(update={"dataset_size": len(self.dataset)})
        return objective

    def resume(self, path: str | Path) -> None:
        checkpoint = load_checkpoint(path)
        self.model.load_state_dict(checkpoint.model_state)
        self.optimizer.load_state_dict(checkpoint.optimizer_state)
        self.generator.set_state(checkpoint.generator_state)
        self.step = checkpoint.step
        logger.info(f"Resumed from {path} at step {self.step}")

    def _vae_terms(
        self, x: torch.Tensor, out: EncoderOutput, z: torch.Tensor
    ) -> tuple[torch.Tensor, dict[str, float]]:
        logits = self.model.decode_logits(z)
        if self.objective.kind == "beta_tcvae":
            loss, terms = elbo_beta_tcvae(x, logits, out, z, self.objective)
            return loss, terms.as_dict()
        recon = reconstruction_loss(x, logits, self.objective.likelihood)
        kl = gaussian_kl(out)
        loss = recon + self.objective.beta * kl
        return loss, {"reconstruction": float(recon), "kl": float(kl)}

    def compute_losses(self, rows: torch.Tensor) -> LossBreakdown:
        """Losses of one mini-batch of dataset rows (no optimizer update)."""
        config = self.config
        images = self.dataset.get_images(rows)
        pairs = make_pair_batch(images, self.generator)
        x = torch.cat([pairs.first_half, pairs.second_half])
        half = len(pairs)

        out = self.model.encode(x)
        z = reparameterize(out, self.generator)
        vae, extras = self._vae_terms(x, out, z)

        first, second = out[:half], out[half:]
        stats = self.model.pair_statistics(first, second)
        composite = compose(
            self.model.codebook,
            self.model.heads,
            stats,
            config.threshold,
            config.gumbel_temperature,
            self.generator,
        )
        mu1 = first.mu.detach()
        codebook = self.model.codebook

        components: dict[str, torch.Tensor] = {"vae": vae}
        if config.is_enabled("parallel"):
            components["parallel"] = parallel_loss(
                codebook, mu1, config.pair_budget, self.generator, config.parallel_form
            )
        if config.is_enabled("perpendicular") and codebook.num_sections > 1:
            components["perpendicular"] = perpendicular_loss(
                codebook,
                mu1,
                config.perpendicular_pairs,
                self.generator,
                config.perp_form,
            )
        if config.is_enabled("sparsity"):
            components["sparsity"] = sparsity_loss(codebook, mu1)
        if config.is_enabled("commutative"):
            components["commutative"] = commutativity_loss(codebook)
        if config.is_enabled("prediction"):
            components["prediction"] = prediction_loss(
                stats, self.model.heads, composite.target
            )
        if config.is_enabled("encoder_equiv"):
            components["encoder_equiv"] = encoder_equiv_loss(
                first.mu, second.mu, composite
            )
        if config.is_enabled("decoder_equiv") and config.epsilon > 0:
            components["decoder_equiv"] = decoder_equiv_loss(
                pairs.second_half, first.mu, composite, self.model.decode
            )

        mask = dict(config.ablation_mask)
        if codebook.num_sections == 1:
            mask["perpendicular"] = False
        if config.epsilon == 0:
            mask["decoder_equiv"] = False
        breakdown = total_objective(components, config.loss_weights, mask, config.epsilon)
        breakdown.extras.update(extras)
        return breakdown

    def _dump_and_raise(self, breakdown: LossBreakdown, rows: torch.Tensor, name: str):
        dump = self.output_dir / f"nan-step-{self.step + 1}.pt"
        dump.parent.mkdir(parents=True, exist_ok=True)
        torch.save(
            {
                "step": self.step + 1,
                "loss_name": name,
                "rows": rows,
                "losses": breakdown.as_dict(),
            },
            dump,
        )
        raise NumericalError(
            "non-finite loss, training aborted",
            loss_name=name,
            step=self.step + 1,
            batch_indices=rows.tolist(),
            dump_path=dump,
        )

    def train_step(self) -> LossBreakdown:
        self.model.train()
        rows = torch.randperm(len(self.dataset), generator=self.generator)
        rows = rows[: self.config.batch_size]
        breakdown = self.compute_losses(rows)

        bad = breakdown.first_non_finite()
        if bad is not None:
            self._dump_and_raise(breakdown, rows, bad)

        self.optimizer.zero_grad()
        breakdown.total.backward()
        self.optimizer.step()
        self.step += 1
        return breakdown

    def save(self) -> Path:
        return save_checkpoint(
            checkpoint_path(self.output_dir, self.step),
            self.model,
            self.optimizer,
            self.config,
            self.step,
            self.generator,
        )

    def train(self, resume: str | Path | None = None) -> TrainResult:
        config = self.config
        if resume is not None:
            self.resume(resume)
            self.loss_log.truncate_after(self.step)
        self.loss_log.open(append=resume is not None)

        logger.info(
            f"Training {config.steps} steps: |S|={config.num_sections} "
            f"|SS|={config.elements_per_section} (|G|={config.codebook_size}) "
            f"D={config.latent_dim} objective={self.objective.kind} "
            f"dataset={len(self.dataset)} images"
        )
        result = TrainResult(final_step=self.step, loss_log=self.loss_log.path)
        if self.step == 0 and config.steps == 0:
            result.checkpoints.append(self.save())
            return result

        while self.step < config.steps:
            breakdown = self.train_step()
            row = self.loss_log.record(self.step, breakdown)
            if self.step % config.log_every == 0:
                logger.info(
                    f"step {self.step}/{config.steps} total={row.values['total']:.4f} "
                    f"vae={row.values['vae']:.4f}"
                )
            if self.step % config.checkpoint_every == 0 or self.step == config.steps:
                result.checkpoints.append(self.save())
            result.last_losses = row.values

        result.final_step = self.step
        return result
