# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from pathlib import Path
from typing import Any, Literal

from pydantic import Field, ValidationError, model_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    TomlConfigSettingsSource,
)

from ..constants import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_CHECKPOINT_EVERY,
    DEFAULT_CODEBOOK_SCALE,
    DEFAULT_EPSILON,
    DEFAULT_GUMBEL_TEMPERATURE,
    DEFAULT_LATENT_DIM,
    DEFAULT_LEARNING_RATE,
    DEFAULT_LOG_EVERY,
    DEFAULT_PAIR_BUDGET,
    DEFAULT_PERPENDICULAR_PAIRS,
    DEFAULT_SEED,
    DEFAULT_STEPS,
    DEFAULT_THRESHOLD,
)
from ..equivariance import LOSS_TERMS
from ..exceptions import ConfigurationError
from ..types import DatasetSpec, ObjectiveConfig


class RunConfig(BaseSettings):
    """Everything a training run depends on.

    Sources by priority: explicit overrides, CFASL_* environment variables
    (nested with "__", e.g. CFASL_OBJECTIVE__BETA), then the TOML file.
    """

    # Data and objective
    dataset: DatasetSpec = Field(default_factory=DatasetSpec)
    objective: ObjectiveConfig = Field(default_factory=ObjectiveConfig)

    # Codebook
    latent_dim: int = Field(default=DEFAULT_LATENT_DIM, ge=1)
    num_sections: int | None = Field(
        default=None, ge=1, description="|S|; defaults to latent_dim"
    )
    elements_per_section: int | None = Field(
        default=None, ge=1, description="|SS|; defaults to latent_dim"
    )
    codebook_scale: float = Field(default=DEFAULT_CODEBOOK_SCALE, ge=0.0)
    pair_budget: int = Field(default=DEFAULT_PAIR_BUDGET, ge=1)
    perpendicular_pairs: int = Field(default=DEFAULT_PERPENDICULAR_PAIRS, ge=1)
    parallel_form: Literal["neg_log_cos"] = "neg_log_cos"
    perp_form: Literal["cos_sq", "abs_cos"] = Field(
        default="cos_sq", description="Penalty on cross-section cosine"
    )

    # Composition
    epsilon: float = Field(default=DEFAULT_EPSILON, ge=0.0)
    threshold: float = Field(default=DEFAULT_THRESHOLD, gt=0.0)
    gumbel_temperature: float = Field(default=DEFAULT_GUMBEL_TEMPERATURE, gt=0.0)

    # Loss selection
    ablation_mask: dict[str, bool] = Field(default_factory=dict)
    loss_weights: dict[str, float] = Field(default_factory=dict)

    # Optimization
    learning_rate: float = Field(default=DEFAULT_LEARNING_RATE, gt=0.0)
    batch_size: int = Field(default=DEFAULT_BATCH_SIZE, ge=2)
    steps: int = Field(default=DEFAULT_STEPS, ge=0)
    seed: int = Field(default=DEFAULT_SEED)

    # Output
    output_dir: Path = Field(default=Path("runs/cfasl"))
    log_every: int = Field(default=DEFAULT_LOG_EVERY, ge=1)
    checkpoint_every: int = Field(default=DEFAULT_CHECKPOINT_EVERY, ge=1)

    model_config = SettingsConfigDict(
        env_prefix="CFASL_",
        env_nested_delimiter="__",
        extra="forbid",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return init_settings, env_settings, TomlConfigSettingsSource(settings_cls)

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunConfig":
        if self.batch_size % 2:
            raise ValueError(f"batch_size must be even, got {self.batch_size}")
        if self.num_sections is None:
            self.num_sections = self.latent_dim
        if self.elements_per_section is None:
            self.elements_per_section = self.latent_dim
        if self.num_sections != self.latent_dim:
            raise ValueError(
                f"num_sections must equal latent_dim ({self.latent_dim}), "
                f"got {self.num_sections}"
            )
        for name, mapping in (
            ("ablation_mask", self.ablation_mask),
            ("loss_weights", self.loss_weights),
        ):
            unknown = sorted(set(mapping) - set(LOSS_TERMS))
            if unknown:
                raise ValueError(
                    f"unknown loss name(s) in {name}: {', '.join(unknown)}; "
                    f"valid names: {', '.join(LOSS_TERMS)}"
                )
        return self

    @property
    def codebook_size(self) -> int:
        return self.num_sections * self.elements_per_section

    def is_enabled(self, term: str) -> bool:
        return self.ablation_mask.get(term, True) and self.loss_weights.get(term, 1.0) != 0

    def snapshot(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


def load_run_config(
    path: str | Path | None = None, overrides: dict[str, Any] | None = None
) -> RunConfig:
    """Resolve a RunConfig from a TOML file, the environment and CLI overrides.

    Raises:
        FileNotFoundError: If path is given but does not exist
        ConfigurationError: If the merged values do not validate
    """
    settings_cls = RunConfig
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"config file not found: {path}")

        class FileRunConfig(RunConfig):
            model_config = SettingsConfigDict(toml_file=path)

        settings_cls = FileRunConfig

    try:
        return settings_cls(**(overrides or {}))
    except ValidationError as e:
        raise ConfigurationError(f"invalid run configuration: {e}") from e
    except ValueError as e:
        # Malformed TOML surfaces as tomllib.TOMLDecodeError (a ValueError)
        raise ConfigurationError(f"cannot read config {path}: {e}") from e


def config_from_snapshot(snapshot: dict[str, Any]) -> RunConfig:
    """Rebuild the exact config stored in a checkpoint, ignoring the environment."""
    try:
        return RunConfig.model_validate(snapshot)
    except ValidationError as e:
        raise ConfigurationError(f"invalid stored configuration: {e}") from e
