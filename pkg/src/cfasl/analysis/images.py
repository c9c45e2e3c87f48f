# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from pathlib import Path
from typing import Any

import numpy as np
import torch

from ..exceptions import InvalidArgumentError, check_optional_dependency
from .exporters import write_json

check_optional_dependency("PIL", "PNG export", "analysis")
from PIL import Image  # noqa: E402


def to_pil(image: torch.Tensor) -> Image.Image:
    """(C, H, W) tensor in [0, 1] with C in {1, 3} to an 8-bit image."""
    if image.dim() != 3 or image.shape[0] not in (1, 3):
        raise InvalidArgumentError(f"expected a (1|3, H, W) image, got {tuple(image.shape)}")
    pixels = (image.detach().cpu().clamp(0.0, 1.0) * 255.0).round().to(torch.uint8)
    array = pixels.permute(1, 2, 0).numpy()
    if array.shape[-1] == 1:
        return Image.fromarray(np.ascontiguousarray(array[..., 0]))
    return Image.fromarray(np.ascontiguousarray(array))


def save_png(image: torch.Tensor, path: str | Path) -> Path:
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    to_pil(image).save(output_path, format="PNG")
    return output_path


def export_frames(
    frames: list[torch.Tensor],
    directory: str | Path,
    stem: str,
    metadata: dict[str, Any] | None = None,
) -> list[Path]:
    """Write frames as <stem>_<index>.png plus a <stem>.json sidecar."""
    directory = Path(directory)
    paths = [
        save_png(frame, directory / f"{stem}_{index:02d}.png")
        for index, frame in enumerate(frames)
    ]
    write_json(
        {"frames": [p.name for p in paths], **(metadata or {})},
        directory / f"{stem}.json",
    )
    return paths
