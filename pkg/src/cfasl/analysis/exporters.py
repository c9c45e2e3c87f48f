# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import csv
import json
from pathlib import Path
from typing import Any

from .latents import EigenHeatmap, ScatterTable


def write_json(payload: dict[str, Any], path: str | Path) -> Path:
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(json.dumps(payload, indent=2))
    return output_path


def export_scatter_csv(table: ScatterTable, path: str | Path) -> Path:
    """One row per image: dataset row, three latent coordinates, color label."""
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with output_path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(
            ["row", *(f"z{d}" for d in table.dims), table.color_factor]
        )
        for row, coords, label in zip(table.rows, table.coordinates, table.labels):
            writer.writerow([int(row), *(f"{c:.6g}" for c in coords), int(label)])
    return output_path


def export_heatmap_csv(heatmap: EigenHeatmap, path: str | Path) -> Path:
    """Latent dimension per row, principal component per column.

    A JSON sidecar next to the CSV carries the eigenvalues and one-hotness.
    """
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    vectors = heatmap.eigenvectors
    with output_path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["dim", *(f"pc{i}" for i in range(vectors.shape[1]))])
        for dim, values in enumerate(vectors):
            writer.writerow([dim, *(f"{v:.6g}" for v in values)])
    write_json(
        {
            "eigenvalues": heatmap.eigenvalues.tolist(),
            "one_hotness": heatmap.one_hotness,
        },
        output_path.with_suffix(".json"),
    )
    return output_path
