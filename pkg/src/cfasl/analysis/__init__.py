# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import importlib
from typing import TYPE_CHECKING

from ..exceptions import check_optional_dependency
from .exporters import export_heatmap_csv, export_scatter_csv, write_json
from .latents import (
    EigenHeatmap,
    ScatterTable,
    eigen_decomposition,
    eigenvector_heatmap,
    latent_scatter_export,
    one_hotness,
    rank_dimensions_by_kl,
)
from .traversal import (
    DecompositionRecord,
    ReplayRecord,
    TraversalRecord,
    composite_decomposition,
    dimension_swap_traversal,
    sequential_symmetry_replay,
)

# PNG exports need the analysis extra (pillow)
_LAZY_IMPORTS_DATA: dict[str, tuple[str, str | None, str | None]] = {
    "export_frames": ("cfasl.analysis.images", "PIL", "analysis"),
    "save_png": ("cfasl.analysis.images", "PIL", "analysis"),
}

if TYPE_CHECKING:
    from cfasl.analysis.images import export_frames, save_png


def __getattr__(name: str):
    """Lazy import for PNG export with a helpful error when pillow is missing."""
    if name in _LAZY_IMPORTS_DATA:
        module_path, package, extra = _LAZY_IMPORTS_DATA[name]
        if package is not None:
            check_optional_dependency(package, name, extra)
        module = importlib.import_module(module_path)
        return getattr(module, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "DecompositionRecord",
    "EigenHeatmap",
    "ReplayRecord",
    "ScatterTable",
    "TraversalRecord",
    "composite_decomposition",
    "dimension_swap_traversal",
    "eigen_decomposition",
    "eigenvector_heatmap",
    "export_frames",
    "export_heatmap_csv",
    "export_scatter_csv",
    "latent_scatter_export",
    "one_hotness",
    "rank_dimensions_by_kl",
    "save_png",
    "sequential_symmetry_replay",
    "write_json",
]
