# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import csv
import json

import numpy as np
import pytest
import torch

from cfasl.analysis import (
    EigenHeatmap,
    ScatterTable,
    export_heatmap_csv,
    export_scatter_csv,
    write_json,
)
from cfasl.exceptions import InvalidArgumentError


def read_rows(path):
    with path.open(newline="") as f:
        return list(csv.reader(f))


class TestScatterCsv:
    def test_layout(self, tmp_path):
        table = ScatterTable(
            dims=(4, 0, 2),
            coordinates=np.array([[0.5, -1.25, 2.0], [1.0, 0.0, 3.5]]),
            labels=np.array([3, 1]),
            color_factor="pos_x",
            rows=np.array([10, 42]),
        )
        path = export_scatter_csv(table, tmp_path / "nested" / "scatter.csv")

        assert read_rows(path) == [
            ["row", "z4", "z0", "z2", "pos_x"],
            ["10", "0.5", "-1.25", "2", "3"],
            ["42", "1", "0", "3.5", "1"],
        ]


class TestHeatmapCsv:
    def test_csv_and_sidecar(self, tmp_path):
        heatmap = EigenHeatmap(
            eigenvectors=np.eye(3)[:, :2],
            eigenvalues=np.array([2.0, 0.5]),
            one_hotness=1.0,
        )
        path = export_heatmap_csv(heatmap, tmp_path / "heatmap.csv")

        rows = read_rows(path)
        assert rows[0] == ["dim", "pc0", "pc1"]
        assert rows[1] == ["0", "1", "0"]
        assert len(rows) == 4
        sidecar = json.loads((tmp_path / "heatmap.json").read_text())
        assert sidecar == {"eigenvalues": [2.0, 0.5], "one_hotness": 1.0}


class TestWriteJson:
    def test_creates_parents(self, tmp_path):
        path = write_json({"a": [1, 2]}, tmp_path / "x" / "y.json")
        assert json.loads(path.read_text()) == {"a": [1, 2]}


class TestFrames:
    def test_png_frames_with_sidecar(self, tmp_path):
        pytest.importorskip("PIL")
        from PIL import Image  # noqa: PLC0415

        from cfasl.analysis import export_frames  # noqa: PLC0415

        frames = [torch.zeros(1, 8, 8), torch.ones(1, 8, 8)]
        paths = export_frames(frames, tmp_path, "swap", metadata={"edited_dims": [2]})

        assert [p.name for p in paths] == ["swap_00.png", "swap_01.png"]
        with Image.open(paths[1]) as image:
            assert image.size == (8, 8)
            assert image.getpixel((0, 0)) == 255
        sidecar = json.loads((tmp_path / "swap.json").read_text())
        assert sidecar == {"frames": ["swap_00.png", "swap_01.png"], "edited_dims": [2]}

    def test_rejects_batched_image(self, tmp_path):
        pytest.importorskip("PIL")
        from cfasl.analysis import save_png  # noqa: PLC0415

        with pytest.raises(InvalidArgumentError, match="expected a"):
            save_png(torch.zeros(2, 1, 8, 8), tmp_path / "bad.png")
