# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import csv
from dataclasses import dataclass, field
from pathlib import Path

from ..equivariance import LOSS_TERMS, LossBreakdown

EXTRA_COLUMNS = ("reconstruction", "kl", "mutual_info", "total_correlation", "dimension_kl")
LOG_COLUMNS = ("step", "total", "vae", *LOSS_TERMS, *EXTRA_COLUMNS)


@dataclass
class LossRow:
    step: int
    values: dict[str, float]

    def as_csv(self) -> list[str]:
        cells = [str(self.step)]
        for column in LOG_COLUMNS[1:]:
            value = self.values.get(column)
            cells.append("" if value is None else repr(float(value)))
        return cells


@dataclass
class LossLog:
    """Per-step loss rows mirrored to a CSV file."""

    path: Path
    rows: list[LossRow] = field(default_factory=list)

    def open(self, append: bool = False) -> "LossLog":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if not append or not self.path.is_file():
            with self.path.open("w", newline="") as f:
                csv.writer(f).writerow(LOG_COLUMNS)
        return self

    def truncate_after(self, step: int) -> None:
        """Drop rows past step, e.g. when resuming from an earlier checkpoint."""
        if not self.path.is_file():
            return
        with self.path.open(newline="") as f:
            lines = list(csv.reader(f))
        kept = [lines[0]] + [line for line in lines[1:] if int(line[0]) <= step]
        with self.path.open("w", newline="") as f:
            csv.writer(f).writerows(kept)

    def record(self, step: int, breakdown: LossBreakdown) -> LossRow:
        row = LossRow(step=step, values=breakdown.as_dict())
        self.rows.append(row)
        with self.path.open("a", newline="") as f:
            csv.writer(f).writerow(row.as_csv())
        return row

    @staticmethod
    def read(path: str | Path) -> list[dict[str, float]]:
        with Path(path).open(newline="") as f:
            return [
                {key: float(value) for key, value in row.items() if value != ""}
                for row in csv.DictReader(f)
            ]
