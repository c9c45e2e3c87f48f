# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from typing import Any

from rich.console import Console
from rich.table import Table

from ..types import MetricReport, SpeedupReport


def _flatten(values: dict[str, Any], prefix: str = "") -> list[tuple[str, Any]]:
    rows = []
    for key, value in values.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict) and value:
            rows.extend(_flatten(value, f"{name}."))
        else:
            rows.append((name, value))
    return rows


def display_config_table(snapshot: dict[str, Any], title: str = "Run Configuration"):
    console = Console()
    table = Table(title=title)
    table.add_column("Setting", style="cyan")
    table.add_column("Value", style="white")
    for name, value in _flatten(snapshot):
        table.add_row(name, "(not set)" if value is None else str(value))
    console.print(table)


def display_metric_report(report: MetricReport):
    console = Console()
    table = Table(title="Disentanglement Metric", show_lines=True)
    table.add_column("Metric", style="cyan")
    table.add_column("k", justify="center")
    table.add_column("Score", justify="right", style="bold green")
    table.add_column("Trials", justify="right")
    table.add_column("Samples/vote", justify="right")
    table.add_column("Prune", justify="right")
    table.add_column("Active dims", style="yellow")
    table.add_row(
        report.name,
        str(report.k) if report.k is not None else "-",
        f"{report.score:.4f}",
        str(report.trials),
        str(report.votes_per_trial),
        f"{report.prune_threshold:g}",
        ", ".join(str(d) for d in report.active_dims) or "none",
    )
    console.print(table)


def display_loss_summary(losses: dict[str, float], step: int, duration: float | None):
    console = Console()
    table = Table(title=f"Losses at step {step}")
    table.add_column("Term", style="cyan")
    table.add_column("Value", justify="right")
    for name, value in losses.items():
        table.add_row(name, f"{value:.6g}")
    console.print(table)
    if duration:
        console.print(f"Duration: {duration:.2f}s")


def display_speedup(report: SpeedupReport):
    console = Console()
    table = Table(title="Composition Speedup")
    table.add_column("Form", style="cyan")
    table.add_column("Exponentials", justify="right")
    table.add_column("Seconds", justify="right")
    table.add_row(
        "sum", str(report.sum_form_exponentials), f"{report.sum_form_seconds:.4f}"
    )
    table.add_row(
        "product",
        str(report.product_form_exponentials),
        f"{report.product_form_seconds:.4f}",
    )
    console.print(table)
    console.print(
        f"Speedup: x{report.speedup:.2f} | |G|={report.codebook_size} "
        f"D={report.latent_dim} | max |diff|={report.max_abs_difference:.2e}",
        style="bold",
    )
