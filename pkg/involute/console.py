"""
Terminal output helpers.

Diagnostics go to stderr with colorama colours; results go to stdout so
that they stay byte-for-byte reproducible. Text-format reports are drawn
with a rich table.
"""

import json
import sys
from typing import Any, Iterable, Sequence, TextIO

import colorama
from colorama import Fore
from rich.console import Console
from rich.table import Table

from .report import FAIL, Report

DEBUG = False


def setup(no_color: bool = False, debug: bool = False) -> None:
    """Initialise colorama; strip colour codes when asked to."""
    global DEBUG
    DEBUG = debug
    colorama.init(strip=True if no_color else None)


def _emit(color: str, message: str, stream: TextIO = None) -> None:
    stream = stream or sys.stderr
    print(f"{color}{message}{Fore.RESET}", file=stream)


def warn(message: str) -> None:
    _emit(Fore.YELLOW, message)


def error(message: str) -> None:
    _emit(Fore.RED, message)


def success(message: str) -> None:
    _emit(Fore.GREEN, message)


def debug(message: str) -> None:
    if DEBUG:
        _emit(Fore.BLUE, f"[DEBUG] {message}")


def emit_json(obj: Any, stream: TextIO = None) -> None:
    """One JSON document per line, keys sorted, no trailing spaces."""
    stream = stream or sys.stdout
    stream.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def emit_text(text: str, stream: TextIO = None) -> None:
    stream = stream or sys.stdout
    stream.write(text + "\n")


def render_reports(reports: Iterable[Report], no_color: bool = False, stream: TextIO = None) -> None:
    """Draw reports as a rich table."""
    console = Console(file=stream or sys.stdout, no_color=no_color, width=140)
    table = Table(title="Law checks")
    table.add_column("Suite", style="cyan")
    table.add_column("Law", style="green")
    table.add_column("Instance", style="yellow")
    table.add_column("Verdict", style="magenta")
    table.add_column("Checked", justify="right")
    table.add_column("Witness")

    for report in reports:
        for result in report.sorted_results():
            verdict_color = "[red]" if result.verdict == FAIL else "[green]"
            witness = "" if result.witness is None else json.dumps(result.witness, sort_keys=True)
            table.add_row(
                result.suite,
                result.law,
                result.instance,
                f"{verdict_color}{result.verdict}[/]",
                str(result.checked),
                witness,
            )

    console.print(table)


def render_grid(title: str, columns: Sequence[str], rows: Iterable[Sequence[str]], no_color: bool = False, stream: TextIO = None) -> None:
    """A plain rich table; the first column is the row label."""
    console = Console(file=stream or sys.stdout, no_color=no_color, width=140)
    table = Table(title=title)
    for i, column in enumerate(columns):
        table.add_column(column, style="cyan" if i == 0 else None)
    for row in rows:
        table.add_row(*row)
    console.print(table)
