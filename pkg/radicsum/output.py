"""
radicsum.output
===============

Emission of command results as human-readable tables, CSV or JSON.

Tables are rendered with rich. CSV and JSON output is schema-stable: CSV
columns are fixed per command and JSON documents carry a ``schema_version``.
All floating-point numbers are written with 17 significant digits.
"""
from enum import Enum
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Union

import click
import numpy as np
import pandas as pd
from rich.console import Console
from rich.table import Table

from radicsum.definitions import SCHEMA_VERSION, SIGNIFICANT_DIGITS


FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"


class OutputFormat(str, Enum):
    """
    Supported output formats.
    """
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


def format_number(value: Any) -> str:
    """
    Format a value for human-readable tables.
    """
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return ""
        return FLOAT_FORMAT % value
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return value
    if isinstance(value, dict):
        return {key: _json_value(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(val) for val in value]
    return value


def to_csv(frame: pd.DataFrame) -> str:
    """
    Serialize a table to CSV with 17 significant digits.
    """
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def to_json(
        frame: pd.DataFrame,
        command: str,
        extra: Optional[Dict[str, Any]] = None
) -> str:
    """
    Serialize a table to a versioned JSON document.

    Args:
        frame: The table. Each row becomes one record.
        command: Name of the command that produced the table.
        extra: Additional top-level entries such as claim summaries.

    Return:
        The JSON document as string.
    """
    records = [
        {key: _json_value(value) for key, value in row.items()}
        for row in frame.to_dict(orient="records")
    ]
    document = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "records": records,
    }
    if extra is not None:
        document.update(_json_value(extra))
    return json.dumps(document, indent=2)


def render_table(
        frame: pd.DataFrame,
        title: Optional[str] = None,
        caption: Optional[str] = None,
        console: Optional[Console] = None
) -> None:
    """
    Print a table to standard output using rich.
    """
    if console is None:
        console = Console()
    table = Table(title=title, caption=caption)
    for column in frame.columns:
        table.add_column(str(column), justify="right")
    for row in frame.itertuples(index=False):
        table.add_row(*[format_number(value) for value in row])
    console.print(table)


def emit(
        frame: pd.DataFrame,
        output_format: Union[str, OutputFormat],
        command: str,
        title: Optional[str] = None,
        caption: Optional[str] = None,
        extra: Optional[Dict[str, Any]] = None,
        stream: Optional[TextIO] = None
) -> None:
    """
    Emit a result table in the requested format.

    Args:
        frame: The result table.
        output_format: One of 'table', 'csv' or 'json'.
        command: Name of the emitting command, recorded in JSON output.
        title: Title of the human-readable table.
        caption: Caption of the human-readable table.
        extra: Additional JSON entries.
        stream: Text stream for CSV and JSON output. Defaults to standard
            output.
    """
    output_format = OutputFormat(output_format)
    if output_format == OutputFormat.TABLE:
        render_table(frame, title=title, caption=caption)
        return None
    if output_format == OutputFormat.CSV:
        text = to_csv(frame)
    else:
        text = to_json(frame, command, extra) + "\n"
    if stream is None:
        click.echo(text, nl=False)
    else:
        stream.write(text)


def write_report(
        path: Union[str, Path],
        frame: pd.DataFrame,
        command: str,
        extra: Optional[Dict[str, Any]] = None
) -> Path:
    """
    Write a report file. The format follows the suffix of 'path': '.json'
    writes JSON, anything else CSV.

    Return:
        The path of the written file.
    """
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True)
    if path.suffix.lower() == ".json":
        text = to_json(frame, command, extra) + "\n"
    else:
        text = to_csv(frame)
    with open(path, "w") as output:
        output.write(text)
    return path


def concat_frames(frames: List[pd.DataFrame], columns: List[str]) -> pd.DataFrame:
    """
    Concatenate tables with the same columns, keeping the column order when
    the list is empty.
    """
    frames = [frame for frame in frames if len(frame) > 0]
    if not frames:
        return pd.DataFrame(columns=columns)
    return pd.concat(frames, ignore_index=True)[columns]
