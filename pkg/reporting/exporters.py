"""
JSON and CSV export of reports, tables and serializable domain objects.

Reports are plain dicts that may hold DataFrames, numpy scalars, Fractions
and big ints; to_jsonable turns them into JSON-safe structures. Big integers
become decimal strings.
"""
import json
import math
import os
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, TextIO

import mpmath
import numpy as np
import pandas as pd

from arith.bigint import int_to_decimal
from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)

# Integers beyond this magnitude are written as strings
SAFE_INTEGER = 2 ** 53


def to_jsonable(value: Any) -> Any:
    if isinstance(value, pd.DataFrame):
        return [to_jsonable(row) for row in value.to_dict(orient='records')]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        value = int(value)
        return value if abs(value) < SAFE_INTEGER else int_to_decimal(value)
    if isinstance(value, Fraction):
        return f"{int_to_decimal(value.numerator)}/{int_to_decimal(value.denominator)}"
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    if hasattr(value, 'to_dict'):
        return to_jsonable(value.to_dict())
    if is_dataclass(value):
        return to_jsonable(asdict(value))
    if isinstance(value, mpmath.mpf):
        return float(value)
    if value is None or isinstance(value, str):
        return value
    return str(value)


def report_table(report: Dict[str, Any]) -> Optional[pd.DataFrame]:
    """The main DataFrame of a report, used for CSV output"""
    for key in ('table', 'worst', 'rows', 'violations', 'cases'):
        if isinstance(report.get(key), pd.DataFrame):
            return report[key]
    scalars = {k: v for k, v in report.items() if not isinstance(v, (pd.DataFrame, dict, list))}
    return pd.DataFrame([scalars]) if scalars else None


def dumps_report(report: Any, output_format: str = 'json') -> str:
    if output_format == 'json':
        return json.dumps(to_jsonable(report), indent=2)
    if output_format == 'csv':
        table = report if isinstance(report, pd.DataFrame) else report_table(report)
        if table is None:
            return ''
        return table.to_csv(index=False)
    raise DomainError(f"unknown output format {output_format!r}")


def write_report(report: Any, output_format: str = 'json', path: Optional[str] = None,
                 stream: Optional[TextIO] = None) -> str:
    """
    Serialize a report and write it to path (UTF-8) or to the stream.

    Returns:
        The serialized text
    """
    text = dumps_report(report, output_format)
    if path:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Wrote {output_format} output to {path}")
    elif stream is not None:
        stream.write(text)
        if not text.endswith('\n'):
            stream.write('\n')
    return text


def read_json(path: str) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise DomainError(f"cannot read JSON from {path}: {e}") from e
