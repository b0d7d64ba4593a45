import json
import os
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from .config import COMMENT_PREFIX
from .errors import InputFormatError, ParameterError
from .etp import complexity_bound
from .topology import TreeTopology, topology_for_length
from .types import ProjectionResult

# --- Configuration ---
DOCUMENT_FIELDS = ["d", "J", "N", "k", "support", "energy", "projection", "ops"]
EXCEL_SUFFIXES = (".xlsx",)


# --- Coefficient files ---

def read_coefficients(path: str) -> List[float]:
    """
    Reads one decimal coefficient per line. Blank lines and lines starting with '#' are skipped.

    Raises:
        InputFormatError: if the file is missing, empty, or a line is not a number.
    """
    if not os.path.exists(path):
        raise InputFormatError("file not found", path=path)
    values = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith(COMMENT_PREFIX):
                continue
            try:
                values.append(float(line))
            except ValueError:
                raise InputFormatError(f"cannot parse {line!r} as a coefficient", path=path, line=line_no) from None
    if not values:
        raise InputFormatError("no coefficients found", path=path)
    return values


def write_coefficients(path: str, values: Sequence[float]) -> None:
    """Writes coefficients one per line with full float precision."""
    with open(path, "w", encoding="utf-8") as handle:
        for v in values:
            handle.write(f"{float(v)!r}\n")


def load_signal_file(path: str, d: int):
    """Reads a coefficient file and recovers its topology from the length."""
    values = read_coefficients(path)
    try:
        t = topology_for_length(d, len(values))
    except ParameterError as e:
        raise InputFormatError(str(e), path=path) from None
    return t, values


# --- Result documents ---

def result_document(t: TreeTopology, result: ProjectionResult, **extra: Any) -> Dict[str, Any]:
    """Builds the structured result document; ``extra`` fields are appended after the standard ones."""
    k = len(result.support)
    doc = {
        "d": t.d,
        "J": t.J,
        "N": t.N,
        "k": k,
        "support": result.support.as_list(),
        "energy": float(result.energy),
        "projection": [float(v) for v in result.projection],
        "ops": {**result.ops.as_dict(), "bound": complexity_bound(t.d, t.N, k)},
    }
    doc.update(extra)
    return doc


def dump_document(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_document(doc: Dict[str, Any], path: Optional[str]) -> str:
    """Serializes the document to ``path``, or just returns the text when no path is given."""
    text = dump_document(doc)
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    return text


def load_result_document(path: str) -> Dict[str, Any]:
    """Parses a result document and checks the standard fields are present."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except FileNotFoundError:
        raise InputFormatError("file not found", path=path) from None
    except json.JSONDecodeError as e:
        raise InputFormatError(f"invalid result document: {e}", path=path) from None
    missing = [name for name in DOCUMENT_FIELDS if name not in doc]
    if missing:
        raise InputFormatError(f"result document is missing fields: {', '.join(missing)}", path=path)
    return doc


# --- Tables ---

def write_table(df: pd.DataFrame, path: str) -> str:
    """Writes a table as Excel (openpyxl) for .xlsx paths, CSV otherwise."""
    if path.lower().endswith(EXCEL_SUFFIXES):
        df.to_excel(path, index=False, engine="openpyxl")
    else:
        df.to_csv(path, index=False)
    return path


def table_text(df: pd.DataFrame) -> str:
    """CSV text of a table, header row first."""
    return df.to_csv(index=False)
