"""CSV reading and writing with a fixed numeric format."""
import csv
import io
import math
from pathlib import Path

import numpy as np

__all__ = ["format_value", "write_csv", "csv_text"]


def format_value(v):
    """17 significant digits for floats, plain text for everything else."""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "nan" if math.isnan(v) else format(float(v), ".17g")
    return str(v)


def csv_text(header, rows):
    """Render rows as CSV text with a header line and ``\\n`` line endings."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_value(v) for v in row])
    return buf.getvalue()


def write_csv(target, header, rows):
    """Write CSV to a path or an open text stream."""
    text = csv_text(header, rows)
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")
    return text
