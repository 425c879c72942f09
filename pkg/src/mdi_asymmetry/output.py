"""CSV serialization of scan results.

Layout: ``#``-prefixed header comments, one column-name row, then data
rows.  Floats use 17 significant digits so a parse restores them exactly.
"""

import csv

import numpy as np


def fmt(x):
    return format(float(x), ".17g")


def write_csv(result, stream, comments=()):
    for line in comments:
        stream.write(f"# {line}\n")
    spec = result.spec
    cols = [spec.axis1.name, spec.axis2.name, "value"]
    if result.deviations is not None:
        cols.append("deviation")
    stream.write(",".join(cols) + "\n")
    for row in result.rows():
        stream.write(",".join(fmt(x) for x in row) + "\n")


def read_csv(stream):
    """Parse an emitted CSV back into ``(comments, columns, data)``.

    ``data`` is a float array with one row per line.
    """
    comments, body = [], []
    for line in stream:
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif line.strip():
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader)
    data = np.array([[float(x) for x in row] for row in reader], dtype=float)
    return comments, columns, data.reshape(-1, len(columns))


def grid_from_csv(columns, data, shape):
    """Rebuild ``(axis1, axis2, values, deviations)`` from parsed rows."""
    n1, n2 = shape
    values = data[:, 2].reshape(n1, n2)
    devs = data[:, 3].reshape(n1, n2) if len(columns) > 3 else None
    return data[::n2, 0], data[:n2, 1], values, devs
