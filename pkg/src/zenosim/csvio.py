"""CSV serialization for trajectories and small curve tables.

The format is locale independent by construction: '.' decimal
separator, 17 significant digits (enough to round-trip float64), LF
line endings, UTF-8, no trailing separator. Population columns are
written as rho_00, rho_11, .. and read back positionally, never by
name.
"""

from __future__ import annotations

import numpy as np

from .core import ValidationError

__all__ = [
    "format_value",
    "trajectory_header",
    "trajectory_lines",
    "write_trajectory_csv",
    "write_table_csv",
    "read_population_table",
]


def format_value(x) -> str:
    return f"{float(x):.17g}"


def trajectory_header(dim: int, pairs) -> list:
    cols = ["t"]
    cols += [f"rho_{j}{j}" for j in range(dim)]
    cols.append("sigma")
    for j, k in pairs:
        cols.append(f"re_{j}{k}")
        cols.append(f"im_{j}{k}")
    cols += ["trace", "purity", "energy", "event"]
    return cols


def trajectory_lines(traj) -> list:
    """Header plus one line per record, in sampling order."""
    pairs = traj.spec.resolved_pairs()
    dim = traj.spec.model.dim
    lines = [",".join(trajectory_header(dim, pairs))]
    for rec in traj.records:
        vals = [format_value(rec.t)]
        vals += [format_value(p) for p in rec.populations]
        vals.append(format_value(rec.sigma))
        for pair in pairs:
            c = rec.coherences[pair]
            vals.append(format_value(c.real))
            vals.append(format_value(c.imag))
        vals += [
            format_value(rec.trace),
            format_value(rec.purity),
            format_value(rec.energy),
            rec.event,
        ]
        lines.append(",".join(vals))
    return lines


def write_trajectory_csv(traj, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(trajectory_lines(traj)))
        fh.write("\n")


def write_table_csv(path, header, columns) -> None:
    """Write parallel 1-d columns under the given header names."""
    cols = [np.asarray(c, dtype=np.float64) for c in columns]
    if len(cols) != len(header) or any(c.shape != cols[0].shape for c in cols):
        raise ValidationError("header and column shapes do not agree")
    lines = [",".join(header)]
    for row in zip(*cols):
        lines.append(",".join(format_value(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def read_population_table(path):
    """Times and populations from a trajectory CSV, parsed positionally.

    The population block spans the columns between 't' and 'sigma'; its
    width gives the system dimension.

    Returns
    -------
    times : ndarray, shape (n_rows,)
    populations : ndarray, shape (n_rows, dim)
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = [ln.rstrip("\n").rstrip("\r") for ln in fh if ln.strip()]
    if not lines:
        raise ValidationError(f"{path}: empty trajectory file")
    header = lines[0].split(",")
    if not header or header[0] != "t" or "sigma" not in header:
        raise ValidationError(f"{path}: not a trajectory CSV (header {header[:3]}...)")
    dim = header.index("sigma") - 1
    if dim < 1:
        raise ValidationError(f"{path}: no population columns found")
    times = []
    pops = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(header):
            raise ValidationError(
                f"{path}: row with {len(parts)} fields, expected {len(header)}"
            )
        times.append(float(parts[0]))
        pops.append([float(x) for x in parts[1 : dim + 1]])
    return np.asarray(times), np.asarray(pops)
