"""CSV writers for trajectories and run summaries (UTF-8, LF line endings)."""

from __future__ import annotations

import math
import os

__all__ = ["TRAJECTORY_COLUMNS", "SUMMARY_COLUMNS", "format_float", "write_trajectory", "write_summary"]

TRAJECTORY_COLUMNS = (
    "step",
    "t",
    "t_r",
    "n_g",
    "rate",
    "rate_r",
    "re_dipole",
    "im_dipole",
    "phi_mu",
    "re_field",
    "im_field",
    "abs_field",
    "total_norm",
)

SUMMARY_COLUMNS = (
    "chi_freq",
    "tau",
    "f",
    "final_n_g",
    "max_abs_rate",
    "monotone",
    "norm_drift",
    "min_sin_phase",
    "max_sin_phase",
    "median_sin_phase",
    "max_abs_dipole",
    "status",
)


def format_float(x: float) -> str:
    """Shortest round-trip decimal; integral values without a trailing '.0'."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _write_rows(path, header, rows):
    directory = os.path.dirname(os.fspath(path))
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_trajectory(records, path) -> None:
    """One row per record; the dipole is the field-frame value stored in the record."""
    if not records:
        raise ValueError("no trajectory records to write")
    rows = (
        (
            r.step,
            r.t,
            r.t_r,
            r.n_g,
            r.rate,
            r.rate_r,
            r.dipole.real,
            r.dipole.imag,
            r.phi_mu,
            r.field.real,
            r.field.imag,
            abs(r.field),
            r.total_norm,
        )
        for r in records
    )
    _write_rows(path, TRAJECTORY_COLUMNS, rows)


def write_summary(summaries, path) -> None:
    _write_rows(path, SUMMARY_COLUMNS, ([s[c] for c in SUMMARY_COLUMNS] for s in summaries))
