"""
CSV and JSON output.

Floats are written as the shortest string that round-trips (``repr``), so
identical runs produce byte-identical files.
"""

import csv
import io
import json
import math

import numpy as np

__all__ = [
    "TRAJECTORY_COLUMNS",
    "SPECTRAL_COLUMNS",
    "fmt",
    "trajectory_rows",
    "write_trajectory_csv",
    "read_csv",
    "write_table_csv",
    "dump_json",
]

SPECTRAL_COLUMNS = ["re_e0", "im_e0", "re_e1", "im_e1", "gap"]
TRAJECTORY_COLUMNS = [
    "s", "t", "re_c0", "im_c0", "re_c1", "im_c1", "p_tau", "p_surv",
] + SPECTRAL_COLUMNS


def fmt(value):
    """Shortest round-trip text for a number; '' for None."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    x = float(value)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def trajectory_rows(trajectory, emit_spectra=True):
    c0 = trajectory.amplitudes[:, 0]
    c1 = trajectory.amplitudes[:, 1]
    cols = [
        trajectory.scaled_time,
        trajectory.times,
        c0.real, c0.imag, c1.real, c1.imag,
        trajectory.transition_prob,
        trajectory.survival_prob,
    ]
    if emit_spectra:
        sp = trajectory.spectra
        cols += [sp.e0.real, sp.e0.imag, sp.e1.real, sp.e1.imag, sp.gap_magnitude]
    for row in zip(*cols):
        yield [fmt(v) for v in row]


def _open_text(target):
    if hasattr(target, "write"):
        return target, False
    return open(target, "w", newline="", encoding="utf-8"), True


def write_trajectory_csv(trajectory, target, emit_spectra=True):
    header = TRAJECTORY_COLUMNS if emit_spectra else TRAJECTORY_COLUMNS[: -len(SPECTRAL_COLUMNS)]
    write_table_csv(header, trajectory_rows(trajectory, emit_spectra), target)


def write_table_csv(header, rows, target):
    handle, owned = _open_text(target)
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    finally:
        if owned:
            handle.close()


def read_csv(source):
    """Read one of our CSVs back into {column: list of str}."""
    if isinstance(source, str) and "\n" in source:
        handle = io.StringIO(source)
    else:
        handle = open(source, newline="", encoding="utf-8")
    with handle:
        reader = csv.reader(handle)
        header = next(reader)
        data = {name: [] for name in header}
        for row in reader:
            for name, cell in zip(header, row):
                data[name].append(cell)
    return data


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else fmt(x)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def dump_json(obj, target=None):
    """Serialize with sorted keys; returns the text and writes it if asked."""
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
    if target is not None:
        handle, owned = _open_text(target)
        try:
            handle.write(text)
        finally:
            if owned:
                handle.close()
    return text
