"""CSV and plot-data writers for sweep results."""
import csv
import io
import os

import numpy as np

from .errors import ConfigError
from .sweep import UE_LABELS, SweepResult
from .txrx import MethodId

CSV_HEADER = ("method", "power_dbm", "ue", "mean_se", "std_se", "ci95", "realizations")


def _fmt(x):
    return f"{x:.9g}"


def format_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for method, p, ue, mean, std, ci, n in result.rows():
        w.writerow((method, _fmt(p), ue, _fmt(mean), _fmt(std), _fmt(ci), n))
    return buf.getvalue()


def emit_csv(result: SweepResult, path):
    text = format_csv(result)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def parse_csv(text) -> SweepResult:
    """Inverse of :func:`format_csv` (per-realization samples are not stored)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ConfigError(f"unexpected CSV header {header}")
    recs = [r for r in reader if r]
    methods, powers = [], []
    for r in recs:
        m, p = MethodId(r[0]), float(r[1])
        if m not in methods:
            methods.append(m)
        if p not in powers:
            powers.append(p)
    powers.sort()
    shape = (len(methods), len(powers), len(UE_LABELS))
    mean, std, ci = np.zeros(shape), np.zeros(shape), np.zeros(shape)
    n = 0
    for r in recs:
        idx = (methods.index(MethodId(r[0])), powers.index(float(r[1])), UE_LABELS.index(r[2]))
        mean[idx], std[idx], ci[idx] = float(r[3]), float(r[4]), float(r[5])
        n = int(r[6])
    return SweepResult(tuple(methods), tuple(powers), mean, std, ci, n)


def read_csv(path) -> SweepResult:
    with open(path, encoding="utf-8") as fh:
        return parse_csv(fh.read())


def emit_plot_data(result: SweepResult, directory):
    """Write whitespace-separated columns for plotting.

    One ``se_<METHOD>.dat`` per method (UE1, UE2 and sum against power) and one
    ``sum_se.dat`` comparing the sum SE of all methods. Returns the written paths.
    """
    os.makedirs(directory, exist_ok=True)
    written = []
    powers = result.powers_dbm
    for i, method in enumerate(result.methods):
        cols = ["power_dbm"]
        for ue in UE_LABELS:
            cols += [f"ue{ue}_mean" if ue != "sum" else "sum_mean",
                     f"ue{ue}_ci95" if ue != "sum" else "sum_ci95"]
        lines = ["# " + " ".join(cols)]
        for j, p in enumerate(powers):
            vals = [p]
            for k in range(len(UE_LABELS)):
                vals += [result.mean[i, j, k], result.ci95[i, j, k]]
            lines.append(" ".join(_fmt(v) for v in vals))
        path = os.path.join(directory, f"se_{method.value}.dat")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
        written.append(path)

    cols = ["power_dbm"]
    for m in result.methods:
        cols += [f"{m.value}_mean", f"{m.value}_ci95"]
    lines = ["# " + " ".join(cols)]
    for j, p in enumerate(powers):
        vals = [p]
        for i in range(len(result.methods)):
            vals += [result.mean[i, j, 2], result.ci95[i, j, 2]]
        lines.append(" ".join(_fmt(v) for v in vals))
    path = os.path.join(directory, "sum_se.dat")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    written.append(path)
    return written
