"""Static SVG scree plot of a rank scan."""

import matplotlib
from matplotlib.figure import Figure
import numpy as np
from permnmf.matrix_io import atomic_target

# Fixed salt, otherwise the SVG element ids differ between runs
SVG_HASH_SALT = "permnmf"


def plot_scree(report, path):
    """Plot ``log10(volume)`` against the rank and save it as SVG.

    Zero volumes (degenerate ranks) have no logarithm and are marked at the
    bottom of the axis instead. The suggested rank is highlighted.

    Args:
        report (VolumeReport): The result of a rank scan.
        path (str): The target SVG file.

    """
    ranks = np.array(report.ranks)
    volumes = np.array(report.volumes)
    positive = volumes > 0

    log_volumes = np.full(volumes.shape, np.nan)
    log_volumes[positive] = np.log10(volumes[positive])

    figure = Figure(figsize=(6, 4))
    axes = figure.add_subplot(1, 1, 1)
    axes.plot(ranks, log_volumes, marker='o', color='tab:blue')

    if not positive.all():
        floor = np.nanmin(log_volumes) - 1 if positive.any() else -1.0
        axes.plot(ranks[~positive], np.full((~positive).sum(), floor),
                  linestyle='none', marker='x', color='tab:red',
                  label="degenerate")
        axes.legend(loc='upper right')

    axes.axvline(report.suggested_rank, linestyle='--', color='grey')
    axes.set_xticks(ranks)
    axes.set_xlabel("rank")
    axes.set_ylabel("log10 volume")
    axes.set_title("Volume scree plot (suggested rank {})".format(
        report.suggested_rank))

    with matplotlib.rc_context({'svg.hashsalt': SVG_HASH_SALT}):
        with atomic_target(path) as temporary:
            figure.savefig(temporary, format='svg', metadata={'Date': None})
