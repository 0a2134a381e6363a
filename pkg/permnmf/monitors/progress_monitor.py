"""Monitor rendering the progress of a fit as tqdm progress bar."""

from tqdm import tqdm
from .base_monitor import BaseMonitor


class ProgressMonitor(BaseMonitor):
    """Display fit progress (iterations and current error) with tqdm.

    Args:
        position (int): Row position of the tqdm progress bar. Helpful when
            multiple fits are run in parallel. Defaults to 0.
        desc (string): Descriptor of the progress bar. Defaults to None.

    """

    def __init__(self, position=0, desc=None):
        self.position = position
        self.desc = desc
        self.pbar = None

    def fit_started(self, x, rank, config):
        """Create the progress bar sized by the iteration cap."""
        self.pbar = tqdm(
            total=config.max_outer_iterations,
            position=self.position,
            desc=self.desc or "rank {}".format(rank))

    def iteration_completed(self, iteration, model, error):
        """Advance the progress bar by one iteration."""
        if self.pbar is not None:
            self.pbar.set_postfix(error="{:.4g}".format(error))
            self.pbar.update(1)

    def fit_ended(self, report):
        """Close the progress bar (ensures correct output)."""
        if self.pbar is not None:
            self.pbar.close()
            self.pbar = None
