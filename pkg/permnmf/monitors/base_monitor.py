"""Implements the (empty) monitor baseclass.

Can be inherited by other monitor classes to only implement the monitoring
hooks that are relevant for a particular fitting scenario.
"""


class BaseMonitor:
    """Monitor baseclass.

    Does not actually monitor anything but is a template for monitoring
    child classes.
    """

    def fit_started(self, x, rank, config):
        """Signal the start of a fit.

        Args:
            x (numpy.ndarray): The data matrix that is factorized.
            rank (int): The requested factorization rank.
            config (SolverConfig): The solver configuration of the run.

        """

    def iteration_completed(self, iteration, model, error):
        """Outer iteration (W and H update, hook applied) completed.

        Args:
            iteration (int): The 1-based outer iteration index.
            model (FactorModel): The model after the iteration.
            error (float): The Frobenius error of the model.

        """

    def permutation_applied(self, sweeps_run, stabilized):
        """Permutation stabilization was applied to W.

        Args:
            sweeps_run (int): Number of permutation sweeps performed.
            stabilized (bool): Whether a sweep without changes occurred.

        """

    def fit_ended(self, report):
        """Signal the end of a fit.

        Args:
            report (FitReport): The final report of the fit.

        """
