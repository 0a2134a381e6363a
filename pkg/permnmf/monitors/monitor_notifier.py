"""Implements MonitorNotifier that notifies Monitors about events."""

from .base_monitor import BaseMonitor


class MonitorNotifier(BaseMonitor):
    """Object to handle notification of subscribed monitoring objects.

    Args:
        subscribers (list): Monitors that are subscribed right away.
            Defaults to None.

    """

    def __init__(self, subscribers=None):
        # Call parent class init method
        super().__init__()
        self.subscribers = []
        for subscriber in subscribers or []:
            self.add_subscriber(subscriber)

    def add_subscriber(self, subscriber):
        """Register monitor with this MonitorNotifier.

        Args:
            subscriber (BaseMonitor): The subscribed monitor object. Must be
                an object supporting the :class:`BaseMonitor` interface.

        """
        # Append the subscriber to the list of subscribers
        if subscriber not in self.subscribers:
            self.subscribers.append(subscriber)

    def remove_subscriber(self, subscriber):
        """Unregister monitor with this MonitorNotifier.

        Args:
            subscriber (BaseMonitor): The subscribed monitor object. Must be
                an object supporting the :class:`BaseMonitor` interface.

        """
        try:
            self.subscribers.remove(subscriber)
        # Silenty ignore of the subscriber was not registered
        except ValueError:
            pass

    def fit_started(self, x, rank, config):
        """Notify subscribers that a fit started."""
        for subscriber in self.subscribers:
            subscriber.fit_started(x, rank, config)

    def iteration_completed(self, iteration, model, error):
        """Notify subscribers that an outer iteration completed.

        Args:
            iteration (int): The 1-based outer iteration index.
            model (FactorModel): The model after the iteration.
            error (float): The Frobenius error of the model.

        """
        for subscriber in self.subscribers:
            subscriber.iteration_completed(iteration, model, error)

    def permutation_applied(self, sweeps_run, stabilized):
        """Notify subscribers that W was permuted."""
        for subscriber in self.subscribers:
            subscriber.permutation_applied(sweeps_run, stabilized)

    def fit_ended(self, report):
        """Notify subscribers that a fit terminated."""
        for subscriber in self.subscribers:
            subscriber.fit_ended(report)
