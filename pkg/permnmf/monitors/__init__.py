"""Collection of fit monitors for the permnmf solvers.

The BaseMonitor class contains all available hooks that can be used by
child classes to collect information throughout a fit.

The MonitorNotifier class is used by the solver to notify all subscribed
monitors about occuring events.
"""

from .base_monitor import BaseMonitor
from .monitor_notifier import MonitorNotifier
from .progress_monitor import ProgressMonitor
