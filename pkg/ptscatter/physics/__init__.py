from ptscatter import HBAR2_OVER_2M, LOGGER, SHOW_PROGRESS, WORKERS

# eV nm^2, electron mass
ELECTRON_HBAR2_OVER_2M = 0.0380998212

# doublet window of the reference geometry, eV
DEFAULT_WINDOW = (0.15, 0.30)

DEFAULT_PROMINENCE = 1e-2

__all__ = [
    "DEFAULT_PROMINENCE",
    "DEFAULT_WINDOW",
    "ELECTRON_HBAR2_OVER_2M",
    "HBAR2_OVER_2M",
    "LOGGER",
    "SHOW_PROGRESS",
    "WORKERS",
]
