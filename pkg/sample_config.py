# Create a new config.py or rename this to config.py file in the ptscatter/ dir and import, then extend this class.
import logging


class Config(object):
    LOGGER_LEVEL = logging.INFO
    LOG_FILE = None  # e.g. "ptscatter.log" to also log to a file

    # PHYSICS
    HBAR2_OVER_2M = 0.0380998212  # hbar^2/2m in eV nm^2, free electron mass

    # RUNTIME
    WORKERS = 1  # joblib threads for gamma-parallel work, -1 uses every core
    SHOW_PROGRESS = False  # tqdm bars while tracing over gamma
    OUT_DIR = "output"  # default directory for CSV/JSON output

    # COMMAND MODULES
    LOAD = []
    NO_LOAD = []


class Production(Config):
    LOGGER_LEVEL = logging.WARNING


class Development(Config):
    LOGGER_LEVEL = logging.DEBUG
