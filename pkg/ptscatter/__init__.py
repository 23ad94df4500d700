import logging
import os
import platform
import sys

import click
import numpy
import scipy
from dotenv import load_dotenv

try:
    from ptscatter.config import Development as Config
except ImportError:
    Config = None


load_dotenv()

try:
    LOGGER_LEVEL = int(os.environ.get("LOGGER_LEVEL"))
except (TypeError, ValueError):
    LOGGER_LEVEL = int(getattr(Config, "LOGGER_LEVEL", logging.INFO))

LOG_FILE = os.environ.get("LOG_FILE", getattr(Config, "LOG_FILE", None))

# enable logging
_handlers = [logging.StreamHandler()]
if LOG_FILE:
    _handlers.append(logging.FileHandler(LOG_FILE))

logging.basicConfig(
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=_handlers,
    level=LOGGER_LEVEL,
)

LOGGER = logging.getLogger(__name__)

# if version < 3.9, stop.
if sys.version_info[0] < 3 or sys.version_info[1] < 9:
    LOGGER.error(
        "You MUST have a python version of at least 3.9! Quitting.",
    )
    quit(1)

ENV = bool(os.environ.get("ENV", False)) or Config is None
PTSCATTER_VERSION = "1.0.1"
NUMPY_VERSION = numpy.__version__
SCIPY_VERSION = scipy.__version__
PYTHON_VERSION = platform.python_version()

if ENV:
    try:
        HBAR2_OVER_2M = float(os.environ.get("HBAR2_OVER_2M", 0.0380998212))
    except ValueError:
        raise Exception("Your HBAR2_OVER_2M env variable is not a valid number.")

    try:
        WORKERS = int(os.environ.get("WORKERS", 1))
    except ValueError:
        raise Exception("Your WORKERS env variable is not a valid integer.")

    SHOW_PROGRESS = bool(os.environ.get("SHOW_PROGRESS", False))
    OUT_DIR = os.environ.get("OUT_DIR", "output")
    LOAD = os.environ.get("LOAD", "").split()
    NO_LOAD = os.environ.get("NO_LOAD", "").split()

else:
    try:
        HBAR2_OVER_2M = float(Config.HBAR2_OVER_2M)
    except ValueError:
        raise Exception("Your HBAR2_OVER_2M variable is not a valid number.")

    try:
        WORKERS = int(Config.WORKERS)
    except ValueError:
        raise Exception("Your WORKERS variable is not a valid integer.")

    SHOW_PROGRESS = Config.SHOW_PROGRESS
    OUT_DIR = Config.OUT_DIR
    LOAD = Config.LOAD
    NO_LOAD = Config.NO_LOAD

if HBAR2_OVER_2M <= 0:
    raise Exception("HBAR2_OVER_2M must be a positive number (eV nm^2).")


# Load at end to ensure all prev variables have been set
from ptscatter.modules.helper_funcs.handlers import CustomGroup

application = CustomGroup(
    name="ptscatter",
    help="Scattering observables of a PT-symmetric quantum dimer.",
)
