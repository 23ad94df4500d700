import importlib

from ptscatter import LOGGER, NUMPY_VERSION, PTSCATTER_VERSION, PYTHON_VERSION, SCIPY_VERSION, application

# needed to dynamically load modules
# NOTE: Module order is not guaranteed, specify that in the config file!
from ptscatter.modules import ALL_MODULES

IMPORTED = {}
HELPABLE = {}

for module_name in ALL_MODULES:
    imported_module = importlib.import_module("ptscatter.modules." + module_name)
    if not hasattr(imported_module, "__mod_name__"):
        imported_module.__mod_name__ = imported_module.__name__

    if imported_module.__mod_name__.lower() not in IMPORTED:
        IMPORTED[imported_module.__mod_name__.lower()] = imported_module
    else:
        raise Exception("Can't have two modules with the same name! Please change one")

    if hasattr(imported_module, "__help__") and imported_module.__help__:
        HELPABLE[imported_module.__mod_name__.lower()] = imported_module


def main():
    LOGGER.debug(
        "ptscatter %s (python %s, numpy %s, scipy %s), modules: %s",
        PTSCATTER_VERSION,
        PYTHON_VERSION,
        NUMPY_VERSION,
        SCIPY_VERSION,
        ", ".join(sorted(HELPABLE)),
    )
    application(prog_name="ptscatter")


if __name__ == "__main__":
    main()
