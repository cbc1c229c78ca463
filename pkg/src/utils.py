# tropadic/utils.py

import logging
import os

from constants import DEFAULT_SEED, SEED_ENV

logger = logging.getLogger(__name__)

# Attempt matplotlib import; only the plot verb needs it
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    matplotlib_available = True
except ImportError:
    matplotlib = None
    plt = None
    matplotlib_available = False
    logger.warning("matplotlib not found. The plot verb will be disabled.")


def get_seed():
    """Seed for randomized sampling, from the environment when set."""
    value = os.environ.get(SEED_ENV)
    if value is None:
        return DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r, using %d", SEED_ENV, value, DEFAULT_SEED)
        return DEFAULT_SEED


def order_symbol(cmp):
    """-1/0/1 as '<', '=', '>'."""
    return {-1: "<", 0: "=", 1: ">"}[cmp]

