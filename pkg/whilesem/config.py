"""
Configuration management for the whilesem workbench.
"""

import os
from decouple import config, Csv

# Check budgets
DEFAULT_FUEL = config("WHILESEM_FUEL", default=1000, cast=int)
DEFAULT_DEPTH = config("WHILESEM_DEPTH", default=50, cast=int)
DEFAULT_INPUTS = tuple(config("WHILESEM_INPUTS", default="-2,-1,0,1,2", cast=Csv(int)))
DEFAULT_BREADTH = config("WHILESEM_BREADTH", default=200000, cast=int)

# Interactive runs
MAX_STEPS = config("WHILESEM_MAX_STEPS", default=100000, cast=int)

# Application settings
LOG_LEVEL = config("WHILESEM_LOG_LEVEL", default="WARNING")
CORPUS_DIR = config("WHILESEM_CORPUS_DIR", default="corpus")
PROGRAM_SUFFIX = ".whl"
TRANSCRIPT_SUFFIX = ".transcript"


def corpus_dir(directory=CORPUS_DIR):
    """Resolve the corpus directory, relative paths against the repository root."""
    if os.path.isabs(directory):
        return directory
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    return os.path.join(root, directory)
