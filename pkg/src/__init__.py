"""Upper bounds on Matveev complexity from edge-coloured graphs."""

__version__ = "1.0.0"
__license__ = "MIT"
