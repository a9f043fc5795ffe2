"""Fast evaluation of linearly recurrent sequences."""

__version__ = "0.1.0"
