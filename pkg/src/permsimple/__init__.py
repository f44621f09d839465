"""Five notions of simple permutation and the structures built on them."""

__version__ = "0.1.0"
