"""Exact computations with (weak) extrinsic symmetric triples."""

__version__ = "0.1.0"
