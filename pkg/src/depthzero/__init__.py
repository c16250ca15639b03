"""Depth-zero structure of reductive groups: root data, affine diagrams, centralizers, Chevalley bases."""

__version__ = "0.1.0"
