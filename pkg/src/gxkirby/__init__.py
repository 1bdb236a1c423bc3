"""Exact 4-manifold invariants from G-crossed braided spherical fusion categories."""

from .scalars import Cyclotomic, root_of_unity

__all__ = ["Cyclotomic", "root_of_unity"]
__version__ = "0.1.0"
