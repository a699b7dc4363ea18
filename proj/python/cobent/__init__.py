"""Entanglement detection via complete orthogonal bases.

Thin python surface over the C++ core: bases and their validation, density
matrices and noise families, correlation tensors, criterion matrices with
their separability bounds, and threshold scans.
"""

from cobent._core import *  # noqa: F401,F403
from cobent._core import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
