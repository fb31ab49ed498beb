"""Toolkit for generalized Dynkin diagrams with root-of-unity labels.

Core layers: exact label arithmetic (roots), the diagram structure and its
canonical form (core), simple chains (chains), structural recognizers
(classify), Cartan-matrix machinery (cartan), the arithmetic database
(tables), the arithmetic/quasi-affine oracle (oracle), and the exhaustive
search (search).
"""

from .core import GDD, from_braiding_matrix, parse_gdd
from .roots import Parameter, UnityRoot

__all__ = ["GDD", "Parameter", "UnityRoot", "from_braiding_matrix", "parse_gdd"]
__version__ = "0.1.0"
