"""Exact Donaldson and Seiberg-Witten invariant calculations for four-manifolds."""
from .errors import PreconditionError
from .lattice import Lattice
from .manifold import FourManifold
from .polyalg import Poly
from .coeffs import CoeffTable
from .diffops import SeqFn
from .invariants import InvariantQuery

__all__ = ["PreconditionError", "Lattice", "FourManifold", "Poly", "CoeffTable",
           "SeqFn", "InvariantQuery"]
