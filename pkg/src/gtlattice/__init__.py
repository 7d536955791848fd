"""Lattice and toric-ideal computations for the degree-d invariant monomial systems.

Submodules: ``gtsystem`` (triples and monomials), ``intlat`` (exact integer
linear algebra), ``binomials`` (suitable binomials and fibers), ``basis``
(triangular Z-basis of the relation lattice), ``markov`` (fiber-graph
connectivity) and ``cli``.
"""

from .errors import CertificationError, DomainError, ResourceError
from .gtsystem import GtParams, Triple, derive_params, enumerate_wd, mu_closed_form

__version__ = "0.1.0"

__all__ = [
    "CertificationError", "DomainError", "GtParams", "ResourceError", "Triple",
    "derive_params", "enumerate_wd", "mu_closed_form",
]
