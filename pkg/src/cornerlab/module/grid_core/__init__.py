"""Arithmetic substrate: domains, Gaussian elements and point sets."""

from .domain import Domain, DomainKind, GridPoint, is_prime, norm, rot90
from .gaussian import GaussianElem, gaussian_inv, gaussian_mul, unit_group
from .point_set import PointSet, random_subset
from .sampling import make_rng, spawn_rngs

__all__ = [
    "Domain",
    "DomainKind",
    "GaussianElem",
    "GridPoint",
    "PointSet",
    "gaussian_inv",
    "gaussian_mul",
    "is_prime",
    "make_rng",
    "norm",
    "random_subset",
    "rot90",
    "spawn_rngs",
    "unit_group",
]
