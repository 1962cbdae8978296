"""Module lattices over cyclotomic fields, lifted from codes over residue fields."""

from .codelift import ModuleLatticeInstance, build_module_lattice, lift_subspace
from .errors import CapError, ModlatError, ValidationError
from .numberfield import CyclotomicField, FieldElement, field_new
from .residue import PrimeIdeal, ResidueField, Subspace, enumerate_subspaces, random_subspace, split_prime

__version__ = "0.1.0"

__all__ = [
    "CapError",
    "CyclotomicField",
    "FieldElement",
    "ModlatError",
    "ModuleLatticeInstance",
    "PrimeIdeal",
    "ResidueField",
    "Subspace",
    "ValidationError",
    "build_module_lattice",
    "enumerate_subspaces",
    "field_new",
    "lift_subspace",
    "random_subspace",
    "split_prime",
]
