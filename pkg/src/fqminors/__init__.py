"""Minors of random representable matroids over small finite fields.

Exact formulas and bounds for the probability that a fixed matroid occurs
as a minor of the column matroid of a uniform random matrix over GF(q),
plus the constructions to check them: brute-force oracles, seeded Monte
Carlo, a witness-producing minor search, and a graphic-matroid class test.
"""

from .gf import Field, field
from .matrix import FqMatrix
from .matroid import Matroid, MatroidStats, catalog, from_graph, from_matrix
from .minor import MinorWitness, find_minor, find_minor_matrix, verify_witness
from .sampler import Estimate, SeedSpec, mc_event_prob, mc_minor_prob, sample_matrix

__version__ = "0.1.0"

__all__ = [
    "Field",
    "field",
    "FqMatrix",
    "Matroid",
    "MatroidStats",
    "catalog",
    "from_graph",
    "from_matrix",
    "MinorWitness",
    "find_minor",
    "find_minor_matrix",
    "verify_witness",
    "Estimate",
    "SeedSpec",
    "mc_event_prob",
    "mc_minor_prob",
    "sample_matrix",
    "__version__",
]
