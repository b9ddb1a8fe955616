"""Resistance distance in k-coalescences of complete graphs.

Graph constructors, a Laplacian group-inverse oracle, closed-form resistance
matrices for the coalescence families, resistance indices, and sweeps that
compare published closed forms against definitions.
"""

from .graphs import (
    BipartiteComplete, BipartiteStar, Dandelion, Graph, JoinCoal, KCoalComplete, Kite,
    Pineapple, Rose3, StarJoinCoal, Windmill, build_family, join, k_coalescence,
    laplacian, make_standard, parse_spec,
)
from .indices import (
    additive_dk, kemeny_constant, kirchhoff_index, mixed_dk, multiplicative_dk,
    paper_formula, resistance_energy, verify,
)
from .resistance import ResistanceMatrix, closed_form, resistance_oracle

__version__ = "0.1.0"
