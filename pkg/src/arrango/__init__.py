"""Exact computations with hyperplane arrangements over Q and cyclotomic fields."""

from .arrangement import CATALOG, Arrangement, Flat, from_matrix, localization, product, restriction
from .chambers import chamber_graph, is_simplicial_geometric
from .coxeter import coxeter_graph, graph_change_diagram, is_crystallographic, root_system_closure
from .io import parse_arrangement, parse_arrangement_file, write_arrangement
from .lattice import build_lattice, char_poly, is_irreducible, is_supersolvable, s_value
from .scalar import QQ, Cyclo, ScalarField, cos_frac, sign, sin_frac, zeta

__version__ = "0.1.0"
