"""Subdivision-algebra triangulations of products of simplices from lattice paths."""

from .algebra import BetaPoly, Monomial, RhoLen, SeededRandom, reduce_to_normal_form
from .graph import Edge, MixedGraph, bidirectional_nu_graph, cell_graph, nu_graph, partial_augment
from .path import IndexedPath, LatticePath, canonical_index, index_path, nu_catalan
from .triangulate import Triangulation, build_p_nu, triangulate

__version__ = "0.1.0"
