"""Exact normalized-Laplacian spectra and the classification of connected
graphs with an eigenvalue of multiplicity n - 3."""

from .graph import Graph, parse_graph6, write_graph6
from .spectra import multiplicity_profile, nl_charpoly, find_theta, float_spectrum
from .enumeration import canonical_form, connected_graphs
from .classify import spectral_classify, structural_classify, verify_theorem, ds_check

__all__ = [
    "Graph",
    "canonical_form",
    "connected_graphs",
    "ds_check",
    "find_theta",
    "float_spectrum",
    "multiplicity_profile",
    "nl_charpoly",
    "parse_graph6",
    "spectral_classify",
    "structural_classify",
    "verify_theorem",
    "write_graph6",
]

__version__ = "0.1.0"
