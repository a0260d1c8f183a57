"""Kinetic-energy and Lieb-Thirring bounds for two-dimensional anyons."""
from .constants import (FractionClass, c_alpha_limit, c_alpha_n, c_beta_n,
                        parse_statistics, positivity_threshold)
from .grid import DensityGrid, GridError, PotentialGrid, load_density, load_potential
from .splitting import assemble_certificate, kinetic_bound, lt_bound, split_tree

__version__ = "0.1.0"
