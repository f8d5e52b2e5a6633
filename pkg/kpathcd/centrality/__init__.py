"""
Edge centrality from simulated kappa-bounded random walks.
"""

from .kpath import *
from .exact import *
