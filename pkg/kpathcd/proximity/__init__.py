"""
Pairwise node proximity and the weighted graphs built from it.
"""

from .base import *
from .distance import *
