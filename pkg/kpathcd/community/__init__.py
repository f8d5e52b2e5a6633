"""
Modularity, the Louvain procedure and the community detection drivers.
"""

from .partition import *
from .louvain import *
from .base import *
from .fkcd import *
