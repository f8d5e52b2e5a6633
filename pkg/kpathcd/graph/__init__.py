"""
Graph representation and edge-list ingestion.
"""

from .base import *
from .fileio import *
