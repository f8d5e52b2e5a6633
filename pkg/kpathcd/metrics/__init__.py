"""
Evaluation measures: normalized mutual information and coverage.
"""

from .evaluation import *
