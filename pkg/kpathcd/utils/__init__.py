from .fileio import *
