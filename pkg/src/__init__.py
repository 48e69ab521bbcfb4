"""
pareto-smooth

Smoothed analysis of multiobjective Pareto sets: phi-smooth instances,
Pareto enumeration, witness certificates, probability bounds and the
experiment harness around them.
"""

__version__ = "1.0.0"
__author__ = "Grigor Crandon"

from .model import *
from .solutions import *
from .densities import *
from .pareto import *
from .witness import *
from .bounds import *
from .checks import *
from .data import *
from .experiments import *
from .reporting import *
from .utils import *
