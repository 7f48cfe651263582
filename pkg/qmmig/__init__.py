__version__ = "0.1.0"
from . import core
from . import theory
from . import estimation
from . import simulation
from . import pipeline
