from .prospects import Lottery, UtilityFn, WeightFn, Preference, Dominance
from .empirical import EmpiricalDistribution, DominanceReport
