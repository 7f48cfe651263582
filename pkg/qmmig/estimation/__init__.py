from .design import DesignSpec, DesignMatrix, build_design
from .linear import ModelFit, ols_fit
from .binary import binary_mle_fit
from .did import DidSpec, did_fit
from .means import mean_equality_test
