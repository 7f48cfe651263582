from .config import PipelineConfig
from .steps import Pipeline, run_all
