"""`qmmig` command line: one subcommand per step plus `run-all`."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/17_pipeline.cli.ipynb.

# %% auto 0
__all__ = ['COMMANDS', 'EXIT_OK', 'EXIT_FAILURE', 'EXIT_VALIDATION', 'EXIT_ESTIMATION', 'build_parser', 'build_config',
           'run_command', 'main']

# %% ../../nbs/17_pipeline.cli.ipynb 2
import argparse
import logging
import sys

from ..core import QMError, ValidationError, EstimationError, StepError
from .config import PipelineConfig
from .steps import Pipeline

logger = logging.getLogger(__name__)

# %% ../../nbs/17_pipeline.cli.ipynb 3
COMMANDS = {'generate': 'generate', 'step1': 'step1_welfare', 'step2': 'step2_dominance',
            'step3': 'step3_migration_models', 'step4': 'step4_did', 'attrition': 'attrition_checks', 'run-all': 'run_all'}
EXIT_OK, EXIT_FAILURE, EXIT_VALIDATION, EXIT_ESTIMATION = 0, 1, 2, 3

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, help='INI settings file')
    common.add_argument('--seed', type=int, help='random seed (non-negative integer)')
    common.add_argument('--out', type=str, help='output directory')
    common.add_argument('--input', type=str, help='panel CSV')
    common.add_argument('--lgas', type=str, help='LGA truth CSV (default: lgas.csv next to the panel when present)')
    common.add_argument('--no-dwelling', action='store_true', help='drop the dwelling-quality covariates from step 1')
    common.add_argument('--unweighted', action='store_true', help='ignore survey weights everywhere')
    common.add_argument('--workers', type=int, help='bootstrap worker threads (0 runs serially)')
    common.add_argument('--verbose', '-v', action='store_true', help='debug logging')
    parser = argparse.ArgumentParser(prog='qmmig', description='Quantile-maximisation migration analysis on household panels')
    sub = parser.add_subparsers(dest='command', required=True)
    for name in COMMANDS: sub.add_parser(name, parents=[common], help=f"run {name}")
    return parser

def build_config(args) -> PipelineConfig:
    "Settings file (or defaults) with the command-line flags applied on top."
    cfg = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    kw = dict(seed=args.seed, out_dir=args.out, input=args.input, lgas=args.lgas, n_workers=args.workers)
    if args.no_dwelling: kw['welfare'] = {'dwelling': False}
    if args.unweighted: kw['weighted'] = False
    return cfg.updated(**kw).validate()

# %% ../../nbs/17_pipeline.cli.ipynb 4
def _exit_code(err):
    if isinstance(err, StepError): err = err.cause
    if isinstance(err, ValidationError): return EXIT_VALIDATION
    if isinstance(err, EstimationError): return EXIT_ESTIMATION
    return EXIT_FAILURE

def run_command(argv=None) -> int:
    "Parse `argv`, run the command and return the process exit code."
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    try:
        cfg = build_config(args)
        getattr(Pipeline(cfg), COMMANDS[args.command])()
    except (QMError, StepError) as e:
        logger.error("%s failed: %s", args.command, e)
        return _exit_code(e)
    return EXIT_OK

def main(): sys.exit(run_command())
