"""Multi-view multi-response regression toolkit.

Blockwise nuclear-norm penalized least squares for row-aligned feature
views, with reduced-rank regression and elastic-net baselines, a simulation
engine, cross-validation tuning, a replicated benchmark harness, and a
CSV-driven command-line interface.
"""

from .baselines import EnetConfig, RrrConfig, enet_lambda_max, fit_enet, fit_rrr
from .core import (
    BlockCoefficients,
    MultiViewDesign,
    NumericalError,
    ResponseMatrix,
    SvdResult,
    concat_design,
    nuclear_norm,
    numeric_rank,
    operator_norm,
    svd,
)
from .evaluation import (
    BenchmarkReport,
    CvResult,
    MetricPair,
    TuningConfig,
    kfold_cv,
    msee,
    mspe,
    run_benchmark,
)
from .pipeline import FittedModel, fit_method, predict, training_mspe
from .simulate import (
    SimDataset,
    SimScenario,
    gen_compound_normal,
    gen_coefficients,
    gen_dataset,
)
from .solver import (
    FitConfig,
    FitResult,
    PenaltyWeights,
    clr_path,
    compute_weights,
    fit_clr,
    lambda_grid,
    lambda_max,
    objective,
    svt,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BlockCoefficients",
    "MultiViewDesign",
    "NumericalError",
    "ResponseMatrix",
    "SvdResult",
    "concat_design",
    "svd",
    "nuclear_norm",
    "operator_norm",
    "numeric_rank",
    "PenaltyWeights",
    "FitConfig",
    "FitResult",
    "compute_weights",
    "svt",
    "objective",
    "fit_clr",
    "clr_path",
    "lambda_max",
    "lambda_grid",
    "RrrConfig",
    "EnetConfig",
    "fit_rrr",
    "fit_enet",
    "enet_lambda_max",
    "SimScenario",
    "SimDataset",
    "gen_compound_normal",
    "gen_coefficients",
    "gen_dataset",
    "MetricPair",
    "TuningConfig",
    "CvResult",
    "BenchmarkReport",
    "msee",
    "mspe",
    "kfold_cv",
    "run_benchmark",
    "FittedModel",
    "fit_method",
    "predict",
    "training_mspe",
]
