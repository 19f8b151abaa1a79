"""fairplay: principled scoring of unplayed games after a tournament withdrawal.

The package combines pre-tournament Elo expectations with the withdrawn
player's observed results into a shrinkage-imputed score per unplayed
opponent, recomputes standings and tiebreaks under five policies, and ships
a seeded Monte Carlo cross-validation study comparing them.
"""

from ._kernel import BACKEND as KERNEL_BACKEND
from .model import (
    DEFAULT_K,
    DEFAULT_SIGMA2,
    BetaPosterior,
    Crosstable,
    ImputationResult,
    Method,
    PlayerRecord,
    PriorSpec,
    VarianceComponents,
    WithdrawalContext,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "DEFAULT_K",
    "DEFAULT_SIGMA2",
    "BetaPosterior",
    "Crosstable",
    "ImputationResult",
    "Method",
    "PlayerRecord",
    "PriorSpec",
    "VarianceComponents",
    "WithdrawalContext",
    "__version__",
]
