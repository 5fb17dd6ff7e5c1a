"""Oracle-driven adversarially robust halfspace learning.

Thin Python facade over the compiled core: dataset plants, exact robust
ERM through separation oracles, noise-aware margin training via mirror
descent, and robustness certification.
"""

from ._core import (
    Dataset,
    GenerationError,
    Halfspace,
    HullAdversary,
    InvalidInputError,
    NormBallAdversary,
    PerturbationSet,
    ProtocolError,
    RermResult,
    TrainedModel,
    adversary_from_json,
    approx_sep_from_ball_eval,
    cert,
    cert_fastpath,
    clean_error,
    comparison_tolerance,
    dual_norm,
    empirical_robust_risk,
    generate,
    link_u,
    lp_norm,
    margin_error,
    margin_loss,
    phi,
    read_dataset_csv,
    robust_loss_lp,
    set_comparison_tolerance,
    train_rcn,
    train_rerm,
    write_dataset_csv,
)

__all__ = [
    "Dataset",
    "GenerationError",
    "Halfspace",
    "HullAdversary",
    "InvalidInputError",
    "NormBallAdversary",
    "PerturbationSet",
    "ProtocolError",
    "RermResult",
    "TrainedModel",
    "adversary_from_json",
    "approx_sep_from_ball_eval",
    "cert",
    "cert_fastpath",
    "clean_error",
    "comparison_tolerance",
    "dual_norm",
    "empirical_robust_risk",
    "generate",
    "link_u",
    "lp_norm",
    "margin_error",
    "margin_loss",
    "phi",
    "read_dataset_csv",
    "robust_loss_lp",
    "set_comparison_tolerance",
    "train_rcn",
    "train_rerm",
    "write_dataset_csv",
]
