"""Log-domain toolkit for weight sequences, weight functions and the spaces they define."""

__version__ = "0.1.0"

from .assocfn import CurveSample, OmegaEvaluator, log_grid, omega_bruteforce, underline
from .errors import (
    HorizonExceeded,
    IncompatibleSystems,
    InvalidParameter,
    MaximizerAtBracketCap,
    NonFinite,
    NoPositiveQuotient,
    NotLC,
    NotLogConvex,
    PrerequisiteNotMet,
    WeightSeqError,
)
from .seqcore import (
    Derived,
    Gevrey,
    LogSequence,
    QGevrey,
    Status,
    Table,
    Verdict,
    check_approx,
    check_lc,
    check_log_convex,
    check_mg,
    check_om1_char,
    check_preceq,
    check_strong_dom,
    check_tilde_dom,
    convolve,
    from_table,
    gevrey,
    lc_minorant,
    lc_normalize,
    make_sequence,
    qgevrey,
    scale,
    tilde,
)
from .spaces import (
    SpaceSpec,
    SystemKind,
    ThetaFunction,
    decide_equality,
    decide_inclusion,
    decide_mult_closure,
    theta_eval,
)
from .weightfn import (
    ExpPower,
    FromSequence,
    Normalized,
    Product,
    TableWeight,
    Weight,
    WeightFlags,
    assoc_sequence,
    check_weight_condition,
    check_weight_relation,
    essentiality_gap,
    normalize,
)
