"""Thompson's group F acting on dyadic rationals, their covering space, and
sign configurations over both, with exact finite-window verification of the
proximal, fixed-point-free action on mirror pairs."""

__version__ = "0.1.0"

from .numerics import Dyadic, parse, format_dyadic
from .fgroup import (
    PLHomeo,
    GEN_A,
    GEN_B,
    IDENTITY,
    pl_apply,
    pl_compose,
    pl_invert,
    pl_equal,
    word_eval,
    validate_membership,
    in_K,
)
from .actions import (
    LambdaPoint,
    lambda_apply_letter,
    lambda_apply_word,
    psi,
    schreier_ball,
    rooted_ball_isomorphic,
    limit_check,
)
from .configs import (
    PartialConfig,
    PairClass,
    shift,
    pointwise_product,
    pi_map,
    y_consistent,
    bar_flip,
    pair_class,
    check_not_fixed_by_b,
)
from .proximal import (
    ProximalityCertificate,
    interval_map,
    map_tuple,
    proximality_witness,
    z_proximality_check,
)
from .measure import Cylinder, cylinder_measure, pullback_cylinder, sample_config

__all__ = [
    "Dyadic",
    "parse",
    "format_dyadic",
    "PLHomeo",
    "GEN_A",
    "GEN_B",
    "IDENTITY",
    "pl_apply",
    "pl_compose",
    "pl_invert",
    "pl_equal",
    "word_eval",
    "validate_membership",
    "in_K",
    "LambdaPoint",
    "lambda_apply_letter",
    "lambda_apply_word",
    "psi",
    "schreier_ball",
    "rooted_ball_isomorphic",
    "limit_check",
    "PartialConfig",
    "PairClass",
    "shift",
    "pointwise_product",
    "pi_map",
    "y_consistent",
    "bar_flip",
    "pair_class",
    "check_not_fixed_by_b",
    "ProximalityCertificate",
    "interval_map",
    "map_tuple",
    "proximality_witness",
    "z_proximality_check",
    "Cylinder",
    "cylinder_measure",
    "pullback_cylinder",
    "sample_config",
]
