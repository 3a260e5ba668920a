"""Trades and unitrades over the Boolean cube."""

from .boolcube import AnfPolynomial, Subcube, anf, enumerate_subcubes, from_bits, superset_counts, to_bits
from .constructions import (
    apply_affine,
    kasami_form_a,
    kasami_form_b,
    minimum_trade,
    simplex_fixture,
    symmetric_difference_trade,
    type_a_trade,
)
from .errors import CapacityError, InconsistencyError, ParameterError
from .spectrum import (
    check_weight_gaps,
    classify_volume,
    enumerate_unitrades,
    rm_weight_distribution,
    trade_volume_spectrum,
)
from .trades import (
    Trade,
    TradeViolation,
    duplicate_coordinate,
    is_design_trade,
    lift_to_design_trade,
    merge,
    translate,
    verify_trade_definition,
    verify_trade_subcubes,
    volume,
)
from .unitrades import (
    SplitResult,
    affine_rank,
    affine_split_basis,
    is_unitrade_anf,
    is_unitrade_parity,
    split,
)

__version__ = "0.1.0"

__all__ = [
    "AnfPolynomial",
    "CapacityError",
    "InconsistencyError",
    "ParameterError",
    "SplitResult",
    "Subcube",
    "Trade",
    "TradeViolation",
    "affine_rank",
    "affine_split_basis",
    "anf",
    "apply_affine",
    "check_weight_gaps",
    "classify_volume",
    "duplicate_coordinate",
    "enumerate_subcubes",
    "enumerate_unitrades",
    "from_bits",
    "is_design_trade",
    "is_unitrade_anf",
    "is_unitrade_parity",
    "kasami_form_a",
    "kasami_form_b",
    "lift_to_design_trade",
    "merge",
    "minimum_trade",
    "rm_weight_distribution",
    "simplex_fixture",
    "split",
    "superset_counts",
    "symmetric_difference_trade",
    "to_bits",
    "trade_volume_spectrum",
    "translate",
    "type_a_trade",
    "verify_trade_definition",
    "verify_trade_subcubes",
    "volume",
]
