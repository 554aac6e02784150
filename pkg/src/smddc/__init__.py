"""Opportunistic NOMA for uplink short-message delivery with a delay constraint.

Monte Carlo simulator and analytic bound library for the session error
probability of OMA versus opportunistic NOMA policies under Rayleigh fading.
"""

from .analytic import (
    ChernoffResult,
    NomaFactor,
    PacketCountDistribution,
    SessionSpec,
    alphas_from_betas,
    bessel_k1,
    beta1,
    beta1_far,
    beta2_sdo,
    beta2_symmetric,
    chernoff_generic,
    chernoff_noma2,
    chernoff_oma,
    exact_session_error,
    mean_packets,
    noma_factor,
    oma_session_error_binomial,
    x_k1,
)
from .channel import RngStream, SlotGains, draw_exponential, draw_slot_gains, sorted_descending
from .config import SystemConfig, db_to_linear, linear_to_db
from .policies import (
    PolicyKind,
    SlotDecision,
    decide_fo,
    decide_oma,
    decide_sdo,
    decide_symmetric,
)
from .power_ladder import PowerLadder, build_ladder, closed_form_level, sinr_at_level
from .simulator import (
    SessionOutcome,
    SessionStats,
    estimate_alphas,
    estimate_session_error,
    run_session,
)

__all__ = [
    "ChernoffResult",
    "NomaFactor",
    "PacketCountDistribution",
    "PolicyKind",
    "PowerLadder",
    "RngStream",
    "SessionOutcome",
    "SessionSpec",
    "SessionStats",
    "SlotDecision",
    "SlotGains",
    "SystemConfig",
    "alphas_from_betas",
    "bessel_k1",
    "beta1",
    "beta1_far",
    "beta2_sdo",
    "beta2_symmetric",
    "build_ladder",
    "chernoff_generic",
    "chernoff_noma2",
    "chernoff_oma",
    "closed_form_level",
    "db_to_linear",
    "decide_fo",
    "decide_oma",
    "decide_sdo",
    "decide_symmetric",
    "draw_exponential",
    "draw_slot_gains",
    "estimate_alphas",
    "estimate_session_error",
    "exact_session_error",
    "linear_to_db",
    "mean_packets",
    "noma_factor",
    "oma_session_error_binomial",
    "run_session",
    "sinr_at_level",
    "sorted_descending",
    "x_k1",
]

__version__ = "0.1.0"
