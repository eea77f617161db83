"""Capacity-region bounds for the two-user Gaussian interference channel with an out-of-band relay."""

from .channel_model import ChannelParams, link_budget, regime, sample_channels, swap_users
from .mutual_info import (MIProfile, PowerSplit, QuantLevels, lemma1_bounds, mi_profile,
                          private_powers_etw, private_powers_simo, q_default)
from .regions import (LinearConstraint, RatePolytope, achievable_constraints,
                      achievable_single_link, hk_raw_constraints, infinite_relay_outer,
                      outer_constraints)
from .gap_analysis import alpha_fn, beta_fn, gap_budget, gap_report

__version__ = "0.1.0"
