"""Capacity bounds and coding-scheme simulation for three-way channels."""

from .channels import (
    AwgnChannelSpec,
    FfChannelSpec,
    avg_power,
    awgn_transmit,
    channel_from_config,
    classify,
    ff_transmit,
)
from .codecs import (
    coop_rate_bounds,
    decode_mac_awgn,
    decode_mac_ff,
    nc_modsum,
    run_coop,
    run_noncoop,
)
from .discrete_info import JointPmf, Pmf, entropy, ff_mac_joint, mutual_information
from .engine import (
    SimConfig,
    SimResult,
    capacity_report,
    check_superposition,
    config_from_json,
    monte_carlo,
    rate_sweep,
)
from .galois import FieldSpec, build_field
from .regions import (
    RatePolytope,
    RateTriple,
    awgn_inner,
    awgn_outer,
    c_r,
    c_ss,
    contains,
    equal_rate_max,
    ff_outer,
    is_subset,
    r_triple_prime,
    superposition_rates,
    vertices,
)

__version__ = "0.1.0"

__all__ = [
    "avg_power",
    "awgn_inner",
    "awgn_outer",
    "awgn_transmit",
    "AwgnChannelSpec",
    "build_field",
    "c_r",
    "c_ss",
    "capacity_report",
    "channel_from_config",
    "check_superposition",
    "classify",
    "config_from_json",
    "contains",
    "coop_rate_bounds",
    "decode_mac_awgn",
    "decode_mac_ff",
    "entropy",
    "equal_rate_max",
    "ff_mac_joint",
    "ff_outer",
    "ff_transmit",
    "FfChannelSpec",
    "FieldSpec",
    "is_subset",
    "JointPmf",
    "monte_carlo",
    "mutual_information",
    "nc_modsum",
    "Pmf",
    "r_triple_prime",
    "rate_sweep",
    "RatePolytope",
    "RateTriple",
    "run_coop",
    "run_noncoop",
    "SimConfig",
    "SimResult",
    "superposition_rates",
    "vertices",
]
