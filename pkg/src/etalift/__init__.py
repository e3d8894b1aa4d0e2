"""Half-integral weight forms with the eta multiplier: q-series arithmetic,
Hecke operators, Shimura-type lifts and congruences for colored Frobenius
partitions."""

from .arith import (RealCharacter, Root24, atkin_lehner_signs, epsilon_d, hasse_exponent,
                    is_suitable_numeric, kronecker)
from .forms import EtaQuotient, cphi_series, expand_eta_quotient, fit_A5, rm_count
from .hecke import HalfIntegralMeta, al_eigen_check, t_p2_eta, t_p2_theta, t_p_integral
from .kernels import BACKEND
from .lift import classical_shimura_lift, compare_lifts, equivariance_check, shimura_lift
from .multipliers import GL2Int, nu_eta, nu_theta, verify_transform_numeric
from .qseries import FracSeries, ModSeries, eta_series

__all__ = [
    "BACKEND", "EtaQuotient", "FracSeries", "GL2Int", "HalfIntegralMeta", "ModSeries",
    "RealCharacter", "Root24", "al_eigen_check", "atkin_lehner_signs", "classical_shimura_lift",
    "compare_lifts", "cphi_series", "epsilon_d", "equivariance_check", "eta_series",
    "expand_eta_quotient", "fit_A5", "hasse_exponent", "is_suitable_numeric", "kronecker",
    "nu_eta", "nu_theta", "rm_count", "shimura_lift", "t_p2_eta", "t_p2_theta", "t_p_integral",
    "verify_transform_numeric",
]
