"""Exact Ewens distribution, its Edgeworth expansion, and mode/maximum checks."""

from .errors import DomainError
from .exact import (
    PmfTable,
    StirlingRow,
    as_rational_theta,
    ewens_pmf_exact,
    ewens_pmf_float,
    mgf_ratio,
    rising_factorial,
    stirling_first_partial,
    stirling_first_row,
    stirling_second,
)
from .expansion import (
    ChiTable,
    ExpansionPoint,
    bell_combination,
    chi_tilde,
    compute_H,
    edgeworth_cdf,
    edgeworth_pmf,
    large_deviation_density,
)
from .mode import (
    ModeReport,
    counterexample_search,
    density_experiment,
    exact_mode,
    hammersley_window,
    maximum_prediction,
    neighbor_difference,
    nint,
    u_star,
)
from .polynomial import OperatorPolynomial, XPolynomial, hermite
from .special import euler_gamma, log_gamma, polygamma, s_star, zeta2, zeta3

__version__ = "0.1.0"
