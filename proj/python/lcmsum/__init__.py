"""Reciprocal lcm sums: coprimality graphs, certified Euler products and exact polytope volumes."""

from fractions import Fraction

from . import _core
from ._core import (
    ComputationError,
    DomainError,
    PrecisionError,
    ResourceError,
    c_k_expression,
    coprimality_graph,
    edge_count_formula,
    export_ieqs,
    graph_dump,
    hadamard_constants,
    independent_set_counts,
    q_polynomial,
    q_polynomial_by_edge_subsets,
    q_polynomial_of_graph,
    rho,
    rho_of_graph,
    series_identity_check,
    stirling_ism_counts,
    verify,
)

__all__ = [
    "ComputationError",
    "DomainError",
    "PrecisionError",
    "ResourceError",
    "alpha_k",
    "alpha_sum",
    "brute_S",
    "brute_U",
    "brute_V",
    "c_k_expression",
    "coprimality_graph",
    "decompose_tuple",
    "edge_count_formula",
    "export_ieqs",
    "fast_S2",
    "graph_dump",
    "gwise_constrained_sum",
    "hadamard_constants",
    "independent_set_counts",
    "lattice_counts",
    "leading_constants",
    "q_polynomial",
    "q_polynomial_by_edge_subsets",
    "q_polynomial_of_graph",
    "rho",
    "rho_of_graph",
    "series_identity_check",
    "stirling_ism_counts",
    "theta_exponents",
    "verify",
    "volume",
]


def _fraction(parts):
    num, den = parts
    return Fraction(int(num), int(den))


def volume(kind, k):
    """Exact volume of a polytope ("D", "D_star", "D_star2", "D_star3", "T")."""
    return _fraction(_core.volume(kind, k))


def lattice_counts(kind, k, max_dilation):
    return [int(c) for c in _core.lattice_counts(kind, k, max_dilation)]


def brute_S(k, x):
    return _fraction(_core.brute_S(k, x))


def brute_U(k, x):
    return _fraction(_core.brute_U(k, x))


def brute_V(k, x):
    return _fraction(_core.brute_V(k, x))


def fast_S2(x):
    """Fraction for x <= 10^4, otherwise a dict with a certified interval."""
    result = _core.fast_S2(x)
    return result if isinstance(result, dict) else _fraction(result)


def gwise_constrained_sum(k, x, fix_last_to_one=False):
    return _fraction(_core.gwise_constrained_sum(k, x, fix_last_to_one))


def alpha_k(k, n):
    return int(_core.alpha_k(k, n))


def alpha_sum(k, x):
    return _fraction(_core.alpha_sum(k, x))


def decompose_tuple(k, n):
    return list(_core.decompose_tuple(k, list(n)))


def _surd(entry):
    entry = dict(entry)
    entry["coefficient"] = _fraction(entry["coefficient"])
    return entry


def theta_exponents(k):
    return {name: _surd(value) for name, value in _core.theta_exponents(k).items()}


def leading_constants(k, digits=20):
    result = dict(_core.leading_constants(k, digits))
    for key in ("vol_D", "vol_D_star", "vol_D_star2"):
        result[key] = _fraction(result[key])
    return result
