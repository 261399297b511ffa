import itertools
import math
from fractions import Fraction

import pytest

import lcmsum


def lcm_sum(k, x, weight=lambda t: 1, keep=lambda t: True):
    total = Fraction(0)
    for t in itertools.product(range(1, x + 1), repeat=k):
        if keep(t):
            total += Fraction(weight(t), math.lcm(*t))
    return total


def test_volumes_are_fractions():
    assert lcmsum.volume("D_star", 3) == Fraction(11, 480)
    assert lcmsum.volume("D", 2) == Fraction(1, 3)
    assert lcmsum.volume("T", 3) == Fraction(1, math.factorial(7))


def test_q_polynomial_listing():
    assert lcmsum.q_polynomial(3) == [1, 0, -9, 16, -9, 0, 1, 0]


def test_graph_and_independent_sets():
    g = lcmsum.coprimality_graph(3)
    assert g["v"] == 7
    assert len(g["edges"]) == lcmsum.edge_count_formula(3) == 9
    assert lcmsum.independent_set_counts(g["v"], g["edges"])[:4] == [1, 7, 12, 6]


@pytest.mark.parametrize("k,x", [(2, 12), (3, 6)])
def test_brute_sums_match_python(k, x):
    assert lcmsum.brute_S(k, x) == lcm_sum(k, x)
    assert lcmsum.brute_U(k, x) == lcm_sum(k, x, keep=lambda t: math.gcd(*t) == 1)
    assert lcmsum.brute_V(k, x) == lcm_sum(k, x, weight=math.prod)


def test_fast_s2():
    assert lcmsum.fast_S2(40) == lcm_sum(2, 40)
    big = lcmsum.fast_S2(20000)
    assert big["lower"] <= big["value"] <= big["upper"]


def test_rho_g3():
    r = lcmsum.rho(3)
    assert abs(r["value"] - 0.04932167) < 5e-8
    assert r["abs_error"] <= 1e-15


def test_export_listing():
    text = lcmsum.export_ieqs("D_star3", 3)
    assert text.startswith("P=Polyhedron(ieqs=[")
    assert text.rstrip().endswith("P.volume()")


def test_theta():
    theta = lcmsum.theta_exponents(3)
    assert theta["theta1"]["coefficient"] == Fraction(1, 14)
    assert theta["theta2"]["coefficient"] == Fraction(3, 40)


def test_errors_map_to_exceptions():
    with pytest.raises(lcmsum.DomainError):
        lcmsum.volume("D", 9)
