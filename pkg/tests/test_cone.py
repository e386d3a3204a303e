from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import certificate_recombines, lam, lambda_h, xiao_invariants
from slopelab import cone
from slopelab.cone import LinearForm, build_constraint, build_program, minimize
from slopelab.enumeration import brute_force_minimum
from slopelab.errors import CrossCheckFailure, Infeasible, ProfileError, Unbounded
from slopelab.invariants import GenusProfile, slope


def admissible(gmax, gmin=2):
    return [(g, q) for g in range(gmin, gmax + 1) for q in range(1, (g + 1) // 2 + 1)]


# --- linear forms -----------------------------------------------------------


def test_linear_form_arithmetic():
    a = LinearForm({2: 1, 3: F(1, 2)}, 1)
    b = LinearForm({3: F(-1, 2), 4: 2})
    assert (a + b) == LinearForm({2: 1, 4: 2}, 1)
    assert (a - a) == LinearForm()
    assert (a * 2)({2: 1, 3: 2}) == 2 * (1 + 1 + 1)
    assert 3 not in (a + b).coefficients
    assert str(LinearForm()) == "0"


def test_build_constraint_g3_q1():
    c = build_constraint(GenusProfile(3, 1))
    assert c == LinearForm({3: F(15, 4), 4: 2, 5: 4, 2: -1})


def test_build_constraint_g3_q2():
    # s_2 + 12 s_3 + 12 s_4 <= 4 s_5
    c = build_constraint(GenusProfile(3, 2))
    assert c == LinearForm({2: -1, 3: -12, 4: -12, 5: 4})


def test_build_constraint_requires_positive_qf():
    with pytest.raises(ProfileError):
        build_constraint(GenusProfile(3, 0))


def test_constraint_matches_oracle_on_unit_vectors():
    for g, q in admissible(20):
        c = build_constraint(GenusProfile(g, q))
        for i in range(2, g + 3):
            e = {i: 1}
            assert c(e) == lambda_h(g, q, e) - e.get(2, 0), (g, q, i)


# --- programs ---------------------------------------------------------------


@pytest.mark.parametrize("g,nvars", [(3, 4), (2, 3)])
def test_program_shape(g, nvars):
    # variables s_2..s_{g+2}; sign constraints on all but the free s_2
    prog = build_program(GenusProfile(g, 1))
    assert list(prog.variables) == list(range(2, g + 3))
    assert len(prog.variables) == nvars
    signs = [k for k in prog.inequalities if k != "cone"]
    assert len(signs) == nvars - 1
    assert "cone" in prog.inequalities
    assert prog.objective({}) == 0


def test_program_rejects_qf_zero():
    with pytest.raises(ProfileError):
        build_program(GenusProfile(6, 0))


@pytest.mark.parametrize(
    "g,q,expected", [(3, 1, F(4)), (2, 1, F(4)), (5, 2, F(16, 3)), (4, 2, F(6)), (5, 3, F(8))]
)
def test_minimize_examples(g, q, expected):
    res = minimize(build_program(GenusProfile(g, q)))
    assert res.minimum == expected
    k2, chi = xiao_invariants(g, res.optimal_point)
    assert chi == 1 and k2 == expected


def test_minimize_matches_lambda_small_range():
    for g, q in admissible(12):
        assert minimize(build_program(GenusProfile(g, q))).minimum == lam(g, q)


def test_optimal_point_structure():
    # generic case: optimum supported on s_2 and s_{2(q+1)}, cone tight
    for g, q in admissible(12):
        res = minimize(build_program(GenusProfile(g, q)))
        assert "cone" in res.tight_constraints
        support = {i for i, v in res.optimal_point.items() if v != 0 and i != 2}
        if 2 * q <= g - 1:
            assert support == {2 * (q + 1)}
        elif g % 2 == 0:
            assert support == {g + 1}
        else:
            assert support == {g + 2}
        (i,) = support
        assert res.basic_variables == {f"s{i}", "s2+"} or res.basic_variables == {f"s{i}", "s2-"}


# --- certificates -----------------------------------------------------------


def test_certificate_example():
    res = minimize(build_program(GenusProfile(5, 2)))
    assert res.certificate_strings()["cone"] == "8/33"
    assert list(res.certificate_strings()) == sorted(res.certificate_strings())


def test_certificates_check_both_ways():
    for g, q in admissible(14):
        p = GenusProfile(g, q)
        res = minimize(build_program(p))
        assert cone.check_certificate(p, res.minimum, res.certificate)
        assert certificate_recombines(g, q, res.minimum, res.certificate)


def test_tampered_certificate_rejected():
    p = GenusProfile(6, 2)
    res = minimize(build_program(p))
    bad = dict(res.certificate)
    bad["cone"] += F(1, 1000)
    with pytest.raises(CrossCheckFailure, match="recombine"):
        cone.check_certificate(p, res.minimum, bad)
    neg = dict(res.certificate)
    neg["s3"] = F(-1)
    with pytest.raises(CrossCheckFailure, match="negative"):
        cone.check_certificate(p, res.minimum, neg)
    with pytest.raises(CrossCheckFailure):
        cone.check_certificate(p, res.minimum + 1, res.certificate)
    missing = {k: v for k, v in res.certificate.items() if k != "cone"}
    with pytest.raises(CrossCheckFailure, match="keys"):
        cone.check_certificate(p, res.minimum, missing)


# --- extremal rays and sharpness ---------------------------------------------


def test_extremal_ray_examples():
    r = cone.extremal_ray(GenusProfile(3, 1))
    assert r.as_dict(nonzero=True) == {2: 2, 4: 1}
    assert slope(r) == 4
    r = cone.extremal_ray(GenusProfile(5, 3))
    assert r.as_dict(nonzero=True) == {2: 6, 7: 1}
    assert slope(r) == 8


def test_extremal_rays_attain_and_sit_on_the_face():
    for g, q in admissible(20):
        p = GenusProfile(g, q)
        r = cone.extremal_ray(p)
        assert slope(r) == lam(g, q)
        assert build_constraint(p)(r) == 0


@pytest.mark.parametrize("g,q,bound", [(4, 2, F(6)), (20, 1, F(110, 19)), (3, 1, F(4))])
def test_verify_sharpness(g, q, bound):
    rep = cone.verify_sharpness(GenusProfile(g, q))
    assert rep.equal and rep.bound == bound and rep.lp_minimum == bound


# --- simplex on toy problems ------------------------------------------------


def test_simplex_toy_optimum():
    # min -x - y  s.t. x + y + s = 4, x - y + t = 1
    sol = cone.simplex([[1, 1, 1, 0], [1, -1, 0, 1]], [4, 1], [-1, -1, 0, 0])
    assert sol.value == -4


def test_simplex_unbounded():
    with pytest.raises(Unbounded):
        cone.simplex([[1, -1]], [1], [0, -1])


def test_simplex_infeasible():
    with pytest.raises(Infeasible):
        cone.simplex([[1, 1], [1, 1]], [1, 2], [0, 0])


def test_simplex_negative_rhs_and_redundant_row():
    sol = cone.simplex([[-1, -1], [2, 2]], [-2, 4], [1, 3])
    assert sol.value == 2 and sol.x == [2, 0]


@given(
    st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=3),
    st.lists(st.integers(0, 6), min_size=4, max_size=4),
)
def test_simplex_strong_duality(rows, c):
    # feasible by construction: b = A x0 with x0 = (1,1,1,1)
    b = [sum(r) for r in rows]
    try:
        sol = cone.simplex(rows, b, c)
    except Unbounded:
        return
    assert all(v >= 0 for v in sol.x)
    assert [sum(F(a) * x for a, x in zip(r, sol.x)) for r in rows] == b
    assert sol.value <= sum(c)
    assert all(v >= 0 for v in sol.reduced_costs)
    assert sum(y * bi for y, bi in zip(sol.duals, b)) == sol.value


# --- independent vertex enumeration ------------------------------------------


def test_brute_force_agrees_small():
    for g, q in admissible(6):
        prog = build_program(GenusProfile(g, q))
        best, vertex = brute_force_minimum(prog)
        assert best == minimize(prog).minimum == lam(g, q)
        k2, chi = xiao_invariants(g, vertex)
        assert chi == 1 and k2 == best
