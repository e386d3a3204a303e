import json
from fractions import Fraction as F

import pytest

from oracles import (
    direct_invariants,
    insert_negligible,
    random_forest,
    seeded,
    shuffled,
    xiao_invariants,
)
from slopelab import resolution as res
from slopelab.errors import ForestError, S2Mismatch, SlopelabError
from slopelab.resolution import SingularityForest, SingularityNode as N


def forest(g, n, *roots, s2=None):
    return SingularityForest(g, n, (tuple(roots),), s2)


# --- validation -------------------------------------------------------------


def test_valid_shapes():
    res.validate_forest(forest(3, 0, N(4)))
    res.validate_forest(forest(3, 0, N(3, (N(4),))))
    res.validate_forest(forest(3, 0, N(5, (N(6),))))  # g odd: g+3 under a lone g+2 child


def test_even_parent_forbids_increase():
    with pytest.raises(res.MonotonicityViolation, match=r"fiber\[0\]\.root\[0\]\.child\[0\]"):
        res.validate_forest(forest(5, 0, N(4, (N(5),))))


def test_multiplicity_bounds():
    with pytest.raises(res.MultiplicityTooSmall):
        res.validate_forest(forest(3, 0, N(1)))
    with pytest.raises(res.MultiplicityTooLarge):
        res.validate_forest(forest(3, 0, N(6)))
    with pytest.raises(res.MultiplicityTooLarge):
        res.validate_forest(forest(4, 0, N(5, (N(6, (N(7),)),))))


def test_strict_mode_for_even_genus():
    lone = forest(4, 0, N(6))
    res.validate_forest(lone)
    with pytest.raises(res.MultiplicityTooLarge, match="strict"):
        res.validate_forest(lone, strict=True)
    res.validate_forest(forest(4, 0, N(5, (N(6),))), strict=True)


def test_error_is_an_input_error():
    assert issubclass(res.MonotonicityViolation, SlopelabError)
    assert issubclass(res.MonotonicityViolation, ForestError)


# --- classification ---------------------------------------------------------


def test_classify_single_even_root():
    c = res.classify_indices(forest(3, 0, N(4)))
    assert c == {3: 0, 4: 1, 5: 0}


def test_classify_pair_excludes_second_component():
    c = res.classify_indices(forest(3, 0, N(3, (N(4),))))
    assert c[3] == 1 and c[4] == 0


def test_odd_node_with_two_children_is_not_a_pair():
    c = res.classify_indices(forest(5, 0, N(3, (N(2), N(2)))))
    assert all(v == 0 for v in c.values())
    c = res.classify_indices(forest(5, 0, N(5, (N(6), N(2)))))
    assert c[5] == 0 and c[4] == 1 and c[6] == 1


def test_per_fiber_counts():
    f = SingularityForest(3, 0, ((N(4),), (N(3, (N(4),)), N(5))))
    per = res.classify_fibers(f)
    assert per[0][4] == 1 and per[1][3] == 1 and per[1][4] == 1


@pytest.mark.parametrize(
    "g,n,classified,s2",
    [(3, 8, {4: 8}, 16), (3, 2, {4: 1}, 16), (3, 0, {}, 0)],
)
def test_s2_from_n(g, n, classified, s2):
    f = SingularityForest(g, n)
    assert res.s2_from_n(f, classified) == s2


def test_explicit_s2_must_agree():
    f = forest(3, 2, N(4), s2=16)
    assert res.index_vector(f)[2] == 16
    with pytest.raises(S2Mismatch):
        res.index_vector(forest(3, 2, N(4), s2=15))


# --- direct route -----------------------------------------------------------


def test_resolve_single_root():
    ri, trace = res.resolve_invariants(forest(3, 2, N(4)))
    assert (ri.k2, ri.chi) == (6, 2)
    assert ri.slope() == 3
    assert trace.half_multiplicities == (2,)
    assert trace.blowup_count == 1


def test_resolve_example_family_point():
    ri, _ = res.resolve_invariants(forest(3, 8, *[N(4)] * 8))
    assert (ri.k2, ri.chi, ri.slope()) == (16, 4, 4)


def test_resolve_empty():
    ri, trace = res.resolve_invariants(SingularityForest(3, 0))
    assert (ri.k2, ri.chi, ri.e) == (0, 0, 0)
    assert trace.blowup_count == 0


def test_minus_one_curves_in_trace():
    f = forest(3, 4, N(3, (N(4),)), N(5, (N(6),)))
    _, trace = res.resolve_invariants(f)
    assert trace.minus_one_curve_count == 1 + 2


def test_compare_paths_on_handmade_forests():
    for f in [
        forest(3, 2, N(4)),
        forest(5, F(7, 3), N(3, (N(4, (N(3),)),)), N(7, (N(8),))),
        forest(4, 11, N(5, (N(6),)), N(4, (N(4), N(2)))),
        forest(2, -3, N(3, (N(4),)), N(2)),
    ]:
        rep = res.compare_paths(f)
        assert rep.agree, f
        k2, chi = xiao_invariants(f.g, rep.indices.as_dict())
        assert (rep.direct.k2, rep.direct.chi) == (k2, chi)


# --- properties on random forests -------------------------------------------


def test_dual_path_property_random():
    rng = seeded(7)
    for _ in range(300):
        f = random_forest(rng)
        rep = res.compare_paths(f, strict=True)
        assert rep.agree
        halves = [node.half for _, node, _, _ in f.walk()]
        k2, chi = direct_invariants(f.g, f.n, halves, rep.trace.minus_one_curve_count)
        assert (rep.direct.k2, rep.direct.chi) == (k2, chi)


def test_negligible_insertion_is_transparent():
    rng = seeded(11)
    for _ in range(300):
        f = random_forest(rng)
        g = insert_negligible(rng, f)
        assert g.node_count() > f.node_count()
        a, _ = res.resolve_invariants(f)
        b, _ = res.resolve_invariants(g)
        assert a == b
        assert res.index_vector(f) == res.index_vector(g)


def test_trace_conserved_under_reordering():
    rng = seeded(3)
    for _ in range(200):
        f = random_forest(rng)
        h = shuffled(rng, f)
        a, ta = res.resolve_invariants(f)
        b, tb = res.resolve_invariants(h)
        assert a == b
        assert sorted(ta.half_multiplicities) == sorted(tb.half_multiplicities)
        assert ta.minus_one_curve_count == tb.minus_one_curve_count


def test_lone_top_multiplicity_breaks_agreement_for_even_genus():
    # the reason strict mode exists: s_{g+2} has no valid reading at even g
    rep = res.compare_paths(forest(4, 3, N(6)))
    assert not rep.agree


# --- serialization ----------------------------------------------------------


def test_json_round_trip(tmp_path):
    rng = seeded(5)
    for _ in range(50):
        f = random_forest(rng)
        path = tmp_path / "f.json"
        path.write_text(json.dumps(f.to_dict()))
        assert res.load_forest(path) == f


def test_load_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SlopelabError, match="invalid JSON"):
        res.load_forest(p)
    with pytest.raises(SlopelabError, match="cannot read"):
        res.load_forest(tmp_path / "missing.json")
    with pytest.raises(SlopelabError, match="schema"):
        SingularityForest.from_dict({"schema": 2, "g": 3, "n": "0"})
    with pytest.raises(ForestError, match=r"fiber\[0\]\.root\[1\]"):
        SingularityForest.from_dict({"g": 3, "n": "0", "fibers": [{"roots": [{"m": 2}, {"x": 1}]}]})
    with pytest.raises(SlopelabError):
        SingularityForest.from_dict({"g": 3, "n": 0.5})
