from fractions import Fraction

import pytest

import stabkit


def test_group_basics():
    g = stabkit.parse_group("Z3xZ3")
    assert g.order == 9
    assert g.is_abelian
    assert g.exponent() == 3
    d4 = stabkit.parse_group("D4")
    assert not d4.is_abelian


def test_cayley_halfgraphs():
    z5 = stabkit.cyclic(5)
    s = stabkit.cayley_graph(z5, [0, 1])
    assert len(s) == 10
    assert s.density() == Fraction(2, 5)
    r = stabkit.count_halfgraphs(s, 2)
    assert r["exact_count"] == 10
    assert r["theta_group"] == Fraction(10, 625)
    for a, b in stabkit.enumerate_halfgraphs(s, 2, 10):
        assert s.test(a[0], b[0]) and s.test(a[1], b[1]) and s.test(a[0], b[1]) and not s.test(a[1], b[0])


def test_sampling_interval_contains_exact():
    g = stabkit.cyclic(7)
    s = stabkit.cayley_graph(g, [0, 1, 2])
    exact = stabkit.count_halfgraphs(s, 2)["theta_group"]
    est = stabkit.sample_halfgraphs(s, 2, 20000, seed=3)
    lo, hi = est["confidence_interval"]
    assert lo <= exact <= hi


def test_coset_boxes_are_stable():
    g = stabkit.parse_group("Z2^4")
    for h in stabkit.subgroups(g, 4):
        s = stabkit.coset_box_set(g, h, [(0, 0)])
        assert stabkit.count_halfgraphs(s, 2)["exact_count"] == 0
        sq = stabkit.census(s, "square")
        assert sq["total_count"] == len(s) * h.order


def test_box_cover_recovers_coset_union():
    g = stabkit.cyclic(6)
    h = stabkit.subgroup_generated_by(g, [2])
    s = stabkit.coset_box_set(g, h, [(0, 0), (1, 1)])
    cover = stabkit.greedy_box_cover(s, Fraction(1, 100), 4)
    assert cover["symdiff_error"] == 0
    assert cover["union"] == s
    assert cover["halfgraphs_at_ell_plus_1"] == 0


def test_generators_and_experiment():
    g = stabkit.cyclic(11)
    a = stabkit.sidon_set(g)
    assert len(a) >= 3
    s = stabkit.perturb(stabkit.cayley_graph(g, a), "1/20", seed=1)
    assert s.count() > 0
    report = stabkit.run_experiment({
        "groups": ["Z3xZ3"],
        "generator": {"kind": "coset_boxes", "subgroup": {"index": 3, "ordinal": 0}, "pairs": "diagonal"},
        "k": 2, "max_index": 3, "epsilon": "1/10", "seed": 7,
    })
    row = report["rows"][0]
    assert row["theta_k"]["theta_group"]["num"] == 0
    assert row["best_subgroup"]["status"] == "FOUND"


def test_errors_surface_as_exceptions():
    with pytest.raises(stabkit.StabkitError):
        stabkit.parse_group("Z0")
    with pytest.raises(stabkit.StabkitError):
        stabkit.cayley_graph(stabkit.cyclic(3), [5])
