from fractions import Fraction

import pytest

import homnet as hn
from homnet import errors, homology
from conftest import random_chain, random_cochain, random_complex


# -- cycles and boundaries ------------------------------------------------

def test_circle_loop_is_cycle(circle):
    z = hn.Chain(circle, 1, {0: 1, 2: 1, 1: -1}, hn.INTEGER)
    assert hn.is_cycle(z)


def test_circle_all_plus_sum_is_not_cycle(circle):
    c = hn.Chain(circle, 1, {0: 1, 1: 1, 2: 1}, hn.INTEGER)
    assert not hn.is_cycle(c)
    b = hn.boundary(c)
    assert dict(b.coeffs) == {0: -2, 2: 2}


def test_zero_chain_is_cycle(circle):
    assert hn.is_cycle(hn.Chain.zero(circle, 1, hn.INTEGER))


def test_rim_cycle_bounds_in_disc(disc):
    rim = hn.Chain(disc, 1, {0: 1, 3: 1, 1: -1}, hn.INTEGER)
    result = hn.is_boundary(rim)
    assert result.bounds
    recovered = hn.boundary(result.witness)
    assert recovered == rim.as_module(hn.RATIONAL)


def test_face_boundary_bounds(disc):
    b1 = hn.Chain(disc, 1, {0: 1, 4: 1, 2: -1}, hn.INTEGER)  # AB + BD - AD
    result = hn.is_boundary(b1)
    assert result.bounds
    assert hn.boundary(result.witness) == b1.as_module(hn.RATIONAL)


def test_circle_loop_does_not_bound(circle):
    z = hn.Chain(circle, 1, {0: 1, 2: 1, 1: -1}, hn.INTEGER)
    assert not hn.is_boundary(z).bounds


def test_zero_chain_bounds(circle):
    result = hn.is_boundary(hn.Chain.zero(circle, 1, hn.INTEGER))
    assert result.bounds
    assert result.witness.is_zero(0)


def test_non_cycle_rejected(circle):
    c = hn.Chain(circle, 1, {0: 1}, hn.INTEGER)
    with pytest.raises(errors.NotACycle):
        hn.is_boundary(c)


# -- betti, euler, generators ----------------------------------------------

def test_circle_betti(circle):
    assert hn.betti_numbers(circle) == [1, 1]


def test_disc_betti(disc):
    assert hn.betti_numbers(disc) == [1, 0, 0]


def test_isolated_nodes_betti():
    cx = hn.build_complex(["A", "B", "C"], [])
    assert hn.betti_numbers(cx) == [3]


def test_euler_characteristic(circle, disc):
    assert hn.euler_characteristic(circle) == 0
    assert hn.euler_characteristic(disc) == 1
    assert hn.euler_characteristic(hn.build_complex(["A"], [])) == 1


def test_circle_generator_spans_loop(circle):
    gens = hn.homology_generators(circle, 1)
    assert len(gens) == 1
    z = gens[0]
    assert dict(z.coeffs) == {0: 1, 1: -1, 2: 1}


def test_disc_has_no_h1_generators(disc):
    assert hn.homology_generators(disc, 1) == []


def test_component_representatives():
    cx = hn.build_complex(
        ["A", "B", "C", "X", "Y", "Z"],
        [("A", "B"), ("B", "C"), ("C", "A"), ("X", "Y"), ("Y", "Z"), ("Z", "X")],
    )
    gens = hn.homology_generators(cx, 0)
    assert len(gens) == 2
    for g in gens:
        assert hn.is_cycle(g)
        assert not hn.is_boundary(g).bounds


def test_generators_are_cycles_not_boundaries(rng):
    for _ in range(40):
        cx = random_complex(rng)
        for k in range(cx.dim + 1):
            for g in hn.homology_generators(cx, k):
                assert hn.is_cycle(g)
                if k >= 1:
                    assert not hn.is_boundary(g).bounds


def test_betti_matches_components(rng):
    for _ in range(60):
        cx = random_complex(rng)
        assert hn.betti_numbers(cx)[0] == len(hn.path_components(cx))


def test_euler_double_count_on_random_complexes(rng):
    for _ in range(60):
        cx = random_complex(rng)
        hn.euler_characteristic(cx)  # raises InternalMismatch on disagreement


def test_projective_plane_torsion(projective_plane):
    assert hn.betti_numbers(projective_plane) == [1, 0, 0]
    assert hn.euler_characteristic(projective_plane) == 1
    assert hn.torsion_coefficients(projective_plane) == [[], [2], []]


def test_summary(disc):
    info = hn.summary(disc, generators=True)
    assert info.betti == [1, 0, 0]
    assert info.euler == 1
    assert len(info.generators[0]) == 1


# -- cochains ----------------------------------------------------------------

def test_evaluate_single_term(circle):
    c = hn.Cochain(circle, 1, {1: 2}, hn.INTEGER)
    x = hn.Chain(circle, 1, {1: 3}, hn.INTEGER)
    assert hn.evaluate(c, x) == 6


def test_reciprocal_pairing(circle):
    for i in range(3):
        for j in range(3):
            c = hn.Cochain(circle, 1, {i: 1}, hn.INTEGER)
            x = hn.Chain(circle, 1, {j: 1}, hn.INTEGER)
            assert hn.evaluate(c, x) == (1 if i == j else 0)


def test_coboundary_of_vertex_cochain(circle):
    c = hn.Cochain(circle, 0, {0: 1}, hn.INTEGER)  # value 1 at A
    dc = hn.coboundary(c)
    assert dict(dc.coeffs) == {0: -1, 1: -1}  # -1 on AB, -1 on AC


def test_coboundary_squared_vanishes(disc, rng):
    for _ in range(40):
        c = random_cochain(rng, disc, 0)
        assert hn.coboundary(hn.coboundary(c)).is_zero(0)


def test_constant_cochain_has_zero_coboundary(circle):
    c = hn.Cochain(circle, 0, {0: 5, 1: 5, 2: 5}, hn.INTEGER)
    assert hn.coboundary(c).is_zero(0)


def test_adjointness(disc, rng):
    for _ in range(100):
        c = random_cochain(rng, disc, 0)
        x = random_chain(rng, disc, 1)
        assert hn.evaluate(hn.coboundary(c), x) == hn.evaluate(c, hn.boundary(x))
    for _ in range(100):
        c = random_cochain(rng, disc, 1)
        x = random_chain(rng, disc, 2)
        assert hn.evaluate(hn.coboundary(c), x) == hn.evaluate(c, hn.boundary(x))


def test_adjointness_within_tolerance_for_floats(disc, rng):
    for _ in range(100):
        values_c = {i: rng.uniform(-5, 5) for i in range(disc.r[0])}
        values_x = {a: rng.uniform(-5, 5) for a in range(disc.r[1])}
        c = hn.Cochain(disc, 0, values_c, hn.REAL64)
        x = hn.Chain(disc, 1, values_x, hn.REAL64)
        lhs = hn.evaluate(hn.coboundary(c), x)
        rhs = hn.evaluate(c, hn.boundary(x))
        assert abs(lhs - rhs) <= 1e-9


def test_generators_independent_modulo_boundaries(rng):
    from homnet import exact

    for _ in range(30):
        cx = random_complex(rng)
        gens = hn.homology_generators(cx, 1)
        if not gens:
            continue
        rows = list(cx.incidence_2)
        base_rank = exact.rank(rows) if rows else 0
        stacked = rows + [
            [g[a] for a in range(cx.r[1])] for g in gens
        ]
        assert exact.rank(stacked) == base_rank + len(gens)


def test_coboundary_needs_higher_simplexes(circle):
    c = hn.Cochain(circle, 1, {0: 1}, hn.INTEGER)
    with pytest.raises(errors.DimensionMismatch):
        hn.coboundary(c)


# -- coboundary solvability ---------------------------------------------------

def test_coboundary_is_coboundary(circle, rng):
    for _ in range(40):
        v = random_cochain(rng, circle, 0, module=hn.RATIONAL)
        result = hn.is_coboundary(hn.coboundary(v))
        assert result.is_coboundary
        # potential differs from v by a constant on the (single) component
        diff = result.potential - v
        values = {diff[i] for i in range(circle.r[0])}
        assert len(values) == 1


def test_unit_cochain_fails_on_circle(circle):
    c = hn.Cochain(circle, 1, {0: Fraction(1)}, hn.RATIONAL)
    result = hn.is_coboundary(c)
    assert not result.is_coboundary
    assert result.pairing != 0
    assert hn.is_cycle(result.witness)


def test_tree_cochains_always_solvable(rng):
    # a tree has no cycles, so every 1-cochain is a coboundary
    cx = hn.build_complex(
        ["A", "B", "C", "D"], [("A", "B"), ("B", "C"), ("B", "D")]
    )
    for _ in range(30):
        c = random_cochain(rng, cx, 1, module=hn.RATIONAL)
        assert hn.is_coboundary(c).is_coboundary


def test_float_coboundary_with_tolerance(circle):
    v = hn.Cochain(circle, 0, {0: 1.5, 1: 0.25, 2: -2.0}, hn.REAL64)
    dv = hn.coboundary(v)
    result = hn.is_coboundary(dv, tol=1e-9)
    assert result.is_coboundary
    bad = hn.Cochain(circle, 1, {0: 1.0}, hn.REAL64)
    result = hn.is_coboundary(bad, tol=1e-9)
    assert not result.is_coboundary


def test_cycle_basis_matches_betti(rng):
    from homnet import exact

    for _ in range(40):
        cx = random_complex(rng, with_faces=False)
        basis = hn.cycle_basis(cx, 1)
        assert len(basis) == cx.r[1] - exact.rank(cx.incidence_1)
        for z in basis:
            assert hn.is_cycle(z)
