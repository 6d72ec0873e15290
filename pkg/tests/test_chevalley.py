import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defspace import ff
from defspace.chevalley import (
    ChevalleyError,
    adjoint_invariants_sc,
    build_chevalley,
    coadjoint_invariants_sc,
    integral_algebra,
    invariant_dim,
    nilradical_dual_invariants,
    sc_generators,
)
from defspace.ff import GF
from defspace.levi import enumerate_standard_levis
from defspace.root_datum import cartan_matrix, gl, parse_type

import oracles


def _cartan(name):
    return tuple(tuple(r) for r in cartan_matrix(name[0], int(name[1])))


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4"])
def test_structure_constants_verify(name):
    L = integral_algebra(_cartan(name), verify=False)
    assert L.verify()
    assert L.dim == len(L.basis_roots)


def test_g2_has_constants_up_to_three():
    L = integral_algebra(_cartan("G2"))
    rs = L.rs
    values = {abs(L.consts.N(a, b)) for a in rs.roots for b in rs.roots if rs.is_root(tuple(x + y for x, y in zip(a, b)))}
    assert values == {1, 2, 3}


def test_sl2_unipotent_action():
    F = GF(3)
    A = build_chevalley(parse_type("SL2"), F)
    assert [A.basis_index((2,)), A.basis_index((-2,))] == [0, 2]  # basis (e, h, f)
    M = A.ad_unipotent((2,), 1)
    image_of_f = [M[i][2] for i in range(3)]
    assert image_of_f == [F.neg(1), 1, 1]  # f + h - e


def _bracket(A, x, y):
    F = A.field
    out = [0] * A.dim
    for i, xi in enumerate(x):
        if xi:
            v = ff.mat_vec(F, A.bracket_matrix(i), y)
            out = [F.add(o, F.mul(xi, t)) for o, t in zip(out, v)]
    return out


@pytest.mark.parametrize("name,p", [("A2", 5), ("B2", 5), ("G2", 7), ("GL2", 3)])
def test_ad_preserves_bracket(name, p):
    F = GF(p)
    d = parse_type(name)
    A = build_chevalley(d, F)
    rng = random.Random(p)
    for _ in range(5):
        r = rng.choice(d.roots)
        g = A.ad_unipotent(r, rng.randrange(1, p))
        lam = [rng.randrange(-2, 3) for _ in range(d.rank_X)]
        g = ff.mat_mul(F, g, A.ad_torus(lam, rng.randrange(1, p)))
        x = [rng.randrange(p) for _ in range(A.dim)]
        y = [rng.randrange(p) for _ in range(A.dim)]
        lhs = ff.mat_vec(F, g, _bracket(A, x, y))
        rhs = _bracket(A, ff.mat_vec(F, g, x), ff.mat_vec(F, g, y))
        assert lhs == rhs


def test_root_group_is_a_homomorphism():
    F = GF(5)
    A = build_chevalley(parse_type("B2"), F)
    for r in A.datum.roots:
        for s in range(5):
            for t in range(5):
                assert ff.mat_mul(F, A.ad_unipotent(r, s), A.ad_unipotent(r, t)) == A.ad_unipotent(r, (s + t) % 5)


def test_torus_rejects_zero():
    A = build_chevalley(parse_type("SL2"), GF(3))
    with pytest.raises(ChevalleyError):
        A.ad_torus((1,), 0)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_invariant_dims_against_oracle(name, p):
    d = parse_type(name)
    A = build_chevalley(d, ff.sample_field(p))
    gens = sc_generators(A)
    F = A.field
    dual = [oracles.transpose_inverse(F, g) for g in gens]
    assert coadjoint_invariants_sc(d, p) == oracles.fixed_dim(F, dual, A.dim) == 0
    assert adjoint_invariants_sc(d, p) == oracles.fixed_dim(F, gens, A.dim)


def test_adjoint_sl2_in_characteristic_two_has_a_centre():
    assert adjoint_invariants_sc(parse_type("A1"), 2) == 1
    assert adjoint_invariants_sc(parse_type("A1"), 3) == 0


def test_nilradical_defaults_and_empty_generators():
    d = gl(3)
    B = next(L for L in enumerate_standard_levis(d) if L.subset == ())
    assert nilradical_dual_invariants(d, B, 2) == 0
    # no generators: every functional on the 3-dim Lie U of the Borel is fixed
    assert nilradical_dual_invariants(d, B, 3, generators=[]) == 3


def test_nilradical_rejects_generators_outside_parabolic():
    d = parse_type("SL3")
    A = build_chevalley(d, GF(5))
    L = next(L for L in enumerate_standard_levis(d) if L.subset == ())
    bad = A.ad_unipotent(d.roots[0], 1)  # a negative root group
    with pytest.raises(ChevalleyError):
        nilradical_dual_invariants(d, L, 5, generators=[bad], F=GF(5))


@settings(max_examples=30, deadline=None)
@given(st.permutations(list(range(6))))
def test_invariant_dim_independent_of_generator_order(order):
    F = GF(3)
    A = build_chevalley(parse_type("SL3"), F)
    gens = sc_generators(A)[:6]
    base, _ = invariant_dim(F, gens, dual=True)
    shuffled, _ = invariant_dim(F, [gens[i] for i in order], dual=True)
    assert base == shuffled
