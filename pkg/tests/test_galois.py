import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defspace.ff import GF
from defspace.galois import (
    GaloisError,
    LocalFieldDesc,
    TameRep,
    adjoint0_gl,
    adjoint_gl,
    bound_Y_check,
    cohomology,
    defect,
    direct_sum,
    dual,
    fiber_dim_bound,
    h0,
    h1_via_EP,
    h2_via_duality,
    kummer_dim,
    presentation_numbers,
    relative_presentation,
    special_level,
    twist,
    twist_dual,
    validate_tame_rep,
    z1_dim,
)
from defspace.levi import enumerate_standard_levis
from defspace.root_datum import gl, parse_type

import battery
import oracles


def test_field_descriptor_validation():
    with pytest.raises(GaloisError):
        LocalFieldDesc(4)
    with pytest.raises(GaloisError):
        LocalFieldDesc(2, 1, 1, 0)  # -1 is a 2-power root of unity
    with pytest.raises(GaloisError):
        LocalFieldDesc(3, 1, 1, 1)  # m >= 1 needs a trivial cyclotomic character
    F = LocalFieldDesc.cyclotomic(3)
    assert (F.e, F.m, F.c_sigma, F.c_tau) == (2, 1, 1, 1)
    assert LocalFieldDesc.from_json(F.to_json()) == F


def test_kummer_values():
    assert kummer_dim(LocalFieldDesc.unramified(2)) == 3
    assert kummer_dim(LocalFieldDesc.unramified(3)) == 2
    assert kummer_dim(LocalFieldDesc.cyclotomic(3)) == 4
    F = LocalFieldDesc.cyclotomic(5)
    assert h1_via_EP(F, TameRep.trivial(GF(5))) == kummer_dim(F) == 1 + 4 + 1


def test_relation_checked():
    F = LocalFieldDesc.unramified(3)
    K = GF(3)
    with pytest.raises(GaloisError) as exc:
        validate_tame_rep(F, TameRep(K, [[0, 1], [1, 0]], [[1, 1], [0, 1]]))
    assert exc.value.witness is not None
    with pytest.raises(GaloisError):
        validate_tame_rep(F, TameRep(K, [[0]], [[1]]))


def test_special_levels():
    K3, K2 = GF(3), GF(2)
    assert special_level(LocalFieldDesc.unramified(3), TameRep.trivial(K3)) == 0
    assert special_level(LocalFieldDesc.unramified(2), TameRep.trivial(K2)) == 1


def test_presentation_examples():
    F3 = LocalFieldDesc.unramified(3)
    ad = adjoint_gl(TameRep.trivial(GF(3), 2))
    assert presentation_numbers(gl(2), F3, ad) == (8, 0)
    F2 = LocalFieldDesc.unramified(2)
    assert presentation_numbers(gl(1), F2, adjoint_gl(TameRep.trivial(GF(2), 1))) == (3, 1)
    ad0 = adjoint0_gl(TameRep.trivial(GF(3), 2))
    assert relative_presentation(gl(2), gl(1), F3, ad0) == (6, 0)
    with pytest.raises(GaloisError):
        presentation_numbers(gl(3), F3, ad)


def test_defect_and_fibre_bounds():
    G = gl(2)
    T = next(L for L in enumerate_standard_levis(G) if L.subset == ())
    whole = next(L for L in enumerate_standard_levis(G) if L.subset == (0,))
    assert defect(LocalFieldDesc.unramified(3), whole, []) == 0
    triv3 = TameRep.trivial(GF(3))
    triv2 = TameRep.trivial(GF(2))
    assert defect(LocalFieldDesc.unramified(3), T, [triv3]) == 0
    assert defect(LocalFieldDesc.unramified(2), T, [triv2]) == 1
    with pytest.raises(GaloisError):
        defect(LocalFieldDesc.unramified(3), T, [TameRep.trivial(GF(3), 2)])
    F5 = LocalFieldDesc.unramified(5)
    assert fiber_dim_bound(G, T, F5, 0) == 3
    assert fiber_dim_bound(G, whole, F5, 0) == 4 - 1
    G3 = gl(3)
    L21 = next(L for L in enumerate_standard_levis(G3) if L.subset == (0,))
    assert fiber_dim_bound(G3, L21, LocalFieldDesc.unramified(2), 1) == 10
    assert bound_Y_check(G, T, F5, 3)
    with pytest.raises(GaloisError):
        fiber_dim_bound(G, T, F5, -1)


def test_adjoint_dimensions():
    rho = TameRep.trivial(GF(5), 3)
    assert adjoint_gl(rho).dim == 9
    assert adjoint0_gl(rho).dim == 8


def _reps(seed, n=40):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        F = rng.choice(battery.FIELDS)
        out.append((F, battery.random_gl_rep(F, rng.randint(1, 3), rng, rng.choice([1, 2]))))
    return out


@pytest.mark.parametrize("F,rho", _reps(1))
def test_fixed_spaces_against_oracle(F, rho):
    K = rho.coeff
    assert h0(rho) == oracles.h0_oracle(K, rho.sigma, rho.tau)
    assert h2_via_duality(F, rho) == oracles.h0_twisted_dual_oracle(K, rho.sigma, rho.tau, F.c_sigma, F.c_tau)
    c = cohomology(F, rho)
    assert c["h0"] - c["h1"] + c["h2"] == -rho.dim * F.d_F
    assert c["z1"] == z1_dim(F, rho)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_additivity_over_direct_sums(s1, s2):
    F = battery.FIELDS[s1 % 4]
    a = battery.random_gl_rep(F, 1 + s1 % 2, random.Random(s1))
    b = battery.random_gl_rep(F, 1 + s2 % 2, random.Random(s2))
    ab = direct_sum(a, b)
    validate_tame_rep(F, ab)
    for fn in (h0, lambda r: h2_via_duality(F, r), lambda r: h1_via_EP(F, r), lambda r: z1_dim(F, r)):
        assert fn(ab) == fn(a) + fn(b)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_double_twisted_dual_is_identity(seed):
    F = battery.FIELDS[seed % 4]
    rho = battery.random_gl_rep(F, 2, random.Random(seed))
    assert twist_dual(F, twist_dual(F, rho)) == rho
    assert dual(dual(rho)) == rho
    assert twist(F, twist(F, rho), -1) == rho
    assert h2_via_duality(F, twist_dual(F, rho)) == h0(rho)


def test_sp4_battery_validates():
    rng = random.Random(4)
    G = parse_type("Sp4")
    for F in battery.FIELDS:
        ad = battery.random_sp4_adjoint(F, rng)
        r, s = presentation_numbers(G, F, ad)
        assert r - s == 10 * (F.d_F + 1)
