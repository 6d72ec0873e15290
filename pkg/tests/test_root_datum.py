import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defspace import intmat
from defspace.root_datum import (
    BasedRootDatum,
    GenReductiveDatum,
    RootDatumError,
    build_simple,
    cartan_matrix,
    datum_from_json,
    derived_datum,
    dim_G,
    dim_Z,
    etale_pi1_cover,
    gl,
    is_pi1_etale,
    parse_type,
    pi1_derived,
    product,
    torus,
    torus_quotient_lattice,
)

# |Phi| for each simple type (classical tables)
ROOT_COUNTS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 12, ("A", 4): 20, ("A", 7): 56,
    ("B", 2): 8, ("B", 3): 18, ("B", 4): 32, ("C", 3): 18, ("C", 4): 32,
    ("D", 4): 24, ("D", 5): 40, ("E", 6): 72, ("E", 7): 126, ("E", 8): 240,
    ("F", 4): 48, ("G", 2): 12,
}


def reflection_orbit(C):
    """Roots in simple-root coordinates as the orbit of the simple roots under
    the simple reflections, computed with numpy-free integer arithmetic."""
    n = len(C)
    orbit = {tuple(int(i == j) for j in range(n)) for i in range(n)}
    changed = True
    while changed:
        changed = False
        for b in list(orbit):
            for i in range(n):
                k = sum(b[j] * C[j][i] for j in range(n))
                img = list(b)
                img[i] -= k
                if tuple(img) not in orbit:
                    orbit.add(tuple(img))
                    changed = True
    return orbit


@pytest.mark.parametrize("series,rank", sorted(ROOT_COUNTS))
def test_root_counts_and_orbit(series, rank):
    d = build_simple(series, rank)
    assert d.num_roots == ROOT_COUNTS[(series, rank)]
    assert set(d.system.roots) == reflection_orbit(cartan_matrix(series, rank))
    assert dim_G(d) == rank + d.num_roots


@pytest.mark.parametrize("series,rank", sorted(ROOT_COUNTS))
def test_pi1_of_adjoint_has_order_det_cartan(series, rank):
    C = [list(r) for r in cartan_matrix(series, rank)]
    order = 1
    for f in pi1_derived(build_simple(series, rank, "adjoint")):
        order *= f
    det = 1
    for x in intmat.smith_normal_form(C)[0]:
        det *= abs(x)
    assert order == det
    assert pi1_derived(build_simple(series, rank, "simply_connected")) == ()


def test_coroots_pair_to_two():
    for key in ROOT_COUNTS:
        d = build_simple(*key, "adjoint")
        for r, c in zip(d.roots, d.coroots):
            assert intmat.dot(r, c) == 2


def test_bourbaki_convention():
    # B2: alpha_2 short, <alpha_1, alpha_2^vee> = -2
    assert [list(r) for r in cartan_matrix("B", 2)] == [[2, -2], [-1, 2]]


def test_parse_names():
    assert dim_G(parse_type("GL3")) == 9
    assert dim_G(parse_type("Sp4")) == 10
    assert pi1_derived(parse_type("SO5")) == (2,)
    assert pi1_derived(parse_type("PGL6")) == (6,)
    assert pi1_derived(parse_type("A1xA1_ad")) == (2,)
    assert parse_type("T2").rank_X == 2
    with pytest.raises(RootDatumError):
        parse_type("XY3")
    with pytest.raises(RootDatumError):
        parse_type("Sp3")


def test_gl_and_torus_invariants():
    g = gl(4)
    assert dim_Z(g) == 1
    assert torus_quotient_lattice(g).rank == 1
    assert pi1_derived(g) == ()
    assert dim_Z(torus(3)) == 3
    assert dim_G(product(gl(2), torus(1))) == 5


def test_etale_cover_examples():
    c = etale_pi1_cover(parse_type("PGL12"), 2)
    assert pi1_derived(c) == (3,)
    assert pi1_derived(etale_pi1_cover(parse_type("PGL6"), 3)) == (2,)
    assert is_pi1_etale(parse_type("PGL6"), 5)
    assert not is_pi1_etale(parse_type("PGL6"), 2)
    # derived group of GL_n is SL_n
    assert pi1_derived(derived_datum(gl(3))) == ()
    assert derived_datum(gl(3)).rank_X == 2


def test_explicit_intermediate_lattice():
    # SL4 / mu_2: coweight lattice spanned by the coroot lattice and 2 * (fundamental coweight 1)
    C = cartan_matrix("A", 3)
    B = intmat.hermite_basis([list(r) for r in C] + [[2, 0, 0]], 3)
    d = build_simple("A", 3, B)
    assert pi1_derived(d) == (2,)


def test_bad_data_rejected():
    with pytest.raises(RootDatumError):
        BasedRootDatum(2, [[1, 0]], [])
    with pytest.raises(RootDatumError):
        BasedRootDatum(1, [[1]], [[1]])  # <a, a^vee> = 1 is not a Cartan matrix


def test_diagram_automorphism():
    sl3 = build_simple("A", 2)
    swap = [[0, 1], [1, 0]]
    g = GenReductiveDatum(sl3, ((0, 1), (1, 0)), [intmat.identity(2), swap])
    perm = g.root_permutation(1)
    assert sorted(perm) == list(range(6))
    assert [perm[i] for i in perm] == list(range(6))
    with pytest.raises(RootDatumError):
        GenReductiveDatum(sl3, ((0, 1), (1, 0)), [intmat.identity(2), [[-1, 0], [0, -1]]])


def test_json_roundtrip():
    g = GenReductiveDatum(build_simple("A", 2), ((0, 1), (1, 0)), [intmat.identity(2), [[0, 1], [1, 0]]])
    back = datum_from_json(g.to_json())
    assert back == g
    assert datum_from_json({"series": "GL2"}).base == gl(2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(["A1", "A2", "B2", "G2", "GL2", "T1", "A1_ad", "A2_ad"]), min_size=1, max_size=3))
def test_product_is_additive(names):
    d = parse_type("x".join(names))
    parts = [parse_type(n) for n in names]
    assert dim_G(d) == sum(dim_G(p) for p in parts)
    assert dim_Z(d) == sum(dim_Z(p) for p in parts)
    mine = 1
    for p in parts:
        for f in pi1_derived(p):
            mine *= f
    total = 1
    for f in pi1_derived(d):
        total *= f
    assert total == mine
