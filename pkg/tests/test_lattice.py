import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from toricstack.config import limits
from toricstack.errors import NotPointed, ResourceLimitError
from toricstack.lattice import (
    AbelianGroup,
    IntegerMatrix,
    RationalCone,
    cokernel,
    dual_cone,
    extremal_rays,
    faces,
    hilbert_basis,
    intersect,
    quotient,
    span,
    subgroup_ops,
    smith_normal_form,
)
from toricstack.lattice.matrix import (
    coordinates_in_basis,
    hermite_basis,
    integer_kernel,
    matmul,
    saturation,
)
from toricstack.samples import random_cone, random_pointed_cone

small_ints = st.integers(-9, 9)


@st.composite
def matrices(draw, max_size=5):
    m = draw(st.integers(1, max_size))
    n = draw(st.integers(1, max_size))
    return draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m))


# -- Smith normal form ---------------------------------------------------------------------

def test_snf_identity():
    s, u, v = smith_normal_form(IntegerMatrix.identity(2))
    assert s == u == v == IntegerMatrix.identity(2)


def test_snf_zero():
    s, _, _ = smith_normal_form(IntegerMatrix.zeros(2, 2))
    assert s == IntegerMatrix.zeros(2, 2)


def test_snf_2_4_6_8():
    m = IntegerMatrix([[2, 4], [6, 8]])
    s, u, v = smith_normal_form(m)
    assert s.tolist() == [[2, 0], [0, 4]]
    assert matmul(matmul(u.tolist(), m.tolist(), 2), v.tolist(), 2) == s.tolist()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_matches_determinantal_divisors(rows):
    m = IntegerMatrix(rows)
    s, u, v = smith_normal_form(m)
    assert matmul(matmul(u.tolist(), rows, m.ncols), v.tolist(), m.ncols) == s.tolist()
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    k = min(m.nrows, m.ncols)
    diag = [s.row(i)[i] for i in range(k)]
    nonzero = [d for d in diag if d]
    assert nonzero == oracles.invariant_factors(rows, m.nrows, m.ncols)
    assert diag == nonzero + [0] * (k - len(nonzero))


# -- groups ---------------------------------------------------------------------------------

def test_cokernel_times_two():
    g, proj = cokernel(IntegerMatrix([[2]]))
    assert g == AbelianGroup(0, (2,))
    assert proj((1,)) != g.zero and proj((2,)) == g.zero


def test_cokernel_no_relations():
    g, proj = cokernel(IntegerMatrix.zeros(2, 0))
    assert g == AbelianGroup(2)
    assert proj((3, -5)) == (3, -5)


def test_cokernel_columns_0_2_and_1_minus_1():
    g, _ = cokernel(IntegerMatrix.from_columns([(0, 2), (1, -1)], 2))
    assert g == AbelianGroup(0, (2,))


@settings(max_examples=100, deadline=None)
@given(matrices(4))
def test_cokernel_against_minors_and_projection(rows):
    m = IntegerMatrix(rows)
    g, proj = cokernel(m)
    columns = m.columns()
    free, torsion = oracles.cokernel_shape(columns, m.nrows)
    assert (g.free_rank, list(g.torsion)) == (free, torsion)
    # the relations die, and the unit vectors generate the group
    assert all(proj(c) == g.zero for c in columns)
    units = [proj(tuple(int(i == j) for j in range(m.nrows))) for i in range(m.nrows)]
    assert quotient(g, units)[0].is_trivial


@settings(max_examples=60, deadline=None)
@given(matrices(4), st.randoms(use_true_random=False))
def test_cokernel_ignores_row_and_column_order(rows, rnd):
    ri, ci = list(range(len(rows))), list(range(len(rows[0])))
    rnd.shuffle(ri)
    rnd.shuffle(ci)
    permuted = [[rows[i][j] for j in ci] for i in ri]
    assert cokernel(IntegerMatrix(rows))[0] == cokernel(IntegerMatrix(permuted))[0]


def members(g, sub):
    return {e for e in g.elements() if e in sub}


def test_subgroup_intersection_in_z2_z4():
    g = AbelianGroup(0, (2, 4))
    rep = subgroup_ops(g, [(1, 2)], [(0, 1)])
    a = oracles.generated((2, 4), [(1, 2)])
    b = oracles.generated((2, 4), [(0, 1)])
    assert members(g, rep.span_a) == a
    assert members(g, rep.intersection) == a & b == {(0, 0)}
    assert rep.intersection.is_zero


def test_empty_span_is_zero():
    assert span(AbelianGroup(0, (6,)), []).is_zero


def test_span_of_generator_in_z2():
    g = AbelianGroup(0, (2,))
    s = intersect(g, [(1,)], [(1,)])
    assert s.order == 2


def test_intersection_needs_finite_group():
    with pytest.raises(ValueError):
        intersect(AbelianGroup(1), [(1,)], [(2,)])


@pytest.mark.parametrize("moduli", [(2, 4), (3, 3), (2, 2, 2), (12,), (2, 6)])
def test_subgroups_against_enumeration(moduli):
    rnd = random.Random(str(moduli))
    g = AbelianGroup.from_moduli(moduli)
    for _ in range(25):
        ga = [tuple(rnd.randrange(m) for m in g.moduli) for _ in range(rnd.randint(0, 2))]
        gb = [tuple(rnd.randrange(m) for m in g.moduli) for _ in range(rnd.randint(0, 2))]
        a, b = oracles.generated(g.moduli, ga), oracles.generated(g.moduli, gb)
        assert members(g, span(g, ga)) == a
        s = intersect(g, ga, gb)
        assert members(g, s) == a & b
        assert s.order == len(a & b)


# -- lattices ---------------------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(matrices(4))
def test_kernel_and_saturation(rows):
    n = len(rows[0])
    ker = integer_kernel(rows, n)
    assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in rows for k in ker)
    assert len(ker) == n - oracles.rank(rows)
    # a saturated basis: every integer vector in its rational span has integer coordinates
    if ker:
        sat = saturation(ker, n)
        assert hermite_basis(sat, n) == hermite_basis(ker, n)
        for x in oracles.box(2, n):
            if oracles.solve(ker, x) is not None:
                assert coordinates_in_basis(x, ker) is not None


# -- cones ------------------------------------------------------------------------------------

def test_orthant_is_self_dual():
    assert dual_cone(RationalCone.orthant(2)) == RationalCone.orthant(2)


def test_dual_of_a1_cone():
    d = dual_cone(RationalCone.from_generators([(1, 0), (1, 2)]))
    assert d.rays == ((0, 1), (2, -1))
    # 2-D oracle: both rays pair nonnegatively and each is orthogonal to one generator
    for u in d.rays:
        assert all(u[0] * g[0] + u[1] * g[1] >= 0 for g in [(1, 0), (1, 2)])
        assert any(u[0] * g[0] + u[1] * g[1] == 0 for g in [(1, 0), (1, 2)])


def test_dual_of_origin_is_plane():
    d = dual_cone(RationalCone.from_generators([], 2))
    assert len(d.lineality) == 2 and d.facets == () and d.dim == 2


def test_extremal_rays_examples():
    assert extremal_rays(RationalCone.from_generators([(2, 0), (0, 3), (1, 1)])) == [(0, 1), (1, 0)]
    assert extremal_rays(RationalCone.orthant(3)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert extremal_rays(RationalCone.from_generators([(4, 6)])) == [(2, 3)]


def test_extremal_rays_rejects_lineality():
    with pytest.raises(NotPointed):
        extremal_rays(RationalCone.from_generators([(1, 0), (-1, 0), (0, 1)]))


def test_double_duality_random():
    rnd = random.Random(7)
    for _ in range(200):
        c = random_cone(rnd, 4, 5)
        assert c.dual().dual() == c


def test_cone_membership_matches_caratheodory():
    rnd = random.Random(11)
    for _ in range(40):
        c = random_cone(rnd, 3, 3)
        gens = list(c.rays) + list(c.lineality) + [tuple(-x for x in v) for v in c.lineality]
        for x in oracles.box(2, c.ambient_rank):
            assert c.contains(x) == oracles.in_cone(x, gens)


def test_extremal_rays_idempotent():
    rnd = random.Random(5)
    for _ in range(200):
        c = random_pointed_cone(rnd, 4, 5)
        rays = extremal_rays(c)
        assert extremal_rays(RationalCone.from_generators(rays, c.ambient_rank)) == rays


def test_faces_of_small_cones():
    assert len(faces(RationalCone.orthant(2))) == 4
    square = RationalCone.from_generators([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    fs = faces(square)
    assert [f.dim for f in fs] == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]
    assert len(faces(RationalCone.from_generators([(1, 2)]))) == 2


def test_face_normals_cut_out_faces():
    rnd = random.Random(3)
    for _ in range(30):
        c = random_pointed_cone(rnd, 3, 3)
        for f in faces(c):
            assert c.dual().contains(f.normal)
            on = tuple(i for i, r in enumerate(c.rays) if sum(a * b for a, b in zip(f.normal, r)) == 0)
            assert on == f.ray_indices


def test_face_bound():
    square = RationalCone.from_generators([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    with limits(max_faces=5), pytest.raises(ResourceLimitError):
        faces(square)


# -- Hilbert bases ----------------------------------------------------------------------------

def test_hilbert_orthant():
    assert hilbert_basis(RationalCone.orthant(2)) == [(0, 1), (1, 0)]


def test_hilbert_a1_cone_by_enumeration():
    c = RationalCone.from_generators([(1, 0), (1, 2)])
    pts = [x for x in product(range(4), repeat=2) if c.contains(x)]
    expected = oracles.minimal_elements(pts, c.contains)
    assert hilbert_basis(c) == expected == [(1, 0), (1, 1), (1, 2)]


def test_hilbert_even_sum_monoid():
    hb = hilbert_basis(RationalCone.orthant(2), lattice=[(1, 1), (0, 2)])
    assert hb == [(0, 2), (1, 1), (2, 0)]
    assert hb == oracles.hilbert_basis([(2, 0), (0, 2)], lambda x: (x[0] + x[1]) % 2 == 0)


def test_hilbert_random_against_enumeration():
    rnd = random.Random(2024)
    for _ in range(40):
        n = rnd.randint(2, 3)
        while True:
            gens = [tuple(rnd.randint(-2, 2) for _ in range(n)) for _ in range(rnd.randint(n, n + 1))]
            c = RationalCone.from_generators(gens, n)
            if c.is_pointed and c.rays:
                break
        assert hilbert_basis(c) == oracles.hilbert_basis(list(c.rays)), c


def test_hilbert_basis_regenerates_and_is_minimal():
    rnd = random.Random(99)
    for _ in range(25):
        c = random_pointed_cone(rnd, 3, 3)
        hb = hilbert_basis(c)
        for x in oracles.box(3, c.ambient_rank):
            if sum(map(abs, x)) <= 6 and c.contains(x):
                assert oracles.is_in_monoid(x, hb)
        assert not any(oracles.is_in_monoid(h, [g for g in hb if g != h]) for h in hb if len(hb) > 1)


def test_hilbert_bound():
    with limits(max_hilbert=2), pytest.raises(ResourceLimitError):
        hilbert_basis(RationalCone.from_generators([(1, 0), (1, 2)]))


def test_hilbert_rejects_lineality():
    with pytest.raises(NotPointed):
        hilbert_basis(RationalCone.from_generators([(1, 0), (-1, 0)]))
