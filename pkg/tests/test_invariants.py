import random
from math import prod

import pytest

import oracles
from toricstack.errors import HypothesisViolated, InfiniteGroupError, NotExact, NotFaithful
from toricstack.invariants import (
    DiagonalAction,
    cst_reduce,
    exact_normal_form,
    freeness_oracle,
    invariant_monoid,
    msop_test,
    polynomiality,
    pseudo_reflection_generated,
)
from toricstack.lattice import AbelianGroup
from toricstack.monoids import ToricMonoid, embedded_monoid, minimal_free_resolution, monoid_from_generators, to_free
from toricstack.samples import random_action

Z, Z2 = AbelianGroup(1), AbelianGroup(0, (2,))
A1 = monoid_from_generators(2, [(1, 0), (1, 2)])


def action(group, *weights):
    return DiagonalAction(group, tuple(weights))


# -- invariant monoids -------------------------------------------------------------------------

def test_mu2_scalar_invariants():
    inv = invariant_monoid(action(Z2, (1,), (1,)))
    assert inv.generators == [(0, 2), (1, 1), (2, 0)] and inv.hypothesis_ok
    assert inv.generators == oracles.invariant_generators(0, (2,), [(1,), (1,)], 4)


def test_torus_pair_invariants():
    inv = invariant_monoid(action(Z, (1,), (-1,)))
    assert inv.generators == [(1, 1)] and inv.hypothesis_ok


def test_positive_torus_violates_hypothesis():
    inv = invariant_monoid(action(Z, (1,), (1,)))
    assert inv.generators == [] and not inv.hypothesis_ok
    with pytest.raises(HypothesisViolated):
        msop_test(action(Z, (1,), (1,)))


def test_unfaithful_action_rejected():
    with pytest.raises(NotFaithful):
        action(AbelianGroup(0, (4,)), (2,), (2,))


def test_invariants_against_enumeration():
    rnd = random.Random(31)
    checked = 0
    while checked < 40:
        act = random_action(rnd, max_dim=3, max_free=1)
        inv = invariant_monoid(act)
        if not inv.hypothesis_ok:
            continue
        t = act.torus_rank
        bound = 8 if t else prod(act.group.torsion)
        below = oracles.invariant_generators(t, act.group.torsion, act.weights, bound)
        assert [g for g in inv.generators if sum(g) <= bound] == below, act
        checked += 1


# -- freeness ----------------------------------------------------------------------------------

def test_freeness_oracle_examples():
    assert freeness_oracle(ToricMonoid.free(2))
    assert not freeness_oracle(embedded_monoid([(2, 0), (1, 1), (0, 2)]))
    assert freeness_oracle(ToricMonoid.zero())


# -- MSOP ------------------------------------------------------------------------------------

def test_msop_torus_pair():
    m = msop_test(action(Z, (1,), (-1,)))
    assert m.s == (0,) and m.p == {1: (1, 1)} and m.a == {1: 1} and m.a_ij == {0: {1: 1}}


def test_msop_finite_group():
    m = msop_test(action(AbelianGroup(0, (3,)), (1,), (2,)))
    assert m.s == () and set(m.p) == {0, 1}
    assert m.p == {0: (3, 0), 1: (0, 3)}


def test_no_msop_for_four_weights():
    assert msop_test(action(Z, (1,), (1,), (-1,), (-1,))) is None
    assert len(invariant_monoid(action(Z, (1,), (1,), (-1,), (-1,))).generators) == 4


def test_msop_iff_simplicial_random():
    rnd = random.Random(8)
    for _ in range(80):
        act = random_action(rnd)
        inv = invariant_monoid(act)
        if not inv.hypothesis_ok:
            continue
        m = msop_test(act, inv)
        assert (m is not None) == inv.monoid.is_simplicial
        if m is not None:
            # each p_j lies on an extremal ray of the invariant cone
            rays = {inv.monoid.to_ambient(r) for r in inv.monoid.cone.rays}
            assert set(m.p.values()) == rays


# -- reduction -------------------------------------------------------------------------------

def test_reduce_torus_pair():
    act = action(Z, (1,), (-1,))
    red = cst_reduce(act, msop_test(act))
    assert red.face == (0,) and red.kept == (1,) and red.quotient.is_trivial


def test_reduce_finite_is_identity():
    act = action(AbelianGroup(0, (3,)), (1,), (2,))
    red = cst_reduce(act, msop_test(act))
    assert red.face == () and red.reduced_action == act


def test_reduce_mixed():
    act = action(AbelianGroup(1, (2,)), (1, 0), (-1, 0), (0, 1))
    m = msop_test(act)
    assert m.s == (0,)
    red = cst_reduce(act, m)
    assert red.quotient == Z2 and red.kept == (1, 2)
    assert red.reduced_action.weights == ((0,), (1,))
    assert invariant_monoid(act).generators == [(0, 0, 2), (1, 1, 0)]


def test_reduction_matches_projected_generators():
    rnd = random.Random(4)
    for _ in range(60):
        act = random_action(rnd)
        inv = invariant_monoid(act)
        if not inv.hypothesis_ok:
            continue
        m = msop_test(act, inv)
        if m is None:
            continue
        red = cst_reduce(act, m)
        projected = sorted({tuple(g[j] for j in red.kept) for g in inv.generators} - {(0,) * len(red.kept)})
        assert invariant_monoid(red.reduced_action).generators == projected


# -- pseudo-reflections -----------------------------------------------------------------------

def test_pseudo_reflection_examples():
    assert pseudo_reflection_generated(action(Z2, (1,), (0,)))
    assert not pseudo_reflection_generated(action(Z2, (1,), (1,)))
    assert pseudo_reflection_generated(action(AbelianGroup(0, (2, 2)), (1, 0), (0, 1)))
    with pytest.raises(InfiniteGroupError):
        pseudo_reflection_generated(action(Z, (1,), (-1,)))


def test_pseudo_reflections_against_characters():
    rnd = random.Random(12)
    for _ in range(150):
        act = random_action(rnd, max_free=0)
        expected = oracles.pseudo_reflections_generate(act.group.torsion, act.weights)
        assert pseudo_reflection_generated(act) == expected, act


# -- end to end ------------------------------------------------------------------------------

def test_polynomiality_examples():
    rep = polynomiality(action(Z, (1,), (-1,)))
    assert str(rep.verdict) == "Polynomial" and rep.verdict.generators == ((1, 1),)
    assert str(polynomiality(action(Z, (1,), (1,), (-1,), (-1,))).verdict) == "NotPolynomial(NoMSOP)"
    assert str(polynomiality(action(Z2, (1,), (1,))).verdict) == "NotPolynomial(NotPseudoReflectionGenerated)"
    assert str(polynomiality(action(Z2, (1,), (0,))).verdict) == "Polynomial"
    assert str(polynomiality(action(Z, (1,), (1,))).verdict) == "OracleOnly(Polynomial, HypothesisViolated)"


def test_finite_verdicts_against_enumeration():
    rnd = random.Random(21)
    for _ in range(60):
        act = random_action(rnd, max_dim=3, max_free=0)
        gens = oracles.invariant_generators(0, act.group.torsion, act.weights, prod(act.group.torsion))
        assert polynomiality(act).verdict.polynomial == (len(gens) == act.dim), act


# -- normal form -----------------------------------------------------------------------------

def test_normal_form_of_mfr():
    nf = exact_normal_form(minimal_free_resolution(A1))
    assert (nf.n, nf.b, nf.b_ij) == (1, (1, 1), ())


def test_normal_form_extra_row_is_sum():
    nf = exact_normal_form(to_free(A1, [(0, 1), (2, -1), (2, 0)]))
    assert (nf.n, nf.b, nf.b_ij) == (1, (1, 1), ((1, 1),))


def test_normal_form_doubled_row():
    nf = exact_normal_form(to_free(A1, [(0, 2), (2, -1)]))
    assert (nf.n, nf.b) == (1, (2, 1))


def test_normal_form_needs_denominator():
    # (1, 0) = (1/2)(0, 1) + (1/2)(2, -1)
    nf = exact_normal_form(to_free(A1, [(0, 1), (2, -1), (1, 0)]))
    assert nf.n == 2 and nf.b == (2, 2) and nf.b_ij == ((1, 1),)
    v = minimal_free_resolution(A1).rows
    rows = [(0, 1), (2, -1), (1, 0)]
    for r, psi_row in zip(nf.permutation, nf.psi()):
        assert tuple(sum(c * vi[k] for c, vi in zip(psi_row, v)) for k in range(2)) == \
            tuple(nf.n * x for x in rows[r])


def test_normal_form_rejects_inexact():
    with pytest.raises(NotExact):
        exact_normal_form(to_free(ToricMonoid.free(2), [(1, 1)]))


def test_rank_two_torus():
    inv = invariant_monoid(action(AbelianGroup(2), (1, 0), (0, 1), (-1, -1)))
    assert inv.generators == [(1, 1, 1)]
