"""Polynomiality of invariant rings of diagonalizable group actions.

An action of ``D(A)`` on ``k[x_1..x_n]`` is recorded by the weights
``pi(e_i) in A``. Monomial invariants form the monoid
``P = ker(pi) ∩ N^n`` and the invariant ring is polynomial exactly when
``P`` is free. ``polynomiality`` decides this twice: once through the
torus/finite-group reduction (simplicial test, reduction to a finite
quotient, pseudo-reflection test) and once directly from the Hilbert basis,
and insists the two agree.

Indices are 0-based in this module.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    HypothesisViolated,
    InfiniteGroupError,
    InputError,
    InternalInvariantBroken,
    NotExact,
    NotFaithful,
)
from .lattice.cones import RationalCone
from .lattice.groups import AbelianGroup, GroupProjection, intersect_all, kernel_lattice, quotient, span
from .lattice.matrix import (
    Vector,
    integer_kernel,
    inverse_rational,
    lattice_intersection,
    primitive,
    rank,
    solve_rational,
    transpose,
)
from .monoids import MonoidMorphism, ToricMonoid, is_exact, minimal_free_resolution


@dataclass(frozen=True)
class DiagonalAction:
    group: AbelianGroup
    weights: Tuple[Vector, ...]

    def __post_init__(self):
        g = self.group
        try:
            weights = tuple(g.reduce(w) for w in self.weights)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        object.__setattr__(self, "weights", weights)
        if not quotient(g, weights)[0].is_trivial:
            raise NotFaithful(f"weights do not generate {g}")

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def torus_rank(self) -> int:
        return self.group.free_rank

    def free_parts(self) -> List[Vector]:
        return [w[:self.group.free_rank] for w in self.weights]


@dataclass(frozen=True)
class InvariantMonoid:
    """``P = ker(pi) ∩ N^n`` together with the kernel lattice of ``pi``."""

    monoid: ToricMonoid
    kernel: Tuple[Vector, ...]
    hypothesis_ok: bool

    @property
    def generators(self) -> List[Vector]:
        return self.monoid.ambient_generators()


def invariant_monoid(act: DiagonalAction) -> InvariantMonoid:
    """Weight-zero monomials as a monoid in ``Z^n``.

    ``hypothesis_ok`` records whether ``P`` generates the whole kernel of
    ``pi``, which the reduction steps require.

    >>> act = DiagonalAction(AbelianGroup(0, (2,)), ((1,), (1,)))
    >>> invariant_monoid(act).generators
    [(0, 2), (1, 1), (2, 0)]
    """
    n = act.dim
    kernel = kernel_lattice(act.group, act.weights)
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    cone = RationalCone.from_inequalities(units, n, integer_kernel(kernel, n))
    lattice = lattice_intersection(integer_kernel(cone.equations, n), kernel, n)
    hypothesis_ok = len(lattice) == len(kernel)
    coords = [primitive(solve_rational(transpose(lattice, n), r)) for r in cone.rays]
    monoid = ToricMonoid(RationalCone.from_generators(coords, len(lattice)), tuple(lattice))
    return InvariantMonoid(monoid, tuple(kernel), hypothesis_ok)


def freeness_oracle(p: ToricMonoid) -> bool:
    """A sharp monoid is free iff its minimal generators are linearly independent."""
    gens = p.generators
    return len(gens) == p.rank and rank(gens) == len(gens)


# -- MSOP ------------------------------------------------------------------------

@dataclass(frozen=True)
class Msop:
    """A torus weight basis ``{w_i : i in s}`` with the other weights non-positive in it.

    ``p[j]`` (``j`` outside ``s``) is the first lattice point of ``P`` whose
    coordinates outside ``s`` vanish except coordinate ``j``, which equals
    ``a[j]``; ``a_ij[i][j]`` is coordinate ``i`` of ``p[j]`` for ``i`` in ``s``.
    """

    s: Tuple[int, ...]
    basis: Tuple[Vector, ...]
    p: Dict[int, Vector]
    a: Dict[int, int]
    a_ij: Dict[int, Dict[int, int]]


def _valid_s(free: List[Vector], s: Sequence[int]) -> Optional[List[List[Fraction]]]:
    """Coordinates of all weights in the basis indexed by ``s``, if ``s`` is valid."""
    t = len(s)
    if t and rank([free[i] for i in s]) < t:
        return None
    inv = inverse_rational(transpose([free[i] for i in s], t)) if t else []
    coords = [[sum(inv[r][c] * w[c] for c in range(t)) for r in range(t)] for w in free]
    rest = [j for j in range(len(free)) if j not in s]
    if any(x > 0 for j in rest for x in coords[j]):
        return None
    return coords


def _first_lattice_point(u: Sequence[Fraction], kernel: Sequence[Vector]) -> Vector:
    n = len(u)
    coords = solve_rational(transpose(kernel, n), u)
    c = primitive(coords)
    return tuple(sum(ci * k[j] for ci, k in zip(c, kernel)) for j in range(n))


def msop_test(act: DiagonalAction, inv: Optional[InvariantMonoid] = None) -> Optional[Msop]:
    """Lexicographically smallest MSOP index set, or None if there is none.

    >>> act = DiagonalAction(AbelianGroup(1), ((1,), (-1,)))
    >>> m = msop_test(act)
    >>> m.s, m.p, m.a
    ((0,), {1: (1, 1)}, {1: 1})
    """
    inv = inv or invariant_monoid(act)
    if not inv.hypothesis_ok:
        raise HypothesisViolated("invariant monomials do not generate the kernel of the weight map")
    free = act.free_parts()
    n, t = act.dim, act.torus_rank
    for s in combinations(range(n), t):
        coords = _valid_s(free, s)
        if coords is None:
            continue
        rest = [j for j in range(n) if j not in s]
        p, a, a_ij = {}, {}, {i: {} for i in s}
        for j in rest:
            u = [Fraction(0)] * n
            u[j] = Fraction(1)
            for r, i in enumerate(s):
                u[i] = -coords[j][r]
            pj = _first_lattice_point(u, inv.kernel)
            p[j] = pj
            a[j] = pj[j]
            for i in s:
                a_ij[i][j] = pj[i]
        return Msop(tuple(s), tuple(free[i] for i in s), p, a, a_ij)
    return None


# -- reduction to a finite group -------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """Data of ``k[V]^G = k[F'/F'_0]^{D(A/B)}``.

    ``face`` spans ``F'_0``; ``kept`` lists the surviving coordinates in order.
    """

    face: Tuple[int, ...]
    b: Tuple[Vector, ...]
    quotient: AbelianGroup
    projection: GroupProjection
    kept: Tuple[int, ...]
    reduced_action: DiagonalAction


def cst_reduce(act: DiagonalAction, msop: Msop) -> Reduction:
    face = msop.s
    b_gens = [act.weights[i] for i in face]
    q, proj = quotient(act.group, b_gens)
    if not q.is_finite:
        raise InternalInvariantBroken(f"A/B = {q} is infinite")
    kept = tuple(j for j in range(act.dim) if j not in face)
    reduced = DiagonalAction(q, tuple(proj(act.weights[j]) for j in kept))
    return Reduction(face, span(act.group, b_gens).generators, q, proj, kept, reduced)


def pseudo_reflection_generated(act: DiagonalAction) -> bool:
    """Whether ``D(A)`` is generated by its pseudo-reflections (``A`` finite).

    Pseudo-reflections acting on coordinate ``i`` alone form ``D(A/K_i)`` with
    ``K_i`` the span of the other weights, so the criterion is that the
    ``K_i`` intersect in zero.

    >>> g = AbelianGroup(0, (2,))
    >>> pseudo_reflection_generated(DiagonalAction(g, ((1,), (0,))))
    True
    >>> pseudo_reflection_generated(DiagonalAction(g, ((1,), (1,))))
    False
    """
    if not act.group.is_finite:
        raise InfiniteGroupError(f"pseudo-reflection test needs a finite group, got {act.group}")
    families = [[w for k, w in enumerate(act.weights) if k != i] for i in range(act.dim)]
    return intersect_all(act.group, families).is_zero


# -- end-to-end --------------------------------------------------------------------

POLYNOMIAL = "Polynomial"
NOT_POLYNOMIAL = "NotPolynomial"
ORACLE_ONLY = "OracleOnly"
NO_MSOP = "NoMSOP"
NOT_PR_GENERATED = "NotPseudoReflectionGenerated"
HYPOTHESIS_VIOLATED = "HypothesisViolated"


@dataclass(frozen=True)
class Verdict:
    kind: str
    reason: Optional[str] = None
    generators: Tuple[Vector, ...] = ()
    oracle: Optional[bool] = None

    @property
    def polynomial(self) -> bool:
        if self.kind == ORACLE_ONLY:
            return bool(self.oracle)
        return self.kind == POLYNOMIAL

    def __str__(self):
        if self.kind == POLYNOMIAL:
            return POLYNOMIAL
        if self.kind == NOT_POLYNOMIAL:
            return f"{NOT_POLYNOMIAL}({self.reason})"
        inner = POLYNOMIAL if self.oracle else NOT_POLYNOMIAL
        return f"{ORACLE_ONLY}({inner}, {self.reason})"


@dataclass(frozen=True)
class CstReport:
    action: DiagonalAction
    invariants: InvariantMonoid
    msop: Optional[Msop]
    reduction: Optional[Reduction]
    pseudo_reflection_generated: Optional[bool]
    verdict: Verdict
    oracle_verdict: bool


def polynomiality(act: DiagonalAction) -> CstReport:
    """Run the reduction pipeline and the freeness oracle and compare them.

    >>> rep = polynomiality(DiagonalAction(AbelianGroup(1), ((1,), (1,), (-1,), (-1,))))
    >>> str(rep.verdict), rep.oracle_verdict
    ('NotPolynomial(NoMSOP)', False)
    """
    inv = invariant_monoid(act)
    oracle = freeness_oracle(inv.monoid)
    gens = tuple(inv.generators)
    if not inv.hypothesis_ok:
        verdict = Verdict(ORACLE_ONLY, HYPOTHESIS_VIOLATED, gens if oracle else (), oracle)
        return CstReport(act, inv, None, None, None, verdict, oracle)
    msop = msop_test(act, inv)
    reduction = prg = None
    if msop is None:
        verdict = Verdict(NOT_POLYNOMIAL, NO_MSOP)
    else:
        reduction = cst_reduce(act, msop)
        prg = pseudo_reflection_generated(reduction.reduced_action)
        verdict = Verdict(POLYNOMIAL, None, gens) if prg else Verdict(NOT_POLYNOMIAL, NOT_PR_GENERATED)
    if verdict.polynomial != oracle:
        raise InternalInvariantBroken(f"pipeline says {verdict}, Hilbert basis says free={oracle}")
    return CstReport(act, inv, msop, reduction, prg, verdict, oracle)


# -- normal form of exact maps -------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    """``n * i' = psi ∘ mfr`` after reordering the rows of ``i'`` by ``permutation``.

    ``psi`` has top block ``diag(b)`` and the rows ``b_ij`` below it.
    """

    n: int
    permutation: Tuple[int, ...]
    b: Tuple[int, ...]
    b_ij: Tuple[Tuple[int, ...], ...]

    def psi(self) -> List[Vector]:
        d = len(self.b)
        top = [tuple(self.b[i] if i == k else 0 for k in range(d)) for i in range(d)]
        return top + list(self.b_ij)


def _nonneg_combination(w: Vector, rays: Sequence[Vector], rho: int) -> List[Fraction]:
    """Nonnegative rational coefficients writing ``w`` in the rays; first independent subset wins."""
    d = len(rays)
    for size in range(0, rho + 1):
        for sub in combinations(range(d), size):
            vecs = [rays[i] for i in sub]
            if size and rank(vecs) < size:
                continue
            if not size:
                if not any(w):
                    return [Fraction(0)] * d
                continue
            sol = solve_rational(transpose(vecs, rho), w)
            if sol is None or any(x < 0 for x in sol):
                continue
            if any(sum(c * v[k] for c, v in zip(sol, vecs)) != w[k] for k in range(rho)):
                continue
            out = [Fraction(0)] * d
            for i, c in zip(sub, sol):
                out[i] = c
            return out
    raise NotExact(f"{w} is not in the cone of the resolution rows")


def exact_normal_form(f: MonoidMorphism) -> NormalForm:
    """Normal form of an exact morphism into a free monoid.

    >>> from toricstack.monoids import monoid_from_generators, to_free
    >>> a1 = monoid_from_generators(2, [(1, 0), (1, 2)])
    >>> exact_normal_form(to_free(a1, [(0, 1), (2, -1), (2, 0)]))
    NormalForm(n=1, permutation=(0, 1, 2), b=(1, 1), b_ij=((1, 1),))
    """
    if not is_exact(f):
        raise NotExact("the morphism is not exact")
    v = minimal_free_resolution(f.source).rows
    rows = f.rows
    first = []
    for vi in v:
        r = next(r for r, row in enumerate(rows) if any(row) and primitive(row) == vi and r not in first)
        first.append(r)
    rest = [r for r in range(len(rows)) if r not in first]
    c = [next(Fraction(a, b) for a, b in zip(rows[r], vi) if b) for r, vi in zip(first, v)]
    c_ij = [_nonneg_combination(rows[r], v, f.source.rank) for r in rest]
    n = lcm(1, *(x.denominator for row in c_ij for x in row))
    b = tuple(int(x * n) for x in c)
    b_ij = tuple(tuple(int(x * n) for x in row) for row in c_ij)
    return NormalForm(n, tuple(first + rest), b, b_ij)
