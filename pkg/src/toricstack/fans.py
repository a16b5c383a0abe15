"""Generalized stacky fans and their quotient presentations.

A stacky fan is ``(N, Sigma, beta)``: a finitely generated abelian group
``N = Z^d + torsion``, a fan ``Sigma`` in ``N ⊗ Q`` and a map
``beta: Z^(n+r) -> N`` whose first ``n`` basis vectors land on the rays of the
fan (as positive multiples ``b_i`` of the first lattice points) and whose last
``r`` ("extra markings") land anywhere in the support of the fan.

The presentation is ``[ (A^(n+r) - V(J)) / D(DG(beta)) ]``; everything here
computes and cross-checks its combinatorial data: the character group and
weights, the irrelevant monomials and excluded coordinate subspaces, and one
chart per cone together with the gluing between charts.

Indices of rays, cones and coordinates are 0-based.
"""
from concurrent.futures import ThreadPoolExecutor
from contextvars import copy_context
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .errors import (
    ConeNotFullDimensional,
    ConeNotMaximal,
    InputError,
    MarkingOutsideFan,
    NotAFan,
    RayConditionViolated,
    TorsionNotSupported,
)
from .lattice.cones import RationalCone, faces, is_face
from .lattice.groups import AbelianGroup, GroupProjection, cokernel, kernel_lattice, quotient
from .lattice.hilbert import hilbert_basis
from .lattice.matrix import (
    IntegerMatrix,
    Vector,
    coordinates_in_basis,
    dot,
    hermite_basis,
    integer_kernel,
    lattice_intersection,
    neg,
    primitive,
    transpose,
)
from .monoids import Datum, MonoidMorphism, ToricMonoid, admissible_resolution


@dataclass(frozen=True)
class StackyFan:
    """A validated stacky fan; build it with ``validate_stacky_fan``.

    ``cones`` are the cones as listed in the input (ray index sets, sorted),
    ``b[i]`` is the multiplicity of ``beta(e_i)`` on ray ``i`` and
    ``witnesses[j]`` the first listed cone containing extra marking ``j``.
    """

    N: AbelianGroup
    rays: Tuple[Vector, ...]
    cones: Tuple[Tuple[int, ...], ...]
    beta: Tuple[Vector, ...]
    b: Tuple[int, ...]
    witnesses: Tuple[int, ...]

    @property
    def d(self) -> int:
        return self.N.free_rank

    @property
    def n(self) -> int:
        return len(self.rays)

    @property
    def r(self) -> int:
        return len(self.beta) - len(self.rays)

    @property
    def coordinate_count(self) -> int:
        return len(self.beta)

    def beta_free(self, i: int) -> Vector:
        """``beta(e_i) ⊗ 1`` as a vector of ``Q^d``."""
        return self.beta[i][:self.d]

    def cone(self, k: int) -> RationalCone:
        return _cone_of(self.rays, self.cones[k], self.d)

    @property
    def maximal_cones(self) -> Tuple[int, ...]:
        sets = [frozenset(c) for c in self.cones]
        return tuple(k for k, s in enumerate(sets) if not any(s < t for t in sets))

    def in_cone(self, i: int, k: int) -> bool:
        return self.cone(k).contains(self.beta_free(i))


def _cone_of(rays, idx, d) -> RationalCone:
    return RationalCone.from_generators([rays[i] for i in idx], d)


def validate_stacky_fan(N: AbelianGroup, rays: Sequence[Sequence[int]], cones: Sequence[Sequence[int]],
                        beta: Optional[Sequence[Sequence[int]]] = None,
                        extra: Sequence[Sequence[int]] = ()) -> StackyFan:
    """Check the ray condition, the marking condition and the fan axioms.

    ``beta`` gives the images of the ray basis vectors (default: the first
    lattice points), ``extra`` the images of the extra markings; both are
    elements of ``N`` (free coordinates first, then torsion coordinates).
    """
    d = N.free_rank
    prim = []
    for i, v in enumerate(rays):
        v = tuple(int(x) for x in v)
        if len(v) != d:
            raise InputError(f"ray {i + 1} has {len(v)} coordinates, N has free rank {d}")
        if not any(v):
            raise InputError(f"ray {i + 1} is zero")
        prim.append(primitive(v))
    if len(set(prim)) != len(prim):
        raise InputError("two rays coincide")
    n = len(prim)
    cone_sets = []
    for k, c in enumerate(cones):
        idx = tuple(sorted(set(int(i) for i in c)))
        if any(not 0 <= i < n for i in idx):
            raise InputError(f"cone {k + 1} refers to a ray outside 1..{n}")
        if idx not in cone_sets:
            cone_sets.append(idx)
    if not cone_sets:
        cone_sets = [()]
    _check_fan(prim, cone_sets, d)
    if beta is None:
        beta = [v + (0,) * len(N.torsion) for v in prim]
    if len(beta) != n:
        raise InputError(f"beta lists {len(beta)} ray images for {n} rays")
    images = []
    for x in list(beta) + list(extra):
        x = tuple(int(c) for c in x)
        if len(x) != N.ngens:
            raise InputError(f"beta image {x} is not an element of {N}")
        images.append(N.reduce(x))
    b = []
    for i, v in enumerate(prim):
        image = images[i][:d]
        k = next((image[j] // v[j] for j in range(d) if v[j]), 0)
        if k < 1 or tuple(k * x for x in v) != image:
            raise RayConditionViolated(i)
        b.append(k)
    witnesses = []
    for j in range(n, len(images)):
        x = images[j][:d]
        k = next((k for k, c in enumerate(cone_sets) if _cone_of(prim, c, d).contains(x)), None)
        if k is None:
            raise MarkingOutsideFan(j - n)
        witnesses.append(k)
    return StackyFan(N, tuple(prim), tuple(cone_sets), tuple(images), tuple(b), tuple(witnesses))


def _check_fan(rays, cone_sets, d):
    cones = []
    for k, idx in enumerate(cone_sets):
        c = _cone_of(rays, idx, d)
        if not c.is_pointed:
            raise NotAFan((k,), f"cone {k + 1} is not strongly convex")
        if sorted(c.rays) != sorted(rays[i] for i in idx):
            raise NotAFan((k,), f"not every listed ray of cone {k + 1} is extremal")
        cones.append(c)
    for (k1, s1), (k2, s2) in combinations(enumerate(cone_sets), 2):
        c1, c2 = cones[k1], cones[k2]
        meet = RationalCone.from_inequalities(c1.facet_normals + c2.facet_normals, d)
        common = [i for i in s1 if i in s2]
        if sorted(meet.rays) != sorted(rays[i] for i in common):
            raise NotAFan((k1, k2), f"cones {k1 + 1} and {k2 + 1} overlap outside a common face")
        if not all(is_face(c, [c.rays.index(rays[i]) for i in common]) for c in (c1, c2)):
            raise NotAFan((k1, k2), f"cones {k1 + 1} and {k2 + 1} meet in a non-face")


def canonical_stacky_fan(N: AbelianGroup, rays: Sequence[Sequence[int]],
                         cones: Sequence[Sequence[int]]) -> StackyFan:
    """``beta`` sends each ray vector to the first lattice point, torsion part zero.

    >>> canonical_stacky_fan(AbelianGroup(2), [(2, 4)], [[0]]).beta
    ((1, 2),)
    """
    return validate_stacky_fan(N, rays, cones)


# -- DG(beta) ----------------------------------------------------------------------

@dataclass(frozen=True)
class DG:
    """``DG(beta) = coker([B Q]^*)`` with the images ``weights`` of the first ``n+r`` basis vectors."""

    group: AbelianGroup
    weights: Tuple[Vector, ...]
    projection: GroupProjection
    relations: Tuple[Vector, ...]


def lift_matrix(f: StackyFan, shift: Optional[Sequence[Sequence[int]]] = None) -> List[List[int]]:
    """``B`` with columns the least-nonnegative lifts of ``beta(e_i)``, plus ``Q @ shift``.

    ``shift`` (``l x (n+r)``) selects another lift; all lifts give isomorphic results.
    """
    d, tors = f.d, f.N.torsion
    cols = [list(x) for x in f.beta]
    if shift is not None:
        for k, m in enumerate(tors):
            for i in range(len(cols)):
                cols[i][d + k] += m * shift[k][i]
    return transpose(cols, d + len(tors))


def _relations(f: StackyFan, shift=None) -> List[Vector]:
    """Rows of ``[B Q]``: the relations of ``DG`` in ``Z^(n+r+l)``."""
    d, tors = f.d, f.N.torsion
    bq = lift_matrix(f, shift)
    q_rows = [[0] * len(tors) for _ in range(d)] + [[m if j == k else 0 for j in range(len(tors))]
                                                    for k, m in enumerate(tors)]
    return [tuple(row + q) for row, q in zip(bq, q_rows)]


def dg_beta(f: StackyFan, shift: Optional[Sequence[Sequence[int]]] = None) -> DG:
    """Character group of the quotient group and the coordinate weights.

    >>> p1 = validate_stacky_fan(AbelianGroup(1), [(1,), (-1,)], [[0], [1]], beta=[(2,), (-1,)])
    >>> dg = dg_beta(p1)
    >>> str(dg.group), dg.weights
    ('Z', ((1,), (2,)))
    """
    size = f.coordinate_count + len(f.N.torsion)
    rel = _relations(f, shift)
    group, proj = cokernel(IntegerMatrix.from_columns(rel, size) if rel else IntegerMatrix.zeros(size, 0))
    unit = [tuple(int(i == j) for j in range(size)) for i in range(f.coordinate_count)]
    return DG(group, tuple(proj(e) for e in unit), proj, tuple(rel))


def lift_isomorphism_check(f: StackyFan, shift: Sequence[Sequence[int]]) -> bool:
    """Whether the change of lift induces an isomorphism of ``DG`` fixing the weights.

    Shifting ``B`` by ``Q X`` multiplies ``[B Q]^*`` on the left by
    ``T = [[I, X^*], [0, I]]``, which fixes the first ``n+r`` basis vectors;
    we check that ``e -> proj'(T e)`` kills the old relations and is onto.
    Onto between isomorphic finitely generated groups means bijective, and
    fixing those basis vectors means old weights go to new weights.
    """
    nr, ell = f.coordinate_count, len(f.N.torsion)
    old, new = dg_beta(f), dg_beta(f, shift)
    if old.group != new.group:
        return False

    def t(v):
        head = [v[i] + sum(shift[k][i] * v[nr + k] for k in range(ell)) for i in range(nr)]
        return tuple(head) + tuple(v[nr:])

    if any(any(new.projection(t(rel))) for rel in old.relations):
        return False
    size = nr + ell
    images = [new.projection(t(tuple(int(i == j) for j in range(size)))) for i in range(size)]
    return quotient(new.group, images)[0].is_trivial


def torsion_injectivity_check(f: StackyFan) -> bool:
    """``DG(beta') -> DG(beta)`` is injective for ``beta' = beta`` modulo torsion.

    The kernel is the relation lattice of ``DG(beta)`` meeting ``Z^(n+r) + 0``
    modulo the relations of ``DG(beta')``.
    """
    nr, ell = f.coordinate_count, len(f.N.torsion)
    size = nr + ell
    rel = hermite_basis(_relations(f), size)
    slice_ = [tuple(int(i == j) for j in range(size)) for i in range(nr)]
    meet = lattice_intersection(rel, slice_, size) if rel else []
    free_rel = hermite_basis([r[:nr] for r in _relations(f)[:f.d]], nr)
    return hermite_basis([m[:nr] for m in meet], nr) == free_rel


# -- irrelevant ideal ----------------------------------------------------------------

def cone_monomial(f: StackyFan, k: int) -> Tuple[int, ...]:
    """Coordinates ``i`` with ``beta(e_i) ⊗ 1`` outside cone ``k``."""
    c = f.cone(k)
    return tuple(i for i in range(f.coordinate_count) if not c.contains(f.beta_free(i)))


def _minimal_sets(sets):
    sets = sorted(set(sets), key=lambda s: (len(s), s))
    out = []
    for s in sets:
        if not any(set(t) <= set(s) for t in out):
            out.append(s)
    return out


def minimal_transversals(edges: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """Inclusion-minimal sets meeting every edge (none if some edge is empty)."""
    current = [()]
    for e in edges:
        nxt = []
        for t in current:
            if set(t) & set(e):
                nxt.append(t)
            else:
                nxt.extend(tuple(sorted(t + (x,))) for x in e)
        current = _minimal_sets(nxt)
    return sorted(current, key=lambda s: (len(s), s))


@dataclass(frozen=True)
class IrrelevantIdeal:
    """Squarefree monomials (coordinate sets) generating ``J``; ``excluded`` lists the
    vanishing coordinates of each maximal coordinate subspace inside ``V(J)``."""

    monomials: Tuple[Tuple[int, ...], ...]
    excluded: Tuple[Tuple[int, ...], ...]


def irrelevant_ideal(f: StackyFan) -> IrrelevantIdeal:
    monomials = _minimal_sets(cone_monomial(f, k) for k in f.maximal_cones)
    return IrrelevantIdeal(tuple(monomials), tuple(minimal_transversals(monomials)))


# -- charts --------------------------------------------------------------------------

@dataclass(frozen=True)
class ChartData:
    """Chart over cone ``cone_index``.

    ``dual`` is ``sigma^v`` in ``M = Z^d``; ``monoid`` is ``sigma^v ∩ M`` when that
    is sharp. ``signature[i]`` is ``"N"`` when ``beta(e_i) ⊗ 1`` lies in the cone,
    else ``"Z"``. ``i_sigma`` has one row ``beta(e_i) ⊗ 1`` per coordinate.
    """

    cone_index: int
    dual: RationalCone
    monoid: Optional[ToricMonoid]
    signature: Tuple[str, ...]
    i_sigma: IntegerMatrix
    weight_zero_generators: Optional[Tuple[Vector, ...]]
    image_generators: Optional[Tuple[Vector, ...]]
    lattice_ok: bool
    cone_ok: bool

    @property
    def invariant_check(self) -> bool:
        return self.lattice_ok and self.cone_ok and self.weight_zero_generators == self.image_generators


def chart(f: StackyFan, k: int, dg: Optional[DG] = None) -> ChartData:
    """Chart over listed cone ``k``, comparing ``i_sigma(sigma^v ∩ M)`` with the
    weight-zero part of ``N^I x Z^J``."""
    if not 0 <= k < len(f.cones):
        raise InputError(f"cone {k + 1} does not exist")
    dg = dg or dg_beta(f)
    d, nr = f.d, f.coordinate_count
    sigma = f.cone(k)
    dual = sigma.dual()
    rows = [f.beta_free(i) for i in range(nr)]
    i_sigma = IntegerMatrix(rows, d)
    slots = tuple(i for i in range(nr) if sigma.contains(rows[i]))
    signature = tuple("N" if i in slots else "Z" for i in range(nr))

    # weight-zero lattice from DG versus the image of M
    kernel = kernel_lattice(dg.group, dg.weights)
    image = hermite_basis(i_sigma.columns(), nr)
    lattice_ok = kernel == image and len(image) == d

    units = [tuple(int(i == j) for j in range(nr)) for i in slots]
    equations = integer_kernel(kernel, nr)
    weight_zero = RationalCone.from_inequalities(units, nr, equations)
    image_cone = RationalCone.from_generators([i_sigma.apply(g) for g in dual.generators], nr)
    cone_ok = weight_zero == image_cone

    monoid = wz_gens = im_gens = None
    if dual.is_pointed:
        monoid = ToricMonoid(dual)
        im_gens = tuple(sorted(i_sigma.apply(g) for g in monoid.generators))
        wz_gens = tuple(hilbert_basis(weight_zero, lattice=kernel)) if weight_zero.is_pointed else None
    return ChartData(k, dual, monoid, signature, i_sigma, wz_gens, im_gens, lattice_ok, cone_ok)


@dataclass(frozen=True)
class GluingCheck:
    """``tau = sigma ∩ p^perp`` with ``tau^v = sigma^v + Q_{>=0}(-p)``.

    ``tau`` is recorded by its fan ray indices.
    """

    sigma: int
    tau: Tuple[int, ...]
    p: Vector
    face_ok: bool
    localization_ok: bool
    slots_ok: bool

    @property
    def ok(self) -> bool:
        return self.face_ok and self.localization_ok and self.slots_ok


def gluing_checks(f: StackyFan, k: int) -> List[GluingCheck]:
    sigma = f.cone(k)
    idx = f.cones[k]
    out = []
    fan_index = {f.rays[i]: i for i in idx}
    for face in faces(sigma):
        tau_rays = tuple(sorted(fan_index[sigma.rays[j]] for j in face.ray_indices))
        tau = face.cone
        p = face.normal
        face_ok = RationalCone.from_inequalities(sigma.facet_normals + (p, neg(p)), f.d) == tau
        glued = RationalCone.from_generators(list(sigma.dual().generators) + [neg(p)], f.d)
        localization_ok = glued == tau.dual()
        slots_ok = all(
            tau.contains(x) == (dot(p, x) == 0)
            for x in (f.beta_free(i) for i in range(f.coordinate_count)) if sigma.contains(x))
        out.append(GluingCheck(k, tau_rays, tuple(p), face_ok, localization_ok, slots_ok))
    return out


# -- presentation ----------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientPresentation:
    fan: StackyFan
    dg: DG
    ideal: IrrelevantIdeal
    charts: Tuple[ChartData, ...]
    gluing: Tuple[GluingCheck, ...]

    @property
    def coordinate_count(self) -> int:
        return self.fan.coordinate_count

    @property
    def group(self) -> AbelianGroup:
        return self.dg.group

    @property
    def weights(self) -> Tuple[Vector, ...]:
        return self.dg.weights

    @property
    def excluded(self) -> Tuple[Tuple[int, ...], ...]:
        return self.ideal.excluded


def presentation(f: StackyFan, jobs: int = 1) -> QuotientPresentation:
    """Assemble group, weights, excluded locus, one chart per maximal cone and the
    gluing data of every face of a maximal cone. Charts may be computed on
    ``jobs`` threads; the output does not depend on it."""
    dg = dg_beta(f)
    ideal = irrelevant_ideal(f)
    maximal = f.maximal_cones

    def work(k):
        return chart(f, k, dg), gluing_checks(f, k)

    if jobs > 1:
        # threads start with an empty context; carry the caller's limits over
        contexts = [copy_context() for _ in maximal]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda ctx, k: ctx.run(work, k), contexts, maximal))
    else:
        results = [work(k) for k in maximal]
    charts = tuple(c for c, _ in results)
    glue = tuple(g for _, gs in results for g in gs)
    return QuotientPresentation(f, dg, ideal, charts, glue)


# -- data at torus-fixed points ---------------------------------------------------------

def _full_maximal_cone(f: StackyFan, k: int) -> RationalCone:
    if not 0 <= k < len(f.cones):
        raise InputError(f"cone {k + 1} does not exist")
    if k not in f.maximal_cones:
        raise ConeNotMaximal(f"cone {k + 1} is not maximal")
    sigma = f.cone(k)
    if not sigma.is_full_dimensional:
        raise ConeNotFullDimensional(f"cone {k + 1} has dimension {sigma.dim} < {f.d}")
    return sigma


@dataclass(frozen=True)
class ConeDatum:
    """Datum at the torus-fixed point of the chart over ``cone_index``.

    ``rays`` lists fan rays in the resolution order of ``sigma^v ∩ M``,
    ``markings`` the extra markings inside the cone (0-based among markings).
    """

    cone_index: int
    monoid: ToricMonoid
    rays: Tuple[int, ...]
    markings: Tuple[int, ...]
    datum: Datum

    def resolution(self) -> MonoidMorphism:
        return admissible_resolution(self.monoid, self.datum)


def datum_at_cone(f: StackyFan, k: int) -> ConeDatum:
    sigma = _full_maximal_cone(f, k)
    monoid = ToricMonoid(sigma.dual())
    order = [f.rays.index(v) for v in sigma.rays]
    markings = tuple(j for j in range(f.r) if sigma.contains(f.beta_free(f.n + j)))
    datum = Datum(tuple(f.b[i] for i in order), tuple(f.beta_free(f.n + j) for j in markings))
    return ConeDatum(k, monoid, tuple(order), markings, datum)


def pushout_kernel_check(f: StackyFan, k: int) -> bool:
    """``Z^J -> ker(A -> A')`` is an isomorphism, ``J`` the Z-slots of the chart.

    ``A = Z^(n+r) / i(M)`` and ``A'`` is the same after deleting the ``J``
    coordinates.
    """
    if f.N.torsion:
        raise TorsionNotSupported("the pushout comparison needs torsion-free N")
    sigma = _full_maximal_cone(f, k)
    nr, d = f.coordinate_count, f.d
    rows = [f.beta_free(i) for i in range(nr)]
    keep = [i for i in range(nr) if sigma.contains(rows[i])]
    drop = [i for i in range(nr) if i not in keep]
    image = hermite_basis(transpose(rows, d), nr) if d else []
    if len(image) != d:
        return False
    a_prime, proj = cokernel(IntegerMatrix([rows[i] for i in keep], d))
    to_a_prime = [proj(tuple(int(i == j) for j in keep)) if i in keep else a_prime.zero for i in range(nr)]
    kernel = kernel_lattice(a_prime, to_a_prime)  # preimage of 0 in A'
    coords = [coordinates_in_basis(v, kernel) for v in image]
    if any(c is None for c in coords):
        return False
    ker_group, ker_proj = cokernel(IntegerMatrix.from_columns(coords, len(kernel)) if coords
                                   else IntegerMatrix.zeros(len(kernel), 0))
    if ker_group != AbelianGroup(len(drop)):
        return False
    basis_j = [coordinates_in_basis(tuple(int(i == j) for i in range(nr)), kernel) for j in drop]
    m = [ker_proj(c) for c in basis_j]
    return not m or abs(IntegerMatrix(m, len(drop)).det()) == 1
