"""Saturated toric sharp monoids, exact morphisms and free resolutions.

A ``ToricMonoid`` of rank ``rho`` is ``C ∩ Z^rho`` for a full-dimensional
pointed rational cone ``C``; its group is all of ``Z^rho``. Monoids that come
from generators spanning a proper sublattice of some ``Z^m`` keep that
sublattice basis as ``embedding`` so that results can be reported in the
original coordinates.

Indices (rays, mfr rows, free coordinates) are 0-based throughout this module.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import (
    InputError,
    InternalInvariantBroken,
    InvalidDatum,
    NotAFace,
    NotAMorphism,
    NotExact,
    NotFullGroup,
    NotSaturated,
    NotSharp,
)
from .lattice.cones import RationalCone, is_face
from .lattice.groups import AbelianGroup, cokernel
from .lattice.hilbert import hilbert_basis, is_in_monoid
from .lattice.matrix import (
    IntegerMatrix,
    Vector,
    combine,
    coordinates_in_basis,
    dot,
    hermite_basis,
    integer_kernel,
    primitive,
    rank,
    saturation,
)


@dataclass(frozen=True)
class ToricMonoid:
    cone: RationalCone
    embedding: Optional[Tuple[Vector, ...]] = None
    generators: Tuple[Vector, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.cone.is_pointed:
            raise NotSharp(f"cone has a lineality space of rank {len(self.cone.lineality)}")
        if not self.cone.is_full_dimensional:
            raise NotFullGroup(f"cone of dimension {self.cone.dim} in rank {self.rank}")
        if self.embedding is not None:
            emb = tuple(tuple(int(x) for x in row) for row in self.embedding)
            if len(emb) != self.rank or (emb and rank(emb) != self.rank):
                raise ValueError("embedding must be a basis of the monoid's group")
            object.__setattr__(self, "embedding", emb)
        object.__setattr__(self, "generators", tuple(hilbert_basis(self.cone)))

    @classmethod
    def from_cone(cls, cone: RationalCone) -> "ToricMonoid":
        return cls(cone)

    @classmethod
    def free(cls, k: int) -> "ToricMonoid":
        return cls(RationalCone.orthant(k))

    @classmethod
    def zero(cls) -> "ToricMonoid":
        return cls.free(0)

    @property
    def rank(self) -> int:
        return self.cone.ambient_rank

    lattice_rank = rank

    @property
    def ambient_rank(self) -> int:
        return len(self.embedding[0]) if self.embedding else self.rank

    @property
    def is_free(self) -> bool:
        return len(self.cone.rays) == self.rank and len(self.generators) == self.rank

    @property
    def is_simplicial(self) -> bool:
        return len(self.cone.rays) == self.rank

    def contains(self, x: Sequence[int]) -> bool:
        return self.cone.contains(x)

    def to_ambient(self, x: Sequence[int]) -> Vector:
        if self.embedding is None:
            return tuple(x)
        return combine(x, self.embedding, self.ambient_rank)

    def from_ambient(self, y: Sequence[int]) -> Optional[Vector]:
        """Lattice coordinates of an ambient vector, or None outside the group."""
        if self.embedding is None:
            return tuple(y)
        return coordinates_in_basis(y, self.embedding)

    def ambient_generators(self) -> List[Vector]:
        return sorted(self.to_ambient(g) for g in self.generators)


def monoid_from_generators(rank_: int, gens: Sequence[Sequence[int]], mode: str = "saturate") -> ToricMonoid:
    """The monoid ``cone(gens) ∩ Z^rank``.

    ``strict`` mode refuses inputs whose generated monoid is not already
    saturated with group ``Z^rank``.

    >>> monoid_from_generators(2, [(1, 0), (1, 1), (1, 2)]).generators
    ((1, 0), (1, 1), (1, 2))
    """
    if mode not in ("saturate", "strict"):
        raise InputError(f"unknown mode {mode!r}")
    gens = _check_generators(gens, rank_)
    cone = RationalCone.from_generators(gens, rank_)
    if not cone.is_pointed:
        raise NotSharp("the generators span a cone containing a line")
    lattice = hermite_basis(gens, rank_)
    if len(lattice) < rank_:
        raise NotFullGroup(f"generators span a sublattice of rank {len(lattice)} < {rank_}")
    if mode == "strict":
        if any(lattice[i][i] != 1 for i in range(rank_)):
            raise NotFullGroup("generators span a proper finite-index subgroup")
        monoid = ToricMonoid(cone)
        missing = [h for h in monoid.generators if not is_in_monoid(h, gens)]
        if missing:
            raise NotSaturated(f"{missing[0]} lies in the saturation but not in the monoid")
        return monoid
    return ToricMonoid(cone)


def embedded_monoid(gens: Sequence[Sequence[int]]) -> ToricMonoid:
    """Saturation of ``<gens>`` inside the group it generates.

    The result lives in the coordinates of the Hermite basis of that group;
    ``embedding`` maps it back to the ambient lattice.
    """
    if not gens:
        return ToricMonoid.zero()
    m = len(gens[0])
    gens = _check_generators(gens, m)
    basis = hermite_basis(gens, m)
    coords = [coordinates_in_basis(g, basis) for g in gens]
    cone = RationalCone.from_generators(coords, len(basis))
    if not cone.is_pointed:
        raise NotSharp("the generators span a cone containing a line")
    return ToricMonoid(cone, tuple(basis))


def _check_generators(gens, rank_):
    out = []
    for g in gens:
        g = tuple(int(x) for x in g)
        if len(g) != rank_:
            raise InputError(f"generator {g} does not have {rank_} coordinates")
        if not any(g):
            raise InputError("generators must be nonzero")
        out.append(g)
    if not out and rank_:
        raise NotFullGroup("no generators")
    return out


@dataclass(frozen=True)
class MonoidMorphism:
    source: ToricMonoid
    target: ToricMonoid
    matrix: IntegerMatrix

    def __post_init__(self):
        m = self.matrix
        if not isinstance(m, IntegerMatrix):
            m = IntegerMatrix(m, self.source.rank)
            object.__setattr__(self, "matrix", m)
        if m.shape != (self.target.rank, self.source.rank):
            raise NotAMorphism(f"matrix shape {m.shape} does not match "
                               f"{self.target.rank}x{self.source.rank}")
        for g in self.source.generators:
            if not self.target.contains(m.apply(g)):
                raise NotAMorphism(f"generator {g} maps outside the target monoid")

    @property
    def rows(self) -> List[Vector]:
        return list(self.matrix)

    def __call__(self, x: Sequence[int]) -> Vector:
        return self.matrix.apply(x)

    def group_cokernel(self) -> AbelianGroup:
        """``target^gp / image(source^gp)``."""
        return cokernel(self.matrix)[0]


def to_free(source: ToricMonoid, rows: Sequence[Sequence[int]]) -> MonoidMorphism:
    """Morphism ``source -> N^k`` whose coordinates are the given functionals."""
    rows = [tuple(r) for r in rows]
    return MonoidMorphism(source, ToricMonoid.free(len(rows)), IntegerMatrix(rows, source.rank))


@dataclass(frozen=True)
class Exactness:
    exact: bool
    witness: Optional[Vector] = None

    def __bool__(self):
        return self.exact


def _preimage_cone(f: MonoidMorphism) -> RationalCone:
    normals = [tuple(dot(u, col) for col in f.matrix.columns()) for u in f.target.cone.facet_normals]
    return RationalCone.from_inequalities(normals, f.source.rank)


def is_exact(f: MonoidMorphism) -> Exactness:
    """Whether ``source = (f^gp)^-1(target)``; otherwise a witness in the difference.

    >>> is_exact(to_free(ToricMonoid.free(2), [(1, 1)]))
    Exactness(exact=False, witness=(1, -1))
    """
    pre = _preimage_cone(f)
    src = f.source.cone
    for v in pre.lineality:
        for w in (v, tuple(-x for x in v)):
            if not src.contains(w):
                return Exactness(False, w)
    for r in pre.rays:
        if not src.contains(r):
            return Exactness(False, r)
    return Exactness(True)


def is_close(f: MonoidMorphism) -> bool:
    """Every target element has a positive multiple in the image."""
    image = RationalCone.from_generators([f(g) for g in f.source.generators], f.target.rank)
    return image.contains_cone(f.target.cone)


def minimal_free_resolution(p: ToricMonoid) -> MonoidMorphism:
    """``p -> N^d`` with rows the primitive rays of the dual cone, sorted.

    >>> minimal_free_resolution(monoid_from_generators(2, [(1, 0), (1, 2)])).rows
    [(0, 1), (2, -1)]
    """
    return to_free(p, p.cone.dual().rays)


@dataclass(frozen=True)
class Factorization:
    """``f = j ∘ mfr`` with ``j = diag(multipliers) ∘ permutation``.

    Row ``r`` of ``f`` equals ``multipliers[r]`` times mfr row ``permutation[r]``.
    """

    j: IntegerMatrix
    permutation: Tuple[int, ...]
    multipliers: Tuple[int, ...]


def factor_through_mfr(f: MonoidMorphism) -> Factorization:
    """The unique ``j`` with ``f = j ∘ mfr`` for an exact ``f`` into a free monoid of rank ``d``."""
    mfr = minimal_free_resolution(f.source)
    d = mfr.target.rank
    if f.target.rank != d or not f.target.is_free:
        raise InputError(f"target must be free of rank {d}")
    if not is_exact(f):
        raise NotExact("the morphism is not exact")
    index = {v: i for i, v in enumerate(mfr.rows)}
    perm, mult = [], []
    for row in f.rows:
        # exactness with d rows puts every row on a distinct dual ray
        v = primitive(row)
        perm.append(index[v])
        mult.append(next(a // b for a, b in zip(row, v) if b))
    if len(set(perm)) != d:
        raise NotExact("rows do not cover every dual ray")
    j = [[mult[r] if perm[r] == i else 0 for i in range(d)] for r in range(d)]
    return Factorization(IntegerMatrix(j, d), tuple(perm), tuple(mult))


# -- qmfr ----------------------------------------------------------------------

@dataclass(frozen=True)
class QmfrCertificate:
    """``f = pi_H ∘ mfr`` up to the coordinate permutation.

    ``face`` lists the coordinates of ``F = N^d`` spanning ``H``; target
    coordinate ``r`` of ``f`` is mfr coordinate ``permutation[r]``.
    """

    mfr: MonoidMorphism
    face: Tuple[int, ...]
    permutation: Tuple[int, ...]


def _match_rows(rows: Sequence[Vector], candidates: Sequence[Vector]) -> Optional[List[int]]:
    used, perm = set(), []
    for row in rows:
        hit = next((i for i, c in enumerate(candidates) if c == tuple(row) and i not in used), None)
        if hit is None:
            return None
        used.add(hit)
        perm.append(hit)
    return perm


def _meets_only_at_zero(p: ToricMonoid, rows: Sequence[Vector]) -> bool:
    """Whether ``{x in P : row(x) = 0 for all rows}`` is zero."""
    return all(any(dot(w, r) for w in rows) for r in p.cone.rays)


def qmfr_factorize(f: MonoidMorphism) -> Optional[QmfrCertificate]:
    """Certificate that ``f`` is an mfr followed by projection along a face, or None."""
    if not f.target.is_free:
        raise InputError("qmfr needs a free target")
    mfr = minimal_free_resolution(f.source)
    perm = _match_rows(f.rows, mfr.rows)
    if perm is None or not _meets_only_at_zero(f.source, f.rows):
        return None
    face = tuple(i for i in range(mfr.target.rank) if i not in perm)
    return QmfrCertificate(mfr, face, tuple(perm))


# -- faces ---------------------------------------------------------------------

@dataclass(frozen=True)
class FaceQuotient:
    """``P / P0`` with the data relating it to the resolution of ``P``.

    ``projection`` maps ``Z^rho`` onto the quotient lattice; ``f0`` lists the
    mfr coordinates spanning the face of ``F`` generated by ``P0`` and
    ``kept`` the others, in order; ``induced`` has one row per kept coordinate.
    """

    monoid: ToricMonoid
    face_rays: Tuple[int, ...]
    quotient: ToricMonoid
    projection: IntegerMatrix
    f0: Tuple[int, ...]
    kept: Tuple[int, ...]
    induced: MonoidMorphism


def _face_lattice(p: ToricMonoid, rays: Sequence[int]):
    return saturation([p.cone.rays[i] for i in rays], p.rank) if rays else []


def face_quotient(p: ToricMonoid, face_rays: Sequence[int]) -> FaceQuotient:
    """Quotient by the face spanned by the given rays of ``C(P)``.

    >>> a1 = monoid_from_generators(2, [(1, 0), (1, 2)])
    >>> fq = face_quotient(a1, [0])
    >>> fq.f0, fq.induced.rows
    ((1,), [(1,)])
    """
    face_rays = tuple(sorted(set(face_rays)))
    if any(not 0 <= i < len(p.cone.rays) for i in face_rays) or not is_face(p.cone, face_rays):
        raise NotAFace(f"rays {[i + 1 for i in face_rays]} do not span a face")
    k = _face_lattice(p, face_rays)
    proj = integer_kernel(k, p.rank)
    q = len(proj)
    image = [tuple(dot(row, g) for row in proj) for g in p.cone.rays]
    quotient = ToricMonoid(RationalCone.from_generators(image, q))
    mfr = minimal_free_resolution(p)
    face_gens = [p.cone.rays[i] for i in face_rays]
    f0 = tuple(i for i, v in enumerate(mfr.rows) if any(dot(v, g) for g in face_gens))
    kept = tuple(i for i in range(len(mfr.rows)) if i not in f0)
    induced = [coordinates_in_basis(mfr.rows[i], proj) for i in kept]
    return FaceQuotient(p, face_rays, quotient, IntegerMatrix(proj, p.rank), f0, kept,
                        to_free(quotient, induced))


@dataclass(frozen=True)
class StalkFactorization:
    """``P/P0 -> F/F0 -> F/H`` for a face ``H`` of the resolution target."""

    h: Tuple[int, ...]
    p0_rays: Tuple[int, ...]
    face_quotient: FaceQuotient
    dropped: Tuple[int, ...]
    composite: MonoidMorphism
    certificate: QmfrCertificate


def stalk_factorization(p: ToricMonoid, h: Sequence[int]) -> StalkFactorization:
    h = tuple(sorted(set(h)))
    mfr = minimal_free_resolution(p)
    d = len(mfr.rows)
    if any(not 0 <= i < d for i in h):
        raise NotAFace(f"coordinate face {[i + 1 for i in h]} is not a face of N^{d}")
    outside = [mfr.rows[i] for i in range(d) if i not in h]
    p0 = tuple(r for r, ray in enumerate(p.cone.rays) if not any(dot(w, ray) for w in outside))
    fq = face_quotient(p, p0)
    dropped = tuple(i for i in h if i not in fq.f0)
    rows = [row for i, row in zip(fq.kept, fq.induced.rows) if i not in h]
    composite = to_free(fq.quotient, rows)
    cert = qmfr_factorize(composite)
    if cert is None:
        raise InternalInvariantBroken("stalk composite is not qmfr")
    return StalkFactorization(h, p0, fq, dropped, composite, cert)


# -- admissible resolutions ----------------------------------------------------

@dataclass(frozen=True)
class Datum:
    """Positive integers ``b`` (one per dual ray, in mfr order) and extra maps ``w_j: P -> N``."""

    b: Tuple[int, ...]
    extra: Tuple[Vector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "extra", tuple(tuple(int(x) for x in w) for w in self.extra))


def admissible_resolution(p: ToricMonoid, datum: Datum) -> MonoidMorphism:
    """Rows ``b_i v_i`` followed by the extra functionals.

    >>> a1 = monoid_from_generators(2, [(1, 0), (1, 2)])
    >>> admissible_resolution(a1, Datum((2, 1))).rows
    [(0, 2), (2, -1)]
    """
    mfr = minimal_free_resolution(p)
    if len(datum.b) != len(mfr.rows):
        raise InvalidDatum(f"need {len(mfr.rows)} multipliers, got {len(datum.b)}")
    if any(b < 1 for b in datum.b):
        raise InvalidDatum("multipliers must be positive")
    for j, w in enumerate(datum.extra):
        if len(w) != p.rank:
            raise InvalidDatum(f"extra map {j + 1} has {len(w)} coordinates, expected {p.rank}")
        if any(dot(w, r) < 0 for r in p.cone.rays):
            raise InvalidDatum(f"extra map {j + 1} is negative on the monoid")
    rows = [tuple(b * x for x in v) for b, v in zip(datum.b, mfr.rows)] + list(datum.extra)
    return to_free(p, rows)


@dataclass(frozen=True)
class AdmissibleCertificate:
    resolution: MonoidMorphism
    face: Tuple[int, ...]
    permutation: Tuple[int, ...]


def is_admissibly_qfr(f: MonoidMorphism, datum: Datum) -> Optional[AdmissibleCertificate]:
    """Whether ``f`` is an admissible resolution of type ``datum`` followed by a face projection."""
    res = admissible_resolution(f.source, datum)
    perm = _match_rows(f.rows, res.rows)
    if perm is None or not _meets_only_at_zero(f.source, f.rows):
        return None
    face = tuple(i for i in range(res.target.rank) if i not in perm)
    return AdmissibleCertificate(res, face, tuple(perm))
