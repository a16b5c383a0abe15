"""Rational polyhedral cones with exact double description.

A ``RationalCone`` always carries both descriptions in canonical form:

* ``rays`` -- primitive extremal rays modulo the lineality space, each
  represented inside the orthogonal complement of the lineality space;
* ``lineality`` -- Hermite basis of the lattice of the lineality space;
* ``facets`` -- primitive inner facet normals, represented inside the linear
  span of the cone;
* ``equations`` -- Hermite basis of the lattice orthogonal to the span.

All lists are sorted lexicographically, so two cones are equal exactly when
their dataclass fields are equal, and the dual cone is obtained by swapping
the two descriptions.
"""
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from ..config import get_limits
from ..errors import NotPointed, ResourceLimitError
from .matrix import (
    Vector,
    dot,
    hermite_basis,
    integer_kernel,
    inverse_rational,
    neg,
    primitive,
    rank,
)


def _extreme_rays_pointed(m: List[List[int]], k: int) -> List[Vector]:
    """Extreme rays of the pointed cone ``{t in Q^k : m t >= 0}`` (rank m == k)."""
    if k == 0:
        return []
    basis_idx = []
    for i, row in enumerate(m):
        if rank([m[j] for j in basis_idx] + [row]) > len(basis_idx):
            basis_idx.append(i)
            if len(basis_idx) == k:
                break
    inv = inverse_rational([m[i] for i in basis_idx])
    rays = [primitive([inv[r][j] for r in range(k)]) for j in range(k)]
    tight = [frozenset(basis_idx[:j] + basis_idx[j + 1:]) for j in range(k)]
    in_basis = set(basis_idx)
    for i, a in enumerate(m):
        if i in in_basis:
            continue
        vals = [dot(a, r) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg_ = [j for j, v in enumerate(vals) if v < 0]
        zero = [j for j, v in enumerate(vals) if v == 0]
        new_rays = [rays[j] for j in pos] + [rays[j] for j in zero]
        new_tight = [tight[j] for j in pos] + [tight[j] | {i} for j in zero]
        for p in pos:
            for q in neg_:
                common = tight[p] & tight[q]
                if len(common) < k - 2:
                    continue
                if rank([m[c] for c in common]) != k - 2:
                    continue
                comb = [vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])]
                if not any(comb):
                    continue
                new_rays.append(primitive(comb))
                new_tight.append(common | {i})
        rays, tight = new_rays, new_tight
    return rays


def h_to_v(inequalities: Sequence[Sequence[int]], n: int) -> Tuple[List[Vector], List[Vector]]:
    """Generators of ``{x in Q^n : a . x >= 0 for all a}``.

    Returns ``(rays, lineality)``: primitive extreme rays (taken in the
    orthogonal complement of the lineality space) and a Hermite basis of the
    lineality lattice.
    """
    a = [list(r) for r in inequalities if any(r)]
    lineality = integer_kernel(a, n)
    if not a:
        return [], lineality
    w = hermite_basis(a, n)
    k = len(w)
    m = [[dot(row, wj) for wj in w] for row in a]
    rays_t = _extreme_rays_pointed(m, k)
    rays = {primitive([sum(t[j] * w[j][c] for j in range(k)) for c in range(n)]) for t in rays_t}
    return sorted(rays), lineality


@dataclass(frozen=True)
class RationalCone:
    ambient_rank: int
    rays: Tuple[Vector, ...]
    lineality: Tuple[Vector, ...]
    facets: Tuple[Vector, ...]
    equations: Tuple[Vector, ...]

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], ambient_rank: int = None) -> "RationalCone":
        gens = [tuple(int(x) for x in g) for g in generators]
        n = _infer_rank(gens, ambient_rank)
        facets, equations = h_to_v(gens, n)
        ineq = facets + equations + [neg(e) for e in equations]
        rays, lineality = h_to_v(ineq, n)
        return cls(n, tuple(rays), tuple(lineality), tuple(facets), tuple(equations))

    @classmethod
    def from_inequalities(cls, normals: Iterable[Sequence[int]], ambient_rank: int = None,
                          equations: Iterable[Sequence[int]] = ()) -> "RationalCone":
        """The cone ``{x : u . x >= 0 for u in normals, e . x = 0 for e in equations}``."""
        normals = [tuple(int(x) for x in u) for u in normals]
        eqs = [tuple(int(x) for x in e) for e in equations]
        n = _infer_rank(normals + eqs, ambient_rank)
        rays, lineality = h_to_v(normals + eqs + [neg(e) for e in eqs], n)
        gens = rays + lineality + [neg(v) for v in lineality]
        facets, equations_ = h_to_v(gens, n)
        return cls(n, tuple(rays), tuple(lineality), tuple(facets), tuple(equations_))

    @classmethod
    def orthant(cls, n: int) -> "RationalCone":
        return cls.from_generators([tuple(int(i == j) for j in range(n)) for i in range(n)], n)

    @property
    def generators(self) -> Tuple[Vector, ...]:
        """Cone generators: the rays plus a signed lineality basis."""
        return tuple(sorted(set(self.rays) | set(self.lineality) | {neg(v) for v in self.lineality}))

    @property
    def facet_normals(self) -> Tuple[Vector, ...]:
        """Normals ``u`` with ``cone = {x : u . x >= 0 for all u}``."""
        return tuple(sorted(set(self.facets) | set(self.equations) | {neg(v) for v in self.equations}))

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def is_simplicial(self) -> bool:
        return self.is_pointed and len(self.rays) == self.dim

    def contains(self, x: Sequence[int]) -> bool:
        return all(dot(u, x) >= 0 for u in self.facets) and all(dot(e, x) == 0 for e in self.equations)

    def contains_cone(self, other: "RationalCone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def in_relative_interior(self, x: Sequence[int]) -> bool:
        return all(dot(u, x) > 0 for u in self.facets) and all(dot(e, x) == 0 for e in self.equations)

    def dual(self) -> "RationalCone":
        return dual_cone(self)


def _infer_rank(vectors, ambient_rank):
    if ambient_rank is not None:
        for v in vectors:
            if len(v) != ambient_rank:
                raise ValueError(f"vector {v} does not live in rank {ambient_rank}")
        return ambient_rank
    if not vectors:
        raise ValueError("ambient_rank is required when no vectors are given")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise ValueError("vectors of different lengths")
    return n


def dual_cone(c: RationalCone) -> RationalCone:
    """``{u : u . x >= 0 for all x in c}``; the two descriptions simply swap."""
    return RationalCone(c.ambient_rank, c.facets, c.equations, c.rays, c.lineality)


def extremal_rays(c: RationalCone) -> List[Vector]:
    """Primitive generators of the extremal rays of a pointed cone, sorted."""
    if not c.is_pointed:
        raise NotPointed(f"cone has lineality space of rank {len(c.lineality)}")
    return list(c.rays)


@dataclass(frozen=True)
class Face:
    """A face of a pointed cone, recorded by its rays and a supporting normal.

    ``normal`` satisfies ``face = parent ∩ normal^perp`` with ``normal`` in the
    dual of the parent cone; it is zero for the whole cone.
    """

    cone: RationalCone
    ray_indices: Tuple[int, ...]
    normal: Vector

    @property
    def dim(self) -> int:
        return self.cone.dim


def faces(c: RationalCone) -> List[Face]:
    """All faces of a pointed cone ordered by dimension, then lexicographically."""
    if not c.is_pointed:
        raise NotPointed("faces() needs a pointed cone")
    bound = get_limits().max_faces
    n = c.ambient_rank
    facet_sets = [frozenset(i for i, r in enumerate(c.rays) if dot(u, r) == 0) for u in c.facets]
    full = frozenset(range(len(c.rays)))
    found = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for s in frontier:
            for fs in facet_sets:
                t = s & fs
                if t not in found:
                    found.add(t)
                    nxt.append(t)
                    if len(found) > bound:
                        raise ResourceLimitError(f"face count exceeds the bound {bound}")
        frontier = nxt
    out = []
    for s in found:
        idx = tuple(sorted(s))
        normal = [0] * n
        for u, fs in zip(c.facets, facet_sets):
            if s <= fs:
                normal = [a + b for a, b in zip(normal, u)]
        cone = RationalCone.from_generators([c.rays[i] for i in idx], n)
        out.append(Face(cone, idx, tuple(normal)))
    out.sort(key=lambda f: (f.dim, [c.rays[i] for i in f.ray_indices]))
    return out


def is_face(c: RationalCone, ray_indices: Iterable[int]) -> bool:
    """Whether the given rays of ``c`` span a face (and are all of its rays)."""
    s = frozenset(ray_indices)
    closure = frozenset(range(len(c.rays)))
    for u in c.facets:
        tight = frozenset(i for i, r in enumerate(c.rays) if dot(u, r) == 0)
        if s <= tight:
            closure &= tight
    return closure == s

