"""Hilbert bases of pointed rational cones.

The cone is triangulated by a pulling triangulation on its extremal rays;
the lattice points of every half-open fundamental parallelepiped together
with the rays generate the monoid, and the Hilbert basis is what remains
after discarding reducible candidates in order of a positive grading.
"""
from itertools import product
from typing import List, Optional, Sequence

from ..config import get_limits
from ..errors import NotPointed, ResourceLimitError
from .cones import RationalCone
from .matrix import (
    Vector,
    _smith,
    combine,
    dot,
    integer_kernel,
    inverse_rational,
    lattice_intersection,
    primitive,
    rank,
    solve_rational,
    transpose,
)

CANDIDATE_FACTOR = 100


def _triangulate(rays: List[Vector], n: int) -> List[List[Vector]]:
    d = rank(rays)
    if len(rays) == d:
        return [rays]
    cone = RationalCone.from_generators(rays, n)
    apex = rays[0]
    out = []
    for u in cone.facets:
        if dot(u, apex) == 0:
            continue
        facet_rays = [r for r in rays if dot(u, r) == 0]
        out.extend([apex] + s for s in _triangulate(facet_rays, n))
    return out


def _parallelepiped_points(simplex: List[Vector], k: int) -> List[Vector]:
    """Nonzero lattice points of ``{sum l_i s_i : 0 <= l_i < 1}`` for a full-rank simplex.

    The SNF of the simplex matrix enumerates ``Z^k / (simplex lattice)``; each
    coset is moved into the parallelepiped by taking coefficients mod 1, done
    here in integers scaled by ``D = |det|``.
    """
    s, _, v = _smith([list(r) for r in simplex], k, k)
    diag = [s[i][i] for i in range(k)]
    det = 1
    for d in diag:
        det *= d
    v_inv = [[int(x) for x in row] for row in inverse_rational(v)]
    adj = [[int(x * det) for x in row] for row in inverse_rational(simplex)]
    pts = []
    for y in product(*(range(d) for d in diag)):
        if not any(y):
            continue
        x = [sum(y[i] * v_inv[i][j] for i in range(k)) for j in range(k)]
        lam = [sum(x[i] * adj[i][j] for i in range(k)) % det for j in range(k)]
        pts.append(tuple(sum(lam[i] * simplex[i][j] for i in range(k)) // det for j in range(k)))
    return pts


def hilbert_basis(c: RationalCone, lattice_rank: Optional[int] = None,
                  lattice: Optional[Sequence[Sequence[int]]] = None) -> List[Vector]:
    """Minimal generating set of the monoid ``c ∩ Z^n``, sorted.

    With ``lattice`` (a basis of a sublattice ``L``) the monoid is ``c ∩ L``.

    >>> hilbert_basis(RationalCone.orthant(2), lattice=[(1, 1), (0, 2)])
    [(0, 2), (1, 1), (2, 0)]

    Raises ``ResourceLimitError`` when the basis exceeds the configured
    ``max_hilbert`` bound, or when the parallelepiped enumeration would visit
    more than ``CANDIDATE_FACTOR`` times that many points.
    """
    if lattice_rank is not None and lattice_rank != c.ambient_rank:
        raise ValueError(f"cone lives in rank {c.ambient_rank}, not {lattice_rank}")
    if not c.is_pointed:
        raise NotPointed("Hilbert basis of a cone with lineality")
    n = c.ambient_rank
    if not c.rays:
        return []
    bound = get_limits().max_hilbert
    basis = integer_kernel(c.equations, n)
    if lattice is not None:
        basis = lattice_intersection(basis, [tuple(v) for v in lattice], n)
    k = len(basis)
    if k != c.dim:
        raise ValueError("the sublattice does not span the cone")
    rays_k = [primitive(solve_rational(transpose(basis, n), r)) for r in c.rays]
    cone_k = RationalCone.from_generators(rays_k, k)
    candidates = set(rays_k)
    for simplex in _triangulate(list(cone_k.rays), k):
        candidates.update(_parallelepiped_points(simplex, k))
        if len(candidates) > CANDIDATE_FACTOR * bound:
            raise ResourceLimitError(
                f"Hilbert basis search needs more than {CANDIDATE_FACTOR * bound} candidates "
                f"(bound {bound} times {CANDIDATE_FACTOR})")
    grading = [sum(u[j] for u in cone_k.facets) for j in range(k)]
    hb: List[Vector] = []
    for x in sorted(candidates, key=lambda x: (dot(grading, x), x)):
        if not any(cone_k.contains([a - b for a, b in zip(x, y)]) for y in hb):
            hb.append(x)
    if len(hb) > bound:
        raise ResourceLimitError(f"Hilbert basis size {len(hb)} exceeds the bound {bound}")
    return sorted(combine(x, basis, n) for x in hb)


def is_in_monoid(x: Sequence[int], generators: Sequence[Sequence[int]]) -> bool:
    """Whether ``x`` is an N-combination of ``generators`` (generators of a pointed cone).

    Exhaustive search; only meant for small test instances.
    """
    gens = [tuple(g) for g in generators if any(g)]
    if not any(x):
        return True
    if not gens:
        return False
    cone = RationalCone.from_generators(gens, len(x))
    if not cone.is_pointed:
        raise NotPointed("membership search needs generators of a pointed cone")
    # facets live in the span, so their sum is positive on the nonzero points of a pointed cone
    grading = [sum(u[j] for u in cone.facets) for j in range(len(x))]
    seen = {}

    def search(y, start):
        if not any(y):
            return True
        key = (y, start)
        if key in seen:
            return seen[key]
        ok = False
        for i in range(start, len(gens)):
            z = tuple(a - b for a, b in zip(y, gens[i]))
            if cone.contains(z) and dot(grading, z) < dot(grading, y) and search(z, i):
                ok = True
                break
        seen[key] = ok
        return ok

    return search(tuple(x), 0)
