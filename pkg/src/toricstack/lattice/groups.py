"""Finitely generated abelian groups in invariant-factor form.

A group ``Z^f + Z/d_1 + ... + Z/d_t`` (``d_1 | d_2 | ...``, each ``>= 2``)
stores its elements as integer tuples of length ``f + t``: the free
coordinates first, then torsion coordinates reduced into ``[0, d_i)``.
"""
from dataclasses import dataclass
from math import prod
from typing import Iterable, List, Sequence, Tuple

from ..errors import InfiniteGroupError
from .matrix import (
    IntegerMatrix,
    Vector,
    _smith,
    coordinates_in_basis,
    hermite_basis,
    integer_kernel,
    lattice_intersection,
    transpose,
)


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError(f"invariant factor {d} must be at least 2")
            if i and d % self.torsion[i - 1]:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @classmethod
    def from_moduli(cls, moduli: Iterable[int]) -> "AbelianGroup":
        """Canonical form of ``Z/m_1 + Z/m_2 + ...`` where ``m = 0`` means ``Z``."""
        moduli = [abs(int(m)) for m in moduli]
        k = len(moduli)
        diag = [[m if i == j else 0 for j in range(k)] for i, m in enumerate(moduli)]
        return cokernel(IntegerMatrix(diag, k))[0]

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def moduli(self) -> Tuple[int, ...]:
        return (0,) * self.free_rank + self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteGroupError(f"{self} is infinite")
        return prod(self.torsion)

    @property
    def zero(self) -> Vector:
        return (0,) * self.ngens

    def reduce(self, element: Sequence[int]) -> Vector:
        if len(element) != self.ngens:
            raise ValueError(f"element {tuple(element)} has {len(element)} coordinates, {self} needs {self.ngens}")
        return tuple(x % m if m else int(x) for x, m in zip(element, self.moduli))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        return self.reduce([x + y for x, y in zip(a, b)])

    def relations(self) -> List[Vector]:
        """Lattice basis of the relations among the standard generators."""
        n = self.ngens
        return [tuple(d if j == self.free_rank + i else 0 for j in range(n))
                for i, d in enumerate(self.torsion)]

    def elements(self):
        """All elements of a finite group, in lexicographic order."""
        from itertools import product
        if not self.is_finite:
            raise InfiniteGroupError(f"cannot enumerate {self}")
        return [tuple(e) for e in product(*(range(d) for d in self.torsion))]

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupProjection:
    """Surjection ``Z^n -> group`` given by an integer matrix."""

    group: AbelianGroup
    matrix: IntegerMatrix

    def __call__(self, v: Sequence[int]) -> Vector:
        return self.group.reduce(self.matrix.apply(v))

    @property
    def source_rank(self) -> int:
        return self.matrix.ncols


def cokernel(m: IntegerMatrix) -> Tuple[AbelianGroup, GroupProjection]:
    """``Z^rows / column-span(m)`` with its projection map.

    The free coordinates of the projection are put in Hermite normal form so
    that, e.g., a rank-one quotient with positive weights reports them
    positively.

    >>> cokernel(IntegerMatrix([[2]]))[0]
    AbelianGroup(free_rank=0, torsion=(2,))
    """
    n = m.nrows
    s, u, _ = _smith(m.tolist(), n, m.ncols)
    diag = [s[i][i] if i < m.ncols else 0 for i in range(n)]
    free_rows = [u[i] for i in range(n) if diag[i] == 0]
    tors = [(diag[i], [x % diag[i] for x in u[i]]) for i in range(n) if diag[i] > 1]
    free_rows = [list(r) for r in hermite_basis(free_rows, n)] if free_rows else []
    group = AbelianGroup(len(free_rows), tuple(d for d, _ in tors))
    proj = IntegerMatrix(free_rows + [r for _, r in tors], n)
    return group, GroupProjection(group, proj)


# -- subgroups -------------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    group: AbelianGroup
    generators: Tuple[Vector, ...]
    lattice: Tuple[Vector, ...]

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def order(self) -> int:
        if not self.group.is_finite:
            raise InfiniteGroupError(f"order query in infinite group {self.group}")
        index = prod(self.lattice[i][i] for i in range(len(self.lattice))) if self.lattice else 1
        return self.group.order // index

    def __contains__(self, element) -> bool:
        if not self.lattice:
            return not any(self.group.reduce(element))
        return coordinates_in_basis(list(element), self.lattice) is not None


def _lift_lattice(g: AbelianGroup, gens: Iterable[Sequence[int]]) -> List[Vector]:
    rows = [g.reduce(x) for x in gens] + g.relations()
    return hermite_basis(rows, g.ngens)


def _from_lattice(g: AbelianGroup, lattice: List[Vector]) -> Subgroup:
    gens = []
    for row in lattice:
        r = g.reduce(row)
        if any(r) and r not in gens:
            gens.append(r)
    return Subgroup(g, tuple(gens), tuple(lattice))


def span(g: AbelianGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    """Subgroup generated by ``gens``, with a canonical generator list."""
    return _from_lattice(g, _lift_lattice(g, gens))


def intersect(g: AbelianGroup, a: Iterable[Sequence[int]], b: Iterable[Sequence[int]]) -> Subgroup:
    """``span(a) ∩ span(b)``; only defined for finite ``g``."""
    if not g.is_finite:
        raise InfiniteGroupError(f"intersection in infinite group {g}")
    la = _lift_lattice(g, a)
    lb = _lift_lattice(g, b)
    if g.ngens == 0:
        return Subgroup(g, (), ())
    return _from_lattice(g, lattice_intersection(la, lb, g.ngens))


def intersect_all(g: AbelianGroup, families: Sequence[Sequence[Sequence[int]]]) -> Subgroup:
    """Intersection of the spans of several generator families (finite ``g``)."""
    current = span(g, [tuple(int(i == j) for j in range(g.ngens)) for i in range(g.ngens)])
    for fam in families:
        current = intersect(g, current.generators, fam)
    return current


@dataclass(frozen=True)
class SubgroupReport:
    span_a: Subgroup
    intersection: Subgroup
    a_is_zero: bool
    b_is_zero: bool
    intersection_is_zero: bool
    order_a: int
    order_intersection: int


def subgroup_ops(g: AbelianGroup, generators_a, generators_b) -> SubgroupReport:
    sa = span(g, generators_a)
    sb = span(g, generators_b)
    inter = intersect(g, generators_a, generators_b)
    return SubgroupReport(sa, inter, sa.is_zero, sb.is_zero, inter.is_zero, sa.order, inter.order)


def quotient(g: AbelianGroup, gens: Iterable[Sequence[int]]) -> Tuple[AbelianGroup, GroupProjection]:
    """``g / span(gens)`` with the projection from the coordinates of ``g``."""
    cols = [g.reduce(x) for x in gens] + g.relations()
    m = IntegerMatrix(transpose(cols, g.ngens), len(cols)) if cols else IntegerMatrix.zeros(g.ngens, 0)
    return cokernel(m)


def kernel_lattice(g: AbelianGroup, elements: Sequence[Sequence[int]]) -> List[Vector]:
    """Hermite basis of ``{f in Z^k : sum f_i * elements[i] = 0 in g}``."""
    k = len(elements)
    cols = [g.reduce(x) for x in elements] + g.relations()
    if not g.ngens:
        return [tuple(int(i == j) for j in range(k)) for i in range(k)]
    kern = integer_kernel(transpose(cols, g.ngens), len(cols))
    return hermite_basis([v[:k] for v in kern], k)
