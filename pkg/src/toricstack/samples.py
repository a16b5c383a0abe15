"""Seeded random instances for property checks."""
import random
from typing import List

from .errors import InputError
from .invariants import DiagonalAction
from .lattice.cones import RationalCone
from .lattice.groups import AbelianGroup
from .monoids import ToricMonoid, minimal_free_resolution, to_free

FINITE_PARTS = [(), (2,), (3,), (4,), (5,), (6,), (7,), (8,), (2, 2), (2, 4), (2, 6),
                (3, 3), (2, 2, 2), (4, 4), (12,), (16,)]


def random_cone(rng: random.Random, max_rank: int = 4, bound: int = 5) -> RationalCone:
    n = rng.randint(1, max_rank)
    gens = [tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(rng.randint(0, n + 2))]
    return RationalCone.from_generators(gens, n)


def random_pointed_cone(rng: random.Random, max_rank: int = 3, bound: int = 3) -> RationalCone:
    while True:
        c = random_cone(rng, max_rank, bound)
        if c.is_pointed and c.rays:
            return c


def random_monoid(rng: random.Random, max_rank: int = 3, bound: int = 3) -> ToricMonoid:
    """Saturated monoid of a random full-dimensional pointed cone."""
    while True:
        n = rng.randint(1, max_rank)
        gens = [tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(rng.randint(n, n + 2))]
        c = RationalCone.from_generators(gens, n)
        if c.is_pointed and c.is_full_dimensional:
            return ToricMonoid(c)


def random_matrix(rng: random.Random, max_size: int = 6, bound: int = 9) -> List[List[int]]:
    m, n = rng.randint(1, max_size), rng.randint(1, max_size)
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def random_scaled_resolution(rng: random.Random, p: ToricMonoid, max_scale: int = 4):
    """``diag(n) ∘ permutation ∘ mfr`` together with ``(permutation, n)``."""
    rows = minimal_free_resolution(p).rows
    perm = list(range(len(rows)))
    rng.shuffle(perm)
    scale = [rng.randint(1, max_scale) for _ in rows]
    f = to_free(p, [tuple(s * x for x in rows[i]) for s, i in zip(scale, perm)])
    return f, tuple(perm), tuple(scale)


def random_action(rng: random.Random, max_dim: int = 5, max_free: int = 2,
                  finite_parts=FINITE_PARTS) -> DiagonalAction:
    """A faithful diagonal action; weights are drawn until they generate the group."""
    while True:
        t = rng.randint(0, max_free)
        tors = rng.choice(finite_parts)
        g = AbelianGroup(t, tors)
        d = rng.randint(max(1, t), max_dim)
        weights = [tuple([rng.randint(-3, 3) for _ in range(t)] + [rng.randrange(m) for m in tors])
                   for _ in range(d)]
        try:
            return DiagonalAction(g, tuple(weights))
        except InputError:
            continue


def random_shift(rng: random.Random, ell: int, columns: int, bound: int = 5) -> List[List[int]]:
    return [[rng.randint(-bound, bound) for _ in range(columns)] for _ in range(ell)]
