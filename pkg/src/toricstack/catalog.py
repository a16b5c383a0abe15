"""Named example inputs.

Each entry is a complete input document; ``write_catalog`` dumps them as
``<name>.json`` files, which is how the repository's ``catalog/`` directory
is produced (``python -m toricstack.catalog catalog``).
"""
import os
import sys
from typing import Any, Dict, List

from .io import dumps, envelope, parse_envelope


def _monoid(generators, rank=None, mode=None):
    payload = {"generators": generators}
    if rank is not None:
        payload["rank"] = rank
    if mode is not None:
        payload["mode"] = mode
    return envelope("monoid", payload)


def _action(free_rank, torsion, weights):
    return envelope("action", {"group": {"free_rank": free_rank, "torsion": torsion}, "weights": weights})


def _fan(free_rank, rays, cones, torsion=(), beta=None, extra=None):
    payload = {"N": {"free_rank": free_rank, "torsion": list(torsion)}, "rays": rays, "cones": cones}
    if beta is not None:
        payload["beta"] = beta
    if extra is not None:
        payload["extra"] = extra
    return envelope("fan", payload)


_SQUARE = [[1, 0, 0, 1], [0, 1, 1, 0], [1, 0, 1, 0], [0, 1, 0, 1]]
_A1 = {"generators": [[1, 0], [1, 2]], "rank": 2}

MONOIDS: Dict[str, Dict[str, Any]] = {
    "free1": _monoid([[1]], 1),
    "free2": _monoid([[1, 0], [0, 1]], 2),
    "free3": _monoid([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
    "zero": _monoid([], 0),
    "numerical-2-3": _monoid([[2], [3]], 1),
    "a1": _monoid(**_A1),
    "a1-embedded": _monoid([[2, 0], [1, 1], [0, 2]]),
    "a2": _monoid([[1, 0], [1, 3]], 2),
    "cone-1-4": _monoid([[1, 0], [1, 4]], 2),
    "cone-3-5": _monoid([[1, 0], [3, 5]], 2),
    "cone-5-2": _monoid([[0, 1], [5, 2]], 2),
    "cone-2-7": _monoid([[1, 0], [2, 7]], 2),
    "square-cone": _monoid(_SQUARE),
    "rhombus-cone": _monoid([[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]], 3),
    "triangle-cone": _monoid([[1, 0, 1], [0, 1, 1], [-1, -1, 1]], 3),
    "pentagon-cone": _monoid([[1, 0, 1], [0, 1, 1], [-1, 1, 1], [-1, 0, 1], [0, -1, 1]], 3),
    "hexagon-cone": _monoid([[1, 0, 1], [1, 1, 1], [0, 1, 1], [-1, 0, 1], [-1, -1, 1], [0, -1, 1]], 3),
    "prism-cone": _monoid([[0, 0, 0, 1], [1, 0, 0, 1], [0, 1, 0, 1],
                           [0, 0, 1, 1], [1, 0, 1, 1], [0, 1, 1, 1]], 4),
    "z3-invariants": _monoid([[3, 0], [2, 1], [1, 2], [0, 3]]),
    "simplex-1-1-3": _monoid([[1, 0, 0], [0, 1, 0], [1, 1, 3]], 3),
    "cyclic-1-2-3": _monoid([[1, 2, 3], [3, 1, 2], [2, 3, 1]], 3),
}

MORPHISMS: Dict[str, Dict[str, Any]] = {
    # drop the first coordinate of the defining embedding
    "square-drop-first": envelope("morphism", {
        "source": {"generators": _SQUARE},
        "matrix": [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    }),
    "a1-mfr": envelope("morphism", {"source": _A1, "matrix": [[0, 1], [2, -1]]}),
    "a1-scaled": envelope("morphism", {"source": _A1, "matrix": [[4, -2], [0, 3]]}),
    "double": envelope("morphism", {"source": {"generators": [[1]], "rank": 1}, "matrix": [[2]]}),
}

ACTIONS: Dict[str, Dict[str, Any]] = {
    "mu2-scalar": _action(0, [2], [[1], [1]]),
    "mu2-reflection": _action(0, [2], [[1], [0]]),
    "mu3-1-2": _action(0, [3], [[1], [2]]),
    "z2xz2": _action(0, [2, 2], [[1, 0], [0, 1], [1, 1]]),
    "torus-pair": _action(1, [], [[1], [-1]]),
    "torus-four": _action(1, [], [[1], [1], [-1], [-1]]),
    "torus-positive": _action(1, [], [[1], [1]]),
    "mixed": _action(1, [2], [[1, 0], [-1, 0], [0, 1]]),
}

_P2_RAYS = [[1, 0], [0, 1], [-1, -1]]
_P2_CONES = [[1, 2], [2, 3], [1, 3]]

FANS: Dict[str, Dict[str, Any]] = {
    "plane": _fan(2, [[1, 0], [0, 1]], [[1, 2]]),
    "a1-fan": _fan(2, [[1, 0], [1, 2]], [[1, 2]]),
    "a1-stacky": _fan(2, [[1, 0], [1, 2]], [[1, 2]], beta=[[2, 0], [1, 2]], extra=[[1, 1]]),
    "p2": _fan(2, _P2_RAYS, _P2_CONES),
    "p2-marked": _fan(2, _P2_RAYS, _P2_CONES, extra=[[2, 3]]),
    "p1-stacky": _fan(1, [[1], [-1]], [[1], [2]], beta=[[2], [-1]]),
    "f1": _fan(2, [[1, 0], [0, 1], [-1, 1], [0, -1]], [[1, 2], [2, 3], [3, 4], [1, 4]]),
    "square-cone-fan": _fan(3, [[0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]], [[1, 2, 3, 4]]),
    "p2-torsion": _fan(2, _P2_RAYS, _P2_CONES, torsion=[2],
                       beta=[[1, 0, 1], [0, 1, 0], [-1, -1, 1]]),
    "plane-zero-marking": _fan(2, [[1, 0], [0, 1]], [[1, 2]], extra=[[0, 0]]),
    "lafforgue-1": _fan(0, [], [], extra=[[]]),
    "lafforgue-2": _fan(0, [], [], extra=[[], []]),
    "lafforgue-3": _fan(0, [], [], extra=[[], [], []]),
}

CATALOG: Dict[str, Dict[str, Any]] = {**MONOIDS, **MORPHISMS, **ACTIONS, **FANS}


def load(name: str):
    """Parsed library object for a catalog entry."""
    return parse_envelope(CATALOG[name])[1]


def names(kind: str) -> List[str]:
    return [name for name, doc in CATALOG.items() if doc["kind"] == kind]


def write_catalog(directory: str) -> List[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, doc in CATALOG.items():
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
        paths.append(path)
    return paths


if __name__ == "__main__":
    write_catalog(sys.argv[1] if len(sys.argv) > 1 else "catalog")
