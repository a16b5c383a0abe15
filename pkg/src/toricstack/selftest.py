"""Seeded property suites, run by ``tsk selftest``.

Each suite draws its instances from ``random.Random(f"{seed}:{name}")``, so a
suite's cases do not depend on which other suites ran. A case passes when its
check returns True; an exception counts as a failure and is reported.
"""
import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, List

from . import catalog
from .fans import (
    dg_beta,
    gluing_checks,
    lift_isomorphism_check,
    presentation,
    pushout_kernel_check,
    torsion_injectivity_check,
)
from .invariants import cst_reduce, invariant_monoid, msop_test, polynomiality
from .io import dumps, flatten, loads, parse_text, render_text
from .lattice.cones import RationalCone, extremal_rays, faces
from .lattice.groups import cokernel
from .lattice.hilbert import hilbert_basis, is_in_monoid
from .lattice.matrix import IntegerMatrix, matmul, primitive, smith_normal_form
from .monoids import (
    factor_through_mfr,
    face_quotient,
    is_close,
    is_exact,
    minimal_free_resolution,
    stalk_factorization,
    to_free,
)
from .reports import analyze_report, datum_report, mfr_report, presentation_report, qmfr_report
from .samples import (
    random_action,
    random_cone,
    random_matrix,
    random_monoid,
    random_pointed_cone,
    random_scaled_resolution,
    random_shift,
)

Case = Callable[[], bool]


@dataclass(frozen=True)
class Suite:
    name: str
    cases: Callable[[random.Random], Iterator[Case]]


@dataclass
class SuiteResult:
    name: str
    passed: int
    failed: int
    first_failure: str = ""


# -- lattice-core ------------------------------------------------------------------------

def _double_duality(rng):
    for _ in range(200):
        c = random_cone(rng, 4, 5)
        yield lambda c=c: c.dual().dual() == c


def _snf(rng):
    for _ in range(100):
        m = IntegerMatrix(random_matrix(rng, 6, 9))
        yield lambda m=m: _snf_ok(m)


def _snf_ok(m: IntegerMatrix) -> bool:
    s, u, v = smith_normal_form(m)
    if matmul(matmul(u.tolist(), m.tolist(), m.ncols), v.tolist(), m.ncols) != s.tolist():
        return False
    if abs(u.det()) != 1 or abs(v.det()) != 1:
        return False
    k = min(m.nrows, m.ncols)
    if any(s.row(i)[j] for i in range(m.nrows) for j in range(m.ncols) if i != j):
        return False
    diag = [s.row(i)[i] for i in range(k)]
    return all(x >= 0 for x in diag) and all(
        diag[i + 1] % diag[i] == 0 if diag[i] else diag[i + 1] == 0 for i in range(k - 1))


def _cokernel_permutation(rng):
    for _ in range(100):
        rows = random_matrix(rng, 5, 9)
        yield lambda rows=rows, r=random.Random(rng.random()): _cokernel_permutation_ok(rows, r)


def _cokernel_permutation_ok(rows, rng) -> bool:
    ncols = len(rows[0])
    ri, ci = list(range(len(rows))), list(range(ncols))
    rng.shuffle(ri)
    rng.shuffle(ci)
    permuted = [[rows[i][j] for j in ci] for i in ri]
    return cokernel(IntegerMatrix(rows, ncols))[0] == cokernel(IntegerMatrix(permuted, ncols))[0]


def _hilbert_regenerates(rng):
    for _ in range(40):
        c = random_pointed_cone(rng, 3, 3)
        yield lambda c=c: _hilbert_ok(c)


def _hilbert_ok(c: RationalCone) -> bool:
    hb = hilbert_basis(c)
    n = c.ambient_rank
    for x in product(range(-6, 7), repeat=n):
        if 0 < sum(abs(v) for v in x) <= 6 and c.contains(x) and not is_in_monoid(x, hb):
            return False
    return not any(is_in_monoid(h, [g for g in hb if g != h]) for h in hb)


def _extremal_idempotent(rng):
    for _ in range(200):
        c = random_pointed_cone(rng, 4, 5)
        yield lambda c=c: _extremal_ok(c)


def _extremal_ok(c: RationalCone) -> bool:
    rays = extremal_rays(c)
    return extremal_rays(RationalCone.from_generators(rays, c.ambient_rank)) == rays


# -- monoid-resolutions ------------------------------------------------------------------

def _universal_property(rng):
    for _ in range(100):
        p = random_monoid(rng)
        f, perm, scale = random_scaled_resolution(rng, p)
        yield lambda f=f, perm=perm, scale=scale: _factor_ok(f, perm, scale)


def _factor_ok(f, perm, scale) -> bool:
    fac = factor_through_mfr(f)
    d = len(perm)
    expected = [[scale[r] if perm[r] == i else 0 for i in range(d)] for r in range(d)]
    return fac.permutation == perm and fac.multipliers == scale and fac.j.tolist() == expected


def _mfr_exact(rng):
    for _ in range(100):
        p = random_monoid(rng)
        yield lambda p=p: is_exact(minimal_free_resolution(p)).exact


def _face_coherence(rng):
    for _ in range(40):
        p = random_monoid(rng)
        for face in faces(p.cone):
            yield lambda p=p, face=face: _coherent(p, face.ray_indices)


def _coherent(p, rays) -> bool:
    fq = face_quotient(p, rays)
    return sorted(fq.induced.rows) == minimal_free_resolution(fq.quotient).rows


def _qmfr_stability(rng):
    for _ in range(60):
        p = random_monoid(rng)
        d = len(minimal_free_resolution(p).rows)
        h = [i for i in range(d) if rng.random() < 0.5]
        yield lambda p=p, h=h: stalk_factorization(p, h).certificate is not None


def _simplicial_specialization(rng):
    done = 0
    while done < 40:
        p = random_monoid(rng)
        if not p.is_simplicial:
            continue
        done += 1
        rows = minimal_free_resolution(p).rows
        rho = len(rows)
        mix = [[rng.choice((0, 0, 1, 2)) for _ in range(rho)] for _ in range(rho)]
        image = [tuple(sum(a * r[k] for a, r in zip(m, rows)) for k in range(p.rank)) for m in mix]
        yield lambda p=p, image=image: _specialization_ok(p, image)


def _specialization_ok(p, image) -> bool:
    f = to_free(p, image)
    injective = IntegerMatrix(image, p.rank).rank() == p.rank
    return len(minimal_free_resolution(p).rows) == p.rank and \
        is_exact(f).exact == (injective and is_close(f))


# -- diag-invariants ---------------------------------------------------------------------

def _hypothesis_actions(rng, count, max_free=2):
    found = 0
    while found < count:
        act = random_action(rng, max_dim=5, max_free=max_free)
        inv = invariant_monoid(act)
        if inv.hypothesis_ok:
            found += 1
            yield act, inv


def _oracle_equivalence(rng):
    for act, _ in _hypothesis_actions(rng, 200):
        yield lambda act=act: (lambda rep: rep.verdict.polynomial == rep.oracle_verdict)(polynomiality(act))


def _msop_simplicial(rng):
    for act, inv in _hypothesis_actions(rng, 200):
        yield lambda act=act, inv=inv: _msop_simplicial_ok(act, inv)


def _msop_simplicial_ok(act, inv) -> bool:
    m = msop_test(act, inv)
    if (m is not None) != inv.monoid.is_simplicial:
        return False
    if m is None:
        return True
    # coordinate functional j restricted to the invariant lattice
    basis = inv.monoid.embedding
    rest = [primitive(tuple(b[j] for b in basis)) for j in range(act.dim) if j not in m.s]
    return set(inv.monoid.cone.dual().rays) == set(rest) and len(set(rest)) == len(rest)


def _reduction_correct(rng):
    for act, inv in _hypothesis_actions(rng, 100):
        m = msop_test(act, inv)
        if m is not None:
            yield lambda act=act, inv=inv, m=m: _reduction_ok(act, inv, m)


def _reduction_ok(act, inv, m) -> bool:
    red = cst_reduce(act, m)
    images = sorted({tuple(g[j] for j in red.kept) for g in inv.generators})
    return sorted(invariant_monoid(red.reduced_action).generators) == images


def _torus_specialization(rng):
    for act, inv in _hypothesis_actions(rng, 100, max_free=2):
        if act.group.torsion:
            continue
        yield lambda act=act: _torus_ok(act)


def _torus_ok(act) -> bool:
    rep = polynomiality(act)
    expected = rep.msop is not None and bool(rep.pseudo_reflection_generated)
    return rep.verdict.polynomial == expected


# -- stacky-fans ------------------------------------------------------------------------

def _catalog_fans():
    return [(name, catalog.load(name)) for name in catalog.names("fan")]


def _lift_independence(rng):
    for name, f in _catalog_fans():
        base = dg_beta(f)
        for _ in range(10):
            shift = random_shift(rng, len(f.N.torsion), f.coordinate_count)
            yield lambda f=f, shift=shift, base=base: (
                lift_isomorphism_check(f, shift) and dg_beta(f, shift).group == base.group)


def _torsion_injectivity(rng):
    for name, f in _catalog_fans():
        if f.N.torsion:
            yield lambda f=f: torsion_injectivity_check(f)


def _chart_invariance(rng):
    for name, f in _catalog_fans():
        yield lambda f=f: all(c.invariant_check for c in presentation(f).charts)


def _face_gluing(rng):
    for name, f in _catalog_fans():
        for k in f.maximal_cones:
            yield lambda f=f, k=k: all(g.ok for g in gluing_checks(f, k))


def _bcs_specialization(rng):
    for name, f in _catalog_fans():
        if f.r == 0 and not f.N.torsion and all(b == 1 for b in f.b) \
                and all(f.cone(k).is_simplicial for k in range(len(f.cones))):
            yield lambda f=f: _bcs_ok(f)


def _bcs_ok(f) -> bool:
    group, proj = cokernel(IntegerMatrix([f.beta_free(i) for i in range(f.n)], f.d))
    dg = dg_beta(f)
    weights = tuple(proj(tuple(int(i == j) for j in range(f.n))) for i in range(f.n))
    return dg.group == group and dg.weights == weights


def _full_maximal(f):
    return [k for k in f.maximal_cones if f.cone(k).is_full_dimensional and f.d]


def _datum_consistency(rng):
    for name, f in _catalog_fans():
        for k in _full_maximal(f):
            yield lambda f=f, k=k: datum_report(f, k)["matches_chart"]


def _pushout(rng):
    for name, f in _catalog_fans():
        if not f.N.torsion:
            for k in _full_maximal(f):
                yield lambda f=f, k=k: pushout_kernel_check(f, k)


# -- workbench-cli ---------------------------------------------------------------------

def _catalog_reports():
    for name in catalog.names("monoid"):
        yield lambda name=name: mfr_report(catalog.load(name))
    for name in catalog.names("morphism"):
        yield lambda name=name: qmfr_report(catalog.load(name))
    for name in catalog.names("action"):
        yield lambda name=name: analyze_report(catalog.load(name))
    for name in catalog.names("fan"):
        yield lambda name=name: presentation_report(catalog.load(name))


def _json_round_trip(rng):
    for build in _catalog_reports():
        yield lambda build=build: (lambda r: loads(dumps(r)) == r)(build())


def _text_projection(rng):
    for build in _catalog_reports():
        yield lambda build=build: (lambda r: parse_text(render_text(r)) == flatten(r))(build())


SUITES: List[Suite] = [
    Suite("lattice.double-duality", _double_duality),
    Suite("lattice.smith-normal-form", _snf),
    Suite("lattice.cokernel-permutation", _cokernel_permutation),
    Suite("lattice.hilbert-basis", _hilbert_regenerates),
    Suite("lattice.extremal-rays", _extremal_idempotent),
    Suite("monoids.universal-property", _universal_property),
    Suite("monoids.mfr-exact", _mfr_exact),
    Suite("monoids.face-coherence", _face_coherence),
    Suite("monoids.qmfr-stability", _qmfr_stability),
    Suite("monoids.simplicial-specialization", _simplicial_specialization),
    Suite("invariants.oracle-equivalence", _oracle_equivalence),
    Suite("invariants.msop-simplicial", _msop_simplicial),
    Suite("invariants.reduction", _reduction_correct),
    Suite("invariants.torus-specialization", _torus_specialization),
    Suite("fans.lift-independence", _lift_independence),
    Suite("fans.torsion-injectivity", _torsion_injectivity),
    Suite("fans.chart-invariance", _chart_invariance),
    Suite("fans.face-gluing", _face_gluing),
    Suite("fans.bcs-specialization", _bcs_specialization),
    Suite("fans.datum-consistency", _datum_consistency),
    Suite("fans.pushout-kernel", _pushout),
    Suite("cli.json-round-trip", _json_round_trip),
    Suite("cli.text-projection", _text_projection),
]


def run_suite(suite: Suite, seed: int) -> SuiteResult:
    rng = random.Random(f"{seed}:{suite.name}")
    result = SuiteResult(suite.name, 0, 0)
    for i, case in enumerate(suite.cases(rng), 1):
        try:
            ok = bool(case())
            reason = "check returned false"
        except Exception as exc:  # a crash is a failed case, not a crashed run
            ok, reason = False, f"{type(exc).__name__}: {exc}"
        if ok:
            result.passed += 1
        else:
            result.failed += 1
            result.first_failure = result.first_failure or f"case {i}: {reason}"
    return result


def run_all(seed: int) -> List[SuiteResult]:
    return [run_suite(s, seed) for s in SUITES]


def render_table(seed: int, results: List[SuiteResult]) -> str:
    """One line per suite plus a total line."""
    width = max(len(r.name) for r in results)
    lines = [f"selftest seed={seed}"]
    for r in results:
        line = f"{r.name:<{width}}  {r.passed}/{r.passed + r.failed} passed  {'FAIL' if r.failed else 'ok'}"
        if r.failed:
            line += f"  ({r.first_failure})"
        lines.append(line)
    passed = sum(r.passed for r in results)
    failed = sum(r.failed for r in results)
    lines.append(f"total: {passed} passed, {failed} failed")
    return "\n".join(lines) + "\n"


def as_report(seed: int, results: List[SuiteResult]) -> dict:
    return {
        "command": "selftest",
        "seed": seed,
        "suites": [{"name": r.name, "passed": r.passed, "failed": r.failed,
                    "first_failure": r.first_failure or None} for r in results],
        "passed": sum(r.passed for r in results),
        "failed": sum(r.failed for r in results),
    }
