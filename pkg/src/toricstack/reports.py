"""Plain-dict reports for the command line, one builder per subcommand.

Reports contain only strings, integers, booleans, ``None`` and lists/dicts of
those, so they serialize to JSON and to text without further conversion.
Every index in a report is 1-based.
"""
from typing import Any, Dict, List, Optional, Sequence

from .fans import (
    StackyFan,
    chart,
    datum_at_cone,
    dg_beta,
    gluing_checks,
    presentation,
    pushout_kernel_check,
)
from .invariants import DiagonalAction, freeness_oracle, invariant_monoid, polynomiality
from .lattice.groups import AbelianGroup
from .monoids import (
    MonoidMorphism,
    ToricMonoid,
    face_quotient,
    is_exact,
    minimal_free_resolution,
    qmfr_factorize,
)

Report = Dict[str, Any]


def _vecs(vs) -> List[List[int]]:
    return [list(v) for v in vs]


def _one_based(idx: Sequence[int]) -> List[int]:
    return [i + 1 for i in idx]


def group_report(g: AbelianGroup) -> Report:
    return {"group": str(g), "free_rank": g.free_rank, "invariant_factors": list(g.torsion)}


def monoid_report(p: ToricMonoid) -> Report:
    return {
        "rank": p.rank,
        "ambient_rank": p.ambient_rank,
        "embedding": _vecs(p.embedding) if p.embedding is not None else None,
        "hilbert_basis": _vecs(p.ambient_generators()),
        "rays": _vecs(p.cone.rays),
        "simplicial": p.is_simplicial,
        "free": p.is_free,
    }


def _coordinate_match(p: ToricMonoid, rows) -> Optional[List[int]]:
    """For an embedded monoid: which ambient coordinate each mfr row restricts from.

    ``None`` when the monoid has no embedding or some row is not a coordinate
    functional, i.e. the mfr is not the defining embedding.
    """
    if p.embedding is None:
        return None
    coordinate = [tuple(b[k] for b in p.embedding) for k in range(p.ambient_rank)]
    match = []
    for v in rows:
        if v not in coordinate:
            return None
        match.append(coordinate.index(v) + 1)
    return match if len(set(match)) == len(match) else None


def mfr_report(p: ToricMonoid) -> Report:
    i = minimal_free_resolution(p)
    coker = i.group_cokernel()
    match = _coordinate_match(p, i.rows)
    return {
        "command": "monoid mfr",
        "monoid": monoid_report(p),
        "mfr": {
            "target_rank": len(i.rows),
            "matrix": _vecs(i.rows),
            "images": _vecs(i(g) for g in p.generators),
            "cokernel": group_report(coker),
        },
        "defining_embedding": match is not None,
        "coordinates": match,
    }


def qmfr_report(f: MonoidMorphism) -> Report:
    ex = is_exact(f)
    cert = qmfr_factorize(f)
    out = {
        "command": "monoid qmfr",
        "source": monoid_report(f.source),
        "matrix": _vecs(f.rows),
        "exact": ex.exact,
        "witness": list(ex.witness) if ex.witness is not None else None,
        "verdict": "qmfr" if cert else "not qmfr",
        "certificate": None,
    }
    if cert:
        out["certificate"] = {
            "mfr": _vecs(cert.mfr.rows),
            "face": _one_based(cert.face),
            "permutation": _one_based(cert.permutation),
        }
    return out


def quotient_report(p: ToricMonoid, face: Sequence[int]) -> Report:
    """``face`` holds 0-based ray indices of ``C(P)``."""
    fq = face_quotient(p, face)
    induced = sorted(fq.induced.rows)
    recomputed = minimal_free_resolution(fq.quotient).rows
    return {
        "command": "monoid quotient",
        "monoid": monoid_report(p),
        "face": _one_based(fq.face_rays),
        "quotient": {
            "rank": fq.quotient.rank,
            "projection": fq.projection.tolist(),
            "hilbert_basis": _vecs(fq.quotient.generators),
            "rays": _vecs(fq.quotient.cone.rays),
        },
        "face_coordinates": _one_based(fq.f0),
        "kept_coordinates": _one_based(fq.kept),
        "induced": _vecs(fq.induced.rows),
        "recomputed_mfr": _vecs(recomputed),
        "coherent": induced == sorted(recomputed),
    }


def _action_report(act: DiagonalAction) -> Report:
    return {"group": str(act.group), "weights": _vecs(act.weights)}


def analyze_report(act: DiagonalAction) -> Report:
    rep = polynomiality(act)
    inv = rep.invariants
    msop = None
    if rep.msop is not None:
        m = rep.msop
        msop = {
            "s": _one_based(m.s),
            "basis": _vecs(m.basis),
            "points": [{"j": j + 1, "p": list(m.p[j]), "a": m.a[j],
                        "a_ij": [m.a_ij[i][j] for i in m.s]} for j in sorted(m.p)],
        }
    reduction = None
    if rep.reduction is not None:
        r = rep.reduction
        reduction = {
            "face": _one_based(r.face),
            "b": _vecs(r.b),
            "quotient": str(r.quotient),
            "kept": _one_based(r.kept),
            "reduced_weights": _vecs(r.reduced_action.weights),
        }
    return {
        "command": "inv analyze",
        "action": _action_report(act),
        "invariants": {
            "generators": _vecs(inv.generators),
            "rank": inv.monoid.rank,
            "simplicial": inv.monoid.is_simplicial,
            "hypothesis_ok": inv.hypothesis_ok,
        },
        "msop": msop,
        "reduction": reduction,
        "pseudo_reflection_generated": rep.pseudo_reflection_generated,
        "verdict": str(rep.verdict),
        "oracle": "Polynomial" if rep.oracle_verdict else "NotPolynomial",
    }


def oracle_report(act: DiagonalAction) -> Report:
    inv = invariant_monoid(act)
    free = freeness_oracle(inv.monoid)
    return {
        "command": "inv oracle",
        "action": _action_report(act),
        "hilbert_basis": _vecs(inv.generators),
        "free": free,
        "verdict": "Polynomial" if free else "NotPolynomial",
    }


def _fan_summary(f: StackyFan) -> Report:
    return {
        "N": str(f.N),
        "d": f.d,
        "n": f.n,
        "r": f.r,
        "rays": _vecs(f.rays),
        "cones": [_one_based(c) for c in f.cones],
        "maximal_cones": _one_based(f.maximal_cones),
        "beta": _vecs(f.beta),
        "b": list(f.b),
        "marking_cones": _one_based(f.witnesses),
    }


def validate_report(f: StackyFan) -> Report:
    return {"command": "fan validate", "valid": True, "fan": _fan_summary(f)}


def presentation_report(f: StackyFan, jobs: int = 1) -> Report:
    pres = presentation(f, jobs)
    charts = [{"cone": c.cone_index + 1, "signature": "".join(c.signature),
               "lattice_ok": c.lattice_ok, "cone_ok": c.cone_ok,
               "invariant_check": c.invariant_check} for c in pres.charts]
    return {
        "command": "fan presentation",
        "coordinates": pres.coordinate_count,
        **group_report(pres.group),
        "weights": _vecs(pres.weights),
        "monomials": [_one_based(m) for m in pres.ideal.monomials],
        "excluded": [_one_based(e) for e in pres.excluded],
        "charts": charts,
        "gluing_checks": len(pres.gluing),
        "gluing_ok": all(g.ok for g in pres.gluing),
    }


def chart_report(f: StackyFan, k: int) -> Report:
    """``k`` is a 0-based index into the listed cones."""
    c = chart(f, k, dg_beta(f))
    glue = gluing_checks(f, k) if k in f.maximal_cones else []
    return {
        "command": "fan chart",
        "cone": k + 1,
        "rays": _one_based(f.cones[k]),
        "dual_rays": _vecs(c.dual.rays),
        "dual_lineality": _vecs(c.dual.lineality),
        "signature": "".join(c.signature),
        "i_sigma": c.i_sigma.tolist(),
        "monoid": _vecs(c.monoid.generators) if c.monoid is not None else None,
        "image_generators": _vecs(c.image_generators) if c.image_generators is not None else None,
        "weight_zero_generators": (_vecs(c.weight_zero_generators)
                                   if c.weight_zero_generators is not None else None),
        "lattice_ok": c.lattice_ok,
        "cone_ok": c.cone_ok,
        "invariant_check": c.invariant_check,
        "gluing": [{"face": _one_based(g.tau), "p": list(g.p), "face_ok": g.face_ok,
                    "localization_ok": g.localization_ok, "slots_ok": g.slots_ok} for g in glue],
    }


def datum_report(f: StackyFan, k: int) -> Report:
    cd = datum_at_cone(f, k)
    res = cd.resolution()
    # the sigma-block of i_sigma: rays of sigma, then markings inside sigma
    block = [f.beta_free(i) for i in cd.rays] + [f.beta_free(f.n + j) for j in cd.markings]
    return {
        "command": "fan datum",
        "cone": k + 1,
        "rays": _one_based(cd.rays),
        "b": list(cd.datum.b),
        "markings": _one_based(cd.markings),
        "marking_functionals": _vecs(cd.datum.extra),
        "resolution": _vecs(res.rows),
        "matches_chart": [tuple(r) for r in res.rows] == [tuple(v) for v in block],
        "pushout_kernel": None if f.N.torsion else pushout_kernel_check(f, k),
    }
