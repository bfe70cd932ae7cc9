"""JSON and text rendering of engine results.

JSON output is canonical: keys sorted, integers written as decimal strings
(parsing and re-serialising reproduces the same bytes).
"""
from __future__ import annotations

import json
from fractions import Fraction

from .criterion import Certificate, CriterionReport
from .quadfield import PrimeIdealQF, QFElem, QuadField
from .sunit import SUnitSolution, is_irrelevant

SCHEMA_VERSION = 1


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (Fraction, QFElem)):
        return str(obj)
    if isinstance(obj, PrimeIdealQF):
        return _jsonable(obj.as_dict())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)


def field_dict(F: QuadField) -> dict:
    return {"d": F.d, "disc": F.disc, "integral_basis_kind": F.integral_basis_kind}


def solution_dict(sol: SUnitSolution) -> dict:
    x, y = sol.canonical_id
    return {
        "lambda": sol.lam,
        "mu": sol.mu,
        "canonical_id": [x, y],
        "irrelevant": is_irrelevant(sol),
    }


def criterion_dict(rep: CriterionReport) -> dict:
    A, B, C = rep.coefficients
    sols = []
    for o in rep.outcomes:
        entry = solution_dict(o.solution)
        entry["condA_witness"] = o.condA_witness
        entry["condB_witness"] = o.condB_witness
        sols.append(entry)
    return {
        "schema": SCHEMA_VERSION,
        "field": field_dict(rep.field),
        "coefficients": {"A": A, "B": B, "C": C},
        "sets": rep.sets.as_dict(),
        "solutions": sols,
        "es_status": rep.es_status,
        "conjecture_flag": rep.conjecture_flag,
        "verdict": rep.verdict,
        "completeness": rep.completeness,
        "bounds": rep.bounds.as_dict(),
        "notes": list(rep.notes),
        "solver_agreement": rep.solver_agreement,
    }


def certificate_dict(cert: Certificate) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "kind": "theorem2-certificate",
        "d": cert.d,
        "q": cert.q,
        "status": cert.status,
        "hypotheses": [
            {"name": name, "passed": ok, "detail": detail} for name, ok, detail in cert.hypotheses
        ],
        "primality": cert.primality,
        "conditional_on": cert.conditional_on,
        "notes": list(cert.notes),
    }
    if cert.report is not None:
        out["search"] = {
            "param_solutions_found": cert.param_candidates_found,
            "rational_orbit": list(cert.rational_orbit),
            "relevant_solutions": list(cert.relevant_solutions),
        }
        out["criterion"] = criterion_dict(cert.report)
    return out


def criterion_text(rep: CriterionReport) -> str:
    A, B, C = rep.coefficients
    lines = [
        f"field: {rep.field} (disc {rep.field.disc})",
        f"coefficients: A = {A}, B = {B}, C = {C}",
    ]
    for name in "RSTUV":
        members = ", ".join(str(P) for P in getattr(rep.sets, name)) or "(empty)"
        lines.append(f"{name}: {members}")
    lines.append(f"solutions (canonical, {rep.completeness}): {len(rep.outcomes)}")
    for o in rep.outcomes:
        tag = "irrelevant" if is_irrelevant(o.solution) else "relevant"
        lines.append(
            f"  {o.solution} [{tag}]  (A): {o.condA_witness or '-'}  (B): {o.condB_witness or '-'}"
        )
    if rep.solver_agreement is not None:
        lines.append(f"solver agreement: {rep.solver_agreement}")
    lines.append(f"(ES): {rep.es_status}")
    lines += [f"note: {n}" for n in rep.notes]
    lines.append(f"verdict: {rep.verdict} ({rep.completeness})")
    return "\n".join(lines)


def certificate_text(cert: Certificate) -> str:
    lines = [f"pair d = {cert.d}, q = {cert.q}"]
    for name, ok, detail in cert.hypotheses:
        lines.append(f"  [{'pass' if ok else 'FAIL'}] {name}: {detail}")
    lines.append(f"primality: {cert.primality}")
    if cert.report is not None:
        lines.append(f"parametrised relevant solutions found: {cert.param_candidates_found}")
        lines.append(f"rational orbit: {{{', '.join(cert.rational_orbit)}}}")
        lines.append(f"relevant solutions: {len(cert.relevant_solutions)}")
        lines.append(criterion_text(cert.report))
    else:
        lines += [f"note: {n}" for n in cert.notes]
    if cert.conditional_on:
        lines.append(f"status: {cert.status}, conditional on {cert.conditional_on}")
    else:
        lines.append(f"status: {cert.status}")
    return "\n".join(lines)
