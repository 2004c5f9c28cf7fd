"""Machine-readable reports (schema ``mixres/1``) and their text rendering."""

from __future__ import annotations

import json
from fractions import Fraction

from .faces import classify_face_type
from .fan import (ConeSubdivision, canonical_subdivision, face_intersection_holds,
                  is_admissible, is_convenient_subdivision)
from .mixed_poly import GaussianRational, MixedPolynomial, is_convenient, render
from .newton import dual_diagram, newton_boundary, support
from .toric import SmoothnessCertificate

SCHEMA = "mixres/1"


def _frac(q: Fraction) -> list[int]:
    return [q.numerator, q.denominator]


def gaussian_json(c: GaussianRational) -> dict:
    return {"re": _frac(c.re), "im": _frac(c.im)}


def _float(x: float | None):
    return None if x is None else float(f"{x:.12g}")


def _complex_json(z: complex) -> dict:
    return {"re": _float(z.real), "im": _float(z.imag)}


def _w(v) -> list[int]:
    return list(v.p) if hasattr(v, "p") else list(v)


def term_json(t) -> dict:
    return {"coeff": gaussian_json(t.coeff), "nu": list(t.nu), "mu": list(t.mu)}


def face_record_json(rec) -> dict:
    fd = [c.term for c in rec.contributions]
    return {
        "weight": _w(rec.weight),
        "rdeg": rec.rdeg,
        "pdeg": rec.pdeg,
        "polar_sign": rec.polar_sign,
        "dim": rec.dim,
        "face_points": [list(p) for p in rec.points],
        "face_function": render(MixedPolynomial(rec.weight.n, fd)),
        "terms": [{"term": term_json(c.term),
                   "coords": [list(x) for x in c.coords],
                   "radial": c.radial, "polar": c.polar} for c in rec.contributions],
    }


def subdivision_json(s: ConeSubdivision, f: MixedPolynomial) -> dict:
    return {
        "vertices": [_w(v) for v in s.vertices],
        "cones": [{"name": f"tau_{i}", "vertices": [_w(v) for v in c.vertices],
                   "matrix": c.matrix()} for i, c in enumerate(s.max_cones, 1)],
        "regular": s.regular,
        "admissible": all(is_admissible(c, f) for c in s.max_cones),
        "face_intersection_identity": all(face_intersection_holds(c, f) for c in s.cones),
        "convenient": is_convenient_subdivision(s, f),
    }


def probe_json(p) -> dict:
    return {
        "chart": p.chart.matrix() if p.chart is not None else None,
        "status": p.status,
        "method": p.method,
        "witness": None if p.witness is None else [_complex_json(z) for z in p.witness],
        "residual": _float(p.residual),
    }


def certificate_json(cert: SmoothnessCertificate) -> dict:
    return {
        "lambda_conservative": cert.lambda_conservative,
        "lambda_optimistic": cert.lambda_optimistic,
        "smoothness_class": cert.smoothness_class,
        "assumption_star": cert.assumption_star,
        "c1_lower_bound_satisfied": cert.c1_lower_bound_satisfied,
        "L_set_conservative": sorted(cert.L_set_conservative),
        "L_set_optimistic": sorted(cert.L_set_optimistic),
        "refined_min_class": cert.refined_min_class,
        "corners": [{"chart": c.chart.matrix(), "value": gaussian_json(c.value),
                     "nonzero": c.ok} for c in cert.corners],
        "per_cone": [{"tau": [_w(v) for v in r.tau.vertices], "lambda": r.lambda_tau,
                      "status": r.status, "probes": [probe_json(p) for p in r.probes]}
                     for r in cert.per_cone],
    }


def build_report(f: MixedPolynomial, expression: str, options: dict,
                 certificate: SmoothnessCertificate | None = None,
                 subdivision: ConeSubdivision | None = None) -> dict:
    """Assemble the analysis report; two-variable sections are ``None`` otherwise."""
    conv = is_convenient(f)
    report: dict = {
        "schema": SCHEMA,
        "input": {"expression": expression, "n": f.n, "options": options},
        "polynomial": render(f),
        "terms": [term_json(t) for t in f.terms],
        "convenience": {"convenient": conv.convenient, "missing_axes": list(conv.missing_axes)},
        "support": [{"point": list(s.point), "terms": [term_json(t) for t in s.terms]}
                    for s in support(f)],
        "newton_boundary": None,
        "dual_diagram": None,
        "face_table": None,
        "face_type": None,
        "subdivision": None,
        "certificate": None,
    }
    if f.n == 2:
        st = newton_boundary(f)
        dd = dual_diagram(f)
        verdict = classify_face_type(f)
        s = subdivision or canonical_subdivision(f)
        report["newton_boundary"] = {
            "vertices": [list(v) for v in st.vertices],
            "edges": [{"start": list(e.start), "end": list(e.end), "normal": _w(e.normal),
                       "points": [list(p) for p in e.points]} for e in st.edges],
            "interior": [list(p) for p in st.interior],
        }
        report["dual_diagram"] = {
            "boundary_vertices": [list(v) for v in dd.boundary_vertices],
            "rays": [_w(r) for r in dd.rays],
            "edge_normals": [_w(r) for r in dd.edge_normals],
            "classes": [{"kind": c[0], "rays": [_w(r) for r in c[1:]]} for c in dd.classes],
        }
        report["face_table"] = [face_record_json(r) for r in verdict.table]
        report["face_type"] = {
            "verdict": verdict.verdict,
            "offending_face": None if verdict.offending_face is None else _w(verdict.offending_face),
            "flags": verdict.flags,
        }
        report["subdivision"] = subdivision_json(s, f)
    if certificate is not None:
        report["certificate"] = certificate_json(certificate)
    return report


def emit_report_json(report: dict) -> bytes:
    """UTF-8 JSON with a fixed layout; re-serialising parsed output is byte-identical."""
    return (json.dumps(report, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# --------------------------------------------------------------------------
# text

def face_table_text(records) -> str:
    """Face records laid out like a hand-written degree table."""
    lines = []
    for rec in records:
        kind = f"{rec.dim}-dim face"
        lines.append(f"{kind} of weight {rec.weight}   f = {render(MixedPolynomial(rec.weight.n, [c.term for c in rec.contributions]))}")
        for j, p in enumerate(rec.weight.p):
            cells = "   ".join(f"{c.coords[j][0]}, {c.coords[j][1]}" for c in rec.contributions)
            lines.append(f"    p{j + 1} = {p:<4} {cells}")
        pdeg = "-" if rec.pdeg is None else rec.pdeg
        lines.append(f"    radial degree {rec.rdeg}   polar degree {pdeg}")
    return "\n".join(lines)


def report_text(report: dict, records=None) -> str:
    out = [f"f = {report['polynomial']}  (n = {report['input']['n']})"]
    conv = report["convenience"]
    out.append("convenient: " + ("yes" if conv["convenient"] else f"no (missing axes {conv['missing_axes']})"))
    out.append("support points: " + ", ".join(str(tuple(s["point"])) for s in report["support"]))
    if report["newton_boundary"] is not None:
        nb = report["newton_boundary"]
        out.append("boundary vertices: " + ", ".join(str(tuple(v)) for v in nb["vertices"]))
        out.append("edge normals: " + ", ".join(str(tuple(e["normal"])) for e in nb["edges"]))
        out.append("dual rays: " + ", ".join(str(tuple(r)) for r in report["dual_diagram"]["rays"]))
        if records is not None:
            out.append(face_table_text(records))
        ft = report["face_type"]
        out.append(f"face type: {ft['verdict']}")
        for flag in ft["flags"]:
            out.append(f"  flag: {flag}")
        out.append(subdivision_text(report["subdivision"]))
    cert = report.get("certificate")
    if cert is not None:
        out.append(certificate_text(cert))
    return "\n".join(out)


def subdivision_text(sub: dict) -> str:
    lines = ["subdivision vertices: " + ", ".join(str(tuple(v)) for v in sub["vertices"])]
    for c in sub["cones"]:
        m = c["matrix"]
        lines.append(f"  {c['name']}: [{m[0][0]} {m[0][1]}; {m[1][0]} {m[1][1]}]")
    lines.append(f"  regular: {sub['regular']}  admissible: {sub['admissible']}  "
                 f"convenient: {sub['convenient']}")
    return "\n".join(lines)


def certificate_text(cert: dict) -> str:
    lines = ["certificate:"]
    for r in cert["per_cone"]:
        tau = ", ".join(str(tuple(v)) for v in r["tau"])
        lines.append(f"  Cone({tau}): lambda = {r['lambda']}, strict transform {r['status']}")
    lines.append(f"  L (conservative) = {cert['L_set_conservative']}, "
                 f"L (optimistic) = {cert['L_set_optimistic']}")
    lines.append(f"  smoothness class: {cert['smoothness_class']}")
    lines.append(f"  C^1 lower bound satisfied: {cert['c1_lower_bound_satisfied']}")
    lines.append(f"  assumption (*): {cert['assumption_star']}")
    return "\n".join(lines)
