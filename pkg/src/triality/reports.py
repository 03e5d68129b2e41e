"""Run reports: a single ordered record rendered as text or JSON.

Machine output serialises rational scalars as "p/q" strings and prime-field
scalars as integers; key order is fixed by construction, so identical runs
produce byte-identical documents.
"""

from __future__ import annotations

import json

from .algebra import Algebra
from .fields import Field
from .verdicts import Verdict, Witness


def scalar_str(field: Field, x):
    if field.is_prime_mode:
        return x % field.p
    return field.format_machine(x)


def witness_dict(field: Field, w: Witness | None):
    if w is None:
        return None
    return {
        "labels": list(w.labels),
        "defect": [scalar_str(field, x) for x in w.defect] if w.defect is not None else None,
        "note": w.note,
    }


def verdict_dict(field: Field, v: Verdict) -> dict:
    if v.skipped:
        status = "skipped"
    else:
        status = "pass" if v.holds else "fail"
    return {
        "status": status,
        "mode": v.mode if not v.skipped else None,
        "checked": v.checked,
        "trials": v.trials,
        "prime": v.prime,
        "witness": witness_dict(field, v.witness),
        "skip_reason": v.skip_reason,
    }


def algebra_summary(alg: Algebra) -> dict:
    split = alg.sh_split()
    return {
        "name": alg.name,
        "dim": alg.n,
        "field": alg.field.tag,
        "dim_sym": split.dim_s,
        "dim_skew": split.dim_h,
        "basis": list(alg.basis_names),
    }


def build_report(alg: Algebra, validation=None, certification=None,
                 identities=None, lie=None, forms=None) -> dict:
    f = alg.field
    doc = {"algebra": algebra_summary(alg)}
    doc["validation"] = (
        {name: verdict_dict(f, v) for name, v in validation} if validation else None)
    if certification:
        doc["certification"] = {
            key: verdict_dict(f, v) for key, v in certification.items()}
    else:
        doc["certification"] = None
    doc["identities"] = (
        [[name, verdict_dict(f, v)] for name, v in identities] if identities else None)
    doc["lie"] = lie
    doc["forms"] = forms
    return doc


def lie_section(field: Field, L, graded) -> dict:
    return {
        "gammas": [scalar_str(field, g) for g in L.gammas],
        "dim": graded.dim_l,
        "dim_inner": graded.dim_t,
        "branch_dims": list(graded.branch_dims),
        "branch_closure": verdict_dict(field, graded.branch_closure),
        "shift_symmetry": verdict_dict(field, graded.z3),
        "jacobi": verdict_dict(field, graded.jacobi),
    }


def forms_section(alg: Algebra, *, gram=None, derived_status=None,
                  composition=None, associativity=None, radical_basis=None,
                  phi=None, phi_check=None) -> dict:
    f = alg.field
    return {
        "gram": [[scalar_str(f, x) for x in row] for row in gram.rows] if gram else None,
        "quadratic_derivation": derived_status,
        "composition": verdict_dict(f, composition) if composition else None,
        "associativity": verdict_dict(f, associativity) if associativity else None,
        "radical_dim": len(radical_basis) if radical_basis is not None else None,
        "radical": [alg.format_vec(v) for v in radical_basis]
        if radical_basis is not None else None,
        "phi": [scalar_str(f, x) for x in phi] if phi is not None else None,
        "phi_multiplicative": verdict_dict(f, phi_check) if phi_check else None,
    }


def emit_machine(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _verdict_line(name: str, v: dict) -> str:
    status = v["status"].upper()
    extra = ""
    if v["status"] == "skipped":
        extra = f" ({v['skip_reason']})"
    elif v["mode"] == "probabilistic":
        extra = f" [{v['trials']} trials mod {v['prime']}]"
    else:
        extra = f" [{v['checked']} tuples]"
    line = f"  {name:<34} {status}{extra}"
    if v["witness"]:
        line += f"\n      witness: ({', '.join(v['witness']['labels'])})"
        if v["witness"]["defect"] is not None:
            line += f" defect {v['witness']['defect']}"
    return line


def emit_human(doc: dict) -> str:
    out = []
    a = doc["algebra"]
    out.append(f"algebra {a['name']}: dim {a['dim']} over {a['field']}, "
               f"dim S = {a['dim_sym']}, dim H = {a['dim_skew']}")
    if doc.get("validation"):
        out.append("validation:")
        for name, v in doc["validation"].items():
            out.append(_verdict_line(name, v))
    cert = doc.get("certification")
    if cert:
        out.append("certification:")
        for key, v in cert.items():
            out.append(_verdict_line(key, v))
        pre = cert.get("pre_structurable", {}).get("status")
        st = cert.get("structurable", {}).get("status")
        if st == "pass":
            label = "STRUCTURABLE"
        elif pre == "pass":
            label = "PRE-STRUCTURABLE ONLY"
        else:
            label = "NEITHER"
        out.append(f"  overall: {label}")
    if doc.get("identities"):
        out.append("identities:")
        for name, v in doc["identities"]:
            out.append(_verdict_line(name, v))
    lie = doc.get("lie")
    if lie:
        out.append("lie algebra:")
        out.append(f"  gammas: {lie['gammas']}")
        out.append(f"  dim L = {lie['dim']}, inner block dim = {lie['dim_inner']}, "
                   f"branch dims = {lie['branch_dims']}")
        out.append(_verdict_line("branch-closure", lie["branch_closure"]))
        out.append(_verdict_line("shift-symmetry", lie["shift_symmetry"]))
        out.append(_verdict_line("jacobi", lie["jacobi"]))
    forms = doc.get("forms")
    if forms:
        out.append("bilinear form:")
        if forms["quadratic_derivation"] is not None:
            out.append(f"  quadratic derivation: {forms['quadratic_derivation']}")
        if forms["composition"]:
            out.append(_verdict_line("composition-law", forms["composition"]))
        if forms["associativity"]:
            out.append(_verdict_line("form-associativity", forms["associativity"]))
        if forms["radical_dim"] is not None:
            out.append(f"  radical dim = {forms['radical_dim']}"
                       + (f", basis {forms['radical']}" if forms["radical"] else ""))
        if forms["phi_multiplicative"]:
            out.append(_verdict_line("phi-multiplicative", forms["phi_multiplicative"]))
    return "\n".join(out) + "\n"
