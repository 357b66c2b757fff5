//! JSON renderings of module certificates.

use drbcheck_core::lattice::IntLattice;
use drbcheck_core::positivity::{Certificate as PosCertificate, FeasibilityVerdict, SampleReport, WeilFamilyReport};
use drbcheck_core::quatrep::AntiWeilReport;
use drbcheck_core::torus::engine::{DivisorHit, Rejection};
use drbcheck_core::torus::{CaseVerdict, Component, Lead};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub fn int(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn lattice(l: &IntLattice) -> Value {
    Value::Array(l.basis().iter().map(|r| vector(r)).collect())
}

fn hit(h: &DivisorHit) -> Value {
    json!({ "lattice": lattice(&h.lattice), "witness": vector(&h.witness) })
}

fn lead(l: &Lead) -> Value {
    match l {
        Lead::Distinct(g) => json!({ "kind": "distinct", "g": g.to_text() }),
        Lead::Involution(g) => json!({ "kind": "involution", "g": g.to_text() }),
        Lead::Quaternion(a, b) => json!({ "kind": "quaternion", "g": [a.to_text(), b.to_text()] }),
    }
}

fn component(c: &Component) -> Value {
    match c {
        Component::Point { x, y } => json!({ "point": [vector(x), vector(y)] }),
        Component::FixedX { x } => json!({ "fixed_x": vector(x) }),
        Component::FixedY { y } => json!({ "fixed_y": vector(y) }),
        Component::Curve { r } => json!({
            "curve": r.iter().map(|row| row.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
        }),
        Component::Full => json!("full"),
    }
}

fn rejection(r: &Rejection) -> Value {
    match r {
        Rejection::FixedVector { component, witness } => {
            json!({ "component": component, "fixed_witness": vector(witness) })
        }
        Rejection::Member { component, hit: h } => json!({ "component": component, "member": hit(h) }),
        Rejection::Eigenspace { hit: h } => json!({ "eigenspace": hit(h) }),
    }
}

pub fn torus(v: &CaseVerdict) -> Value {
    let c = &v.certificate;
    let mut out = json!({
        "group_order": c.group_order,
        "reason": c.reason,
    });
    let m = out.as_object_mut().expect("object");
    if let Some(l) = &c.lead {
        m.insert("lead".into(), lead(l));
    }
    if !c.pre_rejected.is_empty() {
        m.insert("pre_rejected".into(), c.pre_rejected.iter().map(hit).collect());
    }
    if let Some((minus, plus)) = &c.family_bases {
        m.insert(
            "family_bases".into(),
            json!({ "minus": minus.iter().map(|v| vector(v)).collect::<Vec<_>>(), "plus": plus.iter().map(|v| vector(v)).collect::<Vec<_>>() }),
        );
    }
    if !c.constraints.is_empty() {
        m.insert("constraints".into(), c.constraints.iter().map(|p| Value::String(p.to_string())).collect());
    }
    if !c.components.is_empty() {
        m.insert("components".into(), c.components.iter().map(component).collect());
    }
    if !c.finite.is_empty() {
        m.insert("finite".into(), c.finite.iter().map(lattice).collect());
    }
    if !c.rejections.is_empty() {
        m.insert("rejections".into(), c.rejections.iter().map(rejection).collect());
    }
    if let Some(s) = &c.survivor {
        let params = s.params.as_ref().map(|(x, y)| json!({ "x": vector(x), "y": vector(y) }));
        m.insert(
            "survivor".into(),
            json!({
                "lattice": lattice(&s.lattice),
                "params": params,
                "dihedral": [s.dihedral.0.to_text(), s.dihedral.1.to_text()],
            }),
        );
    }
    if let Some(w) = &c.orbit_witness {
        m.insert("orbit_witness".into(), json!({ "field": w.field, "eigenvalues": w.eigenvalues, "orbits": w.orbits }));
    }
    if let Some(t) = &c.transport {
        m.insert(
            "transport".into(),
            json!({
                "g": t.g.to_text(),
                "i": t.i,
                "j": t.j,
                "epsilon": t.epsilon,
                "kernel_elements": t.kernel_elements.iter().map(|v| vector(v)).collect::<Vec<_>>(),
            }),
        );
    }
    out
}

pub fn positivity(v: &FeasibilityVerdict, rechecked: bool) -> Value {
    match v {
        FeasibilityVerdict::Infeasible(PosCertificate::SignContradiction { pair, violations }) => {
            let pair = pair.as_ref().map(|p| {
                json!({
                    "first": p.first_text,
                    "second": p.second_text,
                    "parameter": p.parameter,
                    "required_signs": p.required_signs.map(|(a, b)| [a, b]),
                })
            });
            let violations: Vec<Value> = violations
                .iter()
                .map(|x| {
                    let pattern: serde_json::Map<String, Value> =
                        x.pattern.iter().map(|(n, s)| (n.clone(), Value::from(*s))).collect();
                    json!({ "pattern": pattern, "constraint": x.constraint, "term": x.term })
                })
                .collect();
            json!({ "kind": "sign_contradiction", "pair": pair, "violations": violations, "rechecked": rechecked })
        }
        FeasibilityVerdict::Infeasible(PosCertificate::ZeroWitness(z)) => json!({
            "kind": "zero_witness",
            "form": z.form,
            "vars": z.vars,
            "vector": z.vector,
            "value": z.value,
            "relation": z.relation,
            "rechecked": rechecked,
        }),
        FeasibilityVerdict::Feasible(w) => {
            let point: serde_json::Map<String, Value> =
                w.point.iter().map(|(n, q)| (n.clone(), Value::String(q.to_string()))).collect();
            let values: Vec<Vec<String>> = w.values.iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect();
            json!({ "kind": "feasible_point", "point": point, "values": values })
        }
    }
}

pub fn family(r: &WeilFamilyReport, samples: &SampleReport) -> Value {
    json!({
        "x": r.x.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "s_value": r.s_value.to_string(),
        "in_family": r.in_family,
        "subspace": r.subspace.iter().map(|v| v.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "minors": r.minors.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "positive_definite": r.positive_definite,
        "discriminant": r.discriminant.as_ref().map(|q| q.to_string()),
        "discriminant_full": r.discriminant_full.to_string(),
        "samples": { "count": samples.samples, "positive": samples.positive },
    })
}

pub fn antiweil(r: &AntiWeilReport) -> Value {
    let failed_brackets: Vec<String> = r
        .brackets
        .iter()
        .filter(|b| !b.holds)
        .map(|b| format!("[{}, {}]", b.left, b.right))
        .collect();
    json!({
        "params": [r.params.0, r.params.1, r.params.2],
        "field": r.field,
        "brackets": { "count": r.brackets.len(), "failed": failed_brackets },
        "equivariance": {
            "checks": r.equivariance.checks,
            "failures": r.equivariance.failures,
            "basis_table_matches": r.equivariance.basis_table_matches,
            "lie_table_matches": r.equivariance.lie_table_matches,
            "mu_rational": r.equivariance.mu_rational,
        },
        "symplectic": {
            "antisymmetric": r.symplectic.antisymmetric,
            "nondegenerate": r.symplectic.nondegenerate,
            "isotropic": r.symplectic.isotropic,
            "rational": r.symplectic.rational,
            "descent_checks": r.symplectic.descent_checks,
            "invariance_checks": r.symplectic.invariance_checks,
            "adjointness_checks": r.symplectic.adjointness_checks,
            "central_checks": r.symplectic.central_checks,
            "failures": r.symplectic.failures,
        },
        "irreducibility": {
            "irreducible": r.irreducibility.irreducible,
            "patterns": r.irreducibility.patterns.len(),
            "galois_stable_patterns": r.irreducibility.patterns.iter().filter(|p| p.galois_stable).count(),
        },
        "center": {
            "end_dim": r.center.end_dim,
            "end_is_k_span": r.center.end_is_k_span,
            "wedge_dim": r.center.wedge_dim,
            "wedge_is_phi_line": r.center.wedge_is_phi_line,
        },
        "phi_values": r.phi_values.iter().map(|(a, b, v)| json!([a, b, v])).collect::<Vec<_>>(),
    })
}
