//! One builder per subcommand, each producing ordered report records.

use std::time::Instant;

use drbcheck_core::arith::Rational;
use drbcheck_core::cmtype::d4_analysis;
use drbcheck_core::liereps::{classify_dim4_faithful, named_invariants, search_dim, weyl_dim, AlgebraType};
use drbcheck_core::periods::gross_report;
use drbcheck_core::positivity::{self, run_case, sample_form, CaseOutcome, FamilyVerdict, FeasibilityVerdict};
use drbcheck_core::quatrep::{verify_antiweil, DEFAULT_PARAMS};
use drbcheck_core::torus::sweeps::{analyze_sweep_case, cases_a4, cases_dim1, cases_klein4, cases_order4, SweepCase};
use drbcheck_core::torus::{recheck, Verdict};
use drbcheck_core::FieldElement;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certs;
use crate::io::format_matrix;

/// Samples drawn for the floating check of a definite family member.
pub const FAMILY_SAMPLES: usize = 100;
const FAMILY_SEED: u64 = 0x5eed;

/// A case result before fixture comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub case_id: String,
    pub verdict: String,
    pub certificate: Value,
    pub table: String,
    /// The owning module's own checks hold.
    pub checked: bool,
    pub runtime_ms: u64,
    /// Extra fixture files as (relative path, contents).
    pub artifacts: Vec<(String, String)>,
}

impl Record {
    fn new(case_id: impl Into<String>, verdict: impl Into<String>, table: &str, checked: bool, certificate: Value) -> Self {
        Record {
            case_id: case_id.into(),
            verdict: verdict.into(),
            certificate,
            table: table.to_string(),
            checked,
            runtime_ms: 0,
            artifacts: Vec::new(),
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.runtime_ms = start.elapsed().as_millis() as u64;
        self
    }
}

/// Records of one subcommand, compared against the fixture file `name`.tsv.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: &'static str,
    pub records: Vec<Record>,
    /// Produced with default parameters, so it covers the whole fixture.
    pub complete: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

fn sweep_record(case: &SweepCase) -> Record {
    let start = Instant::now();
    match analyze_sweep_case(case) {
        Ok(v) => {
            let rechecked = recheck(&case.gens, &v);
            let mut cert = certs::torus(&v);
            if let Err(e) = &rechecked {
                cert["recheck_error"] = Value::String(e.clone());
            }
            let checked = v.verdict == case.expected && rechecked.is_ok();
            let mut r = Record::new(&case.case_id, v.verdict.as_str(), case.table, checked, cert);
            if v.verdict == Verdict::SurvivesD4 {
                if let Some(s) = &v.certificate.survivor {
                    r.artifacts
                        .push((format!("lattices/{}.txt", case.case_id), format_matrix(s.lattice.basis(), 4)));
                }
            }
            r.timed(start)
        }
        Err(e) => Record::new(&case.case_id, "ERROR", case.table, false, json!({ "error": e.to_string() })).timed(start),
    }
}

pub fn sweep(name: &'static str) -> Section {
    let cases = match name {
        "sweep-dim1" => cases_dim1(),
        "sweep-order4" => cases_order4(),
        "sweep-klein4" => cases_klein4(),
        "sweep-a4" => cases_a4(),
        other => unreachable!("unknown sweep {other}"),
    };
    let mut records: Vec<Record> = cases.par_iter().map(sweep_record).collect();
    records.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    Section { name, records, complete: true }
}

pub fn d4_cmtypes() -> Section {
    let start = Instant::now();
    let report = d4_analysis();
    let mut records: Vec<Record> = report
        .surviving_types
        .iter()
        .map(|t| {
            let mut k2 = t.k2_mults.clone();
            k2.sort_unstable();
            let fails_k2 = k2 == [1, 1, 1, 1] || k2 == [0, 0, 2, 2];
            Record::new(
                format!("d4.phi.{}", t.phi.join("+")),
                if fails_k2 { "FAILS_K2" } else { "PASSES_K2" },
                "d4-cm-types",
                fails_k2,
                json!({ "phi": t.phi, "k1_multiplicities": t.k1_mults, "k2_multiplicities": t.k2_mults, "primitive": t.primitive }),
            )
        })
        .collect();
    records.push(Record::new(
        "d4.summary",
        if report.verified { "NO_SIMPLE_CM_TYPE" } else { "UNVERIFIED" },
        "d4-cm-types",
        report.verified,
        json!({
            "model": report.model,
            "normalization": report.normalization,
            "types_with_id": report.types_with_id,
            "surviving": report.surviving_types.len(),
        }),
    ));
    for r in &mut records {
        r.runtime_ms = start.elapsed().as_millis() as u64;
    }
    Section { name: "d4-cmtypes", records, complete: true }
}

fn weight_text(w: &[u64]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn rep_classify() -> Result<Section, CommandError> {
    let start = Instant::now();
    let c = classify_dim4_faithful().map_err(|e| CommandError::Internal(e.to_string()))?;
    let mut records = Vec::new();
    for r in &c.reps {
        let brackets = r.module.verify_brackets().is_ok();
        let faithful = r.module.is_faithful(r.algebra.lie_dim());
        records.push(Record::new(
            format!("dim4.{}.{}", r.algebra, weight_text(&r.highest_weight)),
            "FAITHFUL_IRREDUCIBLE",
            "dim4-representations",
            brackets && faithful,
            json!({ "description": r.description, "image_dim": r.module.image_dim(), "brackets": brackets }),
        ));
    }
    records.push(Record::new(
        "dim4.count",
        format!("COUNT_{}", c.reps.len()),
        "dim4-representations",
        c.reps.len() == 4,
        json!({
            "candidates": c.candidates.iter().map(|(n, d)| json!([n, d])).collect::<Vec<_>>(),
            "excluded": c.excluded.iter().map(|(n, why)| json!([n, why])).collect::<Vec<_>>(),
        }),
    ));
    for t in [AlgebraType::A2, AlgebraType::G2] {
        let s = search_dim(t, 4);
        let sols: Vec<String> = s.solutions.iter().map(|w| weight_text(w)).collect();
        records.push(Record::new(
            format!("search.{t}.4"),
            if sols.is_empty() { "EMPTY".to_string() } else { format!("FOUND_{}", sols.len()) },
            "dimension-search",
            sols.is_empty(),
            json!({ "solutions": sols }),
        ));
    }
    let d = weyl_dim(AlgebraType::B2, &[0, 1]).map_err(|e| CommandError::Internal(e.to_string()))?;
    records.push(Record::new("weyl.B2.0,1", format!("DIM_{d}"), "dimension-search", d == 4, json!({ "dim": d as u64 })));
    for r in &mut records {
        r.runtime_ms = start.elapsed().as_millis() as u64;
    }
    Ok(Section { name: "rep-classify", records, complete: true })
}

pub fn invariants() -> Result<Section, CommandError> {
    let start = Instant::now();
    let checks = named_invariants().map_err(|e| CommandError::Internal(e.to_string()))?;
    let records = checks
        .iter()
        .map(|c| {
            Record::new(
                format!("invariant.{}", c.name),
                if c.passed() { "INVARIANT" } else { "NOT_INVARIANT" },
                "invariant-tensors",
                c.passed(),
                json!({
                    "module": c.module,
                    "module_dim": c.module_dim,
                    "invariant_dim": c.invariant_dim,
                    "tensor": c.expected_text,
                    "in_invariant_space": c.in_invariant_space,
                    "annihilated": c.annihilated,
                }),
            )
            .timed(start)
        })
        .collect();
    Ok(Section { name: "invariants", records, complete: true })
}

pub fn antiweil(params: (i64, i64, i64)) -> Result<Section, CommandError> {
    let start = Instant::now();
    let (dp, d, a) = params;
    let r = verify_antiweil(dp, d, a).map_err(|e| CommandError::Usage(e.to_string()))?;
    let full = certs::antiweil(&r);
    let prefix = format!("antiweil[{dp},{d},{a}]");
    let pass = |b: bool| if b { "PASS" } else { "FAIL" };
    let brackets = r.brackets.len() == 15 && r.brackets.iter().all(|b| b.holds);
    let parts = [
        ("brackets", brackets, full["brackets"].clone()),
        ("equivariance", r.equivariance.passed() && r.equivariance.checks == 144, full["equivariance"].clone()),
        ("symplectic", r.symplectic.passed(), json!({ "form": full["symplectic"], "phi_values": full["phi_values"] })),
        ("irreducibility", r.irreducibility.irreducible, full["irreducibility"].clone()),
        ("center", r.center.passed(), full["center"].clone()),
    ];
    let records = parts
        .into_iter()
        .map(|(name, ok, cert)| {
            let cert = json!({ "field": r.field, "params": [dp, d, a], "checks": cert });
            Record::new(format!("{prefix}.{name}"), pass(ok), "antiweil-representation", ok, cert).timed(start)
        })
        .collect();
    Ok(Section { name: "antiweil-verify", records, complete: params == DEFAULT_PARAMS })
}

/// One positivity run; `lambda` and `x` are the overrides as given.
#[derive(Debug, Clone)]
pub struct PositivityRun {
    pub case: String,
    pub lambda: Option<(String, Rational)>,
    pub x: Option<(String, Vec<FieldElement>)>,
}

impl PositivityRun {
    fn case_id(&self) -> String {
        let mut tags = Vec::new();
        if let Some((s, _)) = &self.lambda {
            tags.push(format!("lambda={s}"));
        }
        if let Some((s, _)) = &self.x {
            tags.push(format!("x={s}"));
        }
        if tags.is_empty() {
            self.case.clone()
        } else {
            format!("{}[{}]", self.case, tags.join(";"))
        }
    }
}

/// Every case with default parameters, and the anti-Weil imaginary case at λ = ±1.
pub fn default_positivity_runs() -> Vec<PositivityRun> {
    let mut out = Vec::new();
    for c in positivity::CASES {
        if c == "antiweil-imaginary" {
            for l in [-1i64, 1] {
                out.push(PositivityRun {
                    case: c.to_string(),
                    lambda: Some((l.to_string(), Rational::from_integer(l.into()))),
                    x: None,
                });
            }
        } else {
            out.push(PositivityRun { case: c.to_string(), lambda: None, x: None });
        }
    }
    out
}

fn positivity_record(run: &PositivityRun) -> Result<Record, CommandError> {
    let start = Instant::now();
    let outcome = run_case(&run.case, run.lambda.as_ref().map(|l| l.1.clone()), run.x.as_ref().map(|x| x.1.clone()))
        .map_err(|e| CommandError::Usage(e.to_string()))?;
    let (checked, cert) = match &outcome {
        CaseOutcome::Feasibility { verdict, rechecked, .. } => {
            let ok = match verdict {
                FeasibilityVerdict::Infeasible(_) => *rechecked,
                FeasibilityVerdict::Feasible(_) => true,
            };
            (ok, certs::positivity(verdict, *rechecked))
        }
        CaseOutcome::Family(r) => {
            let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
            let samples = sample_form(&r.induced, FAMILY_SAMPLES, &mut rng);
            // exact minors and the floating oracle must agree on definiteness
            let ok = match r.verdict {
                FamilyVerdict::Polarized => r.positive_definite && samples.positive == samples.samples,
                _ => true,
            };
            (ok, certs::family(r, &samples))
        }
    };
    Ok(Record::new(run.case_id(), outcome.status(), "positivity", checked, cert).timed(start))
}

pub fn positivity(runs: &[PositivityRun], complete: bool) -> Result<Section, CommandError> {
    let records = runs.par_iter().map(positivity_record).collect::<Result<Vec<_>, _>>()?;
    Ok(Section { name: "positivity", records, complete })
}

/// All (p, n) with 0 ≤ p ≤ n ≤ 4.
pub fn default_gross_degrees() -> Vec<(i64, i64)> {
    (0..=4).flat_map(|n| (0..=n).map(move |p| (p, n))).collect()
}

pub fn gross(degrees: &[(i64, i64)], complete: bool) -> Result<Section, CommandError> {
    let records = degrees
        .iter()
        .map(|&(p, n)| {
            let start = Instant::now();
            let r = gross_report(p, n).map_err(|e| CommandError::Usage(e.to_string()))?;
            let mut verdict = format!("TRDEG_GE_{}", r.trdeg_lower_bound);
            match r.twisted {
                Some(true) => verdict.push_str("_TWISTED"),
                Some(false) => verdict.push_str("_UNTWISTED"),
                None => {}
            }
            let cert = json!({
                "entries": r.entries,
                "exponents": r.exponents,
                "trdeg_lower_bound": r.trdeg_lower_bound,
                "twisted": r.twisted,
            });
            Ok(Record::new(format!("gross[p={p},n={n}]"), verdict, "gross-periods", true, cert).timed(start))
        })
        .collect::<Result<Vec<_>, CommandError>>()?;
    Ok(Section { name: "gross-periods", records, complete })
}
