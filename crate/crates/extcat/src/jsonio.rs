//! JSON ingestion and report shapes for the command-line tools: module
//! files, canonical forms, certificates, and verdicts.  All emitted objects
//! key their fields through ordered maps, so equal inputs produce
//! byte-identical output.
//!
//! Module files come in two shapes, told apart by their payload key:
//!
//! ```json
//! {"ring":"Z","relations":[[2,0],[0,3]]}
//! {"ring":"Z_(2)","atoms":[["Free",1],["Prufer",2,1],["Rationals",1]]}
//! ```
//!
//! Atom rows list the constructor name, its parameters, and a multiplicity:
//! `["Cyclic",p,k,mult]`, `["Prufer",p,mult]`, `["Free",mult]`,
//! `["Rationals",mult]`.

use crate::fpmod::{ass_primes, smith_normalize, support as fp_support, FpModule, Presentation};
use crate::hom::ModuleHom;
use crate::lococo::LocalCohomologyResult;
use crate::matrix::IntMat;
use crate::rings::{Maximals, RingSpec, SpclSet};
use crate::scenario::ScenarioReport;
use crate::serrecat::{AuditReport, AuditViolation, CriterionOutcome, MembershipVerdict, Witness};
use crate::sesalg::Ses;
use crate::symmod::{predicate, support, Atom, Predicate, SymEnd, SymModule, SymSes};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum JsonError {
    /// Structural problems: not JSON, wrong shapes, missing keys.
    #[error("malformed input: {0}")]
    Syntax(String),
    /// Well-formed JSON describing an invalid mathematical object.
    #[error("invalid object: {0}")]
    Invalid(String),
}

fn syntax(msg: impl Into<String>) -> JsonError {
    JsonError::Syntax(msg.into())
}

fn invalid(msg: impl ToString) -> JsonError {
    JsonError::Invalid(msg.to_string())
}

/// A module read from a file: either a presentation or a symbolic sum.
#[derive(Clone, Debug)]
pub enum ModuleInput {
    Fp(FpModule),
    Sym(SymModule),
}

impl ModuleInput {
    pub fn ring(&self) -> RingSpec {
        match self {
            ModuleInput::Fp(m) => m.ring(),
            ModuleInput::Sym(m) => m.ring(),
        }
    }
}

pub fn parse_module_str(text: &str) -> Result<ModuleInput, JsonError> {
    let value: Value = serde_json::from_str(text).map_err(|e| syntax(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| syntax("expected a JSON object"))?;
    let ring_text = obj
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| syntax("missing string field `ring`"))?;
    let ring = RingSpec::parse(ring_text).map_err(invalid)?;

    if let Some(rel) = obj.get("relations") {
        let rows_value = rel.as_array().ok_or_else(|| syntax("`relations` must be an array"))?;
        let mut rows = Vec::with_capacity(rows_value.len());
        for row in rows_value {
            let entries = row
                .as_array()
                .ok_or_else(|| syntax("each relation must be an array of integers"))?
                .iter()
                .map(|e| e.as_i64().ok_or_else(|| syntax("relation entries must be integers")))
                .collect::<Result<Vec<i64>, _>>()?;
            rows.push(entries);
        }
        let declared = match obj.get("generators") {
            None => None,
            Some(g) => Some(
                g.as_u64().ok_or_else(|| syntax("`generators` must be a count"))? as usize,
            ),
        };
        let pres = if rows.is_empty() {
            Presentation::from_matrix(ring, IntMat::zero(0, declared.unwrap_or(0)))
        } else {
            let pres = Presentation::new(ring, rows).map_err(invalid)?;
            if let Some(d) = declared {
                if d != pres.generators() {
                    return Err(invalid(format!(
                        "declared {d} generators but relations have {} columns",
                        pres.generators()
                    )));
                }
            }
            pres
        };
        return Ok(ModuleInput::Fp(smith_normalize(&pres)));
    }

    if let Some(atoms) = obj.get("atoms") {
        let rows = atoms.as_array().ok_or_else(|| syntax("`atoms` must be an array"))?;
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            parsed.push(atom_from_value(row)?);
        }
        return Ok(ModuleInput::Sym(SymModule::new(ring, parsed).map_err(invalid)?));
    }

    Err(syntax("module files need either `relations` or `atoms`"))
}

fn atom_from_value(v: &Value) -> Result<(Atom, usize), JsonError> {
    let arr = v.as_array().ok_or_else(|| syntax("each atom must be an array"))?;
    let name = arr
        .first()
        .and_then(Value::as_str)
        .ok_or_else(|| syntax("atom rows start with the constructor name"))?;
    let nums: Vec<u64> = arr[1..]
        .iter()
        .map(|e| e.as_u64().ok_or_else(|| syntax("atom parameters must be nonnegative integers")))
        .collect::<Result<_, _>>()?;
    match (name, nums.as_slice()) {
        ("Free", [mult]) => Ok((Atom::Free, *mult as usize)),
        ("Rationals", [mult]) => Ok((Atom::Rationals, *mult as usize)),
        ("Prufer", [p, mult]) => Ok((Atom::Prufer(*p), *mult as usize)),
        ("Cyclic", [p, k, mult]) => {
            let k = u32::try_from(*k).map_err(|_| invalid("cyclic exponent out of range"))?;
            Ok((Atom::Cyclic(*p, k), *mult as usize))
        }
        _ => Err(syntax(format!("unrecognized atom row for `{name}`"))),
    }
}

/// Canonical form of a presentation: `{"rank":0,"factors":[6]}`.
pub fn canonical_value(m: &FpModule) -> Value {
    json!({ "rank": m.rank(), "factors": m.factors() })
}

pub fn atoms_value(m: &SymModule) -> Value {
    let rows: Vec<Value> = m
        .atoms()
        .iter()
        .map(|(atom, &mult)| match atom {
            Atom::Free => json!(["Free", mult]),
            Atom::Cyclic(p, k) => json!(["Cyclic", p, k, mult]),
            Atom::Prufer(p) => json!(["Prufer", p, mult]),
            Atom::Rationals => json!(["Rationals", mult]),
        })
        .collect();
    Value::Array(rows)
}

pub fn sym_value(m: &SymModule) -> Value {
    json!({ "ring": m.ring().to_string(), "atoms": atoms_value(m) })
}

pub fn fp_value(m: &FpModule) -> Value {
    json!({ "ring": m.ring().to_string(), "rank": m.rank(), "factors": m.factors() })
}

pub fn spcl_value(w: &SpclSet) -> Value {
    let maximals = match w.maximals() {
        Maximals::All => json!("all"),
        Maximals::Finite(set) => json!(set),
    };
    json!({ "generic": w.contains_generic(), "maximals": maximals })
}

pub fn module_value(input: &ModuleInput) -> Value {
    match input {
        ModuleInput::Fp(m) => json!({
            "kind": "presentation",
            "ring": m.ring().to_string(),
            "canonical": canonical_value(m),
        }),
        ModuleInput::Sym(m) => json!({
            "kind": "symbolic",
            "ring": m.ring().to_string(),
            "atoms": atoms_value(m),
        }),
    }
}

/// Invariants shown by the info command.
pub fn info_value(input: &ModuleInput) -> Value {
    match input {
        ModuleInput::Fp(m) => {
            let ass: Vec<String> = ass_primes(m).iter().map(|p| p.to_string()).collect();
            json!({
                "kind": "presentation",
                "ring": m.ring().to_string(),
                "canonical": canonical_value(m),
                "support": spcl_value(&fp_support(m)),
                "ass": ass,
            })
        }
        ModuleInput::Sym(m) => json!({
            "kind": "symbolic",
            "ring": m.ring().to_string(),
            "atoms": atoms_value(m),
            "fg": predicate(m, Predicate::Fg),
            "artinian": predicate(m, Predicate::Artinian),
            "torsion": predicate(m, Predicate::Torsion),
            "support": support(m).to_string(),
        }),
    }
}

fn hom_rows(h: &ModuleHom) -> Value {
    json!(h.matrix().rows_vec())
}

pub fn ses_value(s: &Ses) -> Value {
    json!({
        "type": "concrete",
        "left": fp_value(s.left()),
        "middle": fp_value(s.middle()),
        "right": fp_value(s.right()),
        "inject": hom_rows(s.inject()),
        "project": hom_rows(s.project()),
    })
}

/// Rebuilds and revalidates a concrete certificate; failure of the
/// exactness checks surfaces as [`JsonError::Invalid`].
pub fn parse_ses_value(v: &Value) -> Result<Ses, JsonError> {
    let obj = v.as_object().ok_or_else(|| syntax("certificate must be an object"))?;
    if obj.get("type").and_then(Value::as_str) != Some("concrete") {
        return Err(syntax("expected a concrete certificate"));
    }
    let module = |key: &str| -> Result<FpModule, JsonError> {
        let m = obj.get(key).ok_or_else(|| syntax(format!("missing `{key}`")))?;
        let ring = RingSpec::parse(
            m.get("ring").and_then(Value::as_str).ok_or_else(|| syntax("missing ring"))?,
        )
        .map_err(invalid)?;
        let rank = m
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| syntax("missing rank"))? as usize;
        let factors: Vec<i64> = m
            .get("factors")
            .and_then(Value::as_array)
            .ok_or_else(|| syntax("missing factors"))?
            .iter()
            .map(|e| e.as_i64().ok_or_else(|| syntax("factors must be integers")))
            .collect::<Result<_, _>>()?;
        Ok(FpModule::from_parts(ring, rank, factors))
    };
    let rows = |key: &str| -> Result<Vec<Vec<i64>>, JsonError> {
        obj.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| syntax(format!("missing `{key}`")))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| syntax("map rows must be arrays"))?
                    .iter()
                    .map(|e| e.as_i64().ok_or_else(|| syntax("map entries must be integers")))
                    .collect()
            })
            .collect()
    };
    let (left, middle, right) = (module("left")?, module("middle")?, module("right")?);
    let inject = ModuleHom::new(left, middle.clone(), rows("inject")?).map_err(invalid)?;
    let project = ModuleHom::new(middle, right, rows("project")?).map_err(invalid)?;
    Ses::new(inject, project).map_err(invalid)
}

pub fn symses_value(s: &SymSes) -> Value {
    let right = match s.right() {
        SymEnd::Module(m) => sym_value(m),
        SymEnd::TorsionQuotient => json!("torsion-quotient"),
    };
    json!({
        "type": "symbolic",
        "left": sym_value(s.left()),
        "middle": sym_value(s.middle()),
        "right": right,
    })
}

pub fn witness_value(w: &Witness) -> Value {
    match w {
        Witness::Concrete(s) => ses_value(s),
        Witness::Symbolic(s) => symses_value(s),
    }
}

pub fn verdict_value(v: &MembershipVerdict) -> Value {
    json!({
        "decision": v.decision.to_string(),
        "note": v.note,
        "witness": v.witness.as_ref().map(witness_value),
    })
}

pub fn criterion_value(o: &CriterionOutcome) -> Value {
    match o {
        CriterionOutcome::Confirmed { reason } => json!({
            "outcome": "confirmed",
            "reason": reason,
        }),
        CriterionOutcome::Refuted { module, witness } => json!({
            "outcome": "refuted",
            "module": sym_value(module),
            "witness": witness.as_ref().map(witness_value),
        }),
        CriterionOutcome::Exhausted { tested } => json!({
            "outcome": "exhausted",
            "tested": tested,
        }),
    }
}

fn violation_kind(v: &AuditViolation) -> &'static str {
    match v {
        AuditViolation::ExtensionEscape { .. } => "extension-escape",
        AuditViolation::KernelEscape { .. } => "kernel-escape",
        AuditViolation::CokernelEscape { .. } => "cokernel-escape",
        AuditViolation::MiddleEscape { .. } => "middle-escape",
    }
}

pub fn audit_value(r: &AuditReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({ "kind": violation_kind(v), "certificate": v.to_string() }))
        .collect();
    json!({
        "category": r.category,
        "samples": r.samples,
        "clean": r.clean(),
        "violations": violations,
    })
}

pub fn lococo_value(input: &ModuleInput, r: &LocalCohomologyResult) -> Value {
    json!({
        "input": module_value(input),
        "h0": sym_value(&r.h0),
        "h1": sym_value(&r.h1),
        "dim_input": r.dim_input,
        "input_is_zero": r.input_is_zero,
    })
}

pub fn scenario_value(r: &ScenarioReport) -> Value {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| json!({ "step": s.description, "passed": s.passed, "detail": s.detail }))
        .collect();
    json!({ "scenario": r.name, "passed": r.passed(), "steps": steps })
}

/// Pretty string with a trailing newline; map keys are ordered, so output
/// is reproducible byte for byte.
pub fn render(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("values contain no non-string keys");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::serrecat::{member_fp, CategoryDescriptor};

    const Z: RingSpec = RingSpec::Integers;

    #[test]
    fn presentation_files_normalize() {
        let m = parse_module_str(r#"{"ring":"Z","relations":[[2,0],[0,3]]}"#).unwrap();
        let ModuleInput::Fp(m) = m else { panic!() };
        assert_eq!(m, FpModule::cyclic(Z, 6));
        assert_eq!(render(&canonical_value(&m)), "{\n  \"rank\": 0,\n  \"factors\": [\n    6\n  ]\n}\n");

        let free = parse_module_str(r#"{"ring":"Z","generators":2,"relations":[]}"#).unwrap();
        let ModuleInput::Fp(free) = free else { panic!() };
        assert_eq!(free, FpModule::free(Z, 2));
    }

    #[test]
    fn symbolic_files_parse() {
        let text = r#"{"ring":"Z_(2)","atoms":[["Free",1],["Prufer",2,1],["Rationals",1]]}"#;
        let ModuleInput::Sym(m) = parse_module_str(text).unwrap() else { panic!() };
        assert_eq!(m.free_rank(), 1);
        assert_eq!(m.rationals_count(), 1);
        assert_eq!(m.prufer_total(), 1);
        // canonical output reproduces the same atom rows
        assert_eq!(sym_value(&m)["atoms"], serde_json::from_str::<Value>(
            r#"[["Free",1],["Prufer",2,1],["Rationals",1]]"#).unwrap());
    }

    #[test]
    fn structural_and_semantic_errors_are_distinguished() {
        // structure: not an object, missing keys, wrong types
        assert!(matches!(parse_module_str("[1,2]"), Err(JsonError::Syntax(_))));
        assert!(matches!(parse_module_str(r#"{"ring":"Z"}"#), Err(JsonError::Syntax(_))));
        assert!(matches!(
            parse_module_str(r#"{"ring":"Z","relations":[["x"]]}"#),
            Err(JsonError::Syntax(_))
        ));
        // semantics: bad ring, ragged matrix, inadmissible atom
        assert!(matches!(
            parse_module_str(r#"{"ring":"Z_(4)","relations":[]}"#),
            Err(JsonError::Invalid(_))
        ));
        assert!(matches!(
            parse_module_str(r#"{"ring":"Z","relations":[[1,2],[3]]}"#),
            Err(JsonError::Invalid(_))
        ));
        assert!(matches!(
            parse_module_str(r#"{"ring":"Z_(2)","atoms":[["Prufer",3,1]]}"#),
            Err(JsonError::Invalid(_))
        ));
        assert!(matches!(
            parse_module_str(r#"{"ring":"Z","generators":3,"relations":[[2,0]]}"#),
            Err(JsonError::Invalid(_))
        ));
    }

    #[test]
    fn emitted_certificates_revalidate() {
        let m = FpModule::cyclic(Z, 12);
        let c = CategoryDescriptor::parse("ext(supp{2},supp{3})", Z).unwrap();
        let verdict = member_fp(&m, &c).unwrap();
        let Some(w) = &verdict.witness else { panic!("member carries a witness") };
        let value = witness_value(w);
        let back = parse_ses_value(&value).unwrap();
        assert_eq!(back.left(), &FpModule::cyclic(Z, 4));
        assert_eq!(back.right(), &FpModule::cyclic(Z, 3));

        // corrupting the projection breaks revalidation
        let mut bad = value.clone();
        bad["project"] = json!([[0]]);
        assert!(parse_ses_value(&bad).is_err());
    }

    #[test]
    fn rendering_is_deterministic() {
        let text = r#"{"ring":"Z_(2)","atoms":[["Cyclic",2,3,2],["Free",1]]}"#;
        let a = parse_module_str(text).unwrap();
        let b = parse_module_str(text).unwrap();
        assert_eq!(render(&info_value(&a)), render(&info_value(&b)));
    }
}
