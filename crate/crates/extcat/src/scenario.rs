//! Bundled worked examples, written as data: each scenario is a ring plus
//! a list of steps with expected outcomes, and the runner replays them into
//! a pass/fail report.  They capture the headline behaviors end to end —
//! the local counterexample to extension closure, the order asymmetry of
//! torsion/finitely-generated pairs, the always-closed minimax pair, and
//! top local cohomology landing in hull-closed pairs.

use crate::fpmod::FpModule;
use crate::lococo::{local_cohomology_sym, truncation_consistent};
use crate::rings::RingSpec;
use crate::serrecat::{
    closure_audit, member_fp, member_sym, serre_criterion, CatError, CategoryDescriptor,
    CriterionOutcome, Decision, Witness,
};
use crate::symmod::{canonical_ses_r_q_prufer, Atom, SymModule};

#[derive(Clone, Debug)]
pub enum Step {
    /// The divisibility sequence of the localized ring must validate.
    CanonicalSequence,
    MemberSym { module: SymModule, descriptor: String, expect: Decision },
    MemberFp { module: FpModule, descriptor: String, expect: Decision },
    /// The witness for a member must have these exact ends.
    WitnessEnds {
        module: FpModule,
        descriptor: String,
        left: FpModule,
        right: FpModule,
    },
    Criterion { left: String, right: String, expect_confirmed: bool },
    Audit { descriptor: String, expect_clean: bool },
    Cohomology { module: SymModule, h0: SymModule, h1: SymModule },
    /// Multiplication truncations agree with the cohomology split.
    Truncations { module: FpModule, max_level: u32 },
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: &'static str,
    pub title: &'static str,
    pub ring: RingSpec,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug)]
pub struct StepReport {
    pub description: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug)]
pub struct ScenarioReport {
    pub name: String,
    pub steps: Vec<StepReport>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }
}

fn z2() -> RingSpec {
    RingSpec::localized_at(2).unwrap()
}

fn sym(ring: RingSpec, atoms: &[(Atom, usize)]) -> SymModule {
    SymModule::new(ring, atoms.iter().copied()).expect("bundled atoms are valid")
}

/// The four scenarios shipped with the tool.
pub fn bundled() -> Vec<Scenario> {
    let z = RingSpec::Integers;
    let q_local = sym(z2(), &[(Atom::Rationals, 1)]);
    let q_global = sym(z, &[(Atom::Rationals, 1)]);
    vec![
        Scenario {
            name: "example-gorenstein",
            title: "over the localized ring, artinian-then-fg pairs fail extension closure",
            ring: z2(),
            steps: vec![
                Step::CanonicalSequence,
                Step::MemberSym {
                    module: q_local.clone(),
                    descriptor: "ext(fg,artin)".into(),
                    expect: Decision::Member,
                },
                Step::MemberSym {
                    module: q_local.clone(),
                    descriptor: "ext(artin,fg)".into(),
                    expect: Decision::NonMember,
                },
                Step::Criterion {
                    left: "artin".into(),
                    right: "fg".into(),
                    expect_confirmed: false,
                },
                Step::Audit { descriptor: "ext(artin,fg)".into(), expect_clean: false },
            ],
        },
        Scenario {
            name: "example-torsion-asymmetry",
            title: "over the integers, the rationals separate the two orders of (fg, tor)",
            ring: z,
            steps: vec![
                Step::MemberSym {
                    module: q_global.clone(),
                    descriptor: "ext(fg,tor)".into(),
                    expect: Decision::Member,
                },
                Step::MemberSym {
                    module: q_global,
                    descriptor: "ext(tor,fg)".into(),
                    expect: Decision::NonMember,
                },
                Step::WitnessEnds {
                    module: FpModule::cyclic(z, 12),
                    descriptor: "ext(supp{2},supp{3})".into(),
                    left: FpModule::cyclic(z, 4),
                    right: FpModule::cyclic(z, 3),
                },
                Step::Criterion {
                    left: "fg".into(),
                    right: "tor".into(),
                    expect_confirmed: true,
                },
                Step::Criterion {
                    left: "tor".into(),
                    right: "fg".into(),
                    expect_confirmed: false,
                },
            ],
        },
        Scenario {
            name: "minimax-serre",
            title: "fg-then-artinian pairs stay closed over the localized ring",
            ring: z2(),
            steps: vec![
                Step::Criterion {
                    left: "fg".into(),
                    right: "artin".into(),
                    expect_confirmed: true,
                },
                Step::Audit { descriptor: "ext(fg,artin)".into(), expect_clean: true },
                Step::MemberSym {
                    module: sym(z2(), &[(Atom::Free, 1), (Atom::Prufer(2), 1)]),
                    descriptor: "ext(fg,artin)".into(),
                    expect: Decision::Member,
                },
                Step::MemberSym {
                    module: sym(z2(), &[(Atom::Rationals, 1)]),
                    descriptor: "ext(fg,artin)".into(),
                    expect: Decision::Member,
                },
            ],
        },
        Scenario {
            name: "top-local-cohomology",
            title: "degree-one cohomology of a rank-r module is an artinian Prüfer power",
            ring: z2(),
            steps: vec![
                Step::Cohomology {
                    module: sym(z2(), &[(Atom::Free, 2), (Atom::Cyclic(2, 3), 1)]),
                    h0: sym(z2(), &[(Atom::Cyclic(2, 3), 1)]),
                    h1: sym(z2(), &[(Atom::Prufer(2), 2)]),
                },
                Step::Truncations {
                    module: FpModule::from_parts(z2(), 2, [8]),
                    max_level: 8,
                },
                Step::MemberSym {
                    module: sym(z2(), &[(Atom::Prufer(2), 2)]),
                    descriptor: "ext(supp{2},artin)".into(),
                    expect: Decision::Member,
                },
            ],
        },
    ]
}

pub fn find(name: &str) -> Option<Scenario> {
    bundled().into_iter().find(|s| s.name == name)
}

fn describe(step: &Step) -> String {
    match step {
        Step::CanonicalSequence => "canonical sequence 0 -> R -> Q -> Prufer -> 0 validates".into(),
        Step::MemberSym { module, descriptor, expect } => {
            format!("member({module}, {descriptor}) = {expect}")
        }
        Step::MemberFp { module, descriptor, expect } => {
            format!("member({module}, {descriptor}) = {expect}")
        }
        Step::WitnessEnds { module, descriptor, left, right } => {
            format!("witness({module}, {descriptor}) has ends {left} and {right}")
        }
        Step::Criterion { left, right, expect_confirmed: true } => {
            format!("criterion({left}, {right}) confirmed")
        }
        Step::Criterion { left, right, expect_confirmed: false } => {
            format!("criterion({left}, {right}) refuted")
        }
        Step::Audit { descriptor, expect_clean: true } => format!("audit({descriptor}) clean"),
        Step::Audit { descriptor, expect_clean: false } => {
            format!("audit({descriptor}) finds a violation")
        }
        Step::Cohomology { module, .. } => format!("local cohomology of {module}"),
        Step::Truncations { module, max_level } => {
            format!("truncations of {module} up to level {max_level}")
        }
    }
}

fn run_step(
    ring: RingSpec,
    step: &Step,
    budget: usize,
    seed: u64,
) -> Result<(bool, String), CatError> {
    Ok(match step {
        Step::CanonicalSequence => match canonical_ses_r_q_prufer(ring) {
            Ok(ses) => (true, ses.to_string()),
            Err(e) => (false, e.to_string()),
        },
        Step::MemberSym { module, descriptor, expect } => {
            let c = CategoryDescriptor::parse(descriptor, ring)?;
            let v = member_sym(module, &c)?;
            let mut detail = format!("decision {}", v.decision);
            if let Some(w) = &v.witness {
                detail.push_str(&format!(", witness {w}"));
            }
            (v.decision == *expect, detail)
        }
        Step::MemberFp { module, descriptor, expect } => {
            let c = CategoryDescriptor::parse(descriptor, ring)?;
            let v = member_fp(module, &c)?;
            (v.decision == *expect, format!("decision {}", v.decision))
        }
        Step::WitnessEnds { module, descriptor, left, right } => {
            let c = CategoryDescriptor::parse(descriptor, ring)?;
            let v = member_fp(module, &c)?;
            match v.witness {
                Some(Witness::Concrete(ses)) => {
                    let ok = ses.left() == left && ses.right() == right;
                    (ok, ses.to_string())
                }
                _ => (false, format!("no concrete witness, decision {}", v.decision)),
            }
        }
        Step::Criterion { left, right, expect_confirmed } => {
            let c1 = CategoryDescriptor::parse(left, ring)?;
            let c2 = CategoryDescriptor::parse(right, ring)?;
            let out = serre_criterion(ring, &c1, &c2, budget)?;
            match (&out, expect_confirmed) {
                (CriterionOutcome::Confirmed { reason }, true) => (true, reason.clone()),
                (CriterionOutcome::Refuted { module, witness }, false) => {
                    let mut detail = format!("separating module {module}");
                    if let Some(w) = witness {
                        detail.push_str(&format!(", certificate {w}"));
                    }
                    (true, detail)
                }
                _ => (false, format!("{out:?}")),
            }
        }
        Step::Audit { descriptor, expect_clean } => {
            let c = CategoryDescriptor::parse(descriptor, ring)?;
            let report = closure_audit(ring, &c, budget, seed)?;
            let detail = if report.clean() {
                format!("clean after {} samples", report.samples)
            } else {
                report.violations[0].to_string()
            };
            (report.clean() == *expect_clean, detail)
        }
        Step::Cohomology { module, h0, h1 } => match local_cohomology_sym(module) {
            Ok(res) => {
                let ok = &res.h0 == h0 && &res.h1 == h1;
                (ok, format!("h0 = {}, h1 = {}", res.h0, res.h1))
            }
            Err(e) => (false, e.to_string()),
        },
        Step::Truncations { module, max_level } => {
            let mut ok = true;
            for k in 1..=*max_level {
                match truncation_consistent(module, k) {
                    Ok(true) => {}
                    Ok(false) => {
                        ok = false;
                        break;
                    }
                    Err(e) => return Ok((false, e.to_string())),
                }
            }
            (ok, format!("levels 1..={max_level} agree"))
        }
    })
}

pub fn run(scenario: &Scenario, budget: usize, seed: u64) -> Result<ScenarioReport, CatError> {
    let mut steps = Vec::with_capacity(scenario.steps.len());
    for step in &scenario.steps {
        let (passed, detail) = run_step(scenario.ring, step, budget, seed)?;
        steps.push(StepReport { description: describe(step), passed, detail });
    }
    Ok(ScenarioReport { name: scenario.name.to_string(), steps })
}
