//! Command-line front end.  Each invocation runs one command — invariant
//! queries, membership and witness checks, the pair criterion, closure
//! audits, local cohomology, or a bundled scenario — and exits with a code
//! a harness can assert on without parsing text:
//!
//! * 0  — command succeeded and the verdict is decisive
//! * 2  — unreadable input: bad flags, malformed JSON, unknown scenario
//! * 3  — well-formed input describing an invalid object, or a demand the
//!        object cannot meet (witness of a non-member, ring mismatch)
//! * 10 — the question was understood but left undecided
//! * 11 — a refutation, violation, or failed scenario step, with certificate
//!
//! `--json` switches every report to JSON with stable key order; output is
//! byte-identical across runs for the same inputs and `--seed`.

use crate::fpmod::{ass_primes, support as fp_support};
use crate::jsonio::{self, JsonError, ModuleInput};
use crate::lococo::{local_cohomology_fp, local_cohomology_sym, LocoError};
use crate::rings::RingSpec;
use crate::scenario;
use crate::serrecat::{
    closure_audit, member_fp, member_sym, serre_criterion, witness_fp, witness_sym, CatError,
    CategoryDescriptor, CriterionOutcome, Decision, MembershipVerdict,
};
use crate::symmod::support as sym_support;
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "extcat",
    version,
    about = "Exact module arithmetic over Z and its localizations: canonical forms, \
             extension subcategories, membership certificates, and closure tests."
)]
struct Cli {
    /// Ring for descriptors without a module file: Z or Z_(p).
    #[arg(long, global = true)]
    ring: Option<String>,

    /// Seed for randomized audits.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Work bound for searches, audits, and scenario steps.
    #[arg(long, global = true, default_value_t = 1000)]
    budget: usize,

    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form, support, and associated primes of a module file.
    Info { file: PathBuf },
    /// Decide whether the module lies in a subcategory.
    Member { file: PathBuf, descriptor: String },
    /// Produce the validated short exact sequence behind a membership.
    Witness { file: PathBuf, descriptor: String },
    /// Test whether extensions of the left category by the right stay closed.
    Criterion { left: String, right: String },
    /// Sample maps and extensions looking for closure violations.
    Audit { descriptor: String },
    /// Local cohomology at the maximal ideal of a localized ring.
    Lococo {
        #[command(subcommand)]
        action: LococoAction,
    },
    /// Replay the bundled worked examples.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
}

#[derive(Subcommand)]
enum LococoAction {
    /// Compute both cohomology modules of a module file.
    Compute {
        #[arg(long)]
        module: PathBuf,
    },
}

#[derive(Subcommand)]
enum ScenarioAction {
    /// List the bundled scenarios.
    List,
    /// Run one scenario and report every step.
    Run { name: String },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        let code = match &e {
            JsonError::Syntax(_) => 2,
            JsonError::Invalid(_) => 3,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CatError> for Failure {
    fn from(e: CatError) -> Self {
        let code = match &e {
            CatError::Parse(_) | CatError::TooDeep(_) => 2,
            CatError::UndecidedMembership(_) | CatError::NoWitness(_) => 10,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<LocoError> for Failure {
    fn from(e: LocoError) -> Self {
        match e {
            LocoError::Cat(inner) => inner.into(),
            other => Failure::new(3, other.to_string()),
        }
    }
}

fn read_module(path: &Path) -> Result<ModuleInput, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
    Ok(jsonio::parse_module_str(&text)?)
}

/// The ring of a loaded file wins; an explicit flag may only agree with it.
fn resolve_ring(flag: &Option<String>, file_ring: Option<RingSpec>) -> Result<RingSpec, Failure> {
    let flagged = match flag {
        Some(text) => {
            Some(RingSpec::parse(text).map_err(|e| Failure::new(2, format!("--ring: {e}")))?)
        }
        None => None,
    };
    match (file_ring, flagged) {
        (Some(file), Some(flag)) if file != flag => Err(Failure::new(
            3,
            format!("ring mismatch: module file uses {file}, --ring says {flag}"),
        )),
        (Some(file), _) => Ok(file),
        (None, Some(flag)) => Ok(flag),
        (None, None) => Ok(RingSpec::Integers),
    }
}

fn print_verdict(v: &MembershipVerdict, json: bool) -> i32 {
    if json {
        print!("{}", jsonio::render(&jsonio::verdict_value(v)));
    } else {
        println!("decision: {}", v.decision);
        if let Some(w) = &v.witness {
            println!("witness: {w}");
        }
        if let Some(note) = &v.note {
            println!("note: {note}");
        }
    }
    match v.decision {
        Decision::Member | Decision::NonMember => 0,
        Decision::Undecided => 10,
    }
}

fn cmd_info(cli: &Cli, file: &Path) -> Result<i32, Failure> {
    let input = read_module(file)?;
    resolve_ring(&cli.ring, Some(input.ring()))?;
    if cli.json {
        print!("{}", jsonio::render(&jsonio::info_value(&input)));
        return Ok(0);
    }
    match &input {
        ModuleInput::Fp(m) => {
            println!("module: {m}");
            println!("ring: {}", m.ring());
            let ass: Vec<String> = ass_primes(m).iter().map(|p| p.to_string()).collect();
            println!(
                "rank {}, factors {:?}, supp {}, ass {{{}}}",
                m.rank(),
                m.factors(),
                fp_support(m),
                ass.join(",")
            );
        }
        ModuleInput::Sym(m) => {
            let yn = |b: bool| if b { "yes" } else { "no" };
            println!("module: {m}");
            println!("ring: {}", m.ring());
            println!(
                "artinian: {}, fg: {}, torsion: {}",
                yn(m.is_artinian()),
                yn(m.is_fg()),
                yn(m.is_torsion())
            );
            println!("support: {}", sym_support(m));
        }
    }
    Ok(0)
}

fn cmd_member(cli: &Cli, file: &Path, descriptor: &str) -> Result<i32, Failure> {
    let input = read_module(file)?;
    let ring = resolve_ring(&cli.ring, Some(input.ring()))?;
    let c = CategoryDescriptor::parse(descriptor, ring)?;
    let verdict = match &input {
        ModuleInput::Fp(m) => member_fp(m, &c)?,
        ModuleInput::Sym(m) => member_sym(m, &c)?,
    };
    Ok(print_verdict(&verdict, cli.json))
}

fn cmd_witness(cli: &Cli, file: &Path, descriptor: &str) -> Result<i32, Failure> {
    let input = read_module(file)?;
    let ring = resolve_ring(&cli.ring, Some(input.ring()))?;
    let c = CategoryDescriptor::parse(descriptor, ring)?;
    let witness = match &input {
        ModuleInput::Fp(m) => witness_fp(m, &c)?,
        ModuleInput::Sym(m) => witness_sym(m, &c)?,
    };
    if cli.json {
        print!("{}", jsonio::render(&jsonio::witness_value(&witness)));
    } else {
        println!("{witness}");
    }
    Ok(0)
}

fn cmd_criterion(cli: &Cli, left: &str, right: &str) -> Result<i32, Failure> {
    let ring = resolve_ring(&cli.ring, None)?;
    let c1 = CategoryDescriptor::parse(left, ring)?;
    let c2 = CategoryDescriptor::parse(right, ring)?;
    let outcome = serre_criterion(ring, &c1, &c2, cli.budget)?;
    if cli.json {
        print!("{}", jsonio::render(&jsonio::criterion_value(&outcome)));
    }
    Ok(match outcome {
        CriterionOutcome::Confirmed { reason } => {
            if !cli.json {
                println!("confirmed: {reason}");
            }
            0
        }
        CriterionOutcome::Refuted { module, witness } => {
            if !cli.json {
                println!("refuted by {module}");
                if let Some(w) = &witness {
                    println!("certificate: {w}");
                }
            }
            11
        }
        CriterionOutcome::Exhausted { tested } => {
            if !cli.json {
                println!("undecided: {tested} candidates survived every probe");
            }
            10
        }
    })
}

fn cmd_audit(cli: &Cli, descriptor: &str) -> Result<i32, Failure> {
    let ring = resolve_ring(&cli.ring, None)?;
    let c = CategoryDescriptor::parse(descriptor, ring)?;
    let report = closure_audit(ring, &c, cli.budget, cli.seed)?;
    if cli.json {
        print!("{}", jsonio::render(&jsonio::audit_value(&report)));
    } else if report.clean() {
        println!("clean: {} samples of {}", report.samples, report.category);
    } else {
        println!("violations in {}:", report.category);
        for v in &report.violations {
            println!("  {v}");
        }
    }
    Ok(if report.clean() { 0 } else { 11 })
}

fn cmd_lococo(cli: &Cli, file: &Path) -> Result<i32, Failure> {
    let input = read_module(file)?;
    resolve_ring(&cli.ring, Some(input.ring()))?;
    let result = match &input {
        ModuleInput::Fp(m) => local_cohomology_fp(m)?,
        ModuleInput::Sym(m) => local_cohomology_sym(m)?,
    };
    if cli.json {
        print!("{}", jsonio::render(&jsonio::lococo_value(&input, &result)));
    } else {
        println!("h0: {}", result.h0);
        println!("h1: {}", result.h1);
        println!("dim: {}", result.dim_input);
    }
    Ok(0)
}

fn cmd_scenario(cli: &Cli, action: &ScenarioAction) -> Result<i32, Failure> {
    match action {
        ScenarioAction::List => {
            for s in scenario::bundled() {
                println!("{} — {}", s.name, s.title);
            }
            Ok(0)
        }
        ScenarioAction::Run { name } => {
            let s = scenario::find(name)
                .ok_or_else(|| Failure::new(2, format!("unknown scenario: {name}")))?;
            let report = scenario::run(&s, cli.budget, cli.seed)?;
            if cli.json {
                print!("{}", jsonio::render(&jsonio::scenario_value(&report)));
            } else {
                println!("{} — {}", s.name, s.title);
                for step in &report.steps {
                    let tag = if step.passed { "ok  " } else { "FAIL" };
                    println!("[{tag}] {} — {}", step.description, step.detail);
                }
            }
            Ok(if report.passed() { 0 } else { 11 })
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Info { file } => cmd_info(cli, file),
        Command::Member { file, descriptor } => cmd_member(cli, file, descriptor),
        Command::Witness { file, descriptor } => cmd_witness(cli, file, descriptor),
        Command::Criterion { left, right } => cmd_criterion(cli, left, right),
        Command::Audit { descriptor } => cmd_audit(cli, descriptor),
        Command::Lococo { action: LococoAction::Compute { module } } => cmd_lococo(cli, module),
        Command::Scenario { action } => cmd_scenario(cli, action),
    }
}

/// Entry point for the binary: parses arguments, runs one command, and
/// returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_grammar_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ring_resolution_prefers_the_file() {
        let z2 = RingSpec::localized_at(2).unwrap();
        let r = resolve_ring(&Some("Z_(2)".into()), Some(z2)).unwrap();
        assert_eq!(r, z2);
        let clash = resolve_ring(&Some("Z".into()), Some(z2));
        assert_eq!(clash.err().map(|f| f.code), Some(3));
        let flag_only = resolve_ring(&Some("Z_(3)".into()), None).unwrap();
        assert_eq!(flag_only, RingSpec::localized_at(3).unwrap());
        let default = resolve_ring(&None, None).unwrap();
        assert_eq!(default, RingSpec::Integers);
    }

    #[test]
    fn failure_codes_follow_the_contract() {
        let syntax: Failure = JsonError::Syntax("x".into()).into();
        assert_eq!(syntax.code, 2);
        let invalid: Failure = JsonError::Invalid("x".into()).into();
        assert_eq!(invalid.code, 3);
        let undecided: Failure = CatError::UndecidedMembership("x".into()).into();
        assert_eq!(undecided.code, 10);
        let nonmember: Failure = CatError::NotMember.into();
        assert_eq!(nonmember.code, 3);
        let parse: Failure = CatError::Parse("x".into()).into();
        assert_eq!(parse.code, 2);
    }
}
