//! Principal-ideal local cohomology at the maximal ideal of the localized
//! ring, computed through the length-one complex `0 → M → M[1/p]`, plus the
//! socle condition: if a module equal to its own `p`-power-torsion part has
//! its `p`-socle in a category, the module itself must lie there too.

use crate::fpmod::FpModule;
use crate::oracle::multiplication_profile;
use crate::rings::RingSpec;
use crate::serrecat::{
    member_sym, serre_criterion, CatError, CategoryDescriptor, CriterionOutcome, Decision,
};
use crate::symmod::{gamma_i, socle_wrt, Atom, SymError, SymModule};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum LocoError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Module(#[from] crate::fpmod::ModuleError),
    #[error("local cohomology requires the localized ring, got {0}")]
    RequiresLocalRing(RingSpec),
    #[error("precondition unmet: {0}")]
    Precondition(String),
}

/// Cohomology of a module at the maximal ideal.  Degree zero is the
/// `p`-power-torsion part, degree one the cokernel of the localization
/// map; everything higher vanishes in dimension one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalCohomologyResult {
    pub h0: SymModule,
    pub h1: SymModule,
    /// Krull dimension of the input: 1 with a free summand, else 0.
    pub dim_input: u32,
    /// Dimension is not meaningful for the zero module.
    pub input_is_zero: bool,
}

pub fn local_cohomology_sym(m: &SymModule) -> Result<LocalCohomologyResult, LocoError> {
    let p = m.ring().local_prime().ok_or(LocoError::RequiresLocalRing(m.ring()))?;
    let h0 = gamma_i(m, p as i64)?;
    // cokernel of M → M[1/p], atom by atom: free atoms map R → Q with
    // Prüfer cokernel; rationals map isomorphically; torsion atoms map to 0
    // and contribute nothing in degree one
    let h1 = SymModule::new(m.ring(), [(Atom::Prufer(p), m.free_rank())])?;
    Ok(LocalCohomologyResult {
        h0,
        h1,
        dim_input: if m.free_rank() > 0 { 1 } else { 0 },
        input_is_zero: m.is_zero(),
    })
}

pub fn local_cohomology_fp(m: &FpModule) -> Result<LocalCohomologyResult, LocoError> {
    local_cohomology_sym(&SymModule::from_fp(m))
}

/// Cross-checks both cohomology modules against multiplication by `p^k` on
/// a finitely presented input: the kernel must be the level-`k` socle of
/// the degree-zero part, and the cokernel that socle plus the level-`k`
/// socle of the degree-one part.
pub fn truncation_consistent(m: &FpModule, k: u32) -> Result<bool, LocoError> {
    let result = local_cohomology_fp(m)?;
    let p = m.ring().local_prime().expect("checked above");
    let xk = crate::arith::pow(p, k);
    let (ker, coker) = multiplication_profile(m, xk)?;
    let want_ker = socle_wrt(&result.h0, xk)?;
    let want_coker = socle_wrt(&result.h1, xk)?.direct_sum(&want_ker)?;
    Ok(SymModule::from_fp(&ker) == want_ker && SymModule::from_fp(&coker) == want_coker)
}

/// `Ext¹(R/p, −)` atom by atom: free and cyclic atoms each contribute one
/// copy of the residue field, divisible atoms none.
pub fn ext_against_residue(l: &SymModule) -> Result<SymModule, LocoError> {
    let p = l.ring().local_prime().ok_or(LocoError::RequiresLocalRing(l.ring()))?;
    let count: usize = l
        .atoms()
        .iter()
        .filter(|(a, _)| matches!(a, Atom::Free | Atom::Cyclic(..)))
        .map(|(_, &m)| m)
        .sum();
    Ok(SymModule::new(l.ring(), [(Atom::Cyclic(p, 1), count)])?)
}

/// Every `p`-torsion symbolic module with at most `max_atoms` atoms drawn
/// from cyclic exponents up to four and the Prüfer atom, in deterministic
/// order.
pub fn p_torsion_family(ring: RingSpec, max_atoms: usize) -> Result<Vec<SymModule>, LocoError> {
    let p = ring.local_prime().ok_or(LocoError::RequiresLocalRing(ring))?;
    let alphabet = [
        Atom::Cyclic(p, 1),
        Atom::Cyclic(p, 2),
        Atom::Cyclic(p, 3),
        Atom::Cyclic(p, 4),
        Atom::Prufer(p),
    ];
    let mut out = vec![SymModule::zero(ring)];
    for size in 1..=max_atoms {
        let mut idx = vec![0usize; size];
        'tuples: loop {
            let atoms = idx.iter().map(|&i| (alphabet[i], 1usize));
            out.push(SymModule::new(ring, atoms)?);
            for j in (0..size).rev() {
                if idx[j] + 1 < alphabet.len() {
                    let v = idx[j] + 1;
                    for slot in idx.iter_mut().skip(j) {
                        *slot = v;
                    }
                    continue 'tuples;
                }
            }
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CiViolation {
    pub module: SymModule,
    pub socle: SymModule,
}

#[derive(Debug)]
pub struct CiReport {
    pub category: String,
    /// Family members equal to their own torsion part, hence tested.
    pub checked: usize,
    /// Family members failing the torsion precondition.
    pub skipped: usize,
    pub undecided: usize,
    pub violations: Vec<CiViolation>,
}

impl CiReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tests the socle condition over a family: whenever the `p`-socle of a
/// fully torsion member lies in the category, the member itself must.
pub fn check_ci(c: &CategoryDescriptor, family: &[SymModule]) -> Result<CiReport, LocoError> {
    let mut report = CiReport {
        category: c.to_string(),
        checked: 0,
        skipped: 0,
        undecided: 0,
        violations: Vec::new(),
    };
    for m in family {
        let p = m.ring().local_prime().ok_or(LocoError::RequiresLocalRing(m.ring()))?;
        if &gamma_i(m, p as i64)? != m {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let socle = socle_wrt(m, p as i64)?;
        let socle_in = member_sym(&socle, c)?.decision;
        let module_in = member_sym(m, c)?.decision;
        match (socle_in, module_in) {
            (Decision::Member, Decision::NonMember) => {
                report.violations.push(CiViolation { module: m.clone(), socle });
            }
            (Decision::Undecided, _) | (_, Decision::Undecided) => report.undecided += 1,
            _ => {}
        }
    }
    Ok(report)
}

/// One sampled inclusion `L ⊆ M` with the four-term socle comparison
/// `0 → (0:_L p) → (0:_M p) → (0:_{M/L} p) → Ext¹(R/p, L)` recorded as
/// residue-field dimensions.
#[derive(Clone, Debug)]
pub struct TransferSample {
    pub sub: SymModule,
    pub whole: SymModule,
    pub quotient: SymModule,
    pub socle_sub: SymModule,
    pub socle_whole: SymModule,
    pub socle_quotient: SymModule,
    pub ext_bound: SymModule,
    pub dims_ok: bool,
}

#[derive(Debug)]
pub struct TransferReport {
    pub forward: CiReport,
    pub reversed: CiReport,
    pub samples: Vec<TransferSample>,
    pub consistent: bool,
    pub label: String,
}

/// Verifies, on the bounded torsion family, that the socle condition
/// transfers from the reversed pair to the pair, given that the pair was
/// first confirmed closed.  Each sample reports the connecting four-term
/// comparison and its dimension inequalities.
pub fn ci_transfer_check(
    ring: RingSpec,
    c1: &CategoryDescriptor,
    c2: &CategoryDescriptor,
    budget: usize,
) -> Result<TransferReport, LocoError> {
    match serre_criterion(ring, c1, c2, budget.max(1))? {
        CriterionOutcome::Confirmed { .. } => {}
        other => {
            return Err(LocoError::Precondition(format!(
                "closure of ext({c1},{c2}) was not confirmed: {other:?}"
            )))
        }
    }
    let p = ring.local_prime().ok_or(LocoError::RequiresLocalRing(ring))?;
    let pair = CategoryDescriptor::ext(c1.clone(), c2.clone());
    let reversed = CategoryDescriptor::ext(c2.clone(), c1.clone());
    let family = p_torsion_family(ring, 4)?;
    let reversed_report = check_ci(&reversed, &family)?;
    let forward_report = check_ci(&pair, &family)?;
    let consistent = !reversed_report.passes() || forward_report.passes();

    let small = p_torsion_family(ring, 2)?;
    let mut samples = Vec::new();
    'outer: for l in &small {
        for n in &small {
            if samples.len() >= budget.min(200) {
                break 'outer;
            }
            let m = l.direct_sum(n)?;
            let socle_sub = socle_wrt(l, p as i64)?;
            let socle_whole = socle_wrt(&m, p as i64)?;
            let socle_quotient = socle_wrt(n, p as i64)?;
            let ext_bound = ext_against_residue(l)?;
            let (a, b, c, d) = (
                socle_sub.atom_count(),
                socle_whole.atom_count(),
                socle_quotient.atom_count(),
                ext_bound.atom_count(),
            );
            let dims_ok = b >= a && b - a <= c && c <= b - a + d;
            samples.push(TransferSample {
                sub: l.clone(),
                whole: m,
                quotient: n.clone(),
                socle_sub,
                socle_whole,
                socle_quotient,
                ext_bound,
                dims_ok,
            });
        }
    }

    let label = if consistent && samples.iter().all(|s| s.dims_ok) {
        "consistent within budget".to_string()
    } else {
        "transfer implication violated".to_string()
    };
    Ok(TransferReport {
        forward: forward_report,
        reversed: reversed_report,
        samples,
        consistent,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod;
    use crate::rings::SpclSet;

    fn z2() -> RingSpec {
        RingSpec::localized_at(2).unwrap()
    }

    fn sym(atoms: &[(Atom, usize)]) -> SymModule {
        SymModule::new(z2(), atoms.iter().copied()).unwrap()
    }

    #[test]
    fn cohomology_of_basic_atoms() {
        let free = local_cohomology_sym(&sym(&[(Atom::Free, 1)])).unwrap();
        assert!(free.h0.is_zero());
        assert_eq!(free.h1, sym(&[(Atom::Prufer(2), 1)]));
        assert_eq!(free.dim_input, 1);

        let cyc = local_cohomology_sym(&sym(&[(Atom::Cyclic(2, 3), 1)])).unwrap();
        assert_eq!(cyc.h0, sym(&[(Atom::Cyclic(2, 3), 1)]));
        assert!(cyc.h1.is_zero());
        assert_eq!(cyc.dim_input, 0);

        let pruf = local_cohomology_sym(&sym(&[(Atom::Prufer(2), 1)])).unwrap();
        assert_eq!(pruf.h0, sym(&[(Atom::Prufer(2), 1)]));
        assert!(pruf.h1.is_zero());

        // the rationals are already local and divisible: both degrees vanish
        let q = local_cohomology_sym(&sym(&[(Atom::Rationals, 1)])).unwrap();
        assert!(q.h0.is_zero() && q.h1.is_zero());

        let zero = local_cohomology_sym(&SymModule::zero(z2())).unwrap();
        assert!(zero.input_is_zero);
    }

    #[test]
    fn cohomology_is_additive_over_atoms() {
        let m = sym(&[(Atom::Free, 2), (Atom::Cyclic(2, 3), 1)]);
        let res = local_cohomology_sym(&m).unwrap();
        assert_eq!(res.h0, sym(&[(Atom::Cyclic(2, 3), 1)]));
        assert_eq!(res.h1, sym(&[(Atom::Prufer(2), 2)]));
        assert_eq!(res.dim_input, 1);
    }

    #[test]
    fn integer_ring_is_rejected() {
        let m = SymModule::atom(RingSpec::Integers, Atom::Free).unwrap();
        assert!(matches!(
            local_cohomology_sym(&m),
            Err(LocoError::RequiresLocalRing(_))
        ));
    }

    #[test]
    fn truncations_confirm_the_length_one_complex() {
        let modules = [
            FpModule::free(z2(), 1),
            FpModule::from_parts(z2(), 2, [8]),
            FpModule::from_parts(z2(), 1, [2, 4]),
            FpModule::cyclic(z2(), 4),
            FpModule::zero(z2()),
        ];
        for m in &modules {
            for k in 1..=8 {
                assert!(truncation_consistent(m, k).unwrap(), "module {m}, level {k}");
            }
        }
    }

    #[test]
    fn residue_ext_matches_the_presentation_computation() {
        let l = FpModule::from_parts(z2(), 1, [2, 8]);
        let symbolic = ext_against_residue(&SymModule::from_fp(&l)).unwrap();
        assert_eq!(symbolic, sym(&[(Atom::Cyclic(2, 1), 3)]));

        let rp = FpModule::cyclic(z2(), 2);
        let concrete = fpmod::ext_group(&rp, &l).unwrap();
        assert_eq!(SymModule::from_fp(&concrete), symbolic);
    }

    #[test]
    fn residue_ext_stays_in_the_support_window() {
        // Ext¹(R/p, −) of a window-supported module stays in the window
        let w = SpclSet::of_maximals(z2(), [2]).unwrap();
        let c = CategoryDescriptor::Supp(w);
        for factors in [vec![2], vec![4, 8], vec![2, 2, 16]] {
            let m = FpModule::from_parts(z2(), 0, factors);
            let e = fpmod::ext_group(&FpModule::cyclic(z2(), 2), &m).unwrap();
            let v = member_sym(&SymModule::from_fp(&e), &c).unwrap();
            assert_eq!(v.decision, Decision::Member);
        }
    }

    #[test]
    fn socle_condition_holds_for_artinian_family() {
        let family = p_torsion_family(z2(), 4).unwrap();
        let report = check_ci(&CategoryDescriptor::Artin, &family).unwrap();
        assert!(report.passes());
        assert_eq!(report.skipped, 0, "the family is fully torsion");
        assert_eq!(report.checked, family.len());
        assert_eq!(report.undecided, 0);
    }

    #[test]
    fn socle_condition_skips_non_torsion_members() {
        let family = vec![
            sym(&[(Atom::Rationals, 1)]),
            sym(&[(Atom::Free, 1)]),
            sym(&[(Atom::Cyclic(2, 1), 1)]),
        ];
        let report = check_ci(&CategoryDescriptor::Artin, &family).unwrap();
        assert_eq!(report.skipped, 2);
        assert_eq!(report.checked, 1);
        assert!(report.passes());
    }

    #[test]
    fn transfer_for_the_minimax_pair() {
        let report =
            ci_transfer_check(z2(), &CategoryDescriptor::Fg, &CategoryDescriptor::Artin, 100)
                .unwrap();
        assert!(report.consistent);
        assert!(report.forward.passes() && report.reversed.passes());
        assert!(report.samples.iter().all(|s| s.dims_ok));
        assert_eq!(report.label, "consistent within budget");
    }

    #[test]
    fn transfer_demands_a_confirmed_pair() {
        let out = ci_transfer_check(z2(), &CategoryDescriptor::Artin, &CategoryDescriptor::Fg, 50);
        assert!(matches!(out, Err(LocoError::Precondition(_))));
    }

    #[test]
    fn top_cohomology_lands_in_hull_closed_pairs() {
        // positive-rank input: degree one is a Prüfer power, artinian, so it
        // belongs to ext(S, artin) for any supported left class S
        let m = FpModule::from_parts(z2(), 3, [2, 4]);
        let res = local_cohomology_fp(&m).unwrap();
        assert_eq!(res.h1, sym(&[(Atom::Prufer(2), 3)]));
        for s in ["supp{2}", "fg", "artin", "tor"] {
            let c = CategoryDescriptor::parse(&format!("ext({s},artin)"), z2()).unwrap();
            let v = member_sym(&res.h1, &c).unwrap();
            assert_eq!(v.decision, Decision::Member, "left class {s}");
        }
    }
}
