//! Release gate: every check the tool promises is pinned here, one test per
//! promise, each ending in a single pass line with its runtime.  The checks
//! are cross-validated against independent oracles (elementary-operation
//! and minors-based canonical forms, literal truncation limits) rather than
//! against the functions under test.

use extcat::fpmod::{ass_primes, gamma_w, support as fp_support, FpModule};
use extcat::lococo::{check_ci, local_cohomology_fp, p_torsion_family, truncation_consistent};
use extcat::matrix::{smith, smith_diagonal, IntMat};
use extcat::oracle::{
    elementary_invariant_factors, finite_modules_of_order, for_each_matrix,
    minors_invariant_factors, nonzero_chain,
};
use extcat::rings::{RingSpec, SpclSet};
use extcat::serrecat::{
    member_fp, member_sym, serre_criterion, CategoryDescriptor, CriterionOutcome, Decision,
    Witness,
};
use extcat::symmod::{injective_hull, support as sym_support, Atom, SymEnd, SymModule};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

fn z() -> RingSpec {
    RingSpec::Integers
}

fn z2() -> RingSpec {
    RingSpec::localized_at(2).unwrap()
}

fn random_fp(rng: &mut ChaCha8Rng, ring: RingSpec) -> FpModule {
    let rank = rng.gen_range(0..=2);
    let n = rng.gen_range(0..=3);
    let pool = [2i64, 3, 4, 5, 7, 8, 9, 12, 16, 25, 27, 36, 49];
    let orders: Vec<i64> = (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
    FpModule::from_parts(ring, rank, orders)
}

fn random_window(rng: &mut ChaCha8Rng, ring: RingSpec) -> SpclSet {
    if ring.is_local() {
        match rng.gen_range(0..3) {
            0 => SpclSet::empty(ring),
            1 => SpclSet::all_maximals(ring),
            _ => SpclSet::full(ring),
        }
    } else {
        match rng.gen_range(0..6) {
            0 => SpclSet::empty(ring),
            1 => SpclSet::all_maximals(ring),
            2 => SpclSet::full(ring),
            _ => {
                let primes = [2u64, 3, 5, 7, 11, 13];
                let picked: Vec<u64> =
                    primes.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
                SpclSet::of_maximals(ring, picked).unwrap()
            }
        }
    }
}

/// Every direct sum of at most `max_atoms` letters from the alphabet,
/// multiplicities counted, zero module included.
fn sym_family(ring: RingSpec, alphabet: &[Atom], max_atoms: usize) -> Vec<SymModule> {
    fn extend(
        ring: RingSpec,
        alphabet: &[Atom],
        start: usize,
        left: usize,
        current: &mut Vec<Atom>,
        out: &mut Vec<SymModule>,
    ) {
        if left == 0 {
            return;
        }
        for i in start..alphabet.len() {
            current.push(alphabet[i]);
            out.push(
                SymModule::new(ring, current.iter().map(|&a| (a, 1)))
                    .expect("alphabet atoms are valid"),
            );
            extend(ring, alphabet, i, left - 1, current, out);
            current.pop();
        }
    }
    let mut out = vec![SymModule::zero(ring)];
    extend(ring, alphabet, 0, max_atoms, &mut Vec::new(), &mut out);
    out
}

fn pass(what: &str, t: Instant) {
    println!("PASS ({:?}) {what}", t.elapsed());
}

#[test]
fn canonical_forms_match_independent_oracles() {
    let t = Instant::now();

    // full enumeration: every shape up to 3x3, entries in [-3, 3]
    let mut enumerated = 0u64;
    for rows in 1..=3usize {
        for cols in 1..=3usize {
            for_each_matrix(rows, cols, 3, |m| {
                let fast = nonzero_chain(&smith_diagonal(m));
                let elementary = elementary_invariant_factors(m);
                assert_eq!(fast, elementary, "oracle split on {:?}", m.rows_vec());
                enumerated += 1;
            });
        }
    }
    let expected: u64 = (1..=3u32)
        .flat_map(|r| (1..=3u32).map(move |c| 7u64.pow(r * c)))
        .sum();
    assert_eq!(enumerated, expected);

    // sampled: at least 10^4 shapes up to 4x4, entries in [-10, 10], with
    // the minors oracle and the recorded transforms as extra referees
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..10_000 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let mat = IntMat::from_rows(
            (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-10..=10)).collect()).collect(),
        );
        let fast = nonzero_chain(&smith_diagonal(&mat));
        assert_eq!(fast, elementary_invariant_factors(&mat));
        assert_eq!(fast, minors_invariant_factors(&mat));
        let s = smith(&mat);
        let replay = &(&s.p * &mat) * &s.q;
        assert_eq!(replay.rows_vec(), s.d.rows_vec());
        let diag: Vec<i64> = (0..s.rank).map(|i| s.d[(i, i)]).collect();
        assert_eq!(diag, fast);
    }

    assert!(t.elapsed() < Duration::from_secs(60), "took {:?}", t.elapsed());
    pass("canonical forms agree with elementary and minors oracles", t);
}

#[test]
fn window_sections_partition_associated_primes() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..1000 {
        let ring = if i % 4 == 3 { z2() } else { z() };
        let m = random_fp(&mut rng, ring);
        let w = random_window(&mut rng, ring);
        let parts = gamma_w(&m, &w).unwrap();
        let inside = ass_primes(&parts.sub);
        let outside = ass_primes(&parts.quotient);
        assert!(
            inside.is_disjoint(&outside),
            "shared associated prime for M = {m}, W = {w}"
        );
        let union: std::collections::BTreeSet<_> = inside.union(&outside).cloned().collect();
        assert_eq!(union, ass_primes(&m), "lost associated prime for M = {m}, W = {w}");
    }
    pass("window sections split the associated primes of 1000 random modules", t);
}

#[test]
fn window_pair_membership_tracks_support_with_witnesses() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut members = 0u32;
    for i in 0..1000 {
        let ring = if i % 5 == 4 { z2() } else { z() };
        let m = random_fp(&mut rng, ring);
        let w1 = random_window(&mut rng, ring);
        let w2 = random_window(&mut rng, ring);
        let c = CategoryDescriptor::ext(
            CategoryDescriptor::Supp(w1.clone()),
            CategoryDescriptor::Supp(w2.clone()),
        );
        let verdict = member_fp(&m, &c).unwrap();
        let expected = fp_support(&m).is_subset_of(&w1.union(&w2).unwrap()).unwrap();
        match verdict.decision {
            Decision::Member => assert!(expected, "false member: {m} in {c}"),
            Decision::NonMember => assert!(!expected, "false rejection: {m} in {c}"),
            Decision::Undecided => panic!("window pairs must decide: {m} in {c}"),
        }
        if verdict.decision == Decision::Member {
            members += 1;
            let Some(Witness::Concrete(ses)) = verdict.witness else {
                panic!("member verdict without a concrete witness: {m} in {c}");
            };
            assert_eq!(ses.middle(), &m);
            assert!(fp_support(ses.left()).is_subset_of(&w1).unwrap());
            assert!(fp_support(ses.right()).is_subset_of(&w2).unwrap());
        }
    }
    assert!(members > 100, "suite too lopsided: only {members} members");
    pass("window-pair membership matches support on 1000 random modules, all members certified", t);
}

#[test]
fn enumerated_middles_stay_supported() {
    let t = Instant::now();
    let w = SpclSet::of_maximals(z(), [2, 3]).unwrap();
    let supported: Vec<u64> = (1..=256u64)
        .filter(|n| {
            let mut m = *n;
            for p in [2u64, 3] {
                while m % p == 0 {
                    m /= p;
                }
            }
            m == 1
        })
        .collect();

    let mut pairs = 0u64;
    for &ns in &supported {
        for &nq in &supported {
            if ns * nq > 256 {
                continue;
            }
            for s in finite_modules_of_order(z(), ns).unwrap() {
                for q in finite_modules_of_order(z(), nq).unwrap() {
                    pairs += 1;
                    for e in extcat::sesalg::enumerate_middles(&q, &s).unwrap() {
                        assert_eq!(e.order(), Some((ns * nq) as u128), "wrong middle order");
                        assert!(
                            fp_support(&e).is_subset_of(&w).unwrap(),
                            "middle {e} escaped the window"
                        );
                    }
                }
            }
        }
    }
    assert!(pairs > 1000, "family too small: {pairs} pairs");
    assert!(t.elapsed() < Duration::from_secs(120), "took {:?}", t.elapsed());
    pass(
        "every extension middle stays in the window over all supported pairs of order <= 256",
        t,
    );
}

#[test]
fn pair_criterion_confirms_and_refutes_the_classified_pairs() {
    let t = Instant::now();
    let confirmed_pairs = [
        ("supp{2}", "supp{3}", z()),
        ("supp{2}", "supp{2,5}", z()),
        ("fg", "artin", z()),
        ("fg", "artin", z2()),
        ("fg", "tor", z()),
        ("fg", "tor", z2()),
    ];
    for (left, right, ring) in confirmed_pairs {
        let c1 = CategoryDescriptor::parse(left, ring).unwrap();
        let c2 = CategoryDescriptor::parse(right, ring).unwrap();
        match serre_criterion(ring, &c1, &c2, 1000).unwrap() {
            CriterionOutcome::Confirmed { .. } => {}
            other => panic!("({left}, {right}) over {ring} should confirm, got {other:?}"),
        }
    }

    let refute = Instant::now();
    let artin = CategoryDescriptor::parse("artin", z2()).unwrap();
    let fg = CategoryDescriptor::parse("fg", z2()).unwrap();
    match serre_criterion(z2(), &artin, &fg, 1000).unwrap() {
        CriterionOutcome::Refuted { module, witness } => {
            assert_eq!(module, SymModule::atom(z2(), Atom::Rationals).unwrap());
            let Some(Witness::Symbolic(ses)) = witness else {
                panic!("refutation must carry the reversed-pair certificate");
            };
            assert_eq!(ses.left(), &SymModule::atom(z2(), Atom::Free).unwrap());
            assert_eq!(ses.middle(), &SymModule::atom(z2(), Atom::Rationals).unwrap());
            let SymEnd::Module(right) = ses.right() else {
                panic!("certificate quotient must be explicit");
            };
            assert_eq!(right, &SymModule::atom(z2(), Atom::Prufer(2)).unwrap());
        }
        other => panic!("(artin, fg) over the local ring should refute, got {other:?}"),
    }
    assert!(refute.elapsed() < Duration::from_secs(5), "refutation took {:?}", refute.elapsed());
    pass(
        "criterion confirms the closed pairs and refutes (artin, fg) locally via 0 -> R -> Q -> Prufer -> 0",
        t,
    );
}

#[test]
fn rational_membership_asymmetry_and_the_dimension_rule() {
    let t = Instant::now();
    let q = SymModule::atom(z(), Atom::Rationals).unwrap();
    let fg_tor = CategoryDescriptor::parse("ext(fg,tor)", z()).unwrap();
    let tor_fg = CategoryDescriptor::parse("ext(tor,fg)", z()).unwrap();
    assert_eq!(member_sym(&q, &fg_tor).unwrap().decision, Decision::Member);
    assert_eq!(member_sym(&q, &tor_fg).unwrap().decision, Decision::NonMember);

    let mut alphabet = vec![Atom::Free, Atom::Rationals];
    for p in [2u64, 3, 5, 7] {
        alphabet.push(Atom::Prufer(p));
        for k in 1..=4 {
            alphabet.push(Atom::Cyclic(p, k));
        }
    }
    let family = sym_family(z(), &alphabet, 6);
    for m in &family {
        assert_eq!(m.dim_q(), m.free_rank() + m.rationals_count(), "dimension formula");
        assert_eq!(
            member_sym(m, &fg_tor).unwrap().decision,
            Decision::Member,
            "{m} must embed a lattice with torsion quotient"
        );
        let expected =
            if m.rationals_count() == 0 { Decision::Member } else { Decision::NonMember };
        assert_eq!(
            member_sym(m, &tor_fg).unwrap().decision,
            expected,
            "reversed order must hinge on the rational dimension for {m}"
        );
    }
    assert!(family.len() > 100_000, "family too small: {}", family.len());
    pass(
        "rationals separate the two pair orders; dimension rule exact on every module with <= 6 atoms",
        t,
    );
}

#[test]
fn hull_closed_pairs_keep_injective_hulls() {
    let t = Instant::now();

    let global_alphabet = [
        Atom::Free,
        Atom::Rationals,
        Atom::Cyclic(2, 1),
        Atom::Cyclic(2, 2),
        Atom::Cyclic(3, 1),
        Atom::Prufer(2),
        Atom::Prufer(3),
    ];
    let local_alphabet = [
        Atom::Free,
        Atom::Rationals,
        Atom::Cyclic(2, 1),
        Atom::Cyclic(2, 2),
        Atom::Cyclic(2, 3),
        Atom::Cyclic(2, 4),
        Atom::Prufer(2),
    ];

    let mut checked = 0u64;
    let mut kept = 0u64;
    for (ring, alphabet) in [(z(), &global_alphabet[..]), (z2(), &local_alphabet[..])] {
        let mut components = vec![CategoryDescriptor::Artin];
        let windows: Vec<SpclSet> = if ring.is_local() {
            vec![SpclSet::empty(ring), SpclSet::all_maximals(ring), SpclSet::full(ring)]
        } else {
            vec![
                SpclSet::empty(ring),
                SpclSet::of_maximals(ring, [2]).unwrap(),
                SpclSet::of_maximals(ring, [3]).unwrap(),
                SpclSet::of_maximals(ring, [2, 3]).unwrap(),
                SpclSet::all_maximals(ring),
                SpclSet::full(ring),
            ]
        };
        components.extend(windows.into_iter().map(CategoryDescriptor::Supp));

        let family = sym_family(ring, alphabet, 6);
        for c1 in &components {
            for c2 in &components {
                let pair = CategoryDescriptor::ext(c1.clone(), c2.clone());
                for m in &family {
                    checked += 1;
                    if member_sym(m, &pair).unwrap().decision == Decision::Member {
                        kept += 1;
                        let hull = injective_hull(m);
                        assert_eq!(
                            member_sym(&hull, &pair).unwrap().decision,
                            Decision::Member,
                            "hull of {m} escaped {pair}"
                        );
                    }
                }
            }
        }
    }
    assert!(kept > 10_000, "vacuous run: only {kept} members among {checked} checks");
    pass("hull-closed pairs keep injective hulls, exhaustively to 6 atoms", t);
}

#[test]
fn socle_condition_cohomology_and_top_degree_membership() {
    let t = Instant::now();

    // socle condition over the exhaustive torsion family
    let family = p_torsion_family(z2(), 6).unwrap();
    assert!(family.len() > 400, "family too small: {}", family.len());
    for text in ["artin", "ext(fg,artin)"] {
        let c = CategoryDescriptor::parse(text, z2()).unwrap();
        let report = check_ci(&c, &family).unwrap();
        assert!(report.passes(), "socle violations for {text}: {:?}", report.violations);
        assert_eq!(report.checked + report.skipped, family.len());
        assert_eq!(report.undecided, 0, "socle condition must decide for {text}");
    }

    // cohomology splits rank from torsion, truncations agree to level 8
    let mut sampled = Vec::new();
    for rank in 0..=3usize {
        for orders in [vec![], vec![2], vec![4, 2], vec![8, 8], vec![8, 4, 2]] {
            sampled.push((rank, FpModule::from_parts(z2(), rank, orders)));
        }
    }
    let window_texts = ["supp{}", "supp{2}", "supp{generic,all}"];
    for (rank, m) in &sampled {
        let res = local_cohomology_fp(m).unwrap();
        let torsion = FpModule::from_parts(z2(), 0, m.factors().to_vec());
        assert_eq!(res.h0, SymModule::from_fp(&torsion), "H^0 must be the torsion part of {m}");
        assert_eq!(
            res.h1,
            SymModule::new(z2(), [(Atom::Prufer(2), *rank)]).unwrap(),
            "H^1 must be Prufer^rank for {m}"
        );
        for k in 1..=8 {
            assert!(truncation_consistent(m, k).unwrap(), "truncation {k} disagrees for {m}");
        }

        // the top piece is artinian, hence a member over every supported class
        assert!(sym_support(&res.h1).is_subset_of(&SpclSet::all_maximals(z2())));
        for text in window_texts {
            let s = CategoryDescriptor::parse(text, z2()).unwrap();
            let pair = CategoryDescriptor::ext(s, CategoryDescriptor::Artin);
            assert_eq!(
                member_sym(&res.h1, &pair).unwrap().decision,
                Decision::Member,
                "H^1 of {m} must land in {pair}"
            );
        }
    }

    assert!(t.elapsed() < Duration::from_secs(30), "took {:?}", t.elapsed());
    pass("socle condition, cohomology splitting, truncation, and top-degree membership", t);
}
