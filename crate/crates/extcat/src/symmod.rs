//! Symbolic modules: finite direct sums of classified atoms — free of rank
//! one, cyclic `p`-power torsion, Prüfer `p`-divisible torsion, and the
//! rationals — covering the non-finitely-generated modules the decision
//! procedures need (injective hulls, localizations, divisible quotients).
//!
//! Everything representable is finitely describable.  Operations whose
//! honest result would leave the atom grammar (for instance inverting `p`
//! on a free module over the plain integers) fail with
//! [`SymError::Unrepresentable`] rather than returning an approximation.

use crate::arith::{factorize, is_prime, valuation};
use crate::fpmod::FpModule;
use crate::rings::{Maximals, RingError, RingSpec, SpclSet};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum SymError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("zero does not generate an admissible ideal")]
    ZeroIdeal,
    #[error("{0} does not generate a prime-power ideal")]
    NotPrimePower(i64),
    #[error("result is not representable: {0}")]
    Unrepresentable(String),
    #[error("operation requires the localized ring")]
    RequiresLocalRing,
    #[error("invalid atom: {0}")]
    InvalidAtom(String),
    #[error("sequence does not match any validatable schema")]
    SchemaMismatch,
    #[error("ring mismatch between sequence terms")]
    MixedRings,
}

/// One indecomposable building block.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    Free,
    /// `Z/p^k` (equivalently `R/p^k R` over the localized ring).
    Cyclic(u64, u32),
    /// The Prüfer group `Z(p^∞)`, the injective hull of `Z/p`.
    Prufer(u64),
    Rationals,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Free => write!(f, "Free"),
            Atom::Cyclic(p, k) => write!(f, "Cyclic({p},{k})"),
            Atom::Prufer(p) => write!(f, "Prufer({p})"),
            Atom::Rationals => write!(f, "Rationals"),
        }
    }
}

/// A finite direct sum of atoms over a fixed ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymModule {
    ring: RingSpec,
    atoms: BTreeMap<Atom, usize>,
}

impl SymModule {
    pub fn new(
        ring: RingSpec,
        atoms: impl IntoIterator<Item = (Atom, usize)>,
    ) -> Result<Self, SymError> {
        let mut map = BTreeMap::new();
        for (atom, mult) in atoms {
            match atom {
                Atom::Cyclic(p, k) => {
                    if !is_prime(p) || k == 0 {
                        return Err(SymError::InvalidAtom(atom.to_string()));
                    }
                    ring.check_prime(p)?;
                }
                Atom::Prufer(p) => {
                    if !is_prime(p) {
                        return Err(SymError::InvalidAtom(atom.to_string()));
                    }
                    ring.check_prime(p)?;
                }
                Atom::Free | Atom::Rationals => {}
            }
            if mult > 0 {
                *map.entry(atom).or_insert(0) += mult;
            }
        }
        Ok(SymModule { ring, atoms: map })
    }

    pub fn zero(ring: RingSpec) -> Self {
        SymModule { ring, atoms: BTreeMap::new() }
    }

    pub fn atom(ring: RingSpec, atom: Atom) -> Result<Self, SymError> {
        SymModule::new(ring, [(atom, 1)])
    }

    /// The symbolic form of a canonical finitely presented module: its free
    /// rank plus the primary decomposition of each invariant factor.
    pub fn from_fp(m: &FpModule) -> Self {
        let mut atoms = BTreeMap::new();
        if m.rank() > 0 {
            atoms.insert(Atom::Free, m.rank());
        }
        for &d in m.factors() {
            for (p, e) in factorize(d) {
                *atoms.entry(Atom::Cyclic(p, e)).or_insert(0) += 1;
            }
        }
        SymModule { ring: m.ring(), atoms }
    }

    /// The canonical finitely presented module, when no Prüfer or rationals
    /// atom blocks it.
    pub fn to_fp(&self) -> Option<FpModule> {
        let mut orders = Vec::new();
        let mut rank = 0usize;
        for (&atom, &mult) in &self.atoms {
            match atom {
                Atom::Free => rank += mult,
                Atom::Cyclic(p, k) => {
                    for _ in 0..mult {
                        orders.push(crate::arith::pow(p, k));
                    }
                }
                Atom::Prufer(_) | Atom::Rationals => return None,
            }
        }
        Some(FpModule::from_parts(self.ring, rank, orders))
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn atoms(&self) -> &BTreeMap<Atom, usize> {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.values().sum()
    }

    pub fn multiplicity(&self, atom: Atom) -> usize {
        self.atoms.get(&atom).copied().unwrap_or(0)
    }

    pub fn free_rank(&self) -> usize {
        self.multiplicity(Atom::Free)
    }

    pub fn rationals_count(&self) -> usize {
        self.multiplicity(Atom::Rationals)
    }

    pub fn prufer_total(&self) -> usize {
        self.atoms
            .iter()
            .filter(|(a, _)| matches!(a, Atom::Prufer(_)))
            .map(|(_, &m)| m)
            .sum()
    }

    pub fn prufer_primes(&self) -> BTreeSet<u64> {
        self.atoms
            .keys()
            .filter_map(|a| match a {
                Atom::Prufer(p) => Some(*p),
                _ => None,
            })
            .collect()
    }

    pub fn torsion_primes(&self) -> BTreeSet<u64> {
        self.atoms
            .keys()
            .filter_map(|a| match a {
                Atom::Cyclic(p, _) | Atom::Prufer(p) => Some(*p),
                _ => None,
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &SymModule) -> Result<SymModule, SymError> {
        self.ring.same_as(&other.ring)?;
        let mut atoms = self.atoms.clone();
        for (&a, &m) in &other.atoms {
            *atoms.entry(a).or_insert(0) += m;
        }
        Ok(SymModule { ring: self.ring, atoms })
    }

    /// `dim_Q (M ⊗ Q)`: the number of atoms that survive tensoring with the
    /// fraction field.
    pub fn dim_q(&self) -> usize {
        self.free_rank() + self.rationals_count()
    }

    pub fn is_fg(&self) -> bool {
        self.atoms
            .keys()
            .all(|a| matches!(a, Atom::Free | Atom::Cyclic(..)))
    }

    pub fn is_artinian(&self) -> bool {
        self.atoms
            .keys()
            .all(|a| matches!(a, Atom::Cyclic(..) | Atom::Prufer(_)))
    }

    pub fn is_torsion(&self) -> bool {
        // torsion means M ⊗ Q = 0, which kills exactly Free and Rationals
        self.dim_q() == 0
    }
}

impl fmt::Display for SymModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (atom, &mult) in &self.atoms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mult == 1 {
                write!(f, "{atom}")?;
            } else {
                write!(f, "{atom}^{mult}")?;
            }
        }
        Ok(())
    }
}

/// The support of a symbolic module.  Unlike a specialization-closed set
/// this may contain the generic point alone (the rationals are supported
/// only there), so it gets its own type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Support {
    pub generic: bool,
    pub maximals: Maximals,
}

impl Support {
    pub fn is_subset_of(&self, w: &SpclSet) -> bool {
        if self.generic && !w.contains_generic() {
            return false;
        }
        match &self.maximals {
            Maximals::All => w.has_all_maximals(),
            Maximals::Finite(set) => match w.maximals() {
                Maximals::All => true,
                Maximals::Finite(ws) => set.is_subset(ws),
            },
        }
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.generic {
            parts.push("(0)".to_string());
        }
        match &self.maximals {
            Maximals::All => parts.push("all maximal ideals".to_string()),
            Maximals::Finite(set) => parts.extend(set.iter().map(|p| format!("({p})"))),
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn support(m: &SymModule) -> Support {
    let mut generic = false;
    let mut all = false;
    let mut finite = BTreeSet::new();
    for atom in m.atoms.keys() {
        match atom {
            Atom::Free => {
                generic = true;
                all = true;
            }
            Atom::Rationals => generic = true,
            Atom::Cyclic(p, _) | Atom::Prufer(p) => {
                finite.insert(*p);
            }
        }
    }
    let maximals = if all { Maximals::All } else { Maximals::Finite(finite) };
    Support { generic, maximals }
}

/// Interprets a ring element as a prime-power ideal generator `(p^k)`.
/// Over the localized ring any nonzero element works (units give `k = 0`);
/// over the integers the element must be `±p^k` exactly.
pub fn prime_power_ideal(ring: RingSpec, x: i64) -> Result<(u64, u32), SymError> {
    if x == 0 {
        return Err(SymError::ZeroIdeal);
    }
    if let Some(p) = ring.local_prime() {
        return Ok((p, valuation(x, p)));
    }
    let fac = factorize(x);
    match fac.as_slice() {
        [] => Err(SymError::NotPrimePower(x)), // |x| = 1: the unit ideal
        [(p, k)] => Ok((*p, *k)),
        _ => Err(SymError::NotPrimePower(x)),
    }
}

/// `(0 :_M x)`: the `x`-annihilated submodule, atom by atom.
pub fn socle_wrt(m: &SymModule, x: i64) -> Result<SymModule, SymError> {
    let (p, k) = prime_power_ideal(m.ring, x)?;
    if k == 0 {
        // the unit ideal annihilates nothing
        return Ok(SymModule::zero(m.ring));
    }
    let mut out = SymModule::zero(m.ring);
    for (&atom, &mult) in &m.atoms {
        let image = match atom {
            Atom::Cyclic(q, e) if q == p => Some(Atom::Cyclic(p, e.min(k))),
            Atom::Prufer(q) if q == p => Some(Atom::Cyclic(p, k)),
            _ => None,
        };
        if let Some(a) = image {
            out = out.direct_sum(&SymModule::new(m.ring, [(a, mult)])?)?;
        }
    }
    Ok(out)
}

/// The section functor `Γ_(x)`: the largest submodule supported at `(p)`.
pub fn gamma_i(m: &SymModule, x: i64) -> Result<SymModule, SymError> {
    let (p, k) = prime_power_ideal(m.ring, x)?;
    if k == 0 {
        return Ok(SymModule::zero(m.ring));
    }
    let atoms: Vec<(Atom, usize)> = m
        .atoms
        .iter()
        .filter(|(a, _)| matches!(a, Atom::Cyclic(q, _) | Atom::Prufer(q) if *q == p))
        .map(|(&a, &mult)| (a, mult))
        .collect();
    SymModule::new(m.ring, atoms)
}

/// Localization inverting `x`: kills `p`-torsion, fixes the rationals, and
/// turns free atoms into rationals — representable only over the localized
/// ring, where `R[1/p]` is the whole fraction field.
pub fn localize_invert(m: &SymModule, x: i64) -> Result<SymModule, SymError> {
    let (p, k) = prime_power_ideal(m.ring, x)?;
    if k == 0 {
        return Ok(m.clone());
    }
    let mut out = SymModule::zero(m.ring);
    for (&atom, &mult) in &m.atoms {
        let image = match atom {
            Atom::Free => {
                if m.ring.is_local() {
                    Some(Atom::Rationals)
                } else {
                    return Err(SymError::Unrepresentable(format!(
                        "inverting {p} on a free module over {} leaves the atom grammar",
                        m.ring
                    )));
                }
            }
            Atom::Cyclic(q, _) | Atom::Prufer(q) => {
                if q == p {
                    None
                } else {
                    Some(atom)
                }
            }
            Atom::Rationals => Some(Atom::Rationals),
        };
        if let Some(a) = image {
            out = out.direct_sum(&SymModule::new(m.ring, [(a, mult)])?)?;
        }
    }
    Ok(out)
}

/// The injective hull, atom by atom: free atoms essentially extend to the
/// rationals and cyclic `p`-groups to their Prüfer group.
pub fn injective_hull(m: &SymModule) -> SymModule {
    let mut atoms = BTreeMap::new();
    for (&atom, &mult) in &m.atoms {
        let hull = match atom {
            Atom::Free => Atom::Rationals,
            Atom::Cyclic(p, _) => Atom::Prufer(p),
            other => other,
        };
        *atoms.entry(hull).or_insert(0) += mult;
    }
    SymModule { ring: m.ring, atoms }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Predicate {
    Fg,
    Artinian,
    Torsion,
    Minimax,
    Maxmini,
}

/// Classification predicates.  The first three read off the atom table;
/// minimax and maxmini go through the extension-category decision tables.
pub fn predicate(m: &SymModule, which: Predicate) -> bool {
    use crate::serrecat::{member_sym, CategoryDescriptor, Decision};
    match which {
        Predicate::Fg => m.is_fg(),
        Predicate::Artinian => m.is_artinian(),
        Predicate::Torsion => m.is_torsion(),
        Predicate::Minimax => {
            let c = CategoryDescriptor::ext(CategoryDescriptor::Fg, CategoryDescriptor::Artin);
            member_sym(m, &c).expect("ring-free descriptor").decision == Decision::Member
        }
        Predicate::Maxmini => {
            let c = CategoryDescriptor::ext(CategoryDescriptor::Artin, CategoryDescriptor::Fg);
            member_sym(m, &c).expect("ring-free descriptor").decision == Decision::Member
        }
    }
}

/// Right-hand end of a symbolic sequence: either a representable module or
/// the marker for a torsion quotient that leaves the grammar (such as `Q/Z`
/// over the integers).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SymEnd {
    Module(SymModule),
    TorsionQuotient,
}

/// A symbolic short exact sequence, validated against a catalog of
/// decomposition schemas:
///
/// * componentwise split pieces `0 → A → A → 0 → 0` and `0 → 0 → A → A → 0`;
/// * the canonical local piece `0 → Free → Rationals → Prufer(p) → 0`;
/// * a fully-free left term with the torsion-quotient marker on the right.
///
/// The validator is sound but deliberately not complete: triples outside
/// the catalog are rejected even if some exotic exact sequence exists.
#[derive(Clone, Debug)]
pub struct SymSes {
    left: SymModule,
    middle: SymModule,
    right: SymEnd,
}

impl SymSes {
    pub fn new(left: SymModule, middle: SymModule, right: SymEnd) -> Result<Self, SymError> {
        if let SymEnd::Module(r) = &right {
            if left.ring != middle.ring || middle.ring != r.ring {
                return Err(SymError::MixedRings);
            }
        } else if left.ring != middle.ring {
            return Err(SymError::MixedRings);
        }
        let candidate = SymSes { left, middle, right };
        candidate.check_schema()?;
        Ok(candidate)
    }

    fn check_schema(&self) -> Result<(), SymError> {
        match &self.right {
            SymEnd::TorsionQuotient => {
                let k = self.middle.dim_q();
                let pure_free = SymModule::new(self.middle.ring, [(Atom::Free, k)])
                    .expect("free atoms are always valid");
                if self.left == pure_free {
                    Ok(())
                } else {
                    Err(SymError::SchemaMismatch)
                }
            }
            SymEnd::Module(right) => {
                let max_c3 = match self.middle.ring.local_prime() {
                    Some(p) => self
                        .left
                        .multiplicity(Atom::Free)
                        .min(self.middle.multiplicity(Atom::Rationals))
                        .min(right.multiplicity(Atom::Prufer(p))),
                    None => 0,
                };
                for c3 in 0..=max_c3 {
                    if self.splits_after_removing(right, c3) {
                        return Ok(());
                    }
                }
                Err(SymError::SchemaMismatch)
            }
        }
    }

    /// Whether, after pulling out `c3` copies of the canonical local piece,
    /// the remainder is the split sum of the remaining ends.
    fn splits_after_removing(&self, right: &SymModule, c3: usize) -> bool {
        let p = match self.middle.ring.local_prime() {
            Some(p) => p,
            None if c3 == 0 => 0,
            None => return false,
        };
        let mut want: BTreeMap<Atom, usize> = BTreeMap::new();
        for (&a, &m) in &self.left.atoms {
            *want.entry(a).or_insert(0) += m;
        }
        for (&a, &m) in &right.atoms {
            *want.entry(a).or_insert(0) += m;
        }
        if c3 > 0 {
            for (atom, removed) in
                [(Atom::Free, c3), (Atom::Prufer(p), c3)]
            {
                match want.get_mut(&atom) {
                    Some(m) if *m >= removed => {
                        *m -= removed;
                        if *m == 0 {
                            want.remove(&atom);
                        }
                    }
                    _ => return false,
                }
            }
            *want.entry(Atom::Rationals).or_insert(0) += c3;
        }
        want == self.middle.atoms
    }

    pub fn left(&self) -> &SymModule {
        &self.left
    }

    pub fn middle(&self) -> &SymModule {
        &self.middle
    }

    pub fn right(&self) -> &SymEnd {
        &self.right
    }
}

impl fmt::Display for SymSes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0 -> {} -> {} -> ", self.left, self.middle)?;
        match &self.right {
            SymEnd::Module(m) => write!(f, "{m}")?,
            SymEnd::TorsionQuotient => write!(f, "(torsion)")?,
        }
        write!(f, " -> 0")
    }
}

/// The minimal injective resolution sequence of the localized ring:
/// `0 → R → Q → Z(p^∞) → 0`.
pub fn canonical_ses_r_q_prufer(ring: RingSpec) -> Result<SymSes, SymError> {
    let p = ring.local_prime().ok_or(SymError::RequiresLocalRing)?;
    SymSes::new(
        SymModule::atom(ring, Atom::Free)?,
        SymModule::atom(ring, Atom::Rationals)?,
        SymEnd::Module(SymModule::atom(ring, Atom::Prufer(p))?),
    )
}
