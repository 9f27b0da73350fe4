//! Finitely presented modules over `Z` and `Z_(p)`.
//!
//! A [`Presentation`] is an integer matrix whose rows are relations among
//! column-indexed generators; the module it presents is the cokernel of the
//! row span.  Smith normal form turns a presentation into the canonical
//! invariant-factor shape [`FpModule`]: a free rank plus a divisibility
//! chain of torsion factors, each at least 2.  Over `Z_(p)` only the p-part
//! of an invariant factor survives, because every prime-to-p integer is a
//! unit there.
//!
//! [`Canonicalization`] additionally records how canonical generators sit
//! inside the original generators and back — that bookkeeping is what makes
//! kernels, cokernels and filtration maps in the neighbouring modules
//! concrete instead of merely isomorphism-typed.

use crate::arith::{factorize, gcd, pow, valuation};
use crate::hom::ModuleHom;
use crate::matrix::{smith, smith_diagonal, IntMat};
use crate::rings::{PrimeIdeal, RingError, RingSpec, SpclSet};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Entries beyond this bound are rejected at parse time so intermediate
/// products in the elimination stay inside `i64`.
pub const MAX_ENTRY: i64 = 1_000_000_000;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ModuleError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("relation rows have unequal lengths")]
    RaggedMatrix,
    #[error("matrix entry {0} exceeds the supported range")]
    EntryOutOfRange(i64),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("module has free rank {0} > 0, cannot enumerate its elements")]
    InfiniteModule(usize),
    #[error("element vector has length {got}, module has {want} generators")]
    BadElement { got: usize, want: usize },
}

/// Relations-by-generators matrix presenting a module as its cokernel.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    ring: RingSpec,
    mat: IntMat,
}

impl Presentation {
    pub fn new(ring: RingSpec, rows: Vec<Vec<i64>>) -> Result<Self, ModuleError> {
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(ModuleError::RaggedMatrix);
        }
        for row in &rows {
            for &v in row {
                if v.abs() > MAX_ENTRY {
                    return Err(ModuleError::EntryOutOfRange(v));
                }
            }
        }
        Ok(Presentation { ring, mat: IntMat::from_rows(rows) })
    }

    pub fn from_matrix(ring: RingSpec, mat: IntMat) -> Self {
        Presentation { ring, mat }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn generators(&self) -> usize {
        self.mat.col_count()
    }
}

/// Canonical form: `R^rank ⊕ R/(d_1) ⊕ … ⊕ R/(d_k)` with `d_1 | … | d_k`,
/// every `d_i ≥ 2`, and each `d_i` a power of `p` over `Z_(p)`.
///
/// Generator convention: torsion generators first (in chain order), then the
/// free generators.  Elements are integer row vectors in that basis, with
/// torsion coordinates reduced into `[0, d_i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FpModule {
    ring: RingSpec,
    rank: usize,
    factors: Vec<i64>,
}

impl FpModule {
    pub fn zero(ring: RingSpec) -> Self {
        FpModule { ring, rank: 0, factors: Vec::new() }
    }

    pub fn free(ring: RingSpec, rank: usize) -> Self {
        FpModule { ring, rank, factors: Vec::new() }
    }

    /// Builds the canonical module with the given rank and any multiset of
    /// cyclic orders (not necessarily a chain); orders are merged primewise.
    pub fn from_parts<I: IntoIterator<Item = i64>>(
        ring: RingSpec,
        rank: usize,
        orders: I,
    ) -> Self {
        // per-prime exponent lists, largest first, recombined from the top of
        // the chain downward
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for d in orders {
            let d = d.abs();
            assert!(d != 0, "a cyclic order of zero is a free generator");
            let parts = match ring.local_prime() {
                Some(p) => {
                    let v = valuation(d, p);
                    if v == 0 { vec![] } else { vec![(p, v)] }
                }
                None => factorize(d),
            };
            for (p, e) in parts {
                by_prime.entry(p).or_default().push(e);
            }
        }
        for exps in by_prime.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        let slots = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = vec![1i64; slots];
        for (&p, exps) in &by_prime {
            for (i, &e) in exps.iter().enumerate() {
                factors[i] *= pow(p, e);
            }
        }
        factors.retain(|&d| d >= 2);
        factors.reverse();
        FpModule { ring, rank, factors }
    }

    pub fn cyclic(ring: RingSpec, order: i64) -> Self {
        Self::from_parts(ring, 0, [order])
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn torsion_count(&self) -> usize {
        self.factors.len()
    }

    pub fn gen_count(&self) -> usize {
        self.rank + self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.factors.is_empty()
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u128> {
        if self.rank > 0 {
            return None;
        }
        Some(self.factors.iter().map(|&d| d as u128).product())
    }

    /// The canonical presentation `diag(d_1..d_k)` padded with free columns.
    pub fn canonical_presentation(&self) -> Presentation {
        let k = self.factors.len();
        let mut mat = IntMat::zero(k, self.gen_count());
        for (i, &d) in self.factors.iter().enumerate() {
            mat[(i, i)] = d;
        }
        Presentation { ring: self.ring, mat }
    }

    /// Reduces torsion coordinates of an element into canonical range.
    pub fn reduce(&self, coords: &[i64]) -> Result<Vec<i64>, ModuleError> {
        if coords.len() != self.gen_count() {
            return Err(ModuleError::BadElement { got: coords.len(), want: self.gen_count() });
        }
        let mut out = coords.to_vec();
        for (i, &d) in self.factors.iter().enumerate() {
            out[i] = out[i].rem_euclid(d);
        }
        Ok(out)
    }

    pub fn zero_element(&self) -> Vec<i64> {
        vec![0; self.gen_count()]
    }

    /// Iterates all elements of a finite module in mixed-radix order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Vec<i64>> + '_, ModuleError> {
        if self.rank > 0 {
            return Err(ModuleError::InfiniteModule(self.rank));
        }
        let radices = self.factors.clone();
        let total = self.order().unwrap();
        let mut current = vec![0i64; radices.len()];
        let mut emitted = 0u128;
        Ok(std::iter::from_fn(move || {
            if emitted >= total {
                return None;
            }
            let out = current.clone();
            emitted += 1;
            for i in 0..radices.len() {
                current[i] += 1;
                if current[i] < radices[i] {
                    break;
                }
                current[i] = 0;
            }
            Some(out)
        }))
    }

    /// Annihilator ideal generator of a single element (0 means free order).
    pub fn annihilator_of(&self, coords: &[i64]) -> Result<i64, ModuleError> {
        let x = self.reduce(coords)?;
        for j in self.factors.len()..x.len() {
            if x[j] != 0 {
                return Ok(0);
            }
        }
        let mut ann = 1i64;
        for (i, &d) in self.factors.iter().enumerate() {
            if x[i] != 0 {
                let ord = d / gcd(d, x[i]);
                ann = crate::arith::lcm(ann, ord);
            }
        }
        Ok(ann)
    }
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank > 0 {
            if self.rank == 1 {
                parts.push(format!("{}", self.ring));
            } else {
                parts.push(format!("{}^{}", self.ring, self.rank));
            }
        }
        for &d in &self.factors {
            parts.push(format!("{}/{}", self.ring, d));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Canonical form of a presentation together with the generator dictionaries
/// in both directions.
pub struct Canonicalization {
    pub module: FpModule,
    /// `gen_count × generators()`: row `j` is an ambient representative of
    /// canonical generator `j`.
    to_original: IntMat,
    /// `generators() × gen_count`: row `i` is the class of original
    /// generator `e_i` in canonical coordinates.
    from_original: IntMat,
}

impl Canonicalization {
    pub fn new(pres: &Presentation) -> Self {
        let ring = pres.ring;
        // Reducing to a Hermite basis first leaves the relation lattice (and
        // hence the module and its generator dictionaries) unchanged while
        // keeping the Smith elimination's inputs, and so its transforms, small.
        let a = crate::matrix::row_basis(&pres.mat);
        let s = smith(&a);
        let n = a.col_count();
        let diag_len = a.row_count().min(n);

        let norm = |d: i64| -> i64 {
            if d == 0 {
                return 0;
            }
            match ring.local_prime() {
                Some(p) => pow(p, valuation(d, p)),
                None => d.abs(),
            }
        };

        let mut torsion_cols: Vec<(usize, i64)> = Vec::new();
        let mut free_cols: Vec<usize> = Vec::new();
        for c in 0..n {
            let d = if c < diag_len { norm(s.d[(c, c)]) } else { 0 };
            match d {
                0 => free_cols.push(c),
                1 => {} // unit factor: generator dies
                d => torsion_cols.push((c, d)),
            }
        }

        let factors: Vec<i64> = torsion_cols.iter().map(|&(_, d)| d).collect();
        debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        let module = FpModule { ring, rank: free_cols.len(), factors };

        let gens: Vec<usize> = torsion_cols
            .iter()
            .map(|&(c, _)| c)
            .chain(free_cols.iter().copied())
            .collect();

        let mut to_original = IntMat::zero(0, n);
        for &c in &gens {
            to_original.push_row(s.qinv.row(c));
        }

        let mut from_original = IntMat::zero(0, module.gen_count());
        for i in 0..n {
            let image = s.q.row(i);
            let coords: Vec<i64> = gens.iter().map(|&c| image[c]).collect();
            from_original.push_row(&module.reduce(&coords).unwrap());
        }

        Canonicalization { module, to_original, from_original }
    }

    /// Ambient representative (original generator coordinates) of a
    /// canonical element.
    pub fn lift(&self, canonical: &[i64]) -> Vec<i64> {
        crate::matrix::vec_mul(canonical, &self.to_original)
    }

    /// Canonical coordinates of an ambient vector.
    pub fn push(&self, original: &[i64]) -> Vec<i64> {
        self.module
            .reduce(&crate::matrix::vec_mul(original, &self.from_original))
            .unwrap()
    }

    pub fn to_original(&self) -> &IntMat {
        &self.to_original
    }

    pub fn from_original(&self) -> &IntMat {
        &self.from_original
    }
}

/// Canonical form of the cokernel of a presentation (fast path: no
/// generator dictionaries).
pub fn smith_normalize(pres: &Presentation) -> FpModule {
    let ring = pres.ring;
    let n = pres.mat.col_count();
    let diag = smith_diagonal(&pres.mat);
    let mut factors = Vec::new();
    let mut rank = n.saturating_sub(diag.len());
    for d in diag {
        if d == 0 {
            rank += 1;
            continue;
        }
        let d = match ring.local_prime() {
            Some(p) => pow(p, valuation(d, p)),
            None => d,
        };
        if d >= 2 {
            factors.push(d);
        }
    }
    FpModule { ring, rank, factors }
}

/// Canonical direct sum; invariant factors are merged primewise. The
/// structural embeddings/projections live in [`crate::hom::DirectSum`].
pub fn direct_sum(a: &FpModule, b: &FpModule) -> Result<FpModule, ModuleError> {
    a.ring.same_as(&b.ring)?;
    Ok(FpModule::from_parts(
        a.ring,
        a.rank + b.rank,
        a.factors.iter().chain(b.factors.iter()).copied(),
    ))
}

/// Support as a specialization-closed set: the whole spectrum when the rank
/// is positive, otherwise the maximal ideals dividing the torsion.
pub fn support(m: &FpModule) -> SpclSet {
    if m.rank > 0 {
        return SpclSet::full(m.ring);
    }
    let mut primes = BTreeSet::new();
    for &d in &m.factors {
        for (p, _) in factorize(d) {
            primes.insert(p);
        }
    }
    SpclSet::of_maximals(m.ring, primes).expect("torsion primes are admissible")
}

/// Associated primes: `(0)` iff the rank is positive, plus `(p)` for every
/// prime dividing an invariant factor.
pub fn ass_primes(m: &FpModule) -> BTreeSet<PrimeIdeal> {
    let mut out = BTreeSet::new();
    if m.rank > 0 {
        out.insert(PrimeIdeal::Generic);
    }
    for &d in &m.factors {
        for (p, _) in factorize(d) {
            out.insert(PrimeIdeal::Maximal(p));
        }
    }
    out
}

/// The section functor `Γ_W`: largest submodule supported inside `W`,
/// returned with its inclusion and the projection onto the quotient.
pub struct GammaParts {
    pub sub: FpModule,
    pub include: ModuleHom,
    pub quotient: FpModule,
    pub project: ModuleHom,
}

pub fn gamma_w(m: &FpModule, w: &SpclSet) -> Result<GammaParts, ModuleError> {
    m.ring.same_as(&w.ring())?;
    if w.contains_generic() {
        // W is the whole spectrum: everything is a section
        let include = ModuleHom::identity(m);
        let quotient = FpModule::zero(m.ring);
        let project = ModuleHom::zero(m, &quotient);
        return Ok(GammaParts { sub: m.clone(), include, quotient, project });
    }

    let w_part = |d: i64| -> i64 {
        if w.has_all_maximals() {
            return d;
        }
        let mut g = 1i64;
        for (p, e) in factorize(d) {
            if w.contains(&PrimeIdeal::Maximal(p)).unwrap_or(false) {
                g *= pow(p, e);
            }
        }
        g
    };

    let g: Vec<i64> = m.factors.iter().map(|&d| w_part(d)).collect();
    let h: Vec<i64> = m.factors.iter().zip(&g).map(|(&d, &gi)| d / gi).collect();

    let sub = FpModule {
        ring: m.ring,
        rank: 0,
        factors: g.iter().copied().filter(|&v| v >= 2).collect(),
    };
    let quotient = FpModule {
        ring: m.ring,
        rank: m.rank,
        factors: h.iter().copied().filter(|&v| v >= 2).collect(),
    };

    // inclusion: the w-primary piece of R/(d_i) is generated by (d_i/g_i)·e_i
    let mut inc_rows = Vec::new();
    for (i, &gi) in g.iter().enumerate() {
        if gi >= 2 {
            let mut row = m.zero_element();
            row[i] = h[i];
            inc_rows.push(row);
        }
    }
    let include = ModuleHom::new(sub.clone(), m.clone(), inc_rows)?;

    // projection: e_i generates the quotient cyclic of order h_i
    let mut proj_rows = Vec::new();
    let kept: Vec<usize> = (0..h.len()).filter(|&i| h[i] >= 2).collect();
    for i in 0..m.gen_count() {
        let mut row = quotient.zero_element();
        if i < m.factors.len() {
            if let Some(pos) = kept.iter().position(|&j| j == i) {
                row[pos] = 1;
            }
        } else {
            let free_index = i - m.factors.len();
            row[quotient.factors.len() + free_index] = 1;
        }
        proj_rows.push(row);
    }
    let project = ModuleHom::new(m.clone(), quotient.clone(), proj_rows)?;

    Ok(GammaParts { sub, include, quotient, project })
}

/// `Hom(A, B)` assembled from cyclic pieces: a free generator of `A`
/// contributes a copy of `B`, a torsion generator of order `d` contributes
/// the `d`-torsion of `B`.
pub fn hom_group(a: &FpModule, b: &FpModule) -> Result<FpModule, ModuleError> {
    a.ring.same_as(&b.ring)?;
    let rank = a.rank * b.rank;
    let mut orders: Vec<i64> = Vec::new();
    for _ in 0..a.rank {
        orders.extend_from_slice(&b.factors);
    }
    for &d in &a.factors {
        for &e in &b.factors {
            orders.push(gcd(d, e));
        }
    }
    Ok(FpModule::from_parts(a.ring, rank, orders.into_iter().filter(|&v| v >= 2)))
}

/// `Ext^1(A, B)`: free generators of `A` contribute nothing, a torsion
/// generator of order `d` contributes `B/dB`.
pub fn ext_group(a: &FpModule, b: &FpModule) -> Result<FpModule, ModuleError> {
    a.ring.same_as(&b.ring)?;
    let mut orders: Vec<i64> = Vec::new();
    for &d in &a.factors {
        for _ in 0..b.rank {
            orders.push(d);
        }
        for &e in &b.factors {
            orders.push(gcd(d, e));
        }
    }
    Ok(FpModule::from_parts(a.ring, 0, orders.into_iter().filter(|&v| v >= 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: RingSpec = RingSpec::Integers;

    fn z2() -> RingSpec {
        RingSpec::localized_at(2).unwrap()
    }

    fn pres(ring: RingSpec, rows: Vec<Vec<i64>>) -> Presentation {
        Presentation::new(ring, rows).unwrap()
    }

    #[test]
    fn diag_2_3_collapses_to_z6() {
        let m = smith_normalize(&pres(Z, vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(m.rank(), 0);
        assert_eq!(m.factors(), &[6]);
    }

    #[test]
    fn upper_triangular_2_4_2() {
        let m = smith_normalize(&pres(Z, vec![vec![2, 4], vec![0, 2]]));
        assert_eq!((m.rank(), m.factors()), (0, &[2, 2][..]));
    }

    #[test]
    fn free_parts_count_unconstrained_generators() {
        let m = smith_normalize(&pres(Z, vec![vec![0, 0]]));
        assert_eq!((m.rank(), m.factors()), (2, &[][..]));
        let m = smith_normalize(&pres(Z, vec![vec![2, 0]]));
        assert_eq!((m.rank(), m.factors()), (1, &[2][..]));
    }

    #[test]
    fn localized_ring_keeps_only_p_parts() {
        let m = smith_normalize(&pres(z2(), vec![vec![6]]));
        assert_eq!((m.rank(), m.factors()), (0, &[2][..]));
        let m = smith_normalize(&pres(z2(), vec![vec![3]]));
        assert!(m.is_zero());
        let m = smith_normalize(&pres(z2(), vec![vec![12, 0], vec![0, 10]]));
        assert_eq!(m.factors(), &[2, 4]);
    }

    #[test]
    fn localized_units_interact_before_normalization() {
        // the unit parts matter during elimination: this presents Z_(2)/8,
        // not a free module, even though every entry is a unit
        let m = smith_normalize(&pres(z2(), vec![vec![1, 3], vec![3, 1]]));
        assert_eq!((m.rank(), m.factors()), (0, &[8][..]));
    }

    #[test]
    fn canonicalization_dictionaries_are_mutually_inverse() {
        let p = pres(Z, vec![vec![2, 0, 0], vec![0, 3, 0]]);
        let c = Canonicalization::new(&p);
        assert_eq!(c.module.factors(), &[6]);
        assert_eq!(c.module.rank(), 1);
        for j in 0..c.module.gen_count() {
            let mut e = c.module.zero_element();
            e[j] = 1;
            assert_eq!(c.push(&c.lift(&e)), e, "round trip failed for generator {j}");
        }
        // relation rows die in canonical coordinates
        for i in 0..p.matrix().row_count() {
            let img = c.push(p.matrix().row(i));
            assert!(img.iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn direct_sum_merges_primewise() {
        let a = FpModule::cyclic(Z, 2);
        let b = FpModule::cyclic(Z, 3);
        assert_eq!(direct_sum(&a, &b).unwrap().factors(), &[6]);

        let a = FpModule::from_parts(Z, 0, [2, 4]);
        let b = FpModule::cyclic(Z, 3);
        let s = direct_sum(&a, &b).unwrap();
        assert_eq!(s.factors(), &[2, 12]);

        // cross-check against Smith form of the block-diagonal presentation
        let block = pres(Z, vec![vec![2, 0, 0], vec![0, 4, 0], vec![0, 0, 3]]);
        assert_eq!(smith_normalize(&block), s);
    }

    #[test]
    fn support_and_ass_examples() {
        let z12 = FpModule::cyclic(Z, 12);
        assert_eq!(support(&z12), SpclSet::of_maximals(Z, [2, 3]).unwrap());
        assert_eq!(
            ass_primes(&z12),
            BTreeSet::from([PrimeIdeal::Maximal(2), PrimeIdeal::Maximal(3)])
        );

        let mixed = FpModule::from_parts(Z, 1, [4]);
        assert_eq!(support(&mixed), SpclSet::full(Z));
        assert_eq!(
            ass_primes(&mixed),
            BTreeSet::from([PrimeIdeal::Generic, PrimeIdeal::Maximal(2)])
        );

        assert!(support(&FpModule::zero(Z)).is_empty());
        assert!(ass_primes(&FpModule::zero(Z)).is_empty());
    }

    #[test]
    fn gamma_splits_z12_at_2() {
        let m = FpModule::cyclic(Z, 12);
        let w = SpclSet::of_maximals(Z, [2]).unwrap();
        let parts = gamma_w(&m, &w).unwrap();
        assert_eq!(parts.sub.factors(), &[4]);
        assert_eq!(parts.quotient.factors(), &[3]);
        // the 2-primary part of Z/12 is generated by 3
        assert_eq!(parts.include.matrix().row(0), &[3]);
        assert_eq!(parts.project.matrix().row(0), &[1]);
    }

    #[test]
    fn gamma_with_generic_point_is_identity() {
        let m = FpModule::from_parts(Z, 2, [6]);
        let parts = gamma_w(&m, &SpclSet::full(Z)).unwrap();
        assert_eq!(parts.sub, m);
        assert!(parts.quotient.is_zero());
    }

    #[test]
    fn gamma_on_mixed_module() {
        let m = FpModule::from_parts(Z, 1, [2, 60]);
        let w = SpclSet::of_maximals(Z, [2, 5]).unwrap();
        let parts = gamma_w(&m, &w).unwrap();
        assert_eq!(parts.sub.factors(), &[2, 20]);
        assert_eq!((parts.quotient.rank(), parts.quotient.factors()), (1, &[3][..]));
    }

    #[test]
    fn hom_groups_from_cyclic_pieces() {
        let z = FpModule::free(Z, 1);
        let z2m = FpModule::cyclic(Z, 2);
        let z4 = FpModule::cyclic(Z, 4);
        let z6 = FpModule::cyclic(Z, 6);

        assert_eq!(hom_group(&z2m, &z).unwrap(), FpModule::zero(Z));
        assert_eq!(hom_group(&z, &z6).unwrap(), z6);
        assert_eq!(hom_group(&z4, &z6).unwrap(), z2m);
        assert_eq!(hom_group(&z2m, &z2m).unwrap(), z2m);
        assert_eq!(
            hom_group(&FpModule::free(Z, 2), &FpModule::free(Z, 3)).unwrap(),
            FpModule::free(Z, 6)
        );
    }

    #[test]
    fn ext_groups_from_cyclic_pieces() {
        let z = FpModule::free(Z, 1);
        let z2m = FpModule::cyclic(Z, 2);
        let z4 = FpModule::cyclic(Z, 4);
        let z6 = FpModule::cyclic(Z, 6);

        assert_eq!(ext_group(&z, &z6).unwrap(), FpModule::zero(Z));
        assert_eq!(ext_group(&z2m, &z).unwrap(), z2m);
        assert_eq!(ext_group(&z2m, &z2m).unwrap(), z2m);
        assert_eq!(ext_group(&z4, &z6).unwrap(), z2m);
        // Ext of torsion against a free target scales with the rank
        assert_eq!(
            ext_group(&z4, &FpModule::free(Z, 2)).unwrap(),
            FpModule::from_parts(Z, 0, [4, 4])
        );
    }

    #[test]
    fn element_enumeration_and_annihilators() {
        let m = FpModule::from_parts(Z, 0, [2, 4]);
        let all: Vec<Vec<i64>> = m.elements().unwrap().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(m.annihilator_of(&[1, 0]).unwrap(), 2);
        assert_eq!(m.annihilator_of(&[0, 1]).unwrap(), 4);
        assert_eq!(m.annihilator_of(&[1, 2]).unwrap(), 2);
        assert_eq!(m.annihilator_of(&[0, 0]).unwrap(), 1);

        let free = FpModule::free(Z, 1);
        assert!(free.elements().is_err());
        assert_eq!(free.annihilator_of(&[5]).unwrap(), 0);
    }

    #[test]
    fn canonical_presentation_round_trips() {
        for m in [
            FpModule::zero(Z),
            FpModule::free(Z, 2),
            FpModule::from_parts(Z, 1, [2, 6]),
            FpModule::from_parts(z2(), 2, [2, 8]),
        ] {
            assert_eq!(smith_normalize(&m.canonical_presentation()), m);
        }
    }

    #[test]
    fn presentation_rejects_bad_input() {
        assert!(matches!(
            Presentation::new(Z, vec![vec![1, 2], vec![3]]),
            Err(ModuleError::RaggedMatrix)
        ));
        assert!(matches!(
            Presentation::new(Z, vec![vec![MAX_ENTRY + 1]]),
            Err(ModuleError::EntryOutOfRange(_))
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(FpModule::zero(Z).to_string(), "0");
        assert_eq!(FpModule::from_parts(Z, 1, [4]).to_string(), "Z + Z/4");
        assert_eq!(FpModule::from_parts(z2(), 2, [8]).to_string(), "Z_(2)^2 + Z_(2)/8");
    }
}
