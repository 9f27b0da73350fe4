//! The two base rings and specialization-closed subsets of their spectra.
//!
//! Supported rings are `Z` and `Z_(p)` (the integers localized at a maximal
//! ideal).  Both have Krull dimension one, so a subset of the spectrum is
//! closed under specialization exactly when it is a set of maximal ideals,
//! or contains the generic point and is everything.  Cofinite sets of
//! maximals that are not *all* maximals have no finite description here and
//! are rejected loudly instead of being approximated.

use crate::arith::is_prime;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RingSpec {
    /// The ring of integers `Z`.
    Integers,
    /// `Z` localized at the prime `p`: a one-dimensional local PID.
    LocalizedAt(u64),
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum RingError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} is not a maximal ideal of {ring}")]
    InadmissiblePrime { p: u64, ring: RingSpec },
    #[error("operands live over different rings ({0} vs {1})")]
    RingMismatch(RingSpec, RingSpec),
    #[error("a set containing the generic point must contain all maximal ideals")]
    GenericWithoutAllMaximals,
    #[error("cannot parse ring {0:?}: expected \"Z\" or \"Z_(p)\"")]
    UnknownRing(String),
}

impl RingSpec {
    pub fn localized_at(p: u64) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(RingSpec::LocalizedAt(p))
    }

    pub fn is_local(&self) -> bool {
        matches!(self, RingSpec::LocalizedAt(_))
    }

    /// The unique maximal ideal generator for the local ring, if any.
    pub fn local_prime(&self) -> Option<u64> {
        match self {
            RingSpec::Integers => None,
            RingSpec::LocalizedAt(p) => Some(*p),
        }
    }

    /// Checks that `(p)` is a maximal ideal of this ring.
    pub fn check_prime(&self, p: u64) -> Result<(), RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        match self {
            RingSpec::Integers => Ok(()),
            RingSpec::LocalizedAt(q) if *q == p => Ok(()),
            _ => Err(RingError::InadmissiblePrime { p, ring: *self }),
        }
    }

    pub fn same_as(&self, other: &RingSpec) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::RingMismatch(*self, *other))
        }
    }

    pub fn parse(text: &str) -> Result<Self, RingError> {
        let t = text.trim();
        if t == "Z" {
            return Ok(RingSpec::Integers);
        }
        if let Some(inner) = t.strip_prefix("Z_(").and_then(|s| s.strip_suffix(')')) {
            let p: u64 = inner
                .parse()
                .map_err(|_| RingError::UnknownRing(text.to_string()))?;
            return RingSpec::localized_at(p);
        }
        Err(RingError::UnknownRing(text.to_string()))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::LocalizedAt(p) => write!(f, "Z_({p})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PrimeIdeal {
    /// The zero ideal `(0)`.
    Generic,
    /// A maximal ideal `(p)`.
    Maximal(u64),
}

impl PrimeIdeal {
    pub fn maximal(ring: RingSpec, p: u64) -> Result<Self, RingError> {
        ring.check_prime(p)?;
        Ok(PrimeIdeal::Maximal(p))
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeIdeal::Generic => write!(f, "(0)"),
            PrimeIdeal::Maximal(p) => write!(f, "({p})"),
        }
    }
}

/// The maximal-ideal part of a specialization-closed set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Maximals {
    Finite(BTreeSet<u64>),
    All,
}

/// A specialization-closed subset of `Spec`.
///
/// Canonical form: if the generic point is present the maximal part is
/// `All`; over `Z_(p)` the finite set `{p}` is stored as `All` (they
/// coincide because `(p)` is the only maximal ideal).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SpclSet {
    ring: RingSpec,
    contains_generic: bool,
    maximals: Maximals,
}

impl SpclSet {
    pub fn empty(ring: RingSpec) -> Self {
        SpclSet { ring, contains_generic: false, maximals: Maximals::Finite(BTreeSet::new()) }
    }

    /// The whole spectrum.
    pub fn full(ring: RingSpec) -> Self {
        SpclSet { ring, contains_generic: true, maximals: Maximals::All }
    }

    /// All maximal ideals, without the generic point.
    pub fn all_maximals(ring: RingSpec) -> Self {
        SpclSet { ring, contains_generic: false, maximals: Maximals::All }
    }

    /// A finite set of maximal ideals `{(p) : p in primes}`.
    pub fn of_maximals<I: IntoIterator<Item = u64>>(
        ring: RingSpec,
        primes: I,
    ) -> Result<Self, RingError> {
        let mut set = BTreeSet::new();
        for p in primes {
            ring.check_prime(p)?;
            set.insert(p);
        }
        Ok(Self::canonical(ring, false, Maximals::Finite(set)))
    }

    pub fn from_parts(
        ring: RingSpec,
        contains_generic: bool,
        maximals: Maximals,
    ) -> Result<Self, RingError> {
        if let Maximals::Finite(set) = &maximals {
            for &p in set {
                ring.check_prime(p)?;
            }
            if contains_generic {
                // closure under specialization forces every maximal ideal in;
                // over the local ring {p} *is* every maximal ideal
                let covers_all = ring.local_prime().map_or(false, |p| set.contains(&p));
                if !covers_all {
                    return Err(RingError::GenericWithoutAllMaximals);
                }
            }
        }
        Ok(Self::canonical(ring, contains_generic, maximals))
    }

    fn canonical(ring: RingSpec, contains_generic: bool, maximals: Maximals) -> Self {
        let maximals = match (&maximals, ring.local_prime()) {
            (Maximals::Finite(set), Some(p)) if set.contains(&p) => Maximals::All,
            _ => maximals,
        };
        SpclSet { ring, contains_generic, maximals }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn contains_generic(&self) -> bool {
        self.contains_generic
    }

    pub fn maximals(&self) -> &Maximals {
        &self.maximals
    }

    pub fn is_empty(&self) -> bool {
        !self.contains_generic
            && matches!(&self.maximals, Maximals::Finite(s) if s.is_empty())
    }

    pub fn is_full(&self) -> bool {
        self.contains_generic
    }

    pub fn has_all_maximals(&self) -> bool {
        matches!(self.maximals, Maximals::All)
    }

    pub fn union(&self, other: &SpclSet) -> Result<SpclSet, RingError> {
        self.ring.same_as(&other.ring)?;
        let contains_generic = self.contains_generic || other.contains_generic;
        let maximals = match (&self.maximals, &other.maximals) {
            (Maximals::All, _) | (_, Maximals::All) => Maximals::All,
            (Maximals::Finite(a), Maximals::Finite(b)) => {
                Maximals::Finite(a.union(b).copied().collect())
            }
        };
        // generic point never appears without All (both inputs canonical)
        Ok(Self::canonical(self.ring, contains_generic, maximals))
    }

    pub fn contains(&self, point: &PrimeIdeal) -> Result<bool, RingError> {
        match point {
            PrimeIdeal::Generic => Ok(self.contains_generic),
            PrimeIdeal::Maximal(p) => {
                self.ring.check_prime(*p)?;
                Ok(match &self.maximals {
                    Maximals::All => true,
                    Maximals::Finite(set) => set.contains(p),
                })
            }
        }
    }

    pub fn is_subset_of(&self, other: &SpclSet) -> Result<bool, RingError> {
        self.ring.same_as(&other.ring)?;
        if self.contains_generic && !other.contains_generic {
            return Ok(false);
        }
        Ok(match (&self.maximals, &other.maximals) {
            (_, Maximals::All) => true,
            (Maximals::All, Maximals::Finite(_)) => false,
            (Maximals::Finite(a), Maximals::Finite(b)) => a.is_subset(b),
        })
    }
}

impl fmt::Display for SpclSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.contains_generic {
            parts.push("generic".to_string());
        }
        match &self.maximals {
            Maximals::All => parts.push("all".to_string()),
            Maximals::Finite(set) => parts.extend(set.iter().map(|p| p.to_string())),
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}
