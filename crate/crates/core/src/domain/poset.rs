//! Finite posets with machine-checked order laws.
//!
//! A [`FinPoset`] is a list of named elements together with a full `leq`
//! table. Construction does not validate the table: [`FinPoset::validate`]
//! reports every violated law with witnesses, so tests can build broken
//! relations on purpose. Everything downstream (suprema, way-below,
//! exponentials, the tower) assumes a validated poset.
//!
//! The way-below relation is decided by brute force: quantify over all
//! directed subsets. On a finite carrier every directed subset has a maximum,
//! so the scan is exact, but it is exponential in the carrier size and is
//! therefore rejected above a configurable cap.

use std::fmt;

use thiserror::Error;

/// Default carrier-size cap for the 2^n directed-subset scans.
pub const WAY_BELOW_CAP: usize = 12;

/// A subset of a finite carrier, as a bitmask. Only usable for carriers of
/// at most 64 elements, which covers every brute-force scan in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub fn empty() -> Self {
        Subset(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= 64);
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1u64 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let mut bits = 0u64;
        for &i in indices {
            bits |= 1u64 << i;
        }
        Subset(bits)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(&self, i: usize) -> Self {
        Subset(self.0 | 1u64 << i)
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &Subset) -> Self {
        Subset(self.0 | other.0)
    }

    /// Indices of the members, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |i| self.contains(*i))
    }

    /// All subsets of an n-element carrier, in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < 64, "subset enumeration needs n < 64");
        (0u64..1u64 << n).map(Subset)
    }
}

/// A violated poset law, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetViolation {
    NotReflexive { x: usize },
    NotTransitive { x: usize, y: usize, z: usize },
    NotAntisymmetric { x: usize, y: usize },
}

impl fmt::Display for PosetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetViolation::NotReflexive { x } => write!(f, "reflexivity fails at {x}"),
            PosetViolation::NotTransitive { x, y, z } => {
                write!(f, "transitivity fails on ({x},{y},{z})")
            }
            PosetViolation::NotAntisymmetric { x, y } => {
                write!(f, "antisymmetry fails on ({x},{y})")
            }
        }
    }
}

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset has {size} elements, over the cap of {cap} for the directed-subset scan")]
    TooLargeForScan { size: usize, cap: usize },
    #[error("element index {index} out of range for poset of size {size}")]
    BadIndex { index: usize, size: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
}

/// A finite poset: named elements and a total `leq` table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinPoset {
    names: Vec<String>,
    /// Row-major: `leq[i * n + j]` holds iff element i ⊑ element j.
    leq: Vec<bool>,
}

impl FinPoset {
    /// Builds a poset from an explicit table without validating the laws.
    pub fn from_table(names: Vec<String>, leq: Vec<bool>) -> FinPoset {
        assert_eq!(leq.len(), names.len() * names.len());
        FinPoset { names, leq }
    }

    /// Builds the reflexive-transitive closure of the generating pairs.
    /// The result satisfies reflexivity and transitivity by construction;
    /// antisymmetry still needs [`FinPoset::validate`].
    pub fn from_generators(names: Vec<String>, pairs: &[(usize, usize)]) -> FinPoset {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            leq[a * n + b] = true;
        }
        // Floyd-Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        FinPoset { names, leq }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    /// Checks reflexivity, transitivity and antisymmetry, listing every
    /// violation with witnesses.
    pub fn validate(&self) -> Result<(), Vec<PosetViolation>> {
        let n = self.len();
        let mut violations = Vec::new();
        for x in 0..n {
            if !self.leq(x, x) {
                violations.push(PosetViolation::NotReflexive { x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !self.leq(x, y) {
                    continue;
                }
                if x < y && self.leq(y, x) {
                    violations.push(PosetViolation::NotAntisymmetric { x, y });
                }
                for z in 0..n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        violations.push(PosetViolation::NotTransitive { x, y, z });
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// The least element, if there is one.
    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|x| self.leq(b, x)))
    }

    /// Directedness: inhabited, and every pair of members has an upper bound
    /// among the members.
    pub fn is_directed(&self, s: Subset) -> bool {
        if s.is_empty() {
            return false;
        }
        let members: Vec<usize> = s.iter().take_while(|&i| i < self.len()).collect();
        members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| members.iter().any(|&c| self.leq(a, c) && self.leq(b, c)))
        })
    }

    /// Least upper bound of a subset, when it exists. The empty subset has
    /// every element as an upper bound, so its sup is the least element.
    pub fn sup(&self, s: Subset) -> Option<usize> {
        self.sup_of(s.iter().take_while(|&i| i < self.len()))
    }

    /// Least upper bound of an arbitrary index collection.
    pub fn sup_of(&self, elems: impl Iterator<Item = usize>) -> Option<usize> {
        let members: Vec<usize> = elems.collect();
        let uppers: Vec<usize> = (0..self.len())
            .filter(|&u| members.iter().all(|&m| self.leq(m, u)))
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&u0| uppers.iter().all(|&u| self.leq(u0, u)))
    }

    /// Binary join.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.sup_of([i, j].into_iter())
    }

    /// Way-below by exhaustive scan over directed subsets, with the default
    /// size cap.
    pub fn way_below(&self, x: usize, y: usize) -> Result<bool, PosetError> {
        self.way_below_with_cap(x, y, WAY_BELOW_CAP)
    }

    /// Way-below: for every directed subset S with y ⊑ sup S, some member s
    /// of S already satisfies x ⊑ s.
    pub fn way_below_with_cap(&self, x: usize, y: usize, cap: usize) -> Result<bool, PosetError> {
        let n = self.len();
        if n > cap {
            return Err(PosetError::TooLargeForScan { size: n, cap });
        }
        if x >= n || y >= n {
            return Err(PosetError::BadIndex {
                index: x.max(y),
                size: n,
            });
        }
        for s in Subset::all(n) {
            if !self.is_directed(s) {
                continue;
            }
            let sup = match self.sup(s) {
                Some(v) => v,
                None => continue,
            };
            if self.leq(y, sup) && !s.iter().any(|m| self.leq(x, m)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Compactness: x way below itself.
    pub fn is_compact(&self, x: usize) -> Result<bool, PosetError> {
        self.way_below(x, x)
    }

    pub fn is_compact_with_cap(&self, x: usize, cap: usize) -> Result<bool, PosetError> {
        self.way_below_with_cap(x, x, cap)
    }

    /// A linear extension: a permutation of the elements in which every
    /// element appears after all elements strictly below it. Deterministic
    /// (smallest index first among the minimal remaining elements).
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n).find(|&c| {
                !placed[c]
                    && (0..n).all(|o| o == c || placed[o] || !self.leq(o, c) || self.leq(c, o))
            });
            match next {
                Some(c) => {
                    placed[c] = true;
                    out.push(c);
                }
                None => {
                    // Order is cyclic (invalid poset); fall back to index order.
                    let c = (0..n).find(|&c| !placed[c]).unwrap();
                    placed[c] = true;
                    out.push(c);
                }
            }
        }
        out
    }
}
