//! Abstract bases: a decidable transitive relation with nullary and binary
//! interpolation, checked exhaustively on finite carriers or over a sample
//! otherwise, with constructive witnesses when the basis can provide them.

use std::fmt::Debug;

use crate::domain::FinPoset;
use crate::dyadics::{self, Dyadic};

/// The operations a basis must offer to be checkable. Witness methods are
/// optional accelerators; when absent the checker searches the sample.
pub trait BasisOps {
    type Elem: Clone + PartialEq + Debug + ToString;

    fn prec(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// A b with b ≺ a, for nullary interpolation.
    fn nullary_witness(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// A c with a1, a2 ≺ c ≺ b, given a1, a2 ≺ b, for binary interpolation.
    fn binary_witness(
        &self,
        _a1: &Self::Elem,
        _a2: &Self::Elem,
        _b: &Self::Elem,
    ) -> Option<Self::Elem> {
        None
    }
}

/// A finite basis: elements by index, relation by table. Not closed or
/// normalised in any way; the checker reports what holds.
#[derive(Clone, Debug)]
pub struct FiniteBasis {
    names: Vec<String>,
    prec: Vec<bool>,
}

impl FiniteBasis {
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)], reflexive: bool) -> FiniteBasis {
        let n = names.len();
        let mut prec = vec![false; n * n];
        for &(a, b) in pairs {
            prec[a * n + b] = true;
        }
        if reflexive {
            for i in 0..n {
                prec[i * n + i] = true;
            }
        }
        FiniteBasis { names, prec }
    }

    /// Views a poset's order as a (reflexive) basis relation.
    pub fn from_poset(p: &FinPoset) -> FiniteBasis {
        let n = p.len();
        let names = p.names().to_vec();
        let prec = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| p.leq(i, j))
            .collect();
        FiniteBasis { names, prec }
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

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn rel(&self, a: usize, b: usize) -> bool {
        self.prec[a * self.len() + b]
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

impl BasisOps for FiniteBasis {
    type Elem = usize;

    fn prec(&self, a: &usize, b: &usize) -> bool {
        self.rel(*a, *b)
    }
}

/// The dyadics with their strict order, as an abstract basis with
/// interpolant/endpoint witnesses.
#[derive(Clone, Copy, Debug, Default)]
pub struct DyadicBasis;

impl BasisOps for DyadicBasis {
    type Elem = Dyadic;

    fn prec(&self, a: &Dyadic, b: &Dyadic) -> bool {
        dyadics::prec(a, b)
    }

    fn nullary_witness(&self, a: &Dyadic) -> Option<Dyadic> {
        Some(dyadics::endpoints(a).0)
    }

    fn binary_witness(&self, a1: &Dyadic, a2: &Dyadic, b: &Dyadic) -> Option<Dyadic> {
        // The ≺-larger of the two (either, when equal) interpolated with b
        // sits strictly above both and strictly below b.
        let a = if dyadics::prec(a1, a2) { a2 } else { a1 };
        dyadics::interpolant(a, b).ok()
    }
}

/// Parses the basis text format: an optional bare `reflexive` line, `elem`
/// declarations and `prec` pairs. Unlike the poset loader this takes the
/// relation as given (no closure); the axioms are checked separately by
/// [`check_abstract_basis`].
pub fn parse_basis(src: &str) -> Result<FiniteBasis, crate::domain::TextError> {
    use crate::domain::TextError;
    let mut names: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut reflexive = false;
    for (line, text) in src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
    {
        let mut words = text.split_whitespace();
        match words.next().unwrap() {
            "reflexive" => reflexive = true,
            "elem" => {
                let name = words
                    .next()
                    .ok_or(TextError::Malformed { line, expected: "elem <name>" })?;
                if names.iter().any(|n| n == name) {
                    return Err(TextError::DuplicateElement { line, name: name.into() });
                }
                names.push(name.to_string());
            }
            "prec" => {
                let a = words
                    .next()
                    .ok_or(TextError::Malformed { line, expected: "prec <a> <b>" })?;
                let b = words
                    .next()
                    .ok_or(TextError::Malformed { line, expected: "prec <a> <b>" })?;
                let ia = names.iter().position(|n| n == a).ok_or_else(|| {
                    TextError::UnknownElement { line, name: a.into() }
                })?;
                let ib = names.iter().position(|n| n == b).ok_or_else(|| {
                    TextError::UnknownElement { line, name: b.into() }
                })?;
                pairs.push((ia, ib));
            }
            other => {
                return Err(TextError::UnknownDirective { line, word: other.into() })
            }
        }
    }
    Ok(FiniteBasis::new(names, &pairs, reflexive))
}

/// Outcome of checking the abstract-basis axioms over a sample (exhaustive
/// when the sample is the whole carrier).
#[derive(Clone, Debug)]
pub struct BasisReport {
    pub transitive: bool,
    pub nullary: bool,
    pub binary: bool,
    /// (a, b) pairs with b ≺ a, one per sampled a.
    pub nullary_witnesses: Vec<(String, String)>,
    /// ((a1, a2, b), c) with a1, a2 ≺ c ≺ b.
    pub binary_witnesses: Vec<((String, String, String), String)>,
    pub failures: Vec<String>,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.transitive && self.nullary && self.binary
    }
}

/// Verifies transitivity and both interpolation axioms of `basis` over
/// `sample`. Provided witnesses are verified, never trusted; without one the
/// checker searches the sample.
pub fn check_abstract_basis<B: BasisOps>(basis: &B, sample: &[B::Elem]) -> BasisReport {
    let mut report = BasisReport {
        transitive: true,
        nullary: true,
        binary: true,
        nullary_witnesses: Vec::new(),
        binary_witnesses: Vec::new(),
        failures: Vec::new(),
    };
    for a in sample {
        for b in sample {
            if !basis.prec(a, b) {
                continue;
            }
            for c in sample {
                if basis.prec(b, c) && !basis.prec(a, c) {
                    report.transitive = false;
                    report.failures.push(format!(
                        "transitivity fails on ({}, {}, {})",
                        a.to_string(),
                        b.to_string(),
                        c.to_string()
                    ));
                }
            }
        }
    }
    for a in sample {
        let witness = basis
            .nullary_witness(a)
            .filter(|w| basis.prec(w, a))
            .or_else(|| sample.iter().find(|w| basis.prec(w, a)).cloned());
        match witness {
            Some(w) => report
                .nullary_witnesses
                .push((a.to_string(), w.to_string())),
            None => {
                report.nullary = false;
                report
                    .failures
                    .push(format!("nullary interpolation fails at {}", a.to_string()));
            }
        }
    }
    for b in sample {
        for a1 in sample {
            if !basis.prec(a1, b) {
                continue;
            }
            for a2 in sample {
                if !basis.prec(a2, b) {
                    continue;
                }
                let fits = |c: &B::Elem| {
                    basis.prec(a1, c) && basis.prec(a2, c) && basis.prec(c, b)
                };
                let witness = basis
                    .binary_witness(a1, a2, b)
                    .filter(|c| fits(c))
                    .or_else(|| sample.iter().find(|c| fits(c)).cloned());
                match witness {
                    Some(c) => report.binary_witnesses.push((
                        (a1.to_string(), a2.to_string(), b.to_string()),
                        c.to_string(),
                    )),
                    None => {
                        report.binary = false;
                        report.failures.push(format!(
                            "binary interpolation fails for {}, {} ≺ {}",
                            a1.to_string(),
                            a2.to_string(),
                            b.to_string()
                        ));
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::fixtures;
    use crate::dyadics::enumerate_depth;

    #[test]
    fn finite_reflexive_chain_is_an_abstract_basis() {
        let b = FiniteBasis::from_poset(&fixtures::chain(3));
        let report = check_abstract_basis(&b, &b.elements());
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn dyadics_pass_with_constructive_witnesses() {
        let b = DyadicBasis;
        let sample = enumerate_depth(3);
        let report = check_abstract_basis(&b, &sample);
        assert!(report.passed(), "{:?}", report.failures);
        assert!(!report.binary_witnesses.is_empty());
    }

    #[test]
    fn missing_transitivity_is_reported_with_triple() {
        // a ≺ b, b ≺ c, but not a ≺ c.
        let b = FiniteBasis::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1), (1, 2)],
            false,
        );
        let report = check_abstract_basis(&b, &b.elements());
        assert!(!report.transitive);
        assert!(report
            .failures
            .iter()
            .any(|f| f.contains("transitivity fails on (0, 1, 2)")));
    }

    #[test]
    fn irreflexive_point_fails_nullary_interpolation() {
        let b = FiniteBasis::new(vec!["a".into()], &[], false);
        let report = check_abstract_basis(&b, &b.elements());
        assert!(!report.nullary);
    }

    #[test]
    fn basis_file_with_reflexive_flag() {
        let src = "reflexive\nelem a\nelem b\nprec a b\n";
        let b = parse_basis(src).unwrap();
        assert!(b.rel(0, 0) && b.rel(1, 1) && b.rel(0, 1) && !b.rel(1, 0));
        let report = check_abstract_basis(&b, &b.elements());
        assert!(report.passed());
    }
}
