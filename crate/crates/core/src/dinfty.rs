//! The tower D_0, D_1, …, D_r of finite lattices with embedding-projection
//! pairs, finite-rank representatives of points of the limit, and
//! rank-stable self-application.
//!
//! D_0 is the Sierpinski space (the flat domain on one point) and each
//! D_{n+1} is the exponential of D_n with itself, carried here as the
//! enumeration of monotone self-maps. The generating maps are
//!
//! ```text
//! ε_0(x)     = the constant-x map           π_0(f)     = f(⊥)
//! ε_{n+1}(f) = ε_n ∘ f ∘ π_n               π_{n+1}(f) = π_n ∘ f ∘ ε_n
//! ```
//!
//! and each (ε_n, π_n) is an embedding-projection pair: π_n ∘ ε_n is the
//! identity and ε_n ∘ π_n is deflationary. Composites ε_{n,m}, π_{n,m} and
//! the element-wise laws are re-verified on every build; [`verify_laws`]
//! re-runs them exhaustively (or on a sample above a size cap) and reports
//! witnesses for any failure.
//!
//! Cardinalities grow violently: |D_0| = 2, |D_1| = 3, |D_2| = 10,
//! |D_3| = 120549. Levels stay materialised as explicit posets only up to
//! a size cap; above it (D_3) the carrier is kept as function tables and
//! the order is computed pointwise through the level below, which is all
//! the ep-pair laws need. D_4 is out of reach and the build refuses it.
//!
//! A [`DInftyElem`] is a finite-rank shadow of a point of the limit: a rank
//! and an element index, compared by embedding to a common rank. Its
//! canonical form is the minimal-rank representative ([`Tower::normalize`]).
//! [`Tower::apply`] reads f at working rank N as a monotone self-map of
//! D_{N-1} and applies it to x's representative — the finite-rank shadow of
//! the isomorphism between the limit and its own exponential.

use std::collections::HashMap;
use std::rc::Rc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::domain::{enumerate_monotone_tables, fixtures, FinPoset, MapError, MonoMap};

/// Default cap on the tower rank; D_4 would need the monotone self-maps of
/// a 120549-element lattice.
pub const DEFAULT_RANK_CAP: usize = 3;

/// Largest level size that still gets an explicit poset (and so brute-force
/// way-below, CLI dumps, MonoMap views).
pub const MATERIALIZE_CAP: usize = 4096;

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum TowerError {
    #[error("rank {rank} exceeds the cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },
    #[error("level {0} is not materialised as a poset")]
    NotMaterialised(usize),
    #[error("rank {rank} out of range for a tower of rank {max}")]
    RankOutOfRange { rank: usize, max: usize },
    #[error("need rank {need} ≤ working rank {have} for application")]
    ApplyRank { need: usize, have: usize },
    #[error("element {elem} out of range at rank {rank}")]
    BadElement { rank: usize, elem: usize },
    #[error("ep-pair law failed at build time: {0}")]
    BuildCheck(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

struct TowerLevel {
    size: usize,
    /// Explicit poset, absent above [`MATERIALIZE_CAP`].
    poset: Option<Rc<FinPoset>>,
    /// Monotone self-map tables over the previous level; absent at level 0.
    tables: Option<Vec<Vec<usize>>>,
    /// Table → index, for levels built as exponentials.
    index: Option<HashMap<Vec<usize>, usize>>,
}

/// The tower with its generating embedding-projection tables.
pub struct Tower {
    levels: Vec<TowerLevel>,
    /// eps[n][x]: the image of x : D_n in D_{n+1}.
    eps: Vec<Vec<usize>>,
    /// pis[n][y]: the image of y : D_{n+1} in D_n.
    pis: Vec<Vec<usize>>,
}

/// Builds the tower up to `rank` with the default cap.
pub fn build_tower(rank: usize) -> Result<Tower, TowerError> {
    build_tower_capped(rank, DEFAULT_RANK_CAP)
}

/// Builds the tower up to `rank`, refusing ranks above `cap`.
pub fn build_tower_capped(rank: usize, cap: usize) -> Result<Tower, TowerError> {
    if rank > cap {
        return Err(TowerError::RankTooLarge { rank, cap });
    }
    let d0 = Rc::new(fixtures::lift_flat(1));
    let mut levels = vec![TowerLevel {
        size: d0.len(),
        poset: Some(d0),
        tables: None,
        index: None,
    }];
    let mut eps: Vec<Vec<usize>> = Vec::new();
    let mut pis: Vec<Vec<usize>> = Vec::new();

    for n in 0..rank {
        let below = levels[n]
            .poset
            .as_ref()
            .ok_or(TowerError::NotMaterialised(n))?
            .clone();
        let tables = enumerate_monotone_tables(&below, &below, None)?;
        let size = tables.len();
        let index: HashMap<Vec<usize>, usize> = tables
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let poset = if size <= MATERIALIZE_CAP {
            let names: Vec<String> = tables
                .iter()
                .map(|t| {
                    let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                    format!("[{}]", parts.join(","))
                })
                .collect();
            let mut leq = vec![false; size * size];
            for (i, ti) in tables.iter().enumerate() {
                for (j, tj) in tables.iter().enumerate() {
                    leq[i * size + j] = ti.iter().zip(tj).all(|(&a, &b)| below.leq(a, b));
                }
            }
            Some(Rc::new(FinPoset::from_table(names, leq)))
        } else {
            None
        };
        levels.push(TowerLevel {
            size,
            poset,
            tables: Some(tables),
            index: Some(index),
        });

        // Generating maps into and out of the new level.
        let (e, p) = if n == 0 {
            let bot0 = 0usize;
            let level1 = &levels[1];
            let tables1 = level1.tables.as_ref().unwrap();
            let index1 = level1.index.as_ref().unwrap();
            let e: Vec<usize> = (0..levels[0].size)
                .map(|x| index1[&vec![x; levels[0].size]])
                .collect();
            let p: Vec<usize> = tables1.iter().map(|t| t[bot0]).collect();
            (e, p)
        } else {
            let size_prev = levels[n - 1].size;
            let size_n = levels[n].size;
            let tables_n = levels[n].tables.as_ref().unwrap();
            let tables_np1 = levels[n + 1].tables.as_ref().unwrap();
            let index_np1 = levels[n + 1].index.as_ref().unwrap();
            let index_n = levels[n].index.as_ref().unwrap();
            // ε_n(f) = ε_{n-1} ∘ f ∘ π_{n-1}, as a self-map of D_n.
            let e: Vec<usize> = (0..size_n)
                .map(|f| {
                    let table: Vec<usize> = (0..size_n)
                        .map(|h| eps[n - 1][tables_n[f][pis[n - 1][h]]])
                        .collect();
                    index_np1[&table]
                })
                .collect();
            // π_n(F) = π_{n-1} ∘ F ∘ ε_{n-1}, as a self-map of D_{n-1}.
            let p: Vec<usize> = tables_np1
                .iter()
                .map(|ft| {
                    let table: Vec<usize> = (0..size_prev)
                        .map(|x| pis[n - 1][ft[eps[n - 1][x]]])
                        .collect();
                    index_n[&table]
                })
                .collect();
            (e, p)
        };
        eps.push(e);
        pis.push(p);
    }

    let tower = Tower { levels, eps, pis };
    for n in 0..rank {
        tower.check_ep_pair(n)?;
    }
    Ok(tower)
}

impl Tower {
    pub fn rank(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.levels[n].size
    }

    /// The explicit poset of a level, when materialised.
    pub fn level_poset(&self, n: usize) -> Result<&Rc<FinPoset>, TowerError> {
        self.levels[n]
            .poset
            .as_ref()
            .ok_or(TowerError::NotMaterialised(n))
    }

    /// The self-map table of element `i` of level `n` (n ≥ 1).
    pub fn table(&self, n: usize, i: usize) -> Option<&[usize]> {
        self.levels[n]
            .tables
            .as_ref()
            .map(|t| t[i].as_slice())
    }

    /// The order at a level, computed pointwise through the level below
    /// when the level is not materialised.
    pub fn leq(&self, n: usize, i: usize, j: usize) -> bool {
        if let Some(p) = &self.levels[n].poset {
            return p.leq(i, j);
        }
        let tables = self.levels[n]
            .tables
            .as_ref()
            .expect("non-materialised levels have tables");
        tables[i]
            .iter()
            .zip(&tables[j])
            .all(|(&a, &b)| self.leq(n - 1, a, b))
    }

    /// Bottom element index of a level.
    pub fn bottom_at(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        let prev_bot = self.bottom_at(n - 1);
        let size_prev = self.levels[n - 1].size;
        self.levels[n].index.as_ref().expect("level above 0")
            [&vec![prev_bot; size_prev]]
    }

    /// ε_{n,m}: composite embedding index map, identity when n = m.
    pub fn eps_idx(&self, n: usize, m: usize, x: usize) -> usize {
        let mut v = x;
        for i in n..m {
            v = self.eps[i][v];
        }
        v
    }

    /// π_{n,m}: composite projection D_m → D_n, identity when n = m.
    pub fn pi_idx(&self, n: usize, m: usize, y: usize) -> usize {
        let mut v = y;
        for i in (n..m).rev() {
            v = self.pis[i][v];
        }
        v
    }

    /// ε_{n,m} as a monotone map between materialised levels.
    pub fn eps_map(&self, n: usize, m: usize) -> Result<MonoMap, TowerError> {
        let src = self.level_poset(n)?.clone();
        let dst = self.level_poset(m)?.clone();
        let table = (0..self.levels[n].size)
            .map(|x| self.eps_idx(n, m, x))
            .collect();
        Ok(MonoMap { source: src, target: dst, table })
    }

    /// π_{n,m} as a monotone map between materialised levels.
    pub fn pi_map(&self, n: usize, m: usize) -> Result<MonoMap, TowerError> {
        let src = self.level_poset(m)?.clone();
        let dst = self.level_poset(n)?.clone();
        let table = (0..self.levels[m].size)
            .map(|y| self.pi_idx(n, m, y))
            .collect();
        Ok(MonoMap { source: src, target: dst, table })
    }

    /// Build-time sanity: section and deflation laws for (ε_n, π_n).
    fn check_ep_pair(&self, n: usize) -> Result<(), TowerError> {
        for x in 0..self.levels[n].size {
            if self.pis[n][self.eps[n][x]] != x {
                return Err(TowerError::BuildCheck(format!(
                    "π_{n} ∘ ε_{n} ≠ id at element {x}"
                )));
            }
        }
        for y in 0..self.levels[n + 1].size {
            let down_up = self.eps[n][self.pis[n][y]];
            if !self.leq(n + 1, down_up, y) {
                return Err(TowerError::BuildCheck(format!(
                    "ε_{n} ∘ π_{n} not deflationary at element {y}"
                )));
            }
        }
        Ok(())
    }
}

/// One named law check with an optional counterexample.
#[derive(Clone, Debug)]
pub struct LawCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Report of the full law sweep.
#[derive(Clone, Debug)]
pub struct LawReport {
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Verifies, per level: π∘ε = id, ε∘π ⊑ id; composite compatibility of the
/// ε and π chains; and for each element of the top level, that the chain
/// n ↦ ε_{n,r}(π_{n,r}(x)) is increasing and reaches x at n = r. Levels
/// with more than `sample_cap` elements are checked on that many samples
/// (seeded, deterministic).
pub fn verify_laws(tower: &Tower, sample_cap: usize) -> LawReport {
    let mut checks = Vec::new();
    let r = tower.rank();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let sample = |size: usize, rng: &mut StdRng| -> Vec<usize> {
        if size <= sample_cap {
            (0..size).collect()
        } else {
            (0..sample_cap).map(|_| rng.gen_range(0..size)).collect()
        }
    };

    for n in 0..r {
        let mut passed = true;
        let mut witness = None;
        for x in sample(tower.level_size(n), &mut rng) {
            if tower.pis[n][tower.eps[n][x]] != x {
                passed = false;
                witness = Some(format!("π∘ε moves element {x} of D_{n}"));
                break;
            }
        }
        if passed {
            for y in sample(tower.level_size(n + 1), &mut rng) {
                let down_up = tower.eps[n][tower.pis[n][y]];
                if !tower.leq(n + 1, down_up, y) {
                    passed = false;
                    witness =
                        Some(format!("ε∘π not below id at element {y} of D_{}", n + 1));
                    break;
                }
            }
        }
        checks.push(LawCheck {
            name: format!("ep-pair[{n}]"),
            passed,
            witness,
        });
    }

    // ε_{n,k} = ε_{m,k} ∘ ε_{n,m} and π_{n,k} = π_{n,m} ∘ π_{m,k}.
    let mut passed = true;
    let mut witness = None;
    'outer: for n in 0..=r {
        for m in n..=r {
            for k in m..=r {
                for x in sample(tower.level_size(n), &mut rng) {
                    let direct = tower.eps_idx(n, k, x);
                    let via = tower.eps_idx(m, k, tower.eps_idx(n, m, x));
                    if direct != via {
                        passed = false;
                        witness = Some(format!("ε composite differs at D_{n}∋{x} via D_{m} to D_{k}"));
                        break 'outer;
                    }
                }
                for y in sample(tower.level_size(k), &mut rng) {
                    let direct = tower.pi_idx(n, k, y);
                    let via = tower.pi_idx(n, m, tower.pi_idx(m, k, y));
                    if direct != via {
                        passed = false;
                        witness = Some(format!("π composite differs at D_{k}∋{y} via D_{m} to D_{n}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    checks.push(LawCheck {
        name: "composites".into(),
        passed,
        witness,
    });

    // Chain stabilisation at the top level.
    let mut passed = true;
    let mut witness = None;
    'chain: for x in sample(tower.level_size(r), &mut rng) {
        let mut prev: Option<usize> = None;
        for n in 0..=r {
            let approx = tower.eps_idx(n, r, tower.pi_idx(n, r, x));
            if let Some(p) = prev {
                if !tower.leq(r, p, approx) {
                    passed = false;
                    witness = Some(format!("chain not increasing at {x} between ranks"));
                    break 'chain;
                }
            }
            if n == r && approx != x {
                passed = false;
                witness = Some(format!("chain does not reach {x} at rank {r}"));
                break 'chain;
            }
            prev = Some(approx);
        }
    }
    checks.push(LawCheck {
        name: "chain-stabilisation".into(),
        passed,
        witness,
    });

    LawReport { checks }
}

/// A finite-rank representative of a point of the limit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DInftyElem {
    pub rank: usize,
    pub elem: usize,
    /// Minimal-rank representative: rank 0, or ε(π(x)) ≠ x.
    pub normalized: bool,
}

impl DInftyElem {
    pub fn new(rank: usize, elem: usize) -> DInftyElem {
        DInftyElem {
            rank,
            elem,
            normalized: false,
        }
    }
}

impl Tower {
    fn check_elem(&self, e: DInftyElem) -> Result<(), TowerError> {
        if e.rank > self.rank() {
            return Err(TowerError::RankOutOfRange {
                rank: e.rank,
                max: self.rank(),
            });
        }
        if e.elem >= self.level_size(e.rank) {
            return Err(TowerError::BadElement {
                rank: e.rank,
                elem: e.elem,
            });
        }
        Ok(())
    }

    /// The least element, at its minimal rank.
    pub fn bottom_elem(&self) -> DInftyElem {
        DInftyElem {
            rank: 0,
            elem: self.bottom_at(0),
            normalized: true,
        }
    }

    /// Re-represents an element at a higher rank via the embeddings.
    pub fn embed_to(&self, e: DInftyElem, m: usize) -> Result<DInftyElem, TowerError> {
        self.check_elem(e)?;
        if m < e.rank || m > self.rank() {
            return Err(TowerError::RankOutOfRange { rank: m, max: self.rank() });
        }
        Ok(DInftyElem {
            rank: m,
            elem: self.eps_idx(e.rank, m, e.elem),
            normalized: e.normalized && m == e.rank,
        })
    }

    /// Projects down while ε∘π fixes the element, reaching the minimal-rank
    /// representative.
    pub fn normalize(&self, e: DInftyElem) -> Result<DInftyElem, TowerError> {
        self.check_elem(e)?;
        let mut rank = e.rank;
        let mut elem = e.elem;
        while rank > 0 {
            let down = self.pis[rank - 1][elem];
            if self.eps[rank - 1][down] == elem {
                rank -= 1;
                elem = down;
            } else {
                break;
            }
        }
        Ok(DInftyElem {
            rank,
            elem,
            normalized: true,
        })
    }

    /// Equality by comparison at a common rank (sound because ε is a
    /// section of π and order-reflecting).
    pub fn elems_eq(&self, a: DInftyElem, b: DInftyElem) -> Result<bool, TowerError> {
        let m = a.rank.max(b.rank);
        let ea = self.embed_to(a, m)?;
        let eb = self.embed_to(b, m)?;
        Ok(ea.elem == eb.elem)
    }

    /// Order at a common rank.
    pub fn elems_leq(&self, a: DInftyElem, b: DInftyElem) -> Result<bool, TowerError> {
        let m = a.rank.max(b.rank);
        let ea = self.embed_to(a, m)?;
        let eb = self.embed_to(b, m)?;
        Ok(self.leq(m, ea.elem, eb.elem))
    }

    /// Applies f to x at working rank `n`: the representative of f at rank
    /// n is a monotone self-map of D_{n-1}, evaluated at x's representative
    /// at rank n-1. Requires n ≥ max(rank f, rank x + 1) and n ≤ tower rank.
    pub fn apply(
        &self,
        f: DInftyElem,
        x: DInftyElem,
        n: usize,
    ) -> Result<DInftyElem, TowerError> {
        self.check_elem(f)?;
        self.check_elem(x)?;
        let need = f.rank.max(x.rank + 1);
        if n < need {
            return Err(TowerError::ApplyRank { need, have: n });
        }
        if n > self.rank() || n == 0 {
            return Err(TowerError::RankOutOfRange { rank: n, max: self.rank() });
        }
        let g = self.embed_to(f, n)?;
        let arg = self.embed_to(x, n - 1)?;
        let table = self
            .table(n, g.elem)
            .expect("levels above 0 carry tables");
        let result = DInftyElem::new(n - 1, table[arg.elem]);
        self.normalize(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::check_compact_basis;

    #[test]
    fn level_cardinalities() {
        let t = build_tower(2).unwrap();
        assert_eq!(t.level_size(0), 2);
        assert_eq!(t.level_size(1), 3);
        assert_eq!(t.level_size(2), 10);
    }

    #[test]
    fn rank_cap_is_enforced() {
        assert!(matches!(
            build_tower(4),
            Err(TowerError::RankTooLarge { .. })
        ));
        assert!(matches!(
            build_tower_capped(2, 1),
            Err(TowerError::RankTooLarge { .. })
        ));
    }

    #[test]
    fn eps_composites_match_manual_composition() {
        let t = build_tower(2).unwrap();
        for x in 0..t.level_size(0) {
            assert_eq!(t.eps_idx(0, 0, x), x);
            let manual = t.eps[1][t.eps[0][x]];
            assert_eq!(t.eps_idx(0, 2, x), manual);
        }
        for y in 0..t.level_size(2) {
            let manual = t.pis[0][t.pis[1][y]];
            assert_eq!(t.pi_idx(0, 2, y), manual);
        }
    }

    #[test]
    fn laws_hold_at_rank_two() {
        let t = build_tower(2).unwrap();
        let report = verify_laws(&t, usize::MAX);
        assert!(report.passed(), "{:?}", report.checks);
    }

    #[test]
    fn corrupted_projection_is_detected() {
        let mut t = build_tower(2).unwrap();
        // Project the identity map of D_1 to top instead of bottom: π∘ε is
        // untouched, but ε_0∘π_0 now inflates the identity.
        let id1 = t.levels[1].index.as_ref().unwrap()[&vec![0usize, 1]];
        t.pis[0][id1] = 1;
        let report = verify_laws(&t, usize::MAX);
        assert!(!report.passed());
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
        assert!(
            failed
                .iter()
                .any(|c| c.witness.as_deref().is_some_and(|w| w.contains("not below id"))),
            "{failed:?}"
        );
    }

    #[test]
    fn embedding_preserves_and_reflects_order_and_compactness() {
        let t = build_tower(2).unwrap();
        for n in 0..2 {
            let p = t.level_poset(n).unwrap();
            let q = t.level_poset(n + 1).unwrap();
            for x in 0..p.len() {
                for y in 0..p.len() {
                    assert_eq!(
                        p.leq(x, y),
                        q.leq(t.eps[n][x], t.eps[n][y]),
                        "order preservation/reflection fails at rank {n}"
                    );
                }
                assert_eq!(
                    p.is_compact(x).unwrap(),
                    q.is_compact(t.eps[n][x]).unwrap()
                );
            }
        }
    }

    #[test]
    fn every_level_is_its_own_compact_basis() {
        let t = build_tower(2).unwrap();
        for n in 0..=2 {
            let p = t.level_poset(n).unwrap();
            let all: Vec<usize> = (0..p.len()).collect();
            let report = check_compact_basis(p, &all).unwrap();
            assert!(report.passed(), "rank {n}: {:?}", report.failures);
        }
    }

    #[test]
    fn bottom_normalizes_to_rank_zero() {
        let t = build_tower(2).unwrap();
        let bot2 = DInftyElem::new(2, t.bottom_at(2));
        let n = t.normalize(bot2).unwrap();
        assert_eq!(n.rank, 0);
        assert_eq!(n.elem, 0);
        assert!(n.normalized);
    }

    #[test]
    fn normalize_after_embedding_restores_the_element() {
        let t = build_tower(2).unwrap();
        for rank in 0..=2usize {
            for elem in 0..t.level_size(rank) {
                let e = t.normalize(DInftyElem::new(rank, elem)).unwrap();
                let up = t.embed_to(e, (e.rank + 2).min(t.rank())).unwrap();
                let back = t.normalize(up).unwrap();
                assert_eq!(back, e);
                // Idempotence.
                assert_eq!(t.normalize(e).unwrap(), e);
            }
        }
    }

    #[test]
    fn common_rank_order_is_antisymmetric_on_normal_forms() {
        let t = build_tower(2).unwrap();
        let mut reps = Vec::new();
        for rank in 0..=2usize {
            for elem in 0..t.level_size(rank) {
                let n = t.normalize(DInftyElem::new(rank, elem)).unwrap();
                if !reps.contains(&n) {
                    reps.push(n);
                }
            }
        }
        for &a in &reps {
            for &b in &reps {
                if t.elems_leq(a, b).unwrap() && t.elems_leq(b, a).unwrap() {
                    assert!(t.elems_eq(a, b).unwrap());
                    assert_eq!(a, b, "normal forms must be unique");
                }
            }
        }
    }

    #[test]
    fn identity_and_constant_bottom_apply_as_expected() {
        let t = build_tower(2).unwrap();
        // The identity self-map of D_0 is the element [0,1] of D_1.
        let id1 = t.levels[1]
            .index
            .as_ref()
            .unwrap()[&vec![0usize, 1]];
        let top0 = DInftyElem::new(0, 1);
        let f = DInftyElem::new(1, id1);
        let r = t.apply(f, top0, 1).unwrap();
        assert!(t.elems_eq(r, top0).unwrap());

        let const_bot = DInftyElem::new(1, t.bottom_at(1));
        for x in 0..t.level_size(0) {
            let arg = DInftyElem::new(0, x);
            let r1 = t.apply(const_bot, arg, 1).unwrap();
            let r2 = t.apply(const_bot, arg, 2).unwrap();
            assert_eq!(r1, t.bottom_elem());
            assert_eq!(r1, r2, "normalized result must not depend on the rank");
        }
    }

    #[test]
    fn apply_is_rank_stable() {
        let t = build_tower(2).unwrap();
        for f_elem in 0..t.level_size(1) {
            for x_elem in 0..t.level_size(0) {
                let f = DInftyElem::new(1, f_elem);
                let x = DInftyElem::new(0, x_elem);
                let lo = t.apply(f, x, 1).unwrap();
                let hi = t.apply(f, x, 2).unwrap();
                assert!(t.elems_eq(lo, hi).unwrap(), "f={f_elem} x={x_elem}");
            }
        }
    }

    #[test]
    fn apply_is_monotone_in_both_arguments() {
        let t = build_tower(2).unwrap();
        let n = 2usize;
        for f1 in 0..t.level_size(n) {
            for f2 in 0..t.level_size(n) {
                if !t.leq(n, f1, f2) {
                    continue;
                }
                for x1 in 0..t.level_size(n - 1) {
                    for x2 in 0..t.level_size(n - 1) {
                        if !t.leq(n - 1, x1, x2) {
                            continue;
                        }
                        let r1 = t
                            .apply(DInftyElem::new(n, f1), DInftyElem::new(n - 1, x1), n)
                            .unwrap();
                        let r2 = t
                            .apply(DInftyElem::new(n, f2), DInftyElem::new(n - 1, x2), n)
                            .unwrap();
                        assert!(t.elems_leq(r1, r2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn apply_rank_preconditions() {
        let t = build_tower(2).unwrap();
        let f = DInftyElem::new(1, 0);
        let x = DInftyElem::new(1, 0);
        // Needs n ≥ rank x + 1 = 2.
        assert!(matches!(
            t.apply(f, x, 1),
            Err(TowerError::ApplyRank { .. })
        ));
        assert!(t.apply(f, x, 2).is_ok());
    }
}
