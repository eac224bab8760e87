//! Monotone maps between finite posets: table representation, enumeration,
//! products, exponentials and Kleene least fixed points.
//!
//! On a finite poset every directed subset has a maximum, so the monotone
//! maps are exactly the Scott continuous ones; the exponential carrier is
//! therefore enumerated as the set of all monotone maps. Enumeration is
//! deterministic: values are assigned along a fixed linear extension of the
//! source, trying target elements in index order, so element indices of an
//! exponential are reproducible across runs.

use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

use super::poset::{FinPoset, PosetError};

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    #[error("table length {got} does not match source size {want}")]
    TableLength { got: usize, want: usize },
    #[error("table value {value} out of range for target of size {size}")]
    ValueRange { value: usize, size: usize },
    #[error("map is not monotone: {x} ⊑ {y} but images are unrelated")]
    NotMonotone { x: usize, y: usize },
    #[error("source and target mismatch for composition")]
    ComposeMismatch,
    #[error("enumeration exceeded cap of {cap} maps")]
    EnumerationCap { cap: usize },
    #[error("least fixed point needs an endomap on a pointed poset")]
    LfpShape,
    #[error("no monotone row for source element {x} while currying")]
    CurryRow { x: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A monotone map between finite posets, as a full table of image indices.
#[derive(Clone, Debug)]
pub struct MonoMap {
    pub source: Rc<FinPoset>,
    pub target: Rc<FinPoset>,
    pub table: Vec<usize>,
}

impl MonoMap {
    /// Validates the table: total, in range, monotone.
    pub fn new(
        source: Rc<FinPoset>,
        target: Rc<FinPoset>,
        table: Vec<usize>,
    ) -> Result<MonoMap, MapError> {
        if table.len() != source.len() {
            return Err(MapError::TableLength {
                got: table.len(),
                want: source.len(),
            });
        }
        if let Some(&v) = table.iter().find(|&&v| v >= target.len()) {
            return Err(MapError::ValueRange {
                value: v,
                size: target.len(),
            });
        }
        if let Some((x, y)) = first_monotonicity_failure(&source, &target, &table) {
            return Err(MapError::NotMonotone { x, y });
        }
        Ok(MonoMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(p: &Rc<FinPoset>) -> MonoMap {
        MonoMap {
            source: Rc::clone(p),
            target: Rc::clone(p),
            table: (0..p.len()).collect(),
        }
    }

    /// The map that is constantly `v`.
    pub fn constant(source: &Rc<FinPoset>, target: &Rc<FinPoset>, v: usize) -> MonoMap {
        MonoMap {
            source: Rc::clone(source),
            target: Rc::clone(target),
            table: vec![v; source.len()],
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// self ∘ other (first `other`, then `self`).
    pub fn compose(&self, other: &MonoMap) -> Result<MonoMap, MapError> {
        if other.target.len() != self.source.len() {
            return Err(MapError::ComposeMismatch);
        }
        Ok(MonoMap {
            source: Rc::clone(&other.source),
            target: Rc::clone(&self.target),
            table: other.table.iter().map(|&x| self.table[x]).collect(),
        })
    }

    /// Pointwise order on maps with equal endpoints.
    pub fn leq(&self, other: &MonoMap) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| self.target.leq(a, b))
    }
}

fn first_monotonicity_failure(
    source: &FinPoset,
    target: &FinPoset,
    table: &[usize],
) -> Option<(usize, usize)> {
    for x in 0..source.len() {
        for y in 0..source.len() {
            if source.leq(x, y) && !target.leq(table[x], table[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Enumerates the tables of all monotone maps p → q, in the deterministic
/// order described in the module docs. `cap`, when given, bounds the number
/// of maps produced.
pub fn enumerate_monotone_tables(
    p: &FinPoset,
    q: &FinPoset,
    cap: Option<usize>,
) -> Result<Vec<Vec<usize>>, MapError> {
    let order = p.linear_extension();
    let np = p.len();
    let nq = q.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    if np == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    let mut assign = vec![usize::MAX; np];
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)]; // (position in order, next candidate)
    while let Some((pos, mut cand)) = stack.pop() {
        let e = order[pos];
        let mut found = None;
        while cand < nq {
            let ok = (0..pos).all(|s| {
                let u = order[s];
                !p.leq(u, e) || q.leq(assign[u], cand)
            });
            if ok {
                found = Some(cand);
                break;
            }
            cand += 1;
        }
        match found {
            None => continue, // backtrack
            Some(v) => {
                stack.push((pos, v + 1));
                assign[e] = v;
                if pos + 1 == np {
                    out.push(assign.clone());
                    if let Some(c) = cap {
                        if out.len() > c {
                            return Err(MapError::EnumerationCap { cap: c });
                        }
                    }
                } else {
                    stack.push((pos + 1, 0));
                }
            }
        }
    }
    Ok(out)
}

/// Enumerates all monotone maps p → q as [`MonoMap`]s.
pub fn enumerate_monotone_maps(
    p: &Rc<FinPoset>,
    q: &Rc<FinPoset>,
) -> Result<Vec<MonoMap>, MapError> {
    Ok(enumerate_monotone_tables(p, q, None)?
        .into_iter()
        .map(|table| MonoMap {
            source: Rc::clone(p),
            target: Rc::clone(q),
            table,
        })
        .collect())
}

/// The product poset with its projections, pairing, and index arithmetic.
/// Element (i, j) of p × q has index `i * |q| + j` and name "(pi,qj)".
pub struct Product {
    pub poset: Rc<FinPoset>,
    pub fst: MonoMap,
    pub snd: MonoMap,
    left: Rc<FinPoset>,
    right: Rc<FinPoset>,
}

impl Product {
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.right.len() + j
    }

    pub fn components(&self, k: usize) -> (usize, usize) {
        (k / self.right.len(), k % self.right.len())
    }

    /// The unique mediating map e → p × q for f : e → p and g : e → q.
    pub fn pairing(&self, f: &MonoMap, g: &MonoMap) -> Result<MonoMap, MapError> {
        if f.source.as_ref() != g.source.as_ref() {
            return Err(MapError::ComposeMismatch);
        }
        let table = f
            .table
            .iter()
            .zip(&g.table)
            .map(|(&a, &b)| self.pair_index(a, b))
            .collect();
        Ok(MonoMap {
            source: Rc::clone(&f.source),
            target: Rc::clone(&self.poset),
            table,
        })
    }
}

/// Componentwise product of two finite posets.
pub fn product(p: &Rc<FinPoset>, q: &Rc<FinPoset>) -> Product {
    let np = p.len();
    let nq = q.len();
    let names: Vec<String> = (0..np)
        .flat_map(|i| (0..nq).map(move |j| (i, j)))
        .map(|(i, j)| format!("({},{})", p.name(i), q.name(j)))
        .collect();
    let n = np * nq;
    let mut leq = vec![false; n * n];
    for i1 in 0..np {
        for j1 in 0..nq {
            for i2 in 0..np {
                for j2 in 0..nq {
                    if p.leq(i1, i2) && q.leq(j1, j2) {
                        leq[(i1 * nq + j1) * n + (i2 * nq + j2)] = true;
                    }
                }
            }
        }
    }
    let poset = Rc::new(FinPoset::from_table(names, leq));
    let fst = MonoMap {
        source: Rc::clone(&poset),
        target: Rc::clone(p),
        table: (0..n).map(|k| k / nq).collect(),
    };
    let snd = MonoMap {
        source: Rc::clone(&poset),
        target: Rc::clone(q),
        table: (0..n).map(|k| k % nq).collect(),
    };
    Product {
        poset,
        fst,
        snd,
        left: Rc::clone(p),
        right: Rc::clone(q),
    }
}

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum ExpError {
    #[error("exponential target must be pointed")]
    TargetNotPointed,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// The exponential q^p: all monotone maps p → q under the pointwise order.
/// Element i of the carrier is `maps[i]`; names render the tables, e.g.
/// "[0,1,2]" for the identity on a 3-element poset.
pub struct Exponential {
    pub poset: Rc<FinPoset>,
    pub maps: Vec<MonoMap>,
    pub source: Rc<FinPoset>,
    pub target: Rc<FinPoset>,
    index: HashMap<Vec<usize>, usize>,
}

impl Exponential {
    pub fn build(p: &Rc<FinPoset>, q: &Rc<FinPoset>) -> Result<Exponential, ExpError> {
        Self::build_with_cap(p, q, 1_000_000)
    }

    pub fn build_with_cap(
        p: &Rc<FinPoset>,
        q: &Rc<FinPoset>,
        cap: usize,
    ) -> Result<Exponential, ExpError> {
        if q.least().is_none() {
            return Err(ExpError::TargetNotPointed);
        }
        let tables = enumerate_monotone_tables(p, q, Some(cap))?;
        let n = tables.len();
        let names: Vec<String> = tables.iter().map(|t| render_table(t)).collect();
        let mut leq = vec![false; n * n];
        for (i, ti) in tables.iter().enumerate() {
            for (j, tj) in tables.iter().enumerate() {
                leq[i * n + j] = ti.iter().zip(tj).all(|(&a, &b)| q.leq(a, b));
            }
        }
        let poset = Rc::new(FinPoset::from_table(names, leq));
        let index = tables
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let maps = tables
            .into_iter()
            .map(|table| MonoMap {
                source: Rc::clone(p),
                target: Rc::clone(q),
                table,
            })
            .collect();
        Ok(Exponential {
            poset,
            maps,
            source: Rc::clone(p),
            target: Rc::clone(q),
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// eval((f, x)) = f(x).
    pub fn eval(&self, f: usize, x: usize) -> usize {
        self.maps[f].table[x]
    }

    pub fn index_of_table(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// Index of the constant-bottom map, the least element.
    pub fn bottom(&self) -> usize {
        let b = self.target.least().expect("target checked pointed");
        self.index_of_table(&vec![b; self.source.len()])
            .expect("constant-bottom map is monotone")
    }

    /// Currying: from h : p × q → r produce curry(h) : p → r^q, where this
    /// exponential is r^q and `prod` is the product p × q that h comes from.
    /// Satisfies eval((curry(h)(x), y)) = h(x, y).
    pub fn curry(&self, h: &MonoMap, prod: &Product) -> Result<MonoMap, MapError> {
        let p = &prod.left;
        let q = &prod.right;
        let mut table = Vec::with_capacity(p.len());
        for i in 0..p.len() {
            let row: Vec<usize> = (0..q.len()).map(|j| h.table[prod.pair_index(i, j)]).collect();
            let idx = self.index_of_table(&row).ok_or(MapError::CurryRow { x: i })?;
            table.push(idx);
        }
        MonoMap::new(Rc::clone(p), Rc::clone(&self.poset), table)
    }
}

fn render_table(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Least fixed point of a monotone endomap on a pointed poset, by Kleene
/// iteration from bottom. The chain f^n(⊥) stabilises within |P| steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LfpResult {
    pub elem: usize,
    pub iterations: usize,
}

pub fn lfp(f: &MonoMap) -> Result<LfpResult, MapError> {
    if f.source.as_ref() != f.target.as_ref() {
        return Err(MapError::LfpShape);
    }
    if let Some((x, y)) = first_monotonicity_failure(&f.source, &f.target, &f.table) {
        return Err(MapError::NotMonotone { x, y });
    }
    let bot = f.source.least().ok_or(MapError::LfpShape)?;
    let mut x = bot;
    let mut iterations = 0usize;
    // The Kleene chain bot ⊑ f(bot) ⊑ … ascends strictly until it hits the
    // fixed point, so it stabilises within |P| productive steps.
    while f.table[x] != x && iterations <= f.source.len() {
        x = f.table[x];
        iterations += 1;
    }
    Ok(LfpResult { elem: x, iterations })
}
