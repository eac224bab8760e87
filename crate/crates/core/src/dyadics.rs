//! The inductive dyadic rationals and their strict order.
//!
//! Think of `Middle` as 0 in the open interval (-1, 1) and of `Left`/`Right`
//! as the affine maps l(x) = (x-1)/2 and r(x) = (x+1)/2. Every value l(x) is
//! negative and every r(x) positive, which drives the nine-case order table:
//!
//! ```text
//! m    ≺ m    = false     L(x) ≺ m    = true      R(x) ≺ m    = false
//! m    ≺ L(y) = false     L(x) ≺ L(y) = x ≺ y     R(x) ≺ L(y) = false
//! m    ≺ R(y) = true      L(x) ≺ R(y) = true      R(x) ≺ R(y) = x ≺ y
//! ```
//!
//! The order is irreflexive, transitive, trichotomous and dense, and forms
//! an abstract basis whose ideal completion is continuous but has no compact
//! elements. The constructive content of density is [`interpolant`]; the
//! no-endpoints laws are [`endpoints`]. The numeric view is a debug
//! rendering only and never feeds back into any decision.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Dyadic {
    Middle,
    Left(Box<Dyadic>),
    Right(Box<Dyadic>),
}

use Dyadic::{Left, Middle, Right};

impl Dyadic {
    pub fn left(self) -> Dyadic {
        Left(Box::new(self))
    }

    pub fn right(self) -> Dyadic {
        Right(Box::new(self))
    }

    pub fn depth(&self) -> usize {
        match self {
            Middle => 0,
            Left(x) | Right(x) => 1 + x.depth(),
        }
    }

    /// The value m/2^k this tree denotes, as a reduced-denominator pair
    /// (numerator, denominator). Debug rendering only.
    pub fn to_rational(&self) -> (i64, i64) {
        match self {
            Middle => (0, 1),
            Left(x) => {
                let (n, d) = x.to_rational();
                (n - d, 2 * d)
            }
            Right(x) => {
                let (n, d) = x.to_rational();
                (n + d, 2 * d)
            }
        }
    }
}

/// The strict order, exactly the nine-case table.
pub fn prec(x: &Dyadic, y: &Dyadic) -> bool {
    match (x, y) {
        (Middle, Middle) => false,
        (Left(_), Middle) => true,
        (Right(_), Middle) => false,
        (Middle, Left(_)) => false,
        (Left(a), Left(b)) => prec(a, b),
        (Right(_), Left(_)) => false,
        (Middle, Right(_)) => true,
        (Left(_), Right(_)) => true,
        (Right(a), Right(b)) => prec(a, b),
    }
}

/// Trichotomous comparison, consistent with [`prec`] and structural
/// equality: exactly one of x ≺ y, x = y, y ≺ x holds.
pub fn compare(x: &Dyadic, y: &Dyadic) -> Ordering {
    if x == y {
        Ordering::Equal
    } else if prec(x, y) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[derive(Error, Clone, Debug, PartialEq, Eq)]
#[error("interpolant requires {x} ≺ {y}")]
pub struct NotBelow {
    pub x: Dyadic,
    pub y: Dyadic,
}

/// Density witness: a z with x ≺ z ≺ y, by the inductive construction from
/// the five possible shapes of a ≺-pair.
pub fn interpolant(x: &Dyadic, y: &Dyadic) -> Result<Dyadic, NotBelow> {
    if !prec(x, y) {
        return Err(NotBelow { x: x.clone(), y: y.clone() });
    }
    Ok(match (x, y) {
        (Middle, Right(y1)) => Right(Box::new(Left(y1.clone()))),
        (Left(x1), Middle) => Left(Box::new(Right(x1.clone()))),
        (Left(_), Right(_)) => Middle,
        (Left(x1), Left(y1)) => Left(Box::new(interpolant(x1, y1)?)),
        (Right(x1), Right(y1)) => Right(Box::new(interpolant(x1, y1)?)),
        // prec returned true, so no other shape can occur.
        _ => unreachable!("prec admits exactly five shapes"),
    })
}

/// No-endpoints witnesses: left(x) ≺ x ≺ right(x).
pub fn endpoints(x: &Dyadic) -> (Dyadic, Dyadic) {
    (x.clone().left(), x.clone().right())
}

/// All dyadics of constructor depth ≤ d; exactly 2^(d+1) - 1 of them.
pub fn enumerate_depth(d: usize) -> Vec<Dyadic> {
    let mut out = vec![Middle];
    let mut frontier = vec![Middle];
    for _ in 0..d {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for t in frontier {
            next.push(t.clone().left());
            next.push(t.right());
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl fmt::Display for Dyadic {
    /// Outermost-first constructor string: left(right(middle)) is "LRm".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Middle => write!(f, "m"),
            Left(x) => write!(f, "L{x}"),
            Right(x) => write!(f, "R{x}"),
        }
    }
}

#[derive(Error, Clone, Debug, PartialEq, Eq)]
#[error("bad dyadic `{0}`: expected L/R prefixes ending in m")]
pub struct ParseDyadicError(pub String);

/// Parses the `Display` rendering, e.g. "LRm".
pub fn parse_dyadic(s: &str) -> Result<Dyadic, ParseDyadicError> {
    let mut out = Middle;
    let mut chars = s.chars().rev();
    match chars.next() {
        Some('m') => {}
        _ => return Err(ParseDyadicError(s.to_string())),
    }
    for c in chars {
        out = match c {
            'L' => out.left(),
            'R' => out.right(),
            _ => return Err(ParseDyadicError(s.to_string())),
        };
    }
    Ok(out)
}
