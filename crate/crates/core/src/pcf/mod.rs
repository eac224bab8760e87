//! Combinatory PCF: types, fully elaborated terms, numerals, parsing and
//! type elaboration.
//!
//! Terms follow the combinatory presentation — no variables or lambda.
//! The constants are zero, succ, pred, ifz and the typed combinator
//! instances k, s and fix; the only term former is application. Every
//! [`Term`] carries concrete type parameters on its k/s/fix occurrences, so
//! structural equality, the derived `PartialEq`, is equality of typed terms.
//!
//! Concrete syntax (UTF-8, `--` line comments):
//!
//! ```text
//! term := atom | term atom         -- application, left-associative
//! atom := zero | succ | pred | ifz | k | s | fix
//!       | #digits                  -- numeral sugar, expands in the parser
//!       | ( term ) | ( term : type )
//! type := nat | type -> type | ( type )
//! ```

pub mod elab;
pub mod encode;
pub mod parse;

pub use elab::{elaborate, elaborate_str, ElabError};
pub use parse::{parse, ParseError, RawTerm, Span};

use std::fmt;

use thiserror::Error;

/// Combined front-end error: lexing/parsing or elaboration.
#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum PcfError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Elab(#[from] ElabError),
}

/// A PCF type: the base type of naturals or a function type.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PcfType {
    Nat,
    Arrow(Box<PcfType>, Box<PcfType>),
}

impl PcfType {
    pub fn arrow(a: PcfType, b: PcfType) -> PcfType {
        PcfType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn is_base(&self) -> bool {
        matches!(self, PcfType::Nat)
    }
}

impl fmt::Display for PcfType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PcfType::Nat => write!(f, "nat"),
            PcfType::Arrow(a, b) => {
                // `->` is right-associative, so only the left side needs
                // parentheses when it is itself an arrow.
                match a.as_ref() {
                    PcfType::Arrow(_, _) => write!(f, "({a}) -> {b}"),
                    PcfType::Nat => write!(f, "{a} -> {b}"),
                }
            }
        }
    }
}

/// A fully elaborated combinatory PCF term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Zero,
    Succ,
    Pred,
    Ifz,
    /// k : σ ⇒ τ ⇒ σ
    K(PcfType, PcfType),
    /// s : (σ ⇒ τ ⇒ ρ) ⇒ (σ ⇒ τ) ⇒ σ ⇒ ρ
    S(PcfType, PcfType, PcfType),
    /// fix : (σ ⇒ σ) ⇒ σ
    Fix(PcfType),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn app(f: Term, x: Term) -> Term {
        Term::App(Box::new(f), Box::new(x))
    }
}

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum TypeError {
    #[error("applied a term of base type: `{0}` is not a function")]
    NotAFunction(String),
    #[error("argument type `{got}` does not match the expected `{want}`")]
    ArgMismatch { want: PcfType, got: PcfType },
}

/// The derivable type of an elaborated term.
pub fn type_of(t: &Term) -> Result<PcfType, TypeError> {
    use PcfType::{Arrow, Nat};
    Ok(match t {
        Term::Zero => Nat,
        Term::Succ | Term::Pred => PcfType::arrow(Nat, Nat),
        Term::Ifz => PcfType::arrow(Nat, PcfType::arrow(Nat, PcfType::arrow(Nat, Nat))),
        Term::K(a, b) => PcfType::arrow(a.clone(), PcfType::arrow(b.clone(), a.clone())),
        Term::S(a, b, c) => PcfType::arrow(
            PcfType::arrow(a.clone(), PcfType::arrow(b.clone(), c.clone())),
            PcfType::arrow(
                PcfType::arrow(a.clone(), b.clone()),
                PcfType::arrow(a.clone(), c.clone()),
            ),
        ),
        Term::Fix(a) => PcfType::arrow(PcfType::arrow(a.clone(), a.clone()), a.clone()),
        Term::App(f, x) => {
            let tf = type_of(f)?;
            let tx = type_of(x)?;
            match tf {
                Arrow(dom, cod) if *dom == tx => *cod,
                Arrow(dom, _) => {
                    return Err(TypeError::ArgMismatch { want: *dom, got: tx })
                }
                Nat => return Err(TypeError::NotAFunction(f.to_string())),
            }
        }
    })
}

/// The nth PCF numeral: n nested succ applications on zero.
pub fn numeral(n: u64) -> Term {
    let mut t = Term::Zero;
    for _ in 0..n {
        t = Term::app(Term::Succ, t);
    }
    t
}

/// Recovers n when the term is syntactically the nth numeral.
pub fn as_numeral(t: &Term) -> Option<u64> {
    let mut n = 0u64;
    let mut cur = t;
    loop {
        match cur {
            Term::Zero => return Some(n),
            Term::App(f, x) if matches!(f.as_ref(), Term::Succ) => {
                n += 1;
                cur = x;
            }
            _ => return None,
        }
    }
}

/// Structural equality of elaborated terms, including the type parameters
/// of k/s/fix occurrences.
pub fn term_eq(a: &Term, b: &Term) -> bool {
    a == b
}

/// Structural equality of PCF types.
pub fn type_eq(a: &PcfType, b: &PcfType) -> bool {
    a == b
}

impl fmt::Display for Term {
    /// Compact pretty-printer: numerals as `#n`, combinators without their
    /// type subscripts. Use [`render`] for output that re-elaborates to the
    /// same term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Term, f: &mut fmt::Formatter<'_>, arg_pos: bool) -> fmt::Result {
            if let Some(n) = as_numeral(t) {
                if n > 0 {
                    return write!(f, "#{n}");
                }
            }
            match t {
                Term::Zero => write!(f, "zero"),
                Term::Succ => write!(f, "succ"),
                Term::Pred => write!(f, "pred"),
                Term::Ifz => write!(f, "ifz"),
                Term::K(_, _) => write!(f, "k"),
                Term::S(_, _, _) => write!(f, "s"),
                Term::Fix(_) => write!(f, "fix"),
                Term::App(g, x) => {
                    if arg_pos {
                        write!(f, "(")?;
                    }
                    go(g, f, false)?;
                    write!(f, " ")?;
                    go(x, f, true)?;
                    if arg_pos {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, f, false)
    }
}

/// Canonical renderer: every k/s/fix occurrence is ascribed with its full
/// instance type, so `elaborate(parse(render(t)))` returns `t` itself.
pub fn render(t: &Term) -> String {
    fn go(t: &Term, out: &mut String, arg_pos: bool) {
        match t {
            Term::Zero => out.push_str("zero"),
            Term::Succ => out.push_str("succ"),
            Term::Pred => out.push_str("pred"),
            Term::Ifz => out.push_str("ifz"),
            Term::K(_, _) | Term::S(_, _, _) | Term::Fix(_) => {
                let name = match t {
                    Term::K(_, _) => "k",
                    Term::S(_, _, _) => "s",
                    _ => "fix",
                };
                let ty = type_of(t).expect("combinator constants are always typed");
                out.push_str(&format!("({name} : {ty})"));
            }
            Term::App(g, x) => {
                if arg_pos {
                    out.push('(');
                }
                go(g, out, false);
                out.push(' ');
                go(x, out, true);
                if arg_pos {
                    out.push(')');
                }
            }
        }
    }
    let mut out = String::new();
    go(t, &mut out, false);
    out
}
