//! Lexer and parser for the concrete PCF syntax.
//!
//! Produces an un-elaborated [`RawTerm`] parse tree. Application is
//! left-associative, `->` right-associative, and the numeral literal `#n`
//! expands to n nested succ applications before elaboration ever sees it.

use std::fmt;

use thiserror::Error;

use super::PcfType;

/// Source position, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// The built-in constants of the language.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RawConst {
    Zero,
    Succ,
    Pred,
    Ifz,
    K,
    S,
    Fix,
}

/// Parse tree with optional type ascriptions; numerals are already
/// expanded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RawTerm {
    Const(RawConst, Span),
    App(Box<RawTerm>, Box<RawTerm>),
    Ascribe(Box<RawTerm>, PcfType, Span),
}

impl RawTerm {
    pub fn span(&self) -> Span {
        match self {
            RawTerm::Const(_, s) => *s,
            RawTerm::App(f, _) => f.span(),
            RawTerm::Ascribe(_, _, s) => *s,
        }
    }
}

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    #[error("{span}: unexpected character `{ch}`")]
    BadChar { span: Span, ch: char },
    #[error("{span}: `#` must be followed by digits")]
    BadNumeral { span: Span },
    #[error("{span}: numeral too large")]
    NumeralOverflow { span: Span },
    #[error("{span}: unknown keyword `{word}`")]
    UnknownWord { span: Span, word: String },
    #[error("{span}: expected {expected}, found {found}")]
    Unexpected {
        span: Span,
        expected: &'static str,
        found: String,
    },
    #[error("unexpected end of input: expected {expected}")]
    UnexpectedEof { expected: &'static str },
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Word(String),
    Numeral(u64),
    LParen,
    RParen,
    Colon,
    ArrowTy,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Numeral(n) => write!(f, "`#{n}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::ArrowTy => write!(f, "`->`"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '-' => {
                chars.next();
                col += 1;
                match chars.peek() {
                    Some('-') => {
                        // Line comment.
                        for c in chars.by_ref() {
                            if c == '\n' {
                                break;
                            }
                        }
                        line += 1;
                        col = 1;
                    }
                    Some('>') => {
                        chars.next();
                        col += 1;
                        toks.push((Tok::ArrowTy, span));
                    }
                    _ => return Err(ParseError::BadChar { span, ch: '-' }),
                }
            }
            '(' => {
                chars.next();
                col += 1;
                toks.push((Tok::LParen, span));
            }
            ')' => {
                chars.next();
                col += 1;
                toks.push((Tok::RParen, span));
            }
            ':' => {
                chars.next();
                col += 1;
                toks.push((Tok::Colon, span));
            }
            '#' => {
                chars.next();
                col += 1;
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return Err(ParseError::BadNumeral { span });
                }
                let n: u64 = digits
                    .parse()
                    .map_err(|_| ParseError::NumeralOverflow { span })?;
                toks.push((Tok::Numeral(n), span));
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        word.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Word(word), span));
            }
            ch => return Err(ParseError::BadChar { span, ch }),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, Span)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(Tok, Span)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<Span, ParseError> {
        match self.next() {
            Some((t, span)) if t == want => Ok(span),
            Some((t, span)) => Err(ParseError::Unexpected {
                span,
                expected,
                found: t.to_string(),
            }),
            None => Err(ParseError::UnexpectedEof { expected }),
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut acc = self.atom()?;
        while let Some((tok, _)) = self.peek() {
            match tok {
                Tok::RParen | Tok::Colon => break,
                _ => {
                    let arg = self.atom()?;
                    acc = RawTerm::App(Box::new(acc), Box::new(arg));
                }
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RawTerm, ParseError> {
        match self.next() {
            None => Err(ParseError::UnexpectedEof { expected: "a term" }),
            Some((Tok::Word(w), span)) => {
                let c = match w.as_str() {
                    "zero" => RawConst::Zero,
                    "succ" => RawConst::Succ,
                    "pred" => RawConst::Pred,
                    "ifz" => RawConst::Ifz,
                    "k" => RawConst::K,
                    "s" => RawConst::S,
                    "fix" => RawConst::Fix,
                    _ => return Err(ParseError::UnknownWord { span, word: w }),
                };
                Ok(RawTerm::Const(c, span))
            }
            Some((Tok::Numeral(n), span)) => Ok(expand_numeral(n, span)),
            Some((Tok::LParen, span)) => {
                let inner = self.term()?;
                match self.peek() {
                    Some((Tok::Colon, _)) => {
                        self.next();
                        let ty = self.pcf_type()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(RawTerm::Ascribe(Box::new(inner), ty, span))
                    }
                    _ => {
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(inner)
                    }
                }
            }
            Some((t, span)) => Err(ParseError::Unexpected {
                span,
                expected: "a term",
                found: t.to_string(),
            }),
        }
    }

    fn pcf_type(&mut self) -> Result<PcfType, ParseError> {
        let lhs = self.type_atom()?;
        if let Some((Tok::ArrowTy, _)) = self.peek() {
            self.next();
            let rhs = self.pcf_type()?;
            Ok(PcfType::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn type_atom(&mut self) -> Result<PcfType, ParseError> {
        match self.next() {
            Some((Tok::Word(w), _)) if w == "nat" => Ok(PcfType::Nat),
            Some((Tok::LParen, _)) => {
                let inner = self.pcf_type()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some((t, span)) => Err(ParseError::Unexpected {
                span,
                expected: "a type",
                found: t.to_string(),
            }),
            None => Err(ParseError::UnexpectedEof { expected: "a type" }),
        }
    }
}

fn expand_numeral(n: u64, span: Span) -> RawTerm {
    let mut t = RawTerm::Const(RawConst::Zero, span);
    for _ in 0..n {
        t = RawTerm::App(Box::new(RawTerm::Const(RawConst::Succ, span)), Box::new(t));
    }
    t
}

/// Parses a source string into a raw term.
pub fn parse(src: &str) -> Result<RawTerm, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let t = p.term()?;
    match p.peek() {
        None => Ok(t),
        Some((tok, span)) => Err(ParseError::Unexpected {
            span: *span,
            expected: "end of input",
            found: tok.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: RawConst) -> RawTerm {
        RawTerm::Const(k, Span { line: 1, col: 1 })
    }

    // Span-insensitive comparison for tests.
    fn same_shape(a: &RawTerm, b: &RawTerm) -> bool {
        match (a, b) {
            (RawTerm::Const(x, _), RawTerm::Const(y, _)) => x == y,
            (RawTerm::App(f, x), RawTerm::App(g, y)) => same_shape(f, g) && same_shape(x, y),
            (RawTerm::Ascribe(x, t, _), RawTerm::Ascribe(y, u, _)) => {
                same_shape(x, y) && t == u
            }
            _ => false,
        }
    }

    fn app(f: RawTerm, x: RawTerm) -> RawTerm {
        RawTerm::App(Box::new(f), Box::new(x))
    }

    #[test]
    fn succ_zero() {
        let t = parse("succ zero").unwrap();
        assert!(same_shape(&t, &app(c(RawConst::Succ), c(RawConst::Zero))));
    }

    #[test]
    fn fix_k_zero_groups_right() {
        let t = parse("fix (k zero)").unwrap();
        let want = app(c(RawConst::Fix), app(c(RawConst::K), c(RawConst::Zero)));
        assert!(same_shape(&t, &want));
    }

    #[test]
    fn application_is_left_associative() {
        let t = parse("s k k").unwrap();
        let want = app(app(c(RawConst::S), c(RawConst::K)), c(RawConst::K));
        assert!(same_shape(&t, &want));
    }

    #[test]
    fn numeral_sugar_expands() {
        let t = parse("#3").unwrap();
        let want = app(
            c(RawConst::Succ),
            app(c(RawConst::Succ), app(c(RawConst::Succ), c(RawConst::Zero))),
        );
        assert!(same_shape(&t, &want));
    }

    #[test]
    fn ascription_parses() {
        let t = parse("(k zero : nat -> nat)").unwrap();
        let want = RawTerm::Ascribe(
            Box::new(app(c(RawConst::K), c(RawConst::Zero))),
            PcfType::arrow(PcfType::Nat, PcfType::Nat),
            Span { line: 1, col: 1 },
        );
        assert!(same_shape(&t, &want));
    }

    #[test]
    fn comments_and_newlines() {
        let t = parse("-- the constant function\nk zero -- at base type\n").unwrap();
        assert!(same_shape(&t, &app(c(RawConst::K), c(RawConst::Zero))));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("succ $") {
            Err(ParseError::BadChar { span, ch: '$' }) => {
                assert_eq!((span.line, span.col), (1, 6));
            }
            other => panic!("expected BadChar, got {other:?}"),
        }
        match parse("zero\nsucc %") {
            Err(ParseError::BadChar { span, .. }) => {
                assert_eq!(span.line, 2);
            }
            other => panic!("expected BadChar, got {other:?}"),
        }
    }

    #[test]
    fn bare_hash_is_an_error() {
        assert!(matches!(parse("#"), Err(ParseError::BadNumeral { .. })));
        assert!(matches!(parse("# 1"), Err(ParseError::BadNumeral { .. })));
    }

    #[test]
    fn unbalanced_parens_are_errors() {
        assert!(parse("(succ zero").is_err());
        assert!(parse("succ zero)").is_err());
    }
}
