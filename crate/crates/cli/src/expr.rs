//! Manifold expressions: `RP(4) + RP(2)*RP(2)`.
//!
//! Grammar (whitespace insignificant, names case-insensitive):
//!
//! ```text
//! Expr := Term ('+' Term)*
//! Term := Atom ('*' Atom)*
//! Atom := NAME '(' INT (',' INT)? ')' | '(' Expr ')'
//! NAME := RP | CP | Dold | S
//! ```
//!
//! `+` is disjoint union and `*` cartesian product, so `*` binds tighter.
//! Summand dimensions are checked at evaluation time, not in the parser.
//! Parse errors carry a 1-based byte offset and the set of expected tokens.

use std::fmt;

use cobord::manifolds::{self, ManifoldModel};

use crate::failure::Failure;

/// Largest accepted constructor argument; keeps every catalog computation at
/// desk scale.
pub const MAX_ATOM_ARG: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    RP(u64),
    CP(u64),
    Dold(u64, u64),
    S(u64),
    Paren(Box<Expr>),
}

/// A product of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub atoms: Vec<Atom>,
}

/// A disjoint union of terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::RP(n) => write!(f, "RP({n})"),
            Atom::CP(n) => write!(f, "CP({n})"),
            Atom::Dold(m, n) => write!(f, "Dold({m},{n})"),
            Atom::S(n) => write!(f, "S({n})"),
            Atom::Paren(e) => write!(f, "({e})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Parse failure with a 1-based byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    UnknownName {
        offset: usize,
        name: String,
    },
    Arity {
        offset: usize,
        name: &'static str,
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                offset,
                expected,
                found,
            } => {
                write!(f, "syntax error at offset {offset}: expected ")?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        write!(f, " or ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ", found {found}")
            }
            ParseError::UnknownName { offset, name } => write!(
                f,
                "unknown constructor `{name}` at offset {offset}: names are RP, CP, Dold, S"
            ),
            ParseError::Arity {
                offset,
                name,
                expected,
                got,
            } => write!(
                f,
                "arity mismatch at offset {offset}: {name} takes {expected} integer{}, got {got}",
                if *expected == 1 { "" } else { "s" }
            ),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Plus,
    Star,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
        }
    }
}

fn lex(input: &str) -> Result<(Vec<(Tok, usize)>, usize), ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let offset = i + 1;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                toks.push((Tok::LParen, offset));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, offset));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, offset));
                i += 1;
            }
            b'+' => {
                toks.push((Tok::Plus, offset));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, offset));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let n = text.parse::<u64>().map_err(|_| ParseError::Syntax {
                    offset,
                    expected: vec!["a smaller integer"],
                    found: format!("`{text}`"),
                })?;
                toks.push((Tok::Int(n), offset));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                toks.push((Tok::Ident(input[start..i].to_string()), offset));
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset,
                    expected: vec!["a name", "an integer", "`(`"],
                    found: format!("`{}`", input[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok((toks, bytes.len() + 1))
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    eof_offset: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.eof_offset, |&(_, o)| o)
    }

    fn found(&self) -> String {
        self.toks
            .get(self.pos)
            .map_or("end of input".into(), |(t, _)| t.describe())
    }

    fn syntax(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected,
            found: self.found(),
        }
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Tok, describe: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(vec![describe]))
        }
    }

    fn expect_int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some((Tok::Int(n), _)) = self.bump() else {
                    unreachable!()
                };
                Ok(n)
            }
            _ => Err(self.syntax(vec!["an integer"])),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut atoms = vec![self.atom()?];
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            atoms.push(self.atom()?);
        }
        Ok(Term { atoms })
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(Atom::Paren(Box::new(inner)))
            }
            Some(Tok::Ident(name)) => {
                let name_offset = self.offset();
                self.pos += 1;
                self.expect(&Tok::LParen, "`(`")?;
                let first = self.expect_int()?;
                let second = if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    Some(self.expect_int()?)
                } else {
                    None
                };
                self.expect(&Tok::RParen, "`)`")?;
                let got = 1 + usize::from(second.is_some());
                let arity = |canon: &'static str, expected: usize| ParseError::Arity {
                    offset: name_offset,
                    name: canon,
                    expected,
                    got,
                };
                match name.to_ascii_lowercase().as_str() {
                    "rp" => match second {
                        None => Ok(Atom::RP(first)),
                        Some(_) => Err(arity("RP", 1)),
                    },
                    "cp" => match second {
                        None => Ok(Atom::CP(first)),
                        Some(_) => Err(arity("CP", 1)),
                    },
                    "s" => match second {
                        None => Ok(Atom::S(first)),
                        Some(_) => Err(arity("S", 1)),
                    },
                    "dold" => match second {
                        Some(s) => Ok(Atom::Dold(first, s)),
                        None => Err(arity("Dold", 2)),
                    },
                    _ => Err(ParseError::UnknownName {
                        offset: name_offset,
                        name,
                    }),
                }
            }
            _ => Err(self.syntax(vec!["a constructor name", "`(`"])),
        }
    }
}

/// Parses a manifold expression; see the module grammar.
pub fn parse_manifold(input: &str) -> Result<Expr, ParseError> {
    let (toks, eof_offset) = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        eof_offset,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.syntax(vec!["`*`", "`+`", "end of input"]));
    }
    Ok(e)
}

fn atom_arg(n: u64) -> Result<u32, Failure> {
    if n > MAX_ATOM_ARG {
        return Err(Failure::Semantic(format!(
            "constructor argument {n} exceeds the supported maximum {MAX_ATOM_ARG}"
        )));
    }
    Ok(n as u32)
}

/// Builds the manifold a parsed expression names. Disjoint unions check
/// dimensions here, which is where mismatches become semantic errors.
pub fn eval(expr: &Expr) -> Result<ManifoldModel, Failure> {
    let mut sum: Option<ManifoldModel> = None;
    for term in &expr.terms {
        let mut prod: Option<ManifoldModel> = None;
        for atom in &term.atoms {
            let m = eval_atom(atom)?;
            prod = Some(match prod {
                None => m,
                Some(p) => manifolds::product(&p, &m),
            });
        }
        let term_model = prod.expect("a term has at least one atom");
        sum = Some(match sum {
            None => term_model,
            Some(s) => manifolds::disjoint_union(&s, &term_model)?,
        });
    }
    Ok(sum.expect("an expression has at least one term"))
}

fn eval_atom(atom: &Atom) -> Result<ManifoldModel, Failure> {
    match atom {
        Atom::RP(n) => Ok(manifolds::rp(atom_arg(*n)?)),
        Atom::CP(n) => Ok(manifolds::cp(atom_arg(*n)?)),
        Atom::Dold(m, n) => Ok(manifolds::dold(atom_arg(*m)?, atom_arg(*n)?)),
        Atom::S(n) => Ok(manifolds::sphere(atom_arg(*n)?)?),
        Atom::Paren(e) => eval(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_sums() {
        let e = parse_manifold("RP(2)*RP(2)").unwrap();
        assert_eq!(
            e,
            Expr {
                terms: vec![Term {
                    atoms: vec![Atom::RP(2), Atom::RP(2)],
                }],
            }
        );

        let e = parse_manifold("RP(4) + RP(2)*RP(2)").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0].atoms, vec![Atom::RP(4)]);
        assert_eq!(e.terms[1].atoms, vec![Atom::RP(2), Atom::RP(2)]);
    }

    #[test]
    fn star_binds_tighter_than_plus() {
        let e = parse_manifold("RP(4)+RP(2)*RP(2)").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[1].atoms.len(), 2);
    }

    #[test]
    fn names_are_case_insensitive_and_whitespace_is_free() {
        let a = parse_manifold("dold(1,2)").unwrap();
        let b = parse_manifold("  DOLD ( 1 , 2 )  ").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "Dold(1,2)");
    }

    #[test]
    fn unclosed_call_reports_offset_and_expected_set() {
        let err = parse_manifold("Dold(1,2").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                offset: 9,
                expected: vec!["`)`"],
                found: "end of input".into(),
            }
        );
        assert_eq!(
            err.to_string(),
            "syntax error at offset 9: expected `)`, found end of input"
        );
    }

    #[test]
    fn unknown_and_arity_errors() {
        assert!(matches!(
            parse_manifold("QP(2)"),
            Err(ParseError::UnknownName { offset: 1, .. })
        ));
        assert!(matches!(
            parse_manifold("RP(1,2)"),
            Err(ParseError::Arity {
                name: "RP",
                expected: 1,
                got: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_manifold("Dold(1)"),
            Err(ParseError::Arity {
                name: "Dold",
                expected: 2,
                got: 1,
                ..
            })
        ));
    }

    #[test]
    fn trailing_garbage_is_a_syntax_error() {
        let err = parse_manifold("RP(2) RP(2)").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { offset: 7, .. }));
    }

    #[test]
    fn parenthesized_sums_round_trip() {
        let src = "(RP(2) + RP(2))*S(4)";
        let e = parse_manifold(src).unwrap();
        let printed = e.to_string();
        assert_eq!(printed, "(RP(2) + RP(2))*S(4)");
        assert_eq!(parse_manifold(&printed).unwrap(), e);
    }

    #[test]
    fn eval_checks_dimensions_and_bounds() {
        assert!(eval(&parse_manifold("RP(2)*RP(2)").unwrap()).is_ok());
        let mismatch = eval(&parse_manifold("RP(2) + RP(3)").unwrap());
        assert!(matches!(mismatch, Err(Failure::Semantic(_))));
        let big = eval(&parse_manifold("RP(65)").unwrap());
        assert!(matches!(big, Err(Failure::Semantic(_))));
        let s0 = eval(&parse_manifold("S(0)").unwrap());
        assert!(matches!(s0, Err(Failure::Semantic(_))));
    }

    #[test]
    fn empty_input_is_a_syntax_error() {
        let err = parse_manifold("").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { offset: 1, .. }));
    }
}
