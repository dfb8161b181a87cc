//! Expression trees over the generators and their text grammar.
//!
//! ```text
//! sum     := ['-'] product (('+' | '-') product)*
//! product := factor (['*'] factor)*
//! factor  := atom | integer | '(' sum ')'
//! atom    := s1 | s2 | D1 | D2 | Dh<k> | X[a,b] | q1 | q2
//! ```
//!
//! `Dh<k>` is the reflection-indexed generator `D_{r_k}`; juxtaposition is
//! the (noncommutative) product.

use std::fmt;

use num_bigint::BigInt;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    S(u8),
    D(u8),
    /// Reflection-indexed Demazure generator `D_{r_k}`.
    Dh(u8),
    X(Vec<i32>),
    Q(u8),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(c: i64) -> Expr {
        Expr::Int(BigInt::from(c))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    /// Product of a sequence of factors (`1` when empty).
    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Expr {
        factors.into_iter().reduce(Expr::mul).unwrap_or_else(|| Expr::int(1))
    }

    /// Visits every atom.
    pub fn atoms(&self, f: &mut impl FnMut(&Expr)) {
        match self {
            Expr::Neg(a) => a.atoms(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.atoms(f);
                b.atoms(f);
            }
            atom => f(atom),
        }
    }

    /// Rewrites every atom.
    pub fn map_atoms(&self, f: &impl Fn(&Expr) -> Expr) -> Expr {
        match self {
            Expr::Neg(a) => Expr::Neg(Box::new(a.map_atoms(f))),
            Expr::Add(a, b) => Expr::add(a.map_atoms(f), b.map_atoms(f)),
            Expr::Sub(a, b) => Expr::sub(a.map_atoms(f), b.map_atoms(f)),
            Expr::Mul(a, b) => Expr::mul(a.map_atoms(f), b.map_atoms(f)),
            atom => f(atom),
        }
    }

    /// Reverses every product (the anti-automorphism underlying the antipode).
    pub fn reverse_products(&self) -> Expr {
        match self {
            Expr::Neg(a) => Expr::Neg(Box::new(a.reverse_products())),
            Expr::Add(a, b) => Expr::add(a.reverse_products(), b.reverse_products()),
            Expr::Sub(a, b) => Expr::sub(a.reverse_products(), b.reverse_products()),
            Expr::Mul(a, b) => Expr::mul(b.reverse_products(), a.reverse_products()),
            atom => atom.clone(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Neg(..) => 1,
            Expr::Mul(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({})", e)
            } else {
                write!(f, "{}", e)
            }
        };
        match self {
            Expr::Int(c) => write!(f, "{}", c),
            Expr::S(i) => write!(f, "s{}", i),
            Expr::D(i) => write!(f, "D{}", i),
            Expr::Dh(k) => write!(f, "Dh{}", k),
            Expr::X(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "X[{}]", parts.join(","))
            }
            Expr::Q(i) => write!(f, "q{}", i),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 2)
            }
            Expr::Add(a, b) => {
                write!(f, "{} + ", a)?;
                wrap(f, b, 1)
            }
            Expr::Sub(a, b) => {
                write!(f, "{} - ", a)?;
                wrap(f, b, 1)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, " ")?;
                wrap(f, b, 3)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Atom(Expr),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: usize| -> usize {
        let mut j = i;
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < b.len() {
        let c = b[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                let j = digits(i);
                let n: BigInt = src[i..j].parse().map_err(|_| syntax(i, "bad integer"))?;
                out.push((start, Tok::Int(n)));
                i = j;
                continue;
            }
            b's' | b'q' => {
                let j = digits(i + 1);
                let idx: u8 = src[i + 1..j].parse().map_err(|_| syntax(i, "expected generator index"))?;
                if !(1..=2).contains(&idx) {
                    return Err(syntax(i, format!("generator index {} out of range", idx)));
                }
                out.push((start, Tok::Atom(if c == b's' { Expr::S(idx) } else { Expr::Q(idx) })));
                i = j;
                continue;
            }
            b'D' => {
                let hat = b.get(i + 1) == Some(&b'h');
                let from = if hat { i + 2 } else { i + 1 };
                let j = digits(from);
                let idx: u8 = src[from..j].parse().map_err(|_| syntax(i, "expected generator index"))?;
                if hat {
                    if !(1..=6).contains(&idx) {
                        return Err(syntax(i, format!("reflection index {} out of range", idx)));
                    }
                    out.push((start, Tok::Atom(Expr::Dh(idx))));
                } else {
                    if !(1..=2).contains(&idx) {
                        return Err(syntax(i, format!("generator index {} out of range", idx)));
                    }
                    out.push((start, Tok::Atom(Expr::D(idx))));
                }
                i = j;
                continue;
            }
            b'X' => {
                if b.get(i + 1) != Some(&b'[') {
                    return Err(syntax(i + 1, "expected `[` after X"));
                }
                let close = src[i..].find(']').map(|k| k + i).ok_or_else(|| syntax(i, "unclosed `[`"))?;
                let mut v = Vec::new();
                for part in src[i + 2..close].split(',') {
                    let t = part.trim();
                    v.push(t.parse::<i32>().map_err(|_| syntax(i + 2, format!("bad lattice coordinate `{}`", t)))?);
                }
                out.push((start, Tok::Atom(Expr::X(v))));
                i = close + 1;
                continue;
            }
            _ => return Err(syntax(i, format!("unexpected character `{}`", c as char))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.product()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Expr::add(acc, self.product()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Expr::sub(acc, self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = Expr::mul(acc, self.factor()?);
                }
                Some(Tok::Int(_)) | Some(Tok::Atom(_)) | Some(Tok::LParen) => {
                    acc = Expr::mul(acc, self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Atom(a)) => {
                self.pos += 1;
                Ok(a)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.here(), "expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => Err(syntax(at, format!("unexpected token {:?}", t))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.here(), "trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_atoms() {
        let e = parse("D2 s1 s2 D1").unwrap();
        let expect = Expr::product([Expr::D(2), Expr::S(1), Expr::S(2), Expr::D(1)]);
        assert_eq!(e, expect);
    }

    #[test]
    fn difference_of_products() {
        let e = parse("D1 D2 D1 D2 - D2 D1 D2 D1").unwrap();
        match e {
            Expr::Sub(a, b) => {
                assert_eq!(*a, Expr::product([Expr::D(1), Expr::D(2), Expr::D(1), Expr::D(2)]));
                assert_eq!(*b, Expr::product([Expr::D(2), Expr::D(1), Expr::D(2), Expr::D(1)]));
            }
            other => panic!("expected difference, got {:?}", other),
        }
    }

    #[test]
    fn lattice_atom() {
        assert_eq!(parse("X[1,-2]").unwrap(), Expr::X(vec![1, -2]));
        assert_eq!(parse("X[ 0 , 3 ]").unwrap(), Expr::X(vec![0, 3]));
    }

    #[test]
    fn precedence_and_unary_minus() {
        let e = parse("-s1 + 2*D1 s2 - (s1 - 1)").unwrap();
        assert_eq!(e.to_string(), "-s1 + 2 D1 s2 - (s1 - 1)");
        assert_eq!(parse(&e.to_string()).unwrap(), e);
        assert_eq!(parse("Dh3 Dh1").unwrap(), Expr::mul(Expr::Dh(3), Expr::Dh(1)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("s1 + ? s2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{:?}", other),
        }
        assert!(parse("s3").is_err());
        assert!(parse("(s1 s2").is_err());
        assert!(parse("s1 +").is_err());
        assert!(parse("X[1,a]").is_err());
    }
}
