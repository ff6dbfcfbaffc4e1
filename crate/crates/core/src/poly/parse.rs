//! Parser for the polynomial text format:
//!
//! ```text
//! poly  := term (('+'|'-') term)*
//! term  := coeff | coeff '*' mono | mono
//! mono  := 'x' ('^' nat)?
//! coeff := '-'? digits
//! ```
//!
//! Whitespace is ignored. Like terms are combined.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { input: self.src.to_string(), message: format!("{msg} at position {}", self.pos) }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }
}

pub(super) fn parse_int_poly(src: &str) -> Result<IntPoly> {
    let mut cur = Cursor::new(src);
    if cur.chars.is_empty() {
        return Err(cur.err("empty polynomial"));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            Some('+') if !first => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                negative = true;
            }
            _ if first => {}
            Some(_) => return Err(cur.err("expected '+' or '-'")),
            None => break,
        }
        first = false;
        let (mut c, k) = parse_term(&mut cur)?;
        if negative {
            c = -c;
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] += c;
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(BigInt, usize)> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let d = cur.digits().expect("digit present");
            let coeff: BigInt = d.parse().map_err(|_| cur.err("bad integer"))?;
            if cur.peek() == Some('*') {
                cur.bump();
                let k = parse_mono(cur)?;
                Ok((coeff, k))
            } else {
                Ok((coeff, 0))
            }
        }
        Some('x') => Ok((BigInt::one(), parse_mono(cur)?)),
        Some(_) => Err(cur.err("expected coefficient or 'x'")),
        None => Err(cur.err("unexpected end of input")),
    }
}

fn parse_mono(cur: &mut Cursor<'_>) -> Result<usize> {
    if cur.bump() != Some('x') {
        return Err(cur.err("expected 'x'"));
    }
    if cur.peek() == Some('^') {
        cur.bump();
        let d = cur.digits().ok_or_else(|| cur.err("expected exponent"))?;
        d.parse::<usize>().map_err(|_| cur.err("exponent out of range"))
    } else {
        Ok(1)
    }
}
