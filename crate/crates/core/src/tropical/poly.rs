//! Tropical polynomial parsing.
//!
//! Grammar: poly := term ('+' term)*; term := coeff ('*' var)*;
//! var := ('x'|'y') ['^' uint]; coeff := optional sign, then 'p/q' or a
//! decimal. Whitespace is insignificant.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{BigInt, Zero};

use super::TropicalError;

/// Support points (i, j) with exact rational coefficients b_ij.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl TropicalPoly {
    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigRational> {
        &self.terms
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().copied().collect()
    }

    pub fn coefficient(&self, p: (u32, u32)) -> Option<&BigRational> {
        self.terms.get(&p)
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = ((u32, u32), BigRational)>,
    ) -> Result<Self, TropicalError> {
        let mut map = BTreeMap::new();
        for (p, c) in terms {
            if map.insert(p, c).is_some() {
                return Err(TropicalError::DuplicateMonomial(p.0, p.1));
            }
        }
        Ok(TropicalPoly { terms: map })
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: &str) -> Result<T, TropicalError> {
        Err(TropicalError::Syntax { position: self.pos, message: message.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn uint(&mut self) -> Result<u64, TropicalError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.error("number out of range"))
    }

    fn digits(&mut self) -> Result<BigInt, TropicalError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected digits");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .expect("digit run parses"))
    }

    /// rational 'p/q' or decimal, with optional leading sign
    fn coeff(&mut self) -> Result<BigRational, TropicalError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let int_part = self.digits()?;
        let mut value = match self.bytes.get(self.pos) {
            Some(b'/') => {
                self.pos += 1;
                let den = self.digits()?;
                if den.is_zero() {
                    return self.error("zero denominator");
                }
                BigRational::new(int_part, den)
            }
            Some(b'.') => {
                self.pos += 1;
                let start = self.pos;
                let frac = self.digits()?;
                let places = (self.pos - start) as u32;
                let scale = BigInt::from(10u32).pow(places);
                BigRational::new(int_part * &scale + frac, scale)
            }
            _ => BigRational::from_integer(int_part),
        };
        if negative {
            value = -value;
        }
        Ok(value)
    }

    fn term(&mut self) -> Result<((u32, u32), BigRational), TropicalError> {
        let coeff = self.coeff()?;
        let (mut i, mut j) = (0u64, 0u64);
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let var = match self.bump() {
                Some(b'x') => &mut i,
                Some(b'y') => &mut j,
                _ => return self.error("expected 'x' or 'y' after '*'"),
            };
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.uint()?
            } else {
                1
            };
            *var += exp;
        }
        if i > u32::MAX as u64 || j > u32::MAX as u64 {
            return self.error("exponent out of range");
        }
        Ok(((i as u32, j as u32), coeff))
    }
}

pub fn parse_poly(text: &str) -> Result<TropicalPoly, TropicalError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    let mut terms = BTreeMap::new();
    loop {
        let (point, coeff) = p.term()?;
        if terms.insert(point, coeff).is_some() {
            return Err(TropicalError::DuplicateMonomial(point.0, point.1));
        }
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.pos += 1;
            }
            Some(_) => return p.error("expected '+' or end of input"),
        }
    }
    Ok(TropicalPoly { terms })
}
