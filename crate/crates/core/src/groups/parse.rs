//! Laurent-polynomial input grammar.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := integer | [integer ['*']] monomial
//! monomial := factor (['*'] factor)*
//! factor   := var ['^' ['+'|'-'] integer]
//! var      := 'x' | 'y' | 'z' | 'w'        (axes 1..4)
//! ```
//!
//! Whitespace is insignificant. In generic (word) mode the variables are the
//! single-letter generator names supplied by the caller and the factor order
//! of a monomial is preserved.

use thiserror::Error;

use super::{GroupElement, GroupRingElement, Letter};

const AXES: [char; 4] = ['x', 'y', 'z', 'w'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable '{var}' at byte {position} is outside rank {rank}")]
    VariableOutOfRank {
        var: char,
        position: usize,
        rank: usize,
    },
    #[error("integer at byte {position} does not fit in 64 bits")]
    Overflow { position: usize },
    #[error("rank must be between 1 and 4, got {0}")]
    UnsupportedRank(usize),
}

enum Mode<'a> {
    Lattice(usize),
    Words(&'a [char]),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: Mode<'a>,
}

/// Parses `text` as an element of `ℤ[ℤ^rank]`.
pub fn parse_laurent(text: &str, rank: usize) -> Result<GroupRingElement, ParseError> {
    if !(1..=4).contains(&rank) {
        return Err(ParseError::UnsupportedRank(rank));
    }
    Parser {
        src: text.as_bytes(),
        pos: 0,
        mode: Mode::Lattice(rank),
    }
    .expr()
}

/// Parses `text` as an element of the group ring over the free words in
/// `generators` (generic mode, rank 0).
pub fn parse_word_polynomial(
    text: &str,
    generators: &[char],
) -> Result<GroupRingElement, ParseError> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        mode: Mode::Words(generators),
    }
    .expr()
}

impl Parser<'_> {
    fn rank(&self) -> usize {
        match self.mode {
            Mode::Lattice(r) => r,
            Mode::Words(_) => 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position,
            message: message.into(),
        })
    }

    fn expr(mut self) -> Result<GroupRingElement, ParseError> {
        let mut f = GroupRingElement::zero(self.rank());
        let mut negative = false;
        match self.peek() {
            None => return self.syntax(self.pos, "empty expression"),
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let start = self.pos;
            let (coef, s) = self.term(negative)?;
            f.add_term(s, coef)
                .map_err(|_| ParseError::Overflow { position: start })?;
            match self.peek() {
                None => return Ok(f),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => {
                    return self.syntax(self.pos, format!("unexpected '{}'", c as char));
                }
            }
            self.pos += 1;
        }
    }

    /// Reads an unsigned decimal integer as a 64-bit magnitude.
    fn magnitude(&mut self) -> Result<Option<u64>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits
            .parse::<u64>()
            .map(Some)
            .map_err(|_| ParseError::Overflow { position: start })
    }

    fn signed(magnitude: u64, negative: bool, position: usize) -> Result<i64, ParseError> {
        let v = if negative {
            -(magnitude as i128)
        } else {
            magnitude as i128
        };
        i64::try_from(v).map_err(|_| ParseError::Overflow { position })
    }

    fn term(&mut self, negative: bool) -> Result<(i64, GroupElement), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let magnitude = self.magnitude()?;
        let coef = Self::signed(magnitude.unwrap_or(1), negative, start)?;
        let mut explicit_star = false;
        if magnitude.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            explicit_star = true;
        }
        let at_var = matches!(self.peek(), Some(c) if c.is_ascii_alphabetic());
        if !at_var {
            if magnitude.is_none() || explicit_star {
                return self.syntax(self.pos, "expected a coefficient or variable");
            }
            return Ok((coef, GroupElement::identity(self.rank())));
        }
        let s = self.monomial()?;
        Ok((coef, s))
    }

    fn monomial(&mut self) -> Result<GroupElement, ParseError> {
        let mut exponents = vec![0i64; self.rank()];
        let mut letters = Vec::new();
        loop {
            let position = self.pos;
            let var = self.src[self.pos] as char;
            self.pos += 1;
            let mut power = 1i64;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let mut neg = false;
                match self.peek() {
                    Some(b'-') => {
                        neg = true;
                        self.pos += 1;
                    }
                    Some(b'+') => self.pos += 1,
                    _ => {}
                }
                let at = self.pos;
                let mag = match self.magnitude()? {
                    Some(m) => m,
                    None => return self.syntax(at, "expected an exponent"),
                };
                power = Self::signed(mag, neg, at)?;
            }
            match self.mode {
                Mode::Lattice(rank) => {
                    let axis = AXES.iter().position(|&a| a == var);
                    match axis {
                        Some(a) if a < rank => {
                            exponents[a] = exponents[a]
                                .checked_add(power)
                                .ok_or(ParseError::Overflow { position })?;
                        }
                        Some(_) => {
                            return Err(ParseError::VariableOutOfRank {
                                var,
                                position,
                                rank,
                            })
                        }
                        None => return self.syntax(position, format!("unknown variable '{var}'")),
                    }
                }
                Mode::Words(gens) => match gens.iter().position(|&g| g == var) {
                    Some(generator) => letters.push(Letter { generator, power }),
                    None => return self.syntax(position, format!("unknown generator '{var}'")),
                },
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                    return self.syntax(self.pos, "expected a variable after '*'");
                }
                continue;
            }
            if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                break;
            }
        }
        Ok(match self.mode {
            Mode::Lattice(_) => GroupElement::Lattice(exponents),
            Mode::Words(_) => GroupElement::word(letters),
        })
    }
}
