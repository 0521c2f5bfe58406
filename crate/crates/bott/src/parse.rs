//! Class arguments on the command line.
//!
//! Three spellings are accepted:
//!
//! - a class JSON object, `{"terms":[{"subset":[1,2],"coeff":-3}]}`;
//! - a JSON array of degree-2 coefficients, `[1,0,-2]` for `x1 - 2x3`;
//! - an expression such as `2x1x2 - x3 + 1` or `3*x1*x2`. Products are
//!   reduced in the ring, so `x2*x2` becomes `alpha_2 x2`.

use std::iter::Peekable;
use std::str::CharIndices;

use bott_core::{BottTower, CohClass};
use num_bigint::BigInt;
use num_traits::One;

use crate::json::{self, FormatError};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("unexpected {found} at offset {offset} in class expression")]
    Unexpected { offset: usize, found: String },
    #[error(transparent)]
    Core(#[from] bott_core::Error),
}

pub fn parse_class(tower: &BottTower, text: &str) -> Result<CohClass, ParseError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return Ok(json::class_from_json(tower, trimmed)?);
    }
    if trimmed.starts_with('[') {
        let coeffs: Vec<serde_json::Number> =
            serde_json::from_str(trimmed).map_err(FormatError::from)?;
        let coeffs = coeffs
            .iter()
            .map(json::number_to_big)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(CohClass::from_linear(tower, &coeffs)?);
    }
    Parser {
        tower,
        chars: trimmed.char_indices().peekable(),
    }
    .expr()
}

struct Parser<'a> {
    tower: &'a BottTower,
    chars: Peekable<CharIndices<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn unexpected(&mut self) -> ParseError {
        match self.chars.peek() {
            Some(&(offset, c)) => ParseError::Unexpected {
                offset,
                found: format!("'{c}'"),
            },
            None => ParseError::Unexpected {
                offset: usize::MAX,
                found: "end of input".into(),
            },
        }
    }

    fn expr(mut self) -> Result<CohClass, ParseError> {
        let mut acc = CohClass::zero(self.tower);
        self.skip_ws();
        let mut negative = match self.chars.peek() {
            Some((_, '-')) => {
                self.chars.next();
                true
            }
            Some((_, '+')) => {
                self.chars.next();
                false
            }
            _ => false,
        };
        loop {
            let term = self.term()?;
            acc = if negative { &acc - &term } else { &acc + &term };
            self.skip_ws();
            match self.chars.next() {
                None => return Ok(acc),
                Some((_, '+')) => negative = false,
                Some((_, '-')) => negative = true,
                Some((offset, c)) => {
                    return Err(ParseError::Unexpected {
                        offset,
                        found: format!("'{c}'"),
                    })
                }
            }
        }
    }

    fn number(&mut self) -> Option<BigInt> {
        let mut digits = String::new();
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            digits.push(c);
        }
        (!digits.is_empty()).then(|| digits.parse().expect("ascii digits"))
    }

    fn term(&mut self) -> Result<CohClass, ParseError> {
        self.skip_ws();
        let coeff = self.number();
        let mut value = CohClass::one(self.tower).scale(&coeff.clone().unwrap_or_else(BigInt::one));
        let mut factors = 0;
        loop {
            self.skip_ws();
            if self.chars.next_if(|(_, c)| *c == '*').is_some() {
                self.skip_ws();
            }
            if self.chars.next_if(|(_, c)| *c == 'x').is_none() {
                break;
            }
            let Some(index) = self.number() else {
                return Err(self.unexpected());
            };
            let index = usize::try_from(index).map_err(|_| self.unexpected())?;
            value = value.try_mul(&self.tower.generator(index)?)?;
            factors += 1;
        }
        if coeff.is_none() && factors == 0 {
            return Err(self.unexpected());
        }
        Ok(value)
    }
}
