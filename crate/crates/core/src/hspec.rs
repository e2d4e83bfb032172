//! Text format for bulk spectral laws, shared with the command line:
//!
//! ```text
//! beta(3, 3)
//! trunc_poisson(24, 50, 1)
//! trunc_exp(0.63, 1)
//! point(1)
//! mixture(0.25*point(1), 0.75*beta(3, 3))
//! h1 | h2 | h3 | h4        (study shorthands)
//! ```

use crate::rmt::SpectralDistribution;
use crate::simgen::HKind;
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Parse a distribution description into its quadrature model.
pub fn parse(input: &str) -> Result<SpectralDistribution> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let dist = p.parse_spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::config(format!(
            "unexpected trailing input at byte {} of {input:?}",
            p.pos
        )));
    }
    Ok(dist)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::config(format!(
                "expected '{}' at byte {}",
                byte as char, self.pos
            )))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::config(format!("expected a name at byte {start}")));
        }
        Ok(core::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_lowercase())
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit() || matches!(*c, b'.' | b'-' | b'+' | b'e' | b'E'))
        {
            self.pos += 1;
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .ok_or_else(|| Error::config(format!("expected a number at byte {start}")))
    }

    fn numbers(&mut self, count: usize, what: &str) -> Result<Vec<f64>> {
        self.expect(b'(')?;
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                self.expect(b',')?;
            }
            out.push(self.number()?);
        }
        self.expect(b')')?;
        let _ = what;
        Ok(out)
    }

    fn parse_spec(&mut self) -> Result<SpectralDistribution> {
        let name = self.ident()?;
        match name.as_str() {
            "h1" | "h2" | "h3" | "h4" => HKind::parse(&name)?.model(),
            "beta" => {
                let a = self.numbers(2, "beta")?;
                SpectralDistribution::beta(a[0], a[1])
            }
            "trunc_exp" => {
                let a = self.numbers(2, "trunc_exp")?;
                SpectralDistribution::trunc_exp(a[0], a[1])
            }
            "trunc_poisson" => {
                let a = self.numbers(3, "trunc_poisson")?;
                SpectralDistribution::trunc_poisson(a[0], a[1], a[2])
            }
            "point" => {
                let a = self.numbers(1, "point")?;
                SpectralDistribution::point(a[0])
            }
            "mixture" => {
                self.expect(b'(')?;
                let mut parts = Vec::new();
                loop {
                    let w = self.number()?;
                    self.expect(b'*')?;
                    parts.push((w, self.parse_spec()?));
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => {
                            return Err(Error::config(format!(
                                "expected ',' or ')' at byte {}",
                                self.pos
                            )))
                        }
                    }
                }
                SpectralDistribution::mixture(parts)
            }
            other => Err(Error::UnknownDistribution(other.into())),
        }
    }
}
