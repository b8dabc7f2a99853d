//! Polynomial expressions such as `3z^2 + z`, `(1+2i)z^2 - 0.5z` or `2*z^3`.
//!
//! ```text
//! expr  := [sign] term (sign term)*
//! term  := coeff ['*'] 'z' ['^' integer] | coeff | 'z' ['^' integer]
//! coeff := decimal | '(' [sign] decimal ['i'] [sign decimal 'i'] ')'
//! ```
//!
//! Whitespace is ignored between tokens. Repeated powers are summed.

use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::series::TruncatedSeries;
use crate::volterra::PolynomialSymbol;

/// Largest accepted exponent.
pub const MAX_POWER: usize = 100_000;

/// A parsed symbol plus the constant term that was discarded, if nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSymbol {
    pub symbol: PolynomialSymbol,
    pub dropped_constant: Option<Complex64>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(FockError::Parse {
        offset,
        message: message.into(),
    })
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> Option<f64> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(1.0)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-1.0)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.pos - start
    }

    fn decimal(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let mut n = self.digits();
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += self.digits();
        }
        if n == 0 {
            self.pos = start;
            return err(start, "expected a number");
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => err(start, format!("number '{text}' is out of range")),
        }
    }

    fn starts_number(&mut self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9' | b'.'))
    }

    fn complex(&mut self) -> Result<Complex64> {
        let open = self.pos - 1;
        let s1 = self.sign().unwrap_or(1.0);
        let first = s1 * self.decimal()?;
        let value = if self.eat(b'i') {
            Complex64::new(0.0, first)
        } else if let Some(s2) = self.sign() {
            let im = s2 * self.decimal()?;
            if !self.eat(b'i') {
                return err(self.pos, "expected 'i' after the imaginary part");
            }
            Complex64::new(first, im)
        } else {
            Complex64::new(first, 0.0)
        };
        if !self.eat(b')') {
            if self.peek().is_none() {
                return err(open, "unclosed '('");
            }
            return err(self.pos, "expected ')'");
        }
        Ok(value)
    }

    fn power(&mut self) -> Result<usize> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        self.skip_ws();
        let start = self.pos;
        if self.digits() == 0 {
            return err(start, "expected a non-negative integer exponent");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<usize>() {
            Ok(k) if k <= MAX_POWER => Ok(k),
            _ => err(start, format!("exponent exceeds {MAX_POWER}")),
        }
    }

    /// One term as `(coefficient, power)`.
    fn term(&mut self) -> Result<(Complex64, usize)> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let coeff = if self.eat(b'(') {
            Some(self.complex()?)
        } else if self.starts_number() {
            Some(Complex64::new(self.decimal()?, 0.0))
        } else {
            None
        };
        let star = coeff.is_some() && self.eat(b'*');
        if self.eat(b'z') {
            let k = self.power()?;
            return Ok((coeff.unwrap_or(Complex64::new(1.0, 0.0)), k));
        }
        if star {
            return err(self.pos, "expected 'z' after '*'");
        }
        match coeff {
            Some(c) => Ok((c, 0)),
            None => match self.peek() {
                None => err(self.pos, "expected a term"),
                Some(b) => err(start, format!("unexpected character '{}'", b as char)),
            },
        }
    }

    fn polynomial(&mut self) -> Result<Vec<Complex64>> {
        let mut coeffs: Vec<Complex64> = Vec::new();
        let mut sign = self.sign().unwrap_or(1.0);
        loop {
            if let Some(extra) = self.sign() {
                sign *= extra;
            }
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Complex64::default());
            }
            coeffs[k] += c * sign;
            match self.sign() {
                Some(s) => sign = s,
                None => break,
            }
        }
        if let Some(b) = self.peek() {
            return err(self.pos, format!("unexpected character '{}'", b as char));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return err(0, "coefficient overflow");
        }
        Ok(coeffs)
    }
}

/// Coefficients indexed by power, constant term included.
pub fn parse_coefficients(src: &str) -> Result<Vec<Complex64>> {
    Parser::new(src).polynomial()
}

pub fn parse_polynomial(src: &str) -> Result<TruncatedSeries> {
    TruncatedSeries::new(parse_coefficients(src)?)
}

pub fn parse_symbol(src: &str) -> Result<ParsedSymbol> {
    let coeffs = parse_coefficients(src)?;
    let symbol = PolynomialSymbol::from_coeffs(&coeffs).map_err(|e| FockError::Parse {
        offset: 0,
        message: e.to_string(),
    })?;
    let c0 = coeffs[0];
    Ok(ParsedSymbol {
        symbol,
        dropped_constant: (c0 != Complex64::default()).then_some(c0),
    })
}

fn format_coeff(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        let sep = if c.im.is_sign_negative() { "-" } else { "+" };
        format!("({}{}{}i)", c.re, sep, c.im.abs())
    }
}

fn format_terms(coeffs: &[Complex64]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if *c == Complex64::default() {
            continue;
        }
        let real_negative = c.im == 0.0 && c.re < 0.0;
        let shown = if real_negative { -c } else { *c };
        if out.is_empty() {
            if real_negative {
                out.push('-');
            }
        } else {
            out.push_str(if real_negative { " - " } else { " + " });
        }
        let unit = shown == Complex64::new(1.0, 0.0);
        if !(unit && k > 0) {
            out.push_str(&format_coeff(shown));
        }
        match k {
            0 => {}
            1 => out.push('z'),
            _ => out.push_str(&format!("z^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Text that [`parse_symbol`] maps back to the same coefficients.
pub fn format_symbol(g: &PolynomialSymbol) -> String {
    format_terms(g.coeffs())
}

pub fn format_polynomial(f: &TruncatedSeries) -> String {
    format_terms(f.coeffs())
}
