//! Parser for ring spec strings.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! ring  := block ("x" block)*
//! block := "Z" n
//!        | "GF(" q ")"
//!        | "Z" n "[x]/(" poly ")"
//! poly  := term ("+" term)*
//! term  := int | int? "x" ("^" int)?
//! ```
//!
//! A composite modulus `n` is split into its prime-power parts by the
//! Chinese remainder theorem, for plain `Z n` blocks and coefficientwise
//! for quotient blocks.

use super::descriptor::{BlockDescriptor, RingDescriptor};
use super::poly;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("GF argument not a prime power: {0}")]
    NotPrimePower(u64),
    #[error("polynomial not monic: leading coefficient {lead} (mod {n})")]
    NotMonic { lead: u64, n: u64 },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("polynomial must have degree at least 1")]
    ConstantModulus,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Parser<'a> {
        Parser {
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

    fn found_here(&self) -> String {
        match self.src.get(self.pos) {
            Some(&b) => format!("'{}'", b as char),
            None => "end of input".to_string(),
        }
    }

    fn err(&mut self, expected: &str) -> ParseError {
        self.skip_ws();
        ParseError::Syntax {
            pos: self.pos,
            expected: expected.to_string(),
            found: self.found_here(),
        }
    }

    fn eat(&mut self, lit: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let bytes = lit.as_bytes();
        if self.src.len() - self.pos >= bytes.len()
            && &self.src[self.pos..self.pos + bytes.len()] == bytes
        {
            self.pos += bytes.len();
            Ok(())
        } else {
            Err(self.err(&format!("\"{lit}\"")))
        }
    }

    fn try_eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        let bytes = lit.as_bytes();
        if self.src.len() - self.pos >= bytes.len()
            && &self.src[self.pos..self.pos + bytes.len()] == bytes
        {
            self.pos += bytes.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<u64>().map_err(|_| ParseError::Syntax {
            pos: start,
            expected: "an integer that fits in 64 bits".to_string(),
            found: text.to_string(),
        })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Parses one source-level block, which may expand to several
    /// prime-power blocks when the modulus is composite.
    fn block(&mut self) -> Result<Vec<BlockDescriptor>, ParseError> {
        match self.peek() {
            Some(b'Z') => {
                self.eat("Z")?;
                let n = self.integer()?;
                if n < 2 {
                    return Err(ParseError::ModulusTooSmall(n));
                }
                if self.peek() == Some(b'[') {
                    self.eat("[x]/(")?;
                    let coeffs = self.polynomial()?;
                    self.eat(")")?;
                    quotient_blocks(n, coeffs)
                } else {
                    Ok(factor(n)
                        .into_iter()
                        .map(|(p, k)| BlockDescriptor::Zpk { p, k })
                        .collect())
                }
            }
            Some(b'G') => {
                self.eat("GF(")?;
                let q = self.integer()?;
                self.eat(")")?;
                if q < 2 {
                    return Err(ParseError::NotPrimePower(q));
                }
                let fac = factor(q);
                if fac.len() != 1 {
                    return Err(ParseError::NotPrimePower(q));
                }
                let (p, k) = fac[0];
                Ok(vec![BlockDescriptor::Gf { p, k }])
            }
            _ => Err(self.err("\"Z\" or \"GF\"")),
        }
    }

    /// Parses `term (+ term)*` into raw coefficients, low degree first.
    fn polynomial(&mut self) -> Result<Vec<u64>, ParseError> {
        let mut coeffs: Vec<u64> = Vec::new();
        loop {
            let (deg, c) = self.term()?;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] += c;
            if !self.try_eat("+") {
                break;
            }
        }
        Ok(coeffs)
    }

    fn term(&mut self) -> Result<(usize, u64), ParseError> {
        let c = match self.peek() {
            Some(b) if b.is_ascii_digit() => Some(self.integer()?),
            _ => None,
        };
        if self.try_eat("x") {
            let deg = if self.try_eat("^") {
                self.integer()? as usize
            } else {
                1
            };
            Ok((deg, c.unwrap_or(1)))
        } else {
            match c {
                Some(c) => Ok((0, c)),
                None => Err(self.err("a coefficient or \"x\"")),
            }
        }
    }
}

/// Splits `Z_n[x]/(f)` into one quotient block per prime-power part of `n`,
/// reducing the modulus coefficientwise.
fn quotient_blocks(n: u64, coeffs: Vec<u64>) -> Result<Vec<BlockDescriptor>, ParseError> {
    let coeffs = poly::trim(coeffs);
    if poly::degree(&coeffs) == 0 {
        return Err(ParseError::ConstantModulus);
    }
    let lead = coeffs[poly::degree(&coeffs)] % n;
    if lead != 1 {
        return Err(ParseError::NotMonic { lead, n });
    }
    Ok(factor(n)
        .into_iter()
        .map(|(p, k)| {
            let base = p.pow(k);
            let modulus = poly::trim(coeffs.iter().map(|&c| c % base).collect());
            BlockDescriptor::Quot { p, k, modulus }.normalize()
        })
        .collect())
}

/// Prime-power factorization by trial division, ascending primes.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Parses a ring spec string into a canonical descriptor.
pub fn parse_ring_spec(text: &str) -> Result<RingDescriptor, ParseError> {
    let mut p = Parser::new(text);
    let mut blocks = p.block()?;
    loop {
        if p.at_end() {
            break;
        }
        if p.try_eat("x") {
            blocks.extend(p.block()?);
        } else {
            return Err(p.err("\"x\" separator or end of input"));
        }
    }
    Ok(RingDescriptor::new(blocks, text))
}

/// Parses a spec that must denote a single block (used for catalog pools).
pub fn parse_block_spec(text: &str) -> Result<BlockDescriptor, ParseError> {
    let desc = parse_ring_spec(text)?;
    if desc.blocks().len() != 1 {
        return Err(ParseError::Syntax {
            pos: 0,
            expected: "a single local block".to_string(),
            found: format!("{} blocks ({})", desc.blocks().len(), desc),
        });
    }
    Ok(desc.blocks()[0].clone())
}
