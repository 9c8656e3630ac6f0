//! Coefficient expressions: integers, `num/den`, `zeta^k`, `pi^k`, combined
//! with `+ - * /`, unary minus and parentheses.

use num_traits::{One, Signed};
use phimod::coeff::{ECoeff, ECtx};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad expression '{input}' at column {col}: {msg}")]
pub struct ExprError {
    pub input: String,
    pub col: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: &'a ECtx,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> ExprError {
        ExprError {
            input: self.src.to_string(),
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with('-') {
            self.pos += 1;
        }
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn expr(&mut self) -> Result<ECoeff, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ECoeff, ExprError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.factor()?;
                acc = acc.checked_div(&d).map_err(|_| {
                    self.pos = at;
                    self.err("division by zero")
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ECoeff, ExprError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.pos;
            let k = if self.eat('(') {
                let k = self.integer()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                k
            } else {
                self.integer()?
            };
            return base.pow(k).map_err(|_| {
                self.pos = at;
                self.err("negative power of zero")
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ECoeff, ExprError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if let Some(word) = ["zeta", "pi"].into_iter().find(|w| rest.starts_with(w)) {
            self.pos += word.len();
            return Ok(if word == "zeta" {
                self.ctx.zeta(1)
            } else {
                self.ctx.pi_pow(1)
            });
        }
        if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(v);
        }
        if rest.starts_with(|c: char| c.is_ascii_digit()) {
            let n = self.integer()?;
            return Ok(self.ctx.from_int(n));
        }
        Err(self.err("expected a number, zeta, pi or '('"))
    }
}

/// Parses `src` as an element of E.
pub fn parse_coeff(src: &str, ctx: &ECtx) -> Result<ECoeff, ExprError> {
    let mut p = Parser { src, pos: 0, ctx };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Writes `x` in the syntax `parse_coeff` reads, as a sum of
/// `c*zeta^i*pi^k` terms in the power basis.
pub fn format_coeff(x: &ECoeff) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (k, part) in x.parts().iter().enumerate() {
        for (i, c) in part.coeffs().iter().enumerate() {
            if c.numer().sign() == num_bigint::Sign::NoSign {
                continue;
            }
            let mut factors = Vec::new();
            if i > 0 {
                factors.push(if i == 1 {
                    "zeta".to_string()
                } else {
                    format!("zeta^{i}")
                });
            }
            if k > 0 {
                factors.push(if k == 1 {
                    "pi".to_string()
                } else {
                    format!("pi^{k}")
                });
            }
            let abs = c.abs();
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("({abs})")
            };
            let body = match (factors.is_empty(), abs.is_one()) {
                (true, _) => coeff,
                (false, true) => factors.join("*"),
                (false, false) => format!("{coeff}*{}", factors.join("*")),
            };
            let neg = c.numer().sign() == num_bigint::Sign::Minus;
            terms.push(match (terms.is_empty(), neg) {
                (true, true) => format!("-{body}"),
                (true, false) => body,
                (false, true) => format!(" - {body}"),
                (false, false) => format!(" + {body}"),
            });
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.concat()
    }
}
