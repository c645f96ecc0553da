//! Integer exponent expressions such as `(q^2+q+1)*45` or `(q^2+q)/2`,
//! evaluated exactly with an optional binding for `q`.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    Op(char),
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("ascii digits")));
            }
            'q' => {
                out.push(Tok::Q);
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected {c:?} in exponent {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    q: Option<&'a BigUint>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn sum(&mut self) -> Result<BigInt> {
        let mut acc = self.product()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<BigInt> {
        let mut acc = self.power()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.power()?;
            if c == '*' {
                acc *= rhs;
            } else {
                if rhs.is_zero() || !(&acc % &rhs).is_zero() {
                    return Err(Error::Parse(format!("{acc}/{rhs} is not an exact division")));
                }
                acc /= rhs;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<BigInt> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.power()?;
            let e = e
                .to_u32()
                .filter(|_| !e.is_negative())
                .ok_or_else(|| Error::Parse(format!("exponent {e} too large or negative")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Q) => {
                self.pos += 1;
                self.q
                    .map(|q| BigInt::from_biguint(Sign::Plus, q.clone()))
                    .ok_or_else(|| Error::Parse("exponent uses q but no q was declared".into()))
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Evaluates an expression to a signed integer.
pub fn eval_signed(text: &str, q: Option<&BigUint>) -> Result<BigInt> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        q,
    };
    let v = parser.sum()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::Parse(format!("trailing input in {text:?}")));
    }
    Ok(v)
}

/// Evaluates an expression that must be non-negative.
pub fn eval_exponent(text: &str, q: Option<&BigUint>) -> Result<BigUint> {
    let v = eval_signed(text, q)?;
    v.to_biguint()
        .ok_or_else(|| Error::Parse(format!("exponent {text:?} evaluates to {v} < 0")))
}
