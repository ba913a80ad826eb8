//! Integer Laurent polynomials in one variable, used for Kauffman brackets,
//! Jones polynomials, and ruling polynomials.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A Laurent polynomial with i64 coefficients, stored sparsely by exponent.
/// Zero coefficients are never retained.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Laurent {
    terms: BTreeMap<i64, i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Laurent {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Laurent {
        let mut out = Laurent::zero();
        for (exp, coeff) in pairs {
            out.add_term(coeff, exp);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// (exponent, coefficient) pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width max_exp - min_exp; None for the zero polynomial.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by `coeff * x^exp`.
    pub fn mul_monomial(&self, coeff: i64, exp: i64) -> Laurent {
        if coeff == 0 {
            return Laurent::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Laurent {
        let mut base = self.clone();
        let mut acc = Laurent::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute x -> x^-1 (mirrors a Jones polynomial).
    pub fn mirror(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Reinterpret this polynomial in x as one in y where x = y^divisor,
    /// i.e. divide every exponent by `divisor`. Errors if any exponent is
    /// not divisible.
    pub fn reexpress(&self, divisor: i64) -> Result<Laurent> {
        let mut terms = BTreeMap::new();
        for (&e, &c) in &self.terms {
            if e % divisor != 0 {
                return Err(Error::HalfIntegerExponent);
            }
            terms.insert(e / divisor, c);
        }
        Ok(Laurent { terms })
    }

    /// Evaluate at an integer point.
    pub fn eval_int(&self, x: i64) -> i64 {
        assert!(
            x == 1 || x == -1 || self.min_exp().is_none_or(|e| e >= 0),
            "negative exponents need a unit"
        );
        self.terms
            .iter()
            .map(|(&e, &c)| {
                if x == 1 {
                    c
                } else if x == -1 {
                    if e % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                } else {
                    c * x.pow(e as u32)
                }
            })
            .sum()
    }

    /// Render with the given variable name, terms in ascending exponent
    /// order, e.g. `2+z^2` or `-t^-4+t^-3+t^-1`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            if c < 0 {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mag = c.unsigned_abs();
            if mag != 1 || e == 0 {
                out.push_str(&mag.to_string());
            }
            if e == 1 {
                out.push_str(var);
            } else if e != 0 {
                out.push_str(var);
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }

    /// Space-separated `exp:coeff` pairs in ascending exponent order, used
    /// by the tab-separated table file format.
    pub fn to_pairs_string(&self) -> String {
        self.terms
            .iter()
            .map(|(e, c)| format!("{e}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parse the `exp:coeff` pair format produced by `to_pairs_string`.
    pub fn from_pairs_str(s: &str) -> Result<Laurent> {
        let bad = |msg: String| Error::Parse { line: 0, msg };
        let mut out = Laurent::zero();
        for tok in s.split_whitespace() {
            let (e, c) = tok
                .split_once(':')
                .ok_or_else(|| bad(format!("expected exp:coeff, found {tok:?}")))?;
            let e: i64 = e
                .parse()
                .map_err(|err| bad(format!("bad exponent {e:?}: {err}")))?;
            let c: i64 = c
                .parse()
                .map_err(|err| bad(format!("bad coefficient {c:?}: {err}")))?;
            if c == 0 {
                return Err(bad(format!("zero coefficient at exponent {e}")));
            }
            if out.coeff(e) != 0 {
                return Err(bad(format!("duplicate exponent {e}")));
            }
            out.add_term(c, e);
        }
        Ok(out)
    }
}

impl std::fmt::Debug for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Laurent({})", self.display_with("x"))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (&e, &c) in &rhs.terms {
            self.add_term(c, e);
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(-c, e);
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}
