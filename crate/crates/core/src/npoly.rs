//! Polynomials in the symbol `N` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// `Σ_k c_k N^k`, sparse; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NPolynomial {
    terms: BTreeMap<u32, BigInt>,
}

impl NPolynomial {
    pub fn zero() -> Self {
        NPolynomial::default()
    }

    pub fn one() -> Self {
        NPolynomial::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exponent: u32) -> Self {
        let mut p = NPolynomial::zero();
        p.add_term(coeff.into(), exponent);
        p
    }

    /// `a*N + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        let mut p = NPolynomial::zero();
        p.add_term(BigInt::from(a), 1);
        p.add_term(BigInt::from(b), 0);
        p
    }

    pub fn add_term(&mut self, coeff: BigInt, exponent: u32) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coefficient(&self, exponent: u32) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn eval(&self, n: i64) -> BigInt {
        let n = BigInt::from(n);
        // Horner from the top exponent down
        let mut acc = BigInt::zero();
        let mut prev = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (&e, c) in self.terms.iter().rev() {
            acc *= n.pow(prev - e);
            acc += c;
            prev = e;
        }
        acc * n.pow(prev)
    }
}

impl Add for NPolynomial {
    type Output = NPolynomial;
    fn add(mut self, rhs: NPolynomial) -> NPolynomial {
        for (e, c) in rhs.terms {
            self.add_term(c, e);
        }
        self
    }
}

impl Mul for NPolynomial {
    type Output = NPolynomial;
    fn mul(self, rhs: NPolynomial) -> NPolynomial {
        let mut out = NPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ca * cb, ea + eb);
            }
        }
        out
    }
}

/// Prints highest power first, e.g. `2*N^3 + N - 4`.
impl fmt::Display for NPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "N")?,
                (1, false) => write!(f, "{mag}*N")?,
                (_, true) => write!(f, "N^{e}")?,
                (_, false) => write!(f, "{mag}*N^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for NPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
