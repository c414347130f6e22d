//! Truncated power series in one variable over exact rationals.

use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `Σ_{k=0}^{len-1} c_k t^k`; everything past the stored length is dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(len: usize) -> Self {
        Series {
            coeffs: vec![BigRational::zero(); len],
        }
    }

    pub fn one(len: usize) -> Self {
        let mut s = Series::zero(len);
        if len > 0 {
            s.coeffs[0] = BigRational::one();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        Series { coeffs }
    }

    /// `1 + Σ_{k≥1} a_k t^k` from a 1-based sequence `a_1, a_2, …`.
    pub fn from_sequence_with_unit(seq: &[BigUint]) -> Self {
        let mut coeffs = Vec::with_capacity(seq.len() + 1);
        coeffs.push(BigRational::one());
        coeffs.extend(seq.iter().map(|a| ratio(BigInt::from(a.clone()))));
        Series { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set(&mut self, k: usize, v: BigRational) {
        if k < self.coeffs.len() {
            self.coeffs[k] = v;
        }
    }

    /// Substitutes `t → t^i`.
    pub fn dilate(&self, i: usize) -> Series {
        let mut out = Series::zero(self.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = k * i;
            if e >= out.len() {
                break;
            }
            out.coeffs[e] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<Series> {
        let n = self.len();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument(
                "log needs a series with constant term 1".into(),
            ));
        }
        // L' = F'/F, solved term by term: k L_k = k F_k − Σ_{j=1}^{k−1} j L_j F_{k−j}
        let mut l = Series::zero(n);
        for k in 1..n {
            let mut acc = &self.coeffs[k] * ratio(BigInt::from(k));
            for j in 1..k {
                acc -= &l.coeffs[j] * &self.coeffs[k - j] * ratio(BigInt::from(j));
            }
            l.coeffs[k] = acc / ratio(BigInt::from(k));
        }
        Ok(l)
    }

    /// Formal exponential; requires constant term 0.
    pub fn exp(&self) -> Result<Series> {
        let n = self.len();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "exp needs a series with constant term 0".into(),
            ));
        }
        // F' = G'F: k F_k = Σ_{j=1}^{k} j G_j F_{k−j}
        let mut f = Series::one(n);
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &f.coeffs[k - j] * ratio(BigInt::from(j));
            }
            f.coeffs[k] = acc / ratio(BigInt::from(k));
        }
        Ok(f)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.len().min(rhs.len());
        Series {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.len().min(rhs.len());
        Series {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.len().min(rhs.len());
        let mut out = Series::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

pub(crate) fn ratio(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Returns the value as a nonnegative integer, or a cross-check error naming `what`.
pub(crate) fn to_count(v: &BigRational, what: &str) -> Result<BigUint> {
    if !v.is_integer() || v.is_negative() {
        return Err(Error::CrossCheck(format!(
            "{what} produced the non-count value {v}"
        )));
    }
    Ok(v.to_integer().to_biguint().expect("checked nonnegative"))
}

/// Möbius function by trial division.
pub fn moebius(mut n: u64) -> i32 {
    assert!(n > 0);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Σ_{i≥1} μ(i)/i · log F(t^i)`, truncated at the length of `f`.
pub fn plethystic_log(f: &Series) -> Result<Series> {
    let log_f = f.log()?;
    let n = f.len();
    let mut out = Series::zero(n);
    for i in 1..n {
        let mu = moebius(i as u64);
        if mu == 0 {
            continue;
        }
        let c = BigRational::new(BigInt::from(mu), BigInt::from(i));
        out = &out + &log_f.dilate(i).scale(&c);
    }
    Ok(out)
}

/// `exp(Σ_{i≥1} (1/i) G(t^i))`, the inverse of [`plethystic_log`] when `G(0) = 0`.
pub fn plethystic_exp(g: &Series) -> Result<Series> {
    let n = g.len();
    let mut acc = Series::zero(n);
    for i in 1..n {
        let c = BigRational::new(BigInt::one(), BigInt::from(i));
        acc = &acc + &g.dilate(i).scale(&c);
    }
    acc.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn moebius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (k, &mu) in expected.iter().enumerate() {
            assert_eq!(moebius(k as u64 + 1), mu, "mu({})", k + 1);
        }
    }

    #[test]
    fn exp_log_inverse() {
        // 1/(1-t) has log = Σ t^k / k
        let geo = Series::from_coeffs(vec![r(1, 1); 8]);
        let l = geo.log().unwrap();
        for k in 1..8 {
            assert_eq!(l.coeff(k), &r(1, k as i64));
        }
        assert_eq!(l.exp().unwrap(), geo);
    }

    #[test]
    fn plog_of_geometric_series() {
        // Plog(1/(1-t)) = t
        let geo = Series::from_coeffs(vec![r(1, 1); 10]);
        let p = plethystic_log(&geo).unwrap();
        assert_eq!(p.coeff(1), &r(1, 1));
        for k in 2..10 {
            assert!(p.coeff(k).is_zero());
        }
        assert_eq!(plethystic_exp(&p).unwrap(), geo);
    }

    #[test]
    fn partitions_from_pexp() {
        // PE(t/(1-t)) = Π 1/(1-t^k): partition numbers
        let mut g = Series::from_coeffs(vec![r(1, 1); 12]);
        g.set(0, r(0, 1));
        let pe = plethystic_exp(&g).unwrap();
        let expect = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56];
        for (k, &v) in expect.iter().enumerate() {
            assert_eq!(pe.coeff(k), &r(v, 1));
        }
    }
}
