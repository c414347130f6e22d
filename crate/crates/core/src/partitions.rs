//! Integer partitions, class symmetry factors, hook lengths and the
//! dimension formulas for irreps of S_m and U(N).

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::npoly::NPolynomial;

/// A partition stored as weakly decreasing positive parts.
///
/// Serializes as a JSON array of parts, e.g. `[2,2]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Builds a partition, rejecting parts that are not weakly decreasing and positive.
    pub fn from_sorted(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `[m]`.
    pub fn row(m: usize) -> Self {
        Partition::new(vec![m])
    }

    /// The one-column partition `[1^m]`.
    pub fn column(m: usize) -> Self {
        Partition::new(vec![1; m])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `multiplicities()[i]` is the number of parts equal to `i` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let top = self.parts.first().copied().unwrap_or(0);
        let mut mult = vec![0; top + 1];
        for &p in &self.parts {
            mult[p] += 1;
        }
        mult
    }

    /// Conjugate partition (transpose of the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let top = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=top)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// True iff every part is even.
    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// Length of the hook at row `i`, column `j` (0-based).
    pub fn hook_length(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.parts[i + 1..].iter().filter(|&&p| p > j).count();
        arm + leg + 1
    }

    /// Boxes of the diagram as (row, column), 0-based, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::from_sorted(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[3,1]`, `3,1` or `3 1`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_sorted(parts)
    }
}

/// All partitions of `m`, in reverse lexicographic order (`[m]` first, `[1^m]` last).
pub fn partitions_of(m: usize) -> impl Iterator<Item = Partition> {
    PartitionIter {
        current: if m == 0 { Some(Vec::new()) } else { Some(vec![m]) },
    }
}

struct PartitionIter {
    current: Option<Vec<usize>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        // successor: find the rightmost part > 1, decrement it and refill greedily
        let mut next = cur.clone();
        let mut rem = 0;
        while let Some(&1) = next.last() {
            next.pop();
            rem += 1;
        }
        if let Some(last) = next.pop() {
            let k = last - 1;
            rem += 1;
            next.push(k);
            while rem > 0 {
                let take = rem.min(k);
                next.push(take);
                rem -= take;
            }
            self.current = Some(next);
        }
        Some(Partition { parts: cur })
    }
}

/// Number of partitions of `m` via Euler's pentagonal recurrence.
pub fn partition_number(m: usize) -> BigUint {
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=m {
        let mut total = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > k {
                break;
            }
            let sign_pos = j % 2 == 1;
            let mut term = p[k - g1].clone();
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= k {
                term += &p[k - g2];
            }
            if sign_pos {
                total += term;
            } else {
                total -= term;
            }
        }
        p.push(total);
    }
    p[m].to_biguint().expect("partition numbers are positive")
}

/// `∏_i i^{m_i} m_i!` over part multiplicities; `m!/sym(p)` is the class size in S_m.
pub fn sym(p: &Partition) -> BigUint {
    let mut acc = BigUint::one();
    for (i, &mi) in p.multiplicities().iter().enumerate().skip(1) {
        if mi == 0 {
            continue;
        }
        acc *= BigUint::from(i).pow(mi as u32);
        acc *= factorial(mi);
    }
    acc
}

/// Size of the conjugacy class of cycle type `p` in S_{|p|}.
pub fn class_size(p: &Partition) -> BigUint {
    factorial(p.weight()) / sym(p)
}

pub fn is_even_partition(r: &Partition) -> bool {
    r.is_even()
}

pub fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Product of all hook lengths of `r`.
pub fn hook_product(r: &Partition) -> BigUint {
    r.boxes()
        .fold(BigUint::one(), |acc, (i, j)| acc * BigUint::from(r.hook_length(i, j)))
}

/// Dimension of the S_m irrep labelled by `r`.
pub fn dim_sn(r: &Partition) -> BigUint {
    factorial(r.weight()) / hook_product(r)
}

/// Content polynomial `f_N(R) = ∏_{(i,j)∈R} (N - i + j)` at a concrete `N`.
///
/// Vanishes as soon as `R` has more than `N` rows.
pub fn f_poly(r: &Partition, n: u64) -> BigUint {
    let mut acc = BigInt::one();
    for (i, j) in r.boxes() {
        acc *= BigInt::from(n) - BigInt::from(i) + BigInt::from(j);
    }
    // a negative product would need a zero factor earlier in the same column
    acc.to_biguint().expect("content product is nonnegative")
}

/// Dimension of the U(N) irrep labelled by `r`; zero when `r` has more than `N` rows.
pub fn dim_un(r: &Partition, n: u64) -> BigUint {
    f_poly(r, n) / hook_product(r)
}

/// `f_N(R)` as a polynomial in `N`.
pub fn f_polynomial(r: &Partition) -> NPolynomial {
    r.boxes().fold(NPolynomial::one(), |acc, (i, j)| {
        let shift = j as i64 - i as i64;
        acc * NPolynomial::linear(1, shift)
    })
}

/// `Dim_N(R)` as `(numerator polynomial, denominator)`: the numerator is
/// `f_N(R)` and the denominator the hook product, so every value at an integer
/// `N` divides exactly.
pub fn dim_un_polynomial(r: &Partition) -> (NPolynomial, BigUint) {
    (f_polynomial(r), hook_product(r))
}
