//! Cycle index of the hyperoctahedral groups S_n[S_2] ⊂ S_2n.
//!
//! The generating function is
//! `exp(Σ_{i≥1} (tⁱ/i)·(x_i² + x_{2i})/2)`; its `tⁿ` coefficient is the cycle
//! index of S_n[S_2] acting on 2n points. Only the S_2 inner factor is
//! implemented; an inner S_k would replace `(x_i² + x_{2i})/2` by the cycle
//! index of S_k evaluated at `x_{i·ℓ}`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{check_budget, Error, Result};
use crate::partitions::{factorial, partitions_of, sym, Partition};
use crate::perm::{wreath_elements_with_budget, wreath_order, DEFAULT_ENUMERATION_BUDGET};
use crate::series::{ratio, to_count};

/// Truncated cycle-index series keyed by (t-degree n, cycle type of 2n points).
#[derive(Clone, Debug)]
pub struct CycleIndexSeries {
    // degrees[n] maps partitions of 2n to coefficients
    degrees: Vec<HashMap<Partition, BigRational>>,
}

impl CycleIndexSeries {
    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    /// Coefficient of `tⁿ x^p`; zero for absent monomials or degrees past the truncation.
    pub fn coefficient(&self, n: usize, p: &Partition) -> BigRational {
        self.degrees
            .get(n)
            .and_then(|m| m.get(p))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero monomials of degree `n`, sorted by partition.
    pub fn terms(&self, n: usize) -> Vec<(Partition, BigRational)> {
        let mut out: Vec<_> = self
            .degrees
            .get(n)
            .map(|m| m.iter().map(|(p, c)| (p.clone(), c.clone())).collect())
            .unwrap_or_default();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

fn push_parts(p: &Partition, extra: &[usize]) -> Partition {
    let mut parts = p.parts().to_vec();
    parts.extend_from_slice(extra);
    Partition::new(parts)
}

/// Expands the generating function up to `t^{max_n}` by the recurrence
/// `n·Z_n = Σ_{k=1}^{n} (x_k² + x_{2k})/2 · Z_{n−k}` (from `Z' = G'·Z`).
pub fn wreath_series(max_n: usize) -> CycleIndexSeries {
    let mut degrees: Vec<HashMap<Partition, BigRational>> = Vec::with_capacity(max_n + 1);
    degrees.push(HashMap::from([(Partition::empty(), ratio(BigInt::from(1)))]));
    for n in 1..=max_n {
        let mut acc: HashMap<Partition, BigRational> = HashMap::new();
        for k in 1..=n {
            for (mono, c) in &degrees[n - k] {
                for extra in [&[k, k][..], &[2 * k][..]] {
                    let key = push_parts(mono, extra);
                    *acc.entry(key).or_insert_with(BigRational::zero) += c;
                }
            }
        }
        let denom = ratio(BigInt::from(2 * n));
        acc.retain(|_, c| !c.is_zero());
        for c in acc.values_mut() {
            *c /= &denom;
        }
        degrees.push(acc);
    }
    CycleIndexSeries { degrees }
}

/// Class sizes of S_n[S_2] inside S_2n for every cycle type, from the series.
pub fn wreath_class_sizes(series: &CycleIndexSeries, n: usize) -> Result<Vec<(Partition, BigUint)>> {
    let order = ratio(BigInt::from(wreath_order_big(n)));
    series
        .terms(n)
        .into_iter()
        .map(|(p, c)| Ok((p, to_count(&(c * &order), "wreath class size")?)))
        .collect()
}

pub(crate) fn wreath_order_big(n: usize) -> BigUint {
    factorial(n) << n
}

/// Number of elements of S_n[S_2] ⊂ S_2n with cycle type `p`.
pub fn wreath_class_size(n: usize, p: &Partition) -> Result<BigUint> {
    if p.weight() != 2 * n {
        return Err(Error::WeightMismatch {
            expected: 2 * n,
            got: p.weight(),
        });
    }
    let series = wreath_series(n);
    let c = series.coefficient(n, p) * ratio(BigInt::from(wreath_order_big(n)));
    to_count(&c, "wreath class size")
}

/// Same count through signed cycle types: a positive `a`-cycle of S_n[S_2]
/// becomes two `a`-cycles on 2n points, a negative `b`-cycle one `2b`-cycle,
/// and the signed class `(α, β)` has `2ⁿn! / (z_α z_β 2^{ℓ(α)+ℓ(β)})` elements.
pub fn wreath_class_size_signed(n: usize, p: &Partition) -> Result<BigUint> {
    if p.weight() != 2 * n {
        return Err(Error::WeightMismatch {
            expected: 2 * n,
            got: p.weight(),
        });
    }
    let order = wreath_order_big(n);
    let mut total = BigUint::zero();
    for a in 0..=n {
        for alpha in partitions_of(a) {
            for beta in partitions_of(n - a) {
                let mut parts: Vec<usize> = alpha.parts().iter().flat_map(|&x| [x, x]).collect();
                parts.extend(beta.parts().iter().map(|&y| 2 * y));
                if Partition::new(parts) != *p {
                    continue;
                }
                let denom = sym(&alpha) * sym(&beta) << (alpha.len() + beta.len());
                total += &order / denom;
            }
        }
    }
    Ok(total)
}

/// Brute-force class size by enumerating S_n[S_2]; n ≤ 5.
pub fn wreath_class_size_oracle(n: usize, p: &Partition) -> Result<BigUint> {
    if n > 5 {
        return Err(Error::BudgetExceeded {
            what: "wreath_class_size_oracle",
            needed: wreath_order(n),
            budget: wreath_order(5),
        });
    }
    if p.weight() != 2 * n {
        return Err(Error::WeightMismatch {
            expected: 2 * n,
            got: p.weight(),
        });
    }
    check_budget("wreath_class_size_oracle", wreath_order(n), DEFAULT_ENUMERATION_BUDGET)?;
    let count = wreath_elements_with_budget(n, DEFAULT_ENUMERATION_BUDGET)?
        .iter()
        .filter(|s| s.cycle_type() == *p)
        .count();
    Ok(BigUint::from(count))
}
