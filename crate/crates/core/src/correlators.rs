//! Gaussian one- and two-point functions of tensor observables as
//! polynomials in N, with direct index-summation oracles.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{check_budget, Error, Result};
use crate::npoly::NPolynomial;
use crate::perm::{all_permutations, pairings, Permutation};

/// Largest `2n` accepted by [`correlator_2pt`].
pub const MAX_2PT_DEGREE: usize = 8;
/// Largest `2n` accepted by [`correlator_1pt`].
pub const MAX_1PT_DEGREE: usize = 10;
/// Cap on the number of index assignments an oracle may visit.
pub const DEFAULT_ORACLE_BUDGET: u128 = 50_000_000;

/// `O_{σ_1..σ_d}`, keyed by its tilde tuple `σ̃_i = σ_i⁻¹ ξ σ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Observable {
    tuple: Vec<Permutation>,
    tilde: Vec<Permutation>,
}

impl Observable {
    pub fn new(tuple: Vec<Permutation>) -> Result<Self> {
        let m = tuple
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::InvalidArgument("an observable needs at least one color".into()))?;
        if let Some(p) = tuple.iter().find(|p| p.degree() != m) {
            return Err(Error::DegreeMismatch {
                left: m,
                right: p.degree(),
            });
        }
        let tilde = tuple.iter().map(Permutation::tilde).collect::<Result<Vec<_>>>()?;
        Ok(Observable { tuple, tilde })
    }

    /// The observable whose every color is `ξ`-contracted, e.g. `(Σ T²)^n`-type.
    pub fn identity(d: usize, n: usize) -> Self {
        Observable::new(vec![Permutation::identity(2 * n); d]).expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.tuple.len()
    }

    /// Number of tensors `2n`.
    pub fn degree(&self) -> usize {
        self.tuple[0].degree()
    }

    pub fn tuple(&self) -> &[Permutation] {
        &self.tuple
    }

    pub fn tilde(&self) -> &[Permutation] {
        &self.tilde
    }
}

fn check_pair(a: &Observable, b: &Observable) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(Error::InvalidArgument(format!(
            "rank mismatch: {} vs {}",
            a.rank(),
            b.rank()
        )));
    }
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(())
}

fn check_degree(m: usize, max: usize, what: &'static str) -> Result<()> {
    if m > max {
        return Err(Error::BudgetExceeded {
            what,
            needed: m as u128,
            budget: max as u128,
        });
    }
    Ok(())
}

fn histogram_to_poly(hist: Vec<u64>) -> NPolynomial {
    let mut p = NPolynomial::zero();
    for (e, &c) in hist.iter().enumerate() {
        if c != 0 {
            p.add_term(BigInt::from(c), e as u32);
        }
    }
    p
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
    a
}

// cycles of a product of two fixed-point-free involutions come in equal-length pairs
fn paired_exponent(p: &Permutation) -> usize {
    let c = p.num_cycles();
    debug_assert!(c % 2 == 0, "odd cycle count {c}");
    c / 2
}

fn two_point_exponent(a: &Observable, b: &Observable, mu: &Permutation, halved: bool) -> usize {
    let mu_inv = mu.inverse();
    a.tilde
        .iter()
        .zip(&b.tilde)
        .map(|(s, t)| {
            let p = &(&(&mu_inv * t) * mu) * s;
            if halved {
                paired_exponent(&p)
            } else {
                p.num_cycles()
            }
        })
        .sum()
}

fn two_point(a: &Observable, b: &Observable, halved: bool) -> Result<NPolynomial> {
    check_pair(a, b)?;
    let m = a.degree();
    check_degree(m, MAX_2PT_DEGREE, "two-point correlator")?;
    let max_exp = a.rank() * m + 1;
    let perms: Vec<Permutation> = all_permutations(m).collect();
    let hist = perms
        .par_iter()
        .fold(
            || vec![0u64; max_exp],
            |mut h, mu| {
                h[two_point_exponent(a, b, mu, halved)] += 1;
                h
            },
        )
        .reduce(|| vec![0u64; max_exp], merge);
    Ok(histogram_to_poly(hist))
}

/// `⟨O_A O_B⟩ = Σ_{μ ∈ S_2n} N^{Σ_i c(μ⁻¹ τ̃_i μ σ̃_i)/2}`.
pub fn correlator_2pt(a: &Observable, b: &Observable) -> Result<NPolynomial> {
    two_point(a, b, true)
}

/// The same sum with the full cycle count `Σ_i c(μ⁻¹ τ̃_i μ σ̃_i)` as exponent.
/// It double counts every color and disagrees with the index sum; kept as a
/// regression reference.
pub fn correlator_2pt_full_cycle_exponent(a: &Observable, b: &Observable) -> Result<NPolynomial> {
    two_point(a, b, false)
}

/// `⟨O_A⟩ = Σ_{μ pairing} N^{Σ_i c(μ σ̃_i)/2}`.
pub fn correlator_1pt(a: &Observable) -> Result<NPolynomial> {
    let m = a.degree();
    if m % 2 != 0 {
        return Err(Error::OddDegree(m));
    }
    check_degree(m, MAX_1PT_DEGREE, "one-point correlator")?;
    let max_exp = a.rank() * m + 1;
    let mus: Vec<Permutation> = pairings(m)?.collect();
    let hist = mus
        .par_iter()
        .fold(
            || vec![0u64; max_exp],
            |mut h, mu| {
                let e: usize = a.tilde.iter().map(|s| paired_exponent(&(mu * s))).sum();
                h[e] += 1;
                h
            },
        )
        .reduce(|| vec![0u64; max_exp], merge);
    Ok(histogram_to_poly(hist))
}

fn check_oracle_shape(m: usize, d: usize, big_n: u64) -> Result<()> {
    if !(2..=3).contains(&big_n) {
        return Err(Error::InvalidArgument(format!("oracle supports N ∈ {{2, 3}}, got {big_n}")));
    }
    if m > 4 || d > 3 {
        return Err(Error::BudgetExceeded {
            what: "index-sum oracle",
            needed: (big_n as u128).pow((2 * m * d) as u32),
            budget: DEFAULT_ORACLE_BUDGET,
        });
    }
    Ok(())
}

/// Calls `f` with every assignment in `{0..base}^len`.
fn for_each_assignment(len: usize, base: u64, mut f: impl FnMut(&[u64])) {
    let mut a = vec![0u64; len];
    loop {
        f(&a);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            a[i] += 1;
            if a[i] < base {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Per-color factor of the two-point index sum: assignments `a, b ∈ {1..N}^{2n}`
/// satisfying every vertex delta `a_i = a_{σ̃(i)}`, `b_i = b_{τ̃(i)}` and every
/// Wick delta `a_i = b_{μ(i)}`.
fn two_point_color(sigma_t: &Permutation, tau_t: &Permutation, mu: &Permutation, big_n: u64) -> u64 {
    let m = mu.degree();
    let mut count = 0;
    for_each_assignment(2 * m, big_n, |ab| {
        let (a, b) = ab.split_at(m);
        let ok = (0..m).all(|i| {
            a[i] == a[sigma_t.at(i)] && b[i] == b[tau_t.at(i)] && a[i] == b[mu.at(i)]
        });
        count += ok as u64;
    });
    count
}

/// Direct Wick/index summation of `⟨O_A O_B⟩` at a concrete `N`. The sum over
/// indices factors by color because no delta mixes colors.
pub fn correlator_2pt_oracle(a: &Observable, b: &Observable, big_n: u64) -> Result<BigUint> {
    check_pair(a, b)?;
    let m = a.degree();
    check_oracle_shape(m, a.rank(), big_n)?;
    let mut total = BigUint::zero();
    for mu in all_permutations(m) {
        let term = a
            .tilde
            .iter()
            .zip(&b.tilde)
            .fold(BigUint::one(), |acc, (s, t)| acc * two_point_color(s, t, &mu, big_n));
        total += term;
    }
    Ok(total)
}

/// Direct summation of `⟨O_A⟩`: assignments `a ∈ {1..N}^{2n}` per color with
/// `a_i = a_{σ̃(i)}` and `a_i = a_{μ(i)}` for a Wick pairing `μ`.
pub fn correlator_1pt_oracle(a: &Observable, big_n: u64) -> Result<BigUint> {
    let m = a.degree();
    check_oracle_shape(m, a.rank(), big_n)?;
    let mut total = BigUint::zero();
    for mu in pairings(m)? {
        let term = a.tilde.iter().fold(BigUint::one(), |acc, s| {
            let mut count = 0u64;
            for_each_assignment(m, big_n, |x| {
                count += (0..m).all(|i| x[i] == x[s.at(i)] && x[i] == x[mu.at(i)]) as u64;
            });
            acc * count
        });
        total += term;
    }
    Ok(total)
}

/// Unfactored two-point index sum over all colors at once; tiny sizes only.
pub fn correlator_2pt_oracle_nested(a: &Observable, b: &Observable, big_n: u64) -> Result<BigUint> {
    check_pair(a, b)?;
    let (m, d) = (a.degree(), a.rank());
    check_oracle_shape(m, d, big_n)?;
    let per_mu = (big_n as u128).pow((2 * m * d) as u32);
    check_budget("nested index-sum oracle", per_mu * (1..=m as u128).product::<u128>(), DEFAULT_ORACLE_BUDGET)?;
    let mut total = 0u64;
    for mu in all_permutations(m) {
        // layout: a[i][j] at i*d + j, then b likewise
        for_each_assignment(2 * m * d, big_n, |ab| {
            let (x, y) = ab.split_at(m * d);
            let ok = (0..m).all(|i| {
                (0..d).all(|j| {
                    x[i * d + j] == x[a.tilde[j].at(i) * d + j]
                        && y[i * d + j] == y[b.tilde[j].at(i) * d + j]
                        && x[i * d + j] == y[mu.at(i) * d + j]
                })
            });
            total += ok as u64;
        });
    }
    Ok(BigUint::from(total))
}

/// Evaluates `p` at a nonnegative integer and returns it as a count.
pub fn eval_count(p: &NPolynomial, big_n: u64) -> BigUint {
    p.eval(big_n as i64)
        .to_biguint()
        .expect("correlators have nonnegative coefficients")
}

/// `N^k` as a polynomial, for comparisons.
pub fn n_power(coeff: u64, k: u32) -> NPolynomial {
    NPolynomial::monomial(BigInt::from(coeff), k)
}

/// Leading exponent bound `d·n` of a two-point function.
pub fn max_two_point_exponent(d: usize, n: usize) -> usize {
    d * n
}
