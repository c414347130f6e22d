//! The double-coset algebra `K_d(2n) ⊂ ℂ[S_2n]^{⊗d}` spanned by graph basis
//! elements `b_σ = Σ_{γ_i ∈ H, γ ∈ S_2n} (γ_1σ_1γ, …, γ_dσ_dγ)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::bruteforce::{OrbitPartition, DEFAULT_BRUTE_BUDGET};
use crate::error::{check_budget, Error, Result};
use crate::perm::{all_permutations, wreath_elements, CayleyTable, Permutation};
use crate::series::ratio;

/// Cap on `|supp A|·|supp B|` for one product.
pub const DEFAULT_PRODUCT_BUDGET: u128 = 1_000_000_000;

/// Sparse element of `ℂ[S_m]^{⊗d}` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorAlgebraElement {
    m: usize,
    d: usize,
    terms: BTreeMap<Vec<Permutation>, BigRational>,
}

impl TensorAlgebraElement {
    pub fn zero(m: usize, d: usize) -> Self {
        TensorAlgebraElement {
            m,
            d,
            terms: BTreeMap::new(),
        }
    }

    /// The basis tuple `key` with coefficient `c`.
    pub fn monomial(key: Vec<Permutation>, c: BigRational) -> Result<Self> {
        let d = key.len();
        let m = key.first().map(Permutation::degree).unwrap_or(0);
        let mut out = TensorAlgebraElement::zero(m, d);
        out.add_term(key, c)?;
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &[Permutation]) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Permutation>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: Vec<Permutation>, c: BigRational) -> Result<()> {
        if key.len() != self.d {
            return Err(Error::InvalidArgument(format!(
                "tuple of length {} in a rank-{} element",
                key.len(),
                self.d
            )));
        }
        if let Some(p) = key.iter().find(|p| p.degree() != self.m) {
            return Err(Error::DegreeMismatch {
                left: self.m,
                right: p.degree(),
            });
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DegreeMismatch {
                left: self.m,
                right: other.m,
            });
        }
        if self.d != other.d {
            return Err(Error::InvalidArgument(format!(
                "rank mismatch: {} vs {}",
                self.d, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            let entry = out.terms.entry(k.clone()).or_insert_with(BigRational::zero);
            *entry += v;
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = TensorAlgebraElement::zero(self.m, self.d);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }
}

fn encode(ranks: impl Iterator<Item = usize>, order: usize) -> usize {
    ranks.fold(0, |acc, r| acc * order + r)
}

fn decode(mut idx: usize, order: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for s in out.iter_mut().rev() {
        *s = idx % order;
        idx /= order;
    }
    out
}

/// `b_σ`: the sum over the whole gauge group, so each tuple of the orbit
/// carries the stabilizer order `|H|^d·(2n)!/|orbit|`.
pub fn graph_basis_element(tuple: &[Permutation]) -> Result<TensorAlgebraElement> {
    let d = tuple.len();
    let m = tuple
        .first()
        .map(Permutation::degree)
        .ok_or_else(|| Error::InvalidArgument("empty tuple".into()))?;
    if m % 2 != 0 {
        return Err(Error::OddDegree(m));
    }
    if let Some(p) = tuple.iter().find(|p| p.degree() != m) {
        return Err(Error::DegreeMismatch {
            left: m,
            right: p.degree(),
        });
    }
    let h = wreath_elements(m / 2)?;
    let terms = (h.len() as u128).pow(d as u32) * (1..=m as u128).product::<u128>();
    check_budget("graph basis element", terms, 50_000_000)?;
    let table = CayleyTable::new(m)?;
    let order = table.order();
    let h: Vec<usize> = h.iter().map(Permutation::lex_rank).collect();
    let sigma: Vec<usize> = tuple.iter().map(Permutation::lex_rank).collect();

    // counts[i][x] = #{γ_i ∈ H : γ_i σ_i γ = x} for the current γ, combined across slots
    let mut hits: HashMap<usize, u64> = HashMap::new();
    for g in 0..order {
        let per_slot: Vec<Vec<usize>> = sigma
            .iter()
            .map(|&s| h.iter().map(|&gi| table.mul(gi, table.mul(s, g))).collect())
            .collect();
        let mut choice = vec![0usize; d];
        loop {
            let idx = encode((0..d).map(|i| per_slot[i][choice[i]]), order);
            *hits.entry(idx).or_default() += 1;
            let mut i = d;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < h.len() {
                    break;
                }
                choice[i] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    let mut out = TensorAlgebraElement::zero(m, d);
    for (idx, count) in hits {
        let key = decode(idx, order, d).into_iter().map(|r| table.element(r).clone()).collect();
        out.terms.insert(key, ratio(BigInt::from(count)));
    }
    Ok(out)
}

/// Slotwise convolution `(a_1,…,a_d)·(b_1,…,b_d) = (a_1b_1,…,a_db_d)`, extended bilinearly.
pub fn multiply(a: &TensorAlgebraElement, b: &TensorAlgebraElement) -> Result<TensorAlgebraElement> {
    a.check_shape(b)?;
    let (m, d) = (a.m, a.d);
    if a.is_zero() || b.is_zero() {
        return Ok(TensorAlgebraElement::zero(m, d));
    }
    check_budget(
        "product",
        a.support_len() as u128 * b.support_len() as u128,
        DEFAULT_PRODUCT_BUDGET,
    )?;
    let table = CayleyTable::new(m)?;
    let order = table.order();
    let size = order.checked_pow(d as u32).filter(|&s| s <= 50_000_000).ok_or(Error::BudgetExceeded {
        what: "product",
        needed: (order as u128).saturating_pow(d as u32),
        budget: 50_000_000,
    })?;

    // slot i of a product contributes mul(x_i, y_i)·order^{d−1−i} to the packed index
    let scaled: Vec<Vec<u32>> = (0..d)
        .map(|i| {
            let w = order.pow((d - 1 - i) as u32);
            (0..order * order)
                .map(|xy| (table.mul(xy / order, xy % order) * w) as u32)
                .collect()
        })
        .collect();

    // group each operand by coefficient value, scaled to integers over a
    // common denominator; the convolution of two indicator sets is a count array
    let group = |e: &TensorAlgebraElement| -> (BigInt, Vec<(BigInt, Vec<u32>)>) {
        let den = e
            .terms
            .values()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut by_value: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for (k, v) in &e.terms {
            by_value
                .entry(v.numer() * (&den / v.denom()))
                .or_default()
                .extend(k.iter().map(|p| p.lex_rank() as u32));
        }
        (den, by_value.into_iter().collect())
    };
    let (den_a, ga) = group(a);
    let (den_b, gb) = group(b);
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); size];
    for (ca, sa) in &ga {
        for (cb, sb) in &gb {
            let counts = convolve_counts(sa, sb, &scaled, order, d, size);
            let c = ca * cb;
            for (slot, &n) in acc.iter_mut().zip(&counts) {
                if n != 0 {
                    *slot += &c * n;
                }
            }
        }
    }
    let den = den_a * den_b;
    let mut out = TensorAlgebraElement::zero(m, d);
    for (idx, v) in acc.into_iter().enumerate() {
        if !v.is_zero() {
            let key = decode(idx, order, d).into_iter().map(|r| table.element(r).clone()).collect();
            out.terms.insert(key, BigRational::new(v, den.clone()));
        }
    }
    Ok(out)
}

fn convolve_counts(sa: &[u32], sb: &[u32], scaled: &[Vec<u32>], order: usize, d: usize, size: usize) -> Vec<u32> {
    match d {
        1 => convolve_fixed::<1>(sa, sb, scaled, order, size),
        2 => convolve_fixed::<2>(sa, sb, scaled, order, size),
        3 => convolve_fixed::<3>(sa, sb, scaled, order, size),
        4 => convolve_fixed::<4>(sa, sb, scaled, order, size),
        5 => convolve_fixed::<5>(sa, sb, scaled, order, size),
        _ => {
            let mut counts = vec![0u32; size];
            for x in sa.chunks_exact(d) {
                for y in sb.chunks_exact(d) {
                    let idx: u32 = (0..d)
                        .map(|i| scaled[i][x[i] as usize * order + y[i] as usize])
                        .sum();
                    counts[idx as usize] += 1;
                }
            }
            counts
        }
    }
}

fn convolve_fixed<const D: usize>(sa: &[u32], sb: &[u32], scaled: &[Vec<u32>], order: usize, size: usize) -> Vec<u32> {
    let ys: Vec<[u32; D]> = sb
        .chunks_exact(D)
        .map(|y| std::array::from_fn(|i| y[i]))
        .collect();
    sa.par_chunks(D * 64)
        .fold(
            || vec![0u32; size],
            |mut counts, chunk| {
                for x in chunk.chunks_exact(D) {
                    let rows: [&[u32]; D] =
                        std::array::from_fn(|i| &scaled[i][x[i] as usize * order..(x[i] as usize + 1) * order]);
                    for y in &ys {
                        let mut idx = 0u32;
                        for i in 0..D {
                            idx += rows[i][y[i] as usize];
                        }
                        counts[idx as usize] += 1;
                    }
                }
                counts
            },
        )
        .reduce(
            || vec![0u32; size],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Linear extension of `δ(σ_i σ_i′⁻¹)` in every slot: `Σ_x A(x)·B(x)`.
pub fn pairing(a: &TensorAlgebraElement, b: &TensorAlgebraElement) -> Result<BigRational> {
    a.check_shape(b)?;
    let (small, large) = if a.support_len() <= b.support_len() { (a, b) } else { (b, a) };
    Ok(small
        .terms
        .iter()
        .filter_map(|(k, v)| large.terms.get(k).map(|w| v * w))
        .fold(BigRational::zero(), |acc, x| acc + x))
}

/// Graph basis of `K_d(2n)` with one element per gauge orbit.
#[derive(Clone, Debug)]
pub struct GraphBasis {
    pub representatives: Vec<Vec<Permutation>>,
    pub elements: Vec<TensorAlgebraElement>,
}

/// One basis element per orbit, ordered by lexicographically smallest
/// representative, so the identity tuple comes first.
pub fn basis_list(d: usize, n: usize) -> Result<GraphBasis> {
    let part = OrbitPartition::new(d, n, DEFAULT_BRUTE_BUDGET)?;
    let representatives = part.representatives();
    let elements = representatives
        .iter()
        .map(|r| graph_basis_element(r))
        .collect::<Result<Vec<_>>>()?;
    Ok(GraphBasis {
        representatives,
        elements,
    })
}

/// Expansion of `x` over an orthogonal basis and the leftover `x − Σ c_j b_j`.
pub fn project(x: &TensorAlgebraElement, basis: &[TensorAlgebraElement]) -> Result<(Vec<BigRational>, TensorAlgebraElement)> {
    let mut residual = x.clone();
    let mut coeffs = Vec::with_capacity(basis.len());
    for b in basis {
        let norm = pairing(b, b)?;
        if norm.is_zero() {
            return Err(Error::InvalidArgument("basis element with zero norm".into()));
        }
        let c = pairing(x, b)? / norm;
        if !c.is_zero() {
            for (k, v) in &b.terms {
                let entry = residual.terms.entry(k.clone()).or_insert_with(BigRational::zero);
                *entry -= &c * v;
            }
        }
        coeffs.push(c);
    }
    residual.terms.retain(|_, v| !v.is_zero());
    Ok((coeffs, residual))
}

/// Outcome of testing whether a multiple of `b_id` is a two-sided unit.
#[derive(Clone, Debug, Serialize)]
pub struct UnitCheckReport {
    pub rank: usize,
    pub n: usize,
    /// `Some(c)` when `b_id·b_k = b_k·b_id = c·b_k` for every basis element.
    pub scalar: Option<String>,
    pub found: bool,
    /// `left[k][j]`: coefficient of `b_j` in `b_id·b_k`.
    pub left: Vec<Vec<String>>,
    /// `right[k][j]`: coefficient of `b_j` in `b_k·b_id`.
    pub right: Vec<Vec<String>>,
}

pub fn unit_check(d: usize, n: usize) -> Result<UnitCheckReport> {
    let basis = basis_list(d, n)?;
    unit_check_with(&basis, d, n)
}

pub fn unit_check_with(basis: &GraphBasis, d: usize, n: usize) -> Result<UnitCheckReport> {
    let id = &basis.elements[0];
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut scalar: Option<BigRational> = None;
    let mut found = true;
    for (k, b) in basis.elements.iter().enumerate() {
        for (side, out) in [(multiply(id, b)?, &mut left), (multiply(b, id)?, &mut right)] {
            let (coeffs, residual) = project(&side, &basis.elements)?;
            if !residual.is_zero() {
                return Err(Error::CrossCheck("product left the span of the graph basis".into()));
            }
            let diagonal_only = coeffs.iter().enumerate().all(|(j, c)| j == k || c.is_zero());
            match (&scalar, diagonal_only) {
                (_, false) => found = false,
                (None, true) => scalar = Some(coeffs[k].clone()),
                (Some(s), true) if *s != coeffs[k] => found = false,
                _ => {}
            }
            out.push(coeffs.iter().map(ToString::to_string).collect());
        }
    }
    let found = found && scalar.as_ref().is_some_and(|s| !s.is_zero());
    Ok(UnitCheckReport {
        rank: d,
        n,
        scalar: if found { scalar.map(|s| s.to_string()) } else { None },
        found,
        left,
        right,
    })
}

/// Everything the `algebra-check` command reports.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub rank: usize,
    pub tensors: usize,
    pub dimension: usize,
    pub representatives: Vec<Vec<String>>,
    pub gram_diagonal: Vec<String>,
    pub gram_off_diagonal_zero: bool,
    pub closure_residuals_zero: bool,
    pub closure_pairs: usize,
    pub associativity_samples: usize,
    pub associativity_holds: bool,
    pub unit_check: UnitCheckReport,
}

/// Dimension, Gram matrix, product closure over all basis pairs, seeded
/// associativity triples and the unit experiment.
pub fn algebra_check(d: usize, n: usize, samples: usize, seed: u64) -> Result<AlgebraReport> {
    let basis = basis_list(d, n)?;
    let els = &basis.elements;
    let k = els.len();

    let mut off_zero = true;
    let mut gram_diagonal = Vec::with_capacity(k);
    for i in 0..k {
        for j in 0..k {
            let p = pairing(&els[i], &els[j])?;
            if i == j {
                gram_diagonal.push(p.to_string());
            } else if !p.is_zero() {
                off_zero = false;
            }
        }
    }

    let mut closure = true;
    for a in els {
        for b in els {
            let (_, residual) = project(&multiply(a, b)?, els)?;
            closure &= residual.is_zero();
        }
    }

    let mut rng = StdRng::seed_from_u64(seed);
    let mut assoc = true;
    for _ in 0..samples {
        let [x, y, z] = [0; 3].map(|_| &els[rng.random_range(0..k)]);
        let lhs = multiply(&multiply(x, y)?, z)?;
        let rhs = multiply(x, &multiply(y, z)?)?;
        assoc &= lhs == rhs;
    }

    let unit = unit_check_with(&basis, d, n)?;
    Ok(AlgebraReport {
        rank: d,
        tensors: 2 * n,
        dimension: k,
        representatives: basis
            .representatives
            .iter()
            .map(|t| t.iter().map(ToString::to_string).collect())
            .collect(),
        gram_diagonal,
        gram_off_diagonal_zero: off_zero,
        closure_residuals_zero: closure,
        closure_pairs: k * k,
        associativity_samples: samples,
        associativity_holds: assoc,
        unit_check: unit,
    })
}

/// `Σ_{p ∈ S_m^d} p`, handy for small sanity checks.
pub fn full_group_sum(m: usize, d: usize) -> Result<TensorAlgebraElement> {
    let perms: Vec<Permutation> = all_permutations(m).collect();
    let total = (perms.len() as u128).pow(d as u32);
    check_budget("full group sum", total, 5_000_000)?;
    let mut out = TensorAlgebraElement::zero(m, d);
    for idx in 0..total as usize {
        let key = decode(idx, perms.len(), d).into_iter().map(|r| perms[r].clone()).collect();
        out.terms.insert(key, BigRational::one());
    }
    Ok(out)
}
