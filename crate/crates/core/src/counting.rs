//! Counting rank-d O(N) invariants on 2n tensors.
//!
//! Three generating-function routes live here: the double-coset master
//! formula over cycle types, Read's Hermite-product formula, and the
//! plethystic logarithm for connected counts. [`sequence`] dispatches to
//! those and to the character-theoretic and brute-force counters elsewhere
//! in the crate.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bruteforce;
use crate::characters::{count_invariants_kronecker, count_invariants_squares};
use crate::error::{Error, Result};
use crate::partitions::{factorial, sym};
use crate::series::{plethystic_exp, plethystic_log, ratio, to_count, Series};
use crate::wreath::wreath_series;

fn check_rank(d: usize, n: usize) -> Result<()> {
    if d < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "counting needs rank d ≥ 2 and n ≥ 1, got d={d}, n={n}"
        )));
    }
    Ok(())
}

/// `Z_d(2n) = Σ_{p ⊢ 2n} c_p^d · sym(p)^{d−1}` where `c_p` is the coefficient of
/// `tⁿ x^p` in the S_∞[S_2] cycle-index series.
pub fn count_invariants(d: usize, n: usize) -> Result<BigUint> {
    check_rank(d, n)?;
    let series = wreath_series(n);
    count_from_series(&series, d, n)
}

fn count_from_series(series: &crate::wreath::CycleIndexSeries, d: usize, n: usize) -> Result<BigUint> {
    let terms = series.terms(n);
    let total: BigRational = terms
        .par_iter()
        .map(|(p, c)| c.pow(d as i32) * ratio(BigInt::from(sym(p).pow(d as u32 - 1))))
        .reduce(BigRational::zero, |a, b| a + b);
    to_count(&total, "double-coset formula")
}

/// `Z_d(2k)` for `k = 1..=max_n` from a single series expansion.
pub fn count_invariants_upto(d: usize, max_n: usize) -> Result<Vec<BigUint>> {
    check_rank(d, max_n.max(1))?;
    let series = wreath_series(max_n);
    (1..=max_n).map(|n| count_from_series(&series, d, n)).collect()
}

/// `A_k(j)` for `j = 0..=max_j`: `A_k(0) = A_k(1) = 1`,
/// `A_k(j+1) = A_k(j) + 2kj·A_k(j−1)`, equal to `(i√k)^j H_j(1/(2i√k))`.
pub fn hermite_a(k: usize, max_j: usize) -> Vec<BigUint> {
    let mut a = vec![BigUint::one(), BigUint::one()];
    for j in 1..max_j {
        let next = &a[j] + BigUint::from(2 * k * j) * &a[j - 1];
        a.push(next);
    }
    a.truncate(max_j + 1);
    a
}

/// Read's `Φ_m(t)` truncated at `t^{max_n}`.
fn read_phi(m: usize, d: usize, max_n: usize) -> Series {
    let mut phi = Series::zero(max_n + 1);
    if m % 2 == 0 {
        // Σ_j A_{m/2}(j)^d / (j!·m^j) · t^{mj/2}
        let step = m / 2;
        let max_j = max_n / step;
        let a = hermite_a(m / 2, max_j);
        for (j, aj) in a.iter().enumerate().take(max_j + 1) {
            let num = BigInt::from(aj.pow(d as u32));
            let den = BigInt::from(factorial(j) * BigUint::from(m).pow(j as u32));
            phi.set(j * step, BigRational::new(num, den));
        }
    } else {
        // Σ_j ((2j)!)^{d−1} / (j!)^d · (m^{d−2}/2^d)^j · t^{mj}
        let max_j = max_n / m;
        for j in 0..=max_j {
            let num = BigInt::from(
                factorial(2 * j).pow(d as u32 - 1) * BigUint::from(m).pow(((d - 2) * j) as u32),
            );
            let den = BigInt::from(factorial(j).pow(d as u32) << (d * j));
            phi.set(j * m, BigRational::new(num, den));
        }
    }
    phi
}

/// Coefficient of `tⁿ` in `∏_{m=1}^{2n} Φ_m(t)` (Read's formula).
pub fn count_read(d: usize, n: usize) -> Result<BigUint> {
    check_rank(d, n)?;
    let product = read_product(d, n);
    to_count(product.coeff(n), "Read's formula")
}

fn read_product(d: usize, n: usize) -> Series {
    // Φ_m contributes only t-powers ≥ m/2, so m ≤ 2n is enough
    (1..=2 * n).fold(Series::one(n + 1), |acc, m| &acc * &read_phi(m, d, n))
}

/// Connected counts `1..=max_n` from a disconnected sequence by plethystic logarithm.
pub fn connected_from_sequence(seq: &[BigUint]) -> Result<Vec<BigUint>> {
    let z = Series::from_sequence_with_unit(seq);
    let plog = plethystic_log(&z)?;
    (1..=seq.len())
        .map(|k| to_count(plog.coeff(k), "plethystic logarithm"))
        .collect()
}

/// Disconnected counts from connected ones by plethystic exponential.
pub fn disconnected_from_connected(seq: &[BigUint]) -> Result<Vec<BigUint>> {
    let mut g = Series::from_sequence_with_unit(seq);
    g.set(0, BigRational::zero());
    let pe = plethystic_exp(&g)?;
    (1..=seq.len())
        .map(|k| to_count(pe.coeff(k), "plethystic exponential"))
        .collect()
}

/// Number of connected invariants: coefficient of `tⁿ` in `Σ_i μ(i)/i · log Z_d(tⁱ)`.
pub fn count_connected(d: usize, n: usize) -> Result<BigUint> {
    let seq = count_invariants_upto(d, n)?;
    Ok(connected_from_sequence(&seq)?.pop().expect("n ≥ 1"))
}

/// Counting route selectable for sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Coset,
    Read,
    Kronecker,
    Squares,
    Brute,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Coset,
        Method::Read,
        Method::Kronecker,
        Method::Squares,
        Method::Brute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Coset => "coset",
            Method::Read => "read",
            Method::Kronecker => "kronecker",
            Method::Squares => "squares",
            Method::Brute => "brute",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

/// `Z_d(2n)` by the chosen route.
pub fn count_with(method: Method, d: usize, n: usize) -> Result<BigUint> {
    count_with_budget(method, d, n, bruteforce::DEFAULT_BRUTE_BUDGET)
}

pub fn count_with_budget(method: Method, d: usize, n: usize, brute_budget: u128) -> Result<BigUint> {
    check_rank(d, n)?;
    match method {
        Method::Coset => count_invariants(d, n),
        Method::Read => count_read(d, n),
        Method::Kronecker => count_invariants_kronecker(d, n),
        Method::Squares => {
            if d != 3 {
                return Err(Error::InvalidArgument(
                    "the sum-of-squares form only exists for rank 3".into(),
                ));
            }
            count_invariants_squares(n)
        }
        Method::Brute => bruteforce::orbit_count_with_budget(d, n, brute_budget),
    }
}

/// `[(n, count)]` for `n = 1..=max_n`; connected counts when `connected`.
pub fn sequence(d: usize, max_n: usize, method: Method, connected: bool) -> Result<Vec<(usize, BigUint)>> {
    sequence_with_budget(d, max_n, method, connected, bruteforce::DEFAULT_BRUTE_BUDGET)
}

pub fn sequence_with_budget(
    d: usize,
    max_n: usize,
    method: Method,
    connected: bool,
    brute_budget: u128,
) -> Result<Vec<(usize, BigUint)>> {
    check_rank(d, max_n.max(1))?;
    let raw = match method {
        Method::Coset => count_invariants_upto(d, max_n)?,
        _ => (1..=max_n)
            .map(|n| count_with_budget(method, d, n, brute_budget))
            .collect::<Result<Vec<_>>>()?,
    };
    let values = if connected {
        connected_from_sequence(&raw)?
    } else {
        raw
    };
    Ok(values.into_iter().enumerate().map(|(k, v)| (k + 1, v)).collect())
}

/// Runs every route that is feasible for `(d, max_n)` and fails with a
/// cross-check error naming the first disagreement.
pub fn cross_checked_sequence(d: usize, max_n: usize, brute_budget: u128) -> Result<Vec<(usize, BigUint)>> {
    let reference = sequence(d, max_n, Method::Coset, false)?;
    for method in [Method::Read, Method::Kronecker, Method::Squares, Method::Brute] {
        if method == Method::Squares && d != 3 {
            continue;
        }
        for &(n, ref expect) in &reference {
            let got = match count_with_budget(method, d, n, brute_budget) {
                Ok(v) => v,
                Err(Error::BudgetExceeded { .. }) => break,
                Err(e) => return Err(e),
            };
            if &got != expect {
                return Err(Error::CrossCheck(format!(
                    "{method} gives {got} at d={d}, n={n}; coset formula gives {expect}"
                )));
            }
        }
    }
    Ok(reference)
}

/// OEIS b-file lines `n a(n)`.
pub fn format_oeis(seq: &[(usize, BigUint)]) -> String {
    seq.iter().map(|(n, v)| format!("{n} {v}\n")).collect()
}

/// `n,value` with a header line.
pub fn format_csv(seq: &[(usize, BigUint)]) -> String {
    let mut out = String::from("n,value\n");
    for (n, v) in seq {
        out.push_str(&format!("{n},{v}\n"));
    }
    out
}

#[derive(Serialize)]
struct JsonEntry {
    n: usize,
    value: String,
}

/// JSON array of `{"n": .., "value": "<decimal>"}`.
pub fn format_json(seq: &[(usize, BigUint)]) -> String {
    let entries: Vec<JsonEntry> = seq
        .iter()
        .map(|(n, v)| JsonEntry {
            n: *n,
            value: v.to_string(),
        })
        .collect();
    serde_json_string(&entries)
}

fn serde_json_string(entries: &[JsonEntry]) -> String {
    // hand-rolled to keep serde_json out of the library's dependencies
    let body: Vec<String> = entries
        .iter()
        .map(|e| format!("{{\"n\":{},\"value\":\"{}\"}}", e.n, e.value))
        .collect();
    format!("[{}]", body.join(","))
}
