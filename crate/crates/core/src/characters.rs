//! Irreducible characters of S_m by the Murnaghan–Nakayama rule, Kronecker
//! coefficients, and the even-partition Kronecker counts of invariants.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{class_size, factorial, partitions_of, Partition};
use crate::wreath::{wreath_class_sizes, wreath_order_big, wreath_series};

/// Memo table `(R, p) → χ^R(p)`.
///
/// Safe to share across threads: concurrent misses may compute the same entry
/// twice, but every insertion writes the same value.
#[derive(Debug, Default)]
pub struct CharacterCache {
    table: RwLock<HashMap<(Partition, Partition), i128>>,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `χ^R(p)`; `R` and `p` must have equal weight.
    pub fn character(&self, r: &Partition, p: &Partition) -> Result<i128> {
        if r.weight() != p.weight() {
            return Err(Error::WeightMismatch {
                expected: r.weight(),
                got: p.weight(),
            });
        }
        Ok(self.mn(r, p.parts()))
    }

    fn mn(&self, r: &Partition, cycles: &[usize]) -> i128 {
        let Some((&k, rest)) = cycles.split_first() else {
            return 1;
        };
        let key = (r.clone(), Partition::new(cycles.to_vec()));
        if let Some(&v) = self.table.read().expect("cache poisoned").get(&key) {
            return v;
        }
        let mut total = 0i128;
        for (shape, sign) in remove_border_strips(r, k) {
            let v = self.mn(&shape, rest);
            total += if sign { -v } else { v };
        }
        self.table
            .write()
            .expect("cache poisoned")
            .insert(key, total);
        total
    }
}

/// Every shape obtained from `r` by removing a border strip of length `k`,
/// with `true` marking an odd leg length (negative sign).
fn remove_border_strips(r: &Partition, k: usize) -> Vec<(Partition, bool)> {
    let len = r.len();
    // first-column hook lengths, strictly decreasing
    let beta: Vec<usize> = r
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &part)| part + len - 1 - i)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < k {
            continue;
        }
        let target = b - k;
        if beta.contains(&target) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j))
            .collect();
        out.push((Partition::new(parts), crossed % 2 == 1));
    }
    out
}

fn global_cache() -> &'static CharacterCache {
    static CACHE: OnceLock<CharacterCache> = OnceLock::new();
    CACHE.get_or_init(CharacterCache::new)
}

/// `χ^R(p)` through a process-wide cache.
pub fn character(r: &Partition, p: &Partition) -> Result<i128> {
    global_cache().character(r, p)
}

/// Character table of S_m: rows are irreps, columns are classes, both in
/// [`partitions_of`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub irreps: Vec<Partition>,
    pub classes: Vec<Partition>,
    pub values: Vec<Vec<i128>>,
}

impl CharacterTable {
    /// Rows = irreps, columns = classes; header cells are partitions like `[2,1,1]`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("irrep");
        for c in &self.classes {
            out.push_str(&format!(",\"{c}\""));
        }
        out.push('\n');
        for (r, row) in self.irreps.iter().zip(&self.values) {
            out.push_str(&format!("\"{r}\""));
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn character_table(m: usize) -> CharacterTable {
    let parts: Vec<Partition> = partitions_of(m).collect();
    let cache = global_cache();
    let values = parts
        .iter()
        .map(|r| {
            parts
                .iter()
                .map(|p| cache.character(r, p).expect("equal weights"))
                .collect()
        })
        .collect();
    CharacterTable {
        irreps: parts.clone(),
        classes: parts,
        values,
    }
}

fn check_weights(rs: &[Partition]) -> Result<usize> {
    let m = rs
        .first()
        .ok_or_else(|| Error::InvalidArgument("need at least one partition".into()))?
        .weight();
    for r in rs {
        if r.weight() != m {
            return Err(Error::WeightMismatch {
                expected: m,
                got: r.weight(),
            });
        }
    }
    Ok(m)
}

/// `(1/m!) Σ_{γ∈S_m} ∏_l χ^{R_l}(γ)` evaluated class by class.
fn class_sum(rs: &[Partition], m: usize) -> Result<BigUint> {
    let mut total = BigInt::zero();
    for p in partitions_of(m) {
        let mut prod = BigInt::from(class_size(&p));
        for r in rs {
            let chi = character(r, &p)?;
            if chi == 0 {
                prod = BigInt::zero();
                break;
            }
            prod *= chi;
        }
        total += prod;
    }
    let (q, rem) = total.div_rem(&BigInt::from(factorial(m)));
    if !rem.is_zero() || q.is_negative() {
        return Err(Error::CrossCheck(format!(
            "multiplicity for {rs:?} is not a nonnegative integer"
        )));
    }
    Ok(q.to_biguint().expect("nonnegative"))
}

/// Kronecker coefficient `C(R1, R2, R3)`.
pub fn kronecker(r1: &Partition, r2: &Partition, r3: &Partition) -> Result<BigUint> {
    let rs = [r1.clone(), r2.clone(), r3.clone()];
    let m = check_weights(&rs)?;
    class_sum(&rs, m)
}

/// Multiplicity of the trivial irrep in `R_1 ⊗ … ⊗ R_k`.
pub fn kronecker_k(rs: &[Partition]) -> Result<BigUint> {
    let m = check_weights(rs)?;
    class_sum(rs, m)
}

/// `C_k` as a chain of ordinary Kronecker coefficients:
/// `Σ_{S_l} C(R1,R2,S_1) C(S_1,R3,S_2) … C(S_{k−3},R_{k−1},R_k)`.
pub fn kronecker_k_by_convolution(rs: &[Partition]) -> Result<BigUint> {
    let m = check_weights(rs)?;
    match rs.len() {
        0..=2 => Err(Error::InvalidArgument(
            "the convolution form needs k ≥ 3".into(),
        )),
        3 => kronecker(&rs[0], &rs[1], &rs[2]),
        _ => {
            let mut total = BigUint::zero();
            for s in partitions_of(m) {
                let head = kronecker(&rs[0], &rs[1], &s)?;
                if head.is_zero() {
                    continue;
                }
                let mut tail = vec![s];
                tail.extend_from_slice(&rs[2..]);
                total += head * kronecker_k_by_convolution(&tail)?;
            }
            Ok(total)
        }
    }
}

/// Multisets of size `k` drawn from `0..len`, as nondecreasing index vectors.
fn multisets(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i, len, k, cur, out);
            cur.pop();
        }
    }
    rec(0, len, k, &mut cur, &mut out);
    out
}

/// Number of distinct orderings of a multiset given as sorted indices.
fn orbit_size(sorted: &[usize]) -> BigUint {
    let mut denom = BigUint::from(1u32);
    let mut run = 1;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    denom *= factorial(run);
    factorial(sorted.len()) / denom
}

/// `Z_d(2n) = Σ_{R_1..R_d ⊢ 2n even} C_d(R_1, …, R_d)`, summed over
/// multisets of even partitions weighted by their number of orderings.
pub fn count_invariants_kronecker(d: usize, n: usize) -> Result<BigUint> {
    if d < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "kronecker count needs d ≥ 2 and n ≥ 1, got d={d}, n={n}"
        )));
    }
    let m = 2 * n;
    let even: Vec<Partition> = partitions_of(m).filter(Partition::is_even).collect();
    let classes: Vec<Partition> = partitions_of(m).collect();
    let sizes: Vec<BigInt> = classes.iter().map(|p| BigInt::from(class_size(p))).collect();
    let chars: Vec<Vec<i128>> = even
        .iter()
        .map(|r| classes.iter().map(|p| character(r, p)).collect())
        .collect::<Result<_>>()?;
    let group = BigInt::from(factorial(m));
    let terms: Vec<Result<BigUint>> = multisets(even.len(), d)
        .into_par_iter()
        .map(|idx| {
            let mut total = BigInt::zero();
            for (c, size) in sizes.iter().enumerate() {
                let mut prod = size.clone();
                for &i in &idx {
                    prod *= chars[i][c];
                }
                total += prod;
            }
            let (q, rem) = total.div_rem(&group);
            if !rem.is_zero() || q.is_negative() {
                return Err(Error::CrossCheck(format!(
                    "C_{d} over even partitions is not a count at n={n}"
                )));
            }
            Ok(q.to_biguint().expect("nonnegative") * orbit_size(&idx))
        })
        .collect();
    terms.into_iter().sum()
}

/// `Z_3(2n) = (1/|H|) Σ_{γ∈H} (Σ_{R even} χ^R(γ))²` with `H = S_n[S_2]`,
/// grouped by the cycle type of `γ` in S_2n.
pub fn count_invariants_squares(n: usize) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be ≥ 1".into()));
    }
    let series = wreath_series(n);
    let even: Vec<Partition> = partitions_of(2 * n).filter(Partition::is_even).collect();
    let mut total = BigInt::zero();
    for (p, size) in wreath_class_sizes(&series, n)? {
        let mut s = 0i128;
        for r in &even {
            s += character(r, &p)?;
        }
        total += BigInt::from(size) * BigInt::from(s) * BigInt::from(s);
    }
    let (q, rem) = total.div_rem(&BigInt::from(wreath_order_big(n)));
    if !rem.is_zero() {
        return Err(Error::CrossCheck(format!(
            "sum of squares not divisible by |H| at n={n}"
        )));
    }
    Ok(q.to_biguint().expect("sum of squares is nonnegative"))
}

/// The summand `Σ_{R even} χ^R(p)` of the sum-of-squares form for each wreath class type.
pub fn even_character_sums(n: usize) -> Result<Vec<(Partition, BigUint, i128)>> {
    let series = wreath_series(n);
    let even: Vec<Partition> = partitions_of(2 * n).filter(Partition::is_even).collect();
    wreath_class_sizes(&series, n)?
        .into_iter()
        .map(|(p, size)| {
            let s = even.iter().map(|r| character(r, &p)).sum::<Result<i128>>()?;
            Ok((p, size, s))
        })
        .collect()
}

/// All `(R1, R2, R3, C)` with nonzero Kronecker coefficient at weight `m`,
/// restricted to even partitions when `even_only`.
pub fn kronecker_table(m: usize, even_only: bool) -> Result<Vec<(Partition, Partition, Partition, BigUint)>> {
    let parts: Vec<Partition> = partitions_of(m)
        .filter(|p| !even_only || p.is_even())
        .collect();
    let mut out = Vec::new();
    for a in &parts {
        for b in &parts {
            for c in &parts {
                let k = kronecker(a, b, c)?;
                if !k.is_zero() {
                    out.push((a.clone(), b.clone(), c.clone(), k));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{dim_sn, sym};
    use num_rational::BigRational;

    fn q(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn trivial_and_sign() {
        for m in 1..=8 {
            for p in partitions_of(m) {
                assert_eq!(character(&Partition::row(m), &p).unwrap(), 1);
                let sign = if (m - p.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character(&Partition::column(m), &p).unwrap(), sign);
            }
        }
    }

    #[test]
    fn s4_row_of_two_two() {
        let classes = [q(&[1, 1, 1, 1]), q(&[2, 1, 1]), q(&[2, 2]), q(&[3, 1]), q(&[4])];
        let got: Vec<i128> = classes
            .iter()
            .map(|p| character(&q(&[2, 2]), p).unwrap())
            .collect();
        assert_eq!(got, vec![2, 0, 2, -1, 0]);
        assert_eq!(character(&q(&[2, 1]), &q(&[3])).unwrap(), -1);
        assert!(matches!(
            character(&q(&[2, 1]), &q(&[2])),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn identity_column_is_dimension() {
        for m in 1..=10 {
            for r in partitions_of(m) {
                let chi = character(&r, &Partition::column(m)).unwrap();
                assert_eq!(BigInt::from(chi), BigInt::from(dim_sn(&r)));
            }
        }
    }

    #[test]
    fn private_cache_matches_global() {
        let local = CharacterCache::new();
        for r in partitions_of(7) {
            for p in partitions_of(7) {
                assert_eq!(local.character(&r, &p).unwrap(), character(&r, &p).unwrap());
            }
        }
        assert!(!local.is_empty());
    }

    #[test]
    fn kronecker_examples() {
        for m in 1..=6 {
            let row = Partition::row(m);
            assert_eq!(kronecker(&row, &row, &row).unwrap(), BigUint::from(1u32));
        }
        let four = q(&[4]);
        let tt = q(&[2, 2]);
        assert_eq!(kronecker(&four, &tt, &tt).unwrap(), BigUint::from(1u32));
        assert_eq!(kronecker(&tt, &tt, &tt).unwrap(), BigUint::from(1u32));
        assert_eq!(kronecker(&four, &four, &tt).unwrap(), BigUint::from(0u32));
        assert!(kronecker(&four, &q(&[2, 1]), &tt).is_err());
    }

    #[test]
    fn kronecker_k_cases() {
        let tt = q(&[2, 2]);
        let four = q(&[4]);
        assert_eq!(
            kronecker_k(&[tt.clone(), tt.clone(), four.clone()]).unwrap(),
            kronecker(&tt, &tt, &four).unwrap()
        );
        assert_eq!(kronecker_k(&[four.clone(), four.clone(), four.clone(), four]).unwrap(), BigUint::from(1u32));
        let direct = kronecker_k(&[tt.clone(), tt.clone(), tt.clone(), tt.clone()]).unwrap();
        let mut conv = BigUint::zero();
        for s in partitions_of(4) {
            conv += kronecker(&tt, &tt, &s).unwrap() * kronecker(&s, &tt, &tt).unwrap();
        }
        assert_eq!(direct, conv);
        assert_eq!(kronecker_k_by_convolution(&[tt.clone(), tt.clone(), tt.clone(), tt]).unwrap(), direct);
    }

    #[test]
    fn convolution_matches_direct_for_five_factors() {
        let parts: Vec<_> = partitions_of(5).collect();
        for a in &parts {
            for b in parts.iter().step_by(2) {
                let rs = [a.clone(), b.clone(), a.clone(), b.clone(), parts[1].clone()];
                assert_eq!(kronecker_k(&rs).unwrap(), kronecker_k_by_convolution(&rs).unwrap());
            }
        }
    }

    #[test]
    fn orthogonality_relations() {
        for m in 1..=10 {
            let t = character_table(m);
            let syms: Vec<BigInt> = t.classes.iter().map(|p| BigInt::from(sym(p))).collect();
            for (i, ri) in t.values.iter().enumerate() {
                for (j, rj) in t.values.iter().enumerate() {
                    let mut s = BigRational::zero();
                    for c in 0..t.classes.len() {
                        s += BigRational::new(BigInt::from(ri[c] * rj[c]), syms[c].clone());
                    }
                    let expect = if i == j { 1 } else { 0 };
                    assert_eq!(s, BigRational::from_integer(BigInt::from(expect)));
                }
            }
            for a in 0..t.classes.len() {
                for b in 0..t.classes.len() {
                    let s: i128 = t.values.iter().map(|row| row[a] * row[b]).sum();
                    let expect = if a == b { syms[a].clone() } else { BigInt::zero() };
                    assert_eq!(BigInt::from(s), expect);
                }
            }
        }
    }

    #[test]
    fn kronecker_count_small_cases() {
        assert_eq!(count_invariants_kronecker(3, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(count_invariants_kronecker(3, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(count_invariants_kronecker(3, 4).unwrap(), BigUint::from(86u32));
        // d = 2 counts even partitions of 2n
        assert_eq!(count_invariants_kronecker(2, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(count_invariants_kronecker(2, 5).unwrap(), BigUint::from(7u32));
    }

    #[test]
    fn squares_small_cases() {
        assert_eq!(count_invariants_squares(1).unwrap(), BigUint::from(1u32));
        assert_eq!(count_invariants_squares(2).unwrap(), BigUint::from(5u32));
        assert_eq!(count_invariants_squares(3).unwrap(), BigUint::from(16u32));
        let sums = even_character_sums(2).unwrap();
        let got: Vec<(String, u32, i128)> = sums
            .iter()
            .map(|(p, size, s)| (p.to_string(), size.try_into().unwrap(), *s))
            .collect();
        assert_eq!(
            got,
            vec![
                ("[1,1,1,1]".to_string(), 1, 3),
                ("[2,1,1]".to_string(), 2, 1),
                ("[2,2]".to_string(), 3, 3),
                ("[4]".to_string(), 2, 1),
            ]
        );
    }

    #[test]
    fn csv_layout() {
        let csv = character_table(3).to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "irrep,\"[3]\",\"[2,1]\",\"[1,1,1]\"");
        assert_eq!(lines[2], "\"[2,1]\",-1,0,2");
    }
}
