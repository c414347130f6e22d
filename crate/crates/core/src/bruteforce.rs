//! Exhaustive oracles for the double-coset count.
//!
//! Tuples `(σ_1, …, σ_d)` of S_2n are identified under
//! `σ_i ↦ γ_i σ_i γ` with `γ_i ∈ H = S_n[S_2]` and a common `γ ∈ S_2n`.

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use crate::error::{check_budget, Error, Result};
use crate::perm::{all_permutations, wreath_elements_with_budget, wreath_order, CayleyTable, Permutation};
use crate::series::{ratio, to_count};

/// Default cap on the tuple count `((2n)!)^d` for orbit enumeration and on
/// `|H|·(2n)!` for the Burnside sum.
pub const DEFAULT_BRUTE_BUDGET: u128 = 2_000_000;

fn check_shape(d: usize, n: usize) -> Result<()> {
    if d < 1 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "brute force needs d ≥ 1 and n ≥ 1, got d={d}, n={n}"
        )));
    }
    Ok(())
}

/// Generators of S_n[S_2]: a transposition inside the first pair, a swap of
/// the first two pairs and the cyclic shift of all pairs.
pub fn wreath_generators(n: usize) -> Vec<Permutation> {
    let m = 2 * n;
    let mut gens = vec![Permutation::from_cycles(m, &[vec![1, 2]]).expect("valid")];
    if n >= 2 {
        gens.push(Permutation::from_cycles(m, &[vec![1, 3], vec![2, 4]]).expect("valid"));
        let odd: Vec<usize> = (0..n).map(|k| 2 * k + 1).collect();
        let even: Vec<usize> = (0..n).map(|k| 2 * k + 2).collect();
        gens.push(Permutation::from_cycles(m, &[odd, even]).expect("valid"));
    }
    gens
}

/// Generators of S_m: `(1 2)` and `(1 2 … m)`.
pub fn symmetric_generators(m: usize) -> Vec<Permutation> {
    let mut gens = vec![Permutation::identity(m)];
    if m >= 2 {
        gens = vec![
            Permutation::from_cycles(m, &[vec![1, 2]]).expect("valid"),
            Permutation::from_cycles(m, &[(1..=m).collect()]).expect("valid"),
        ];
    }
    gens
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    // the smaller index becomes the root, so every root is its class minimum
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb as usize] = ra;
        } else if rb < ra {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Gauge orbits of `(S_2n)^d`, each labelled by its lexicographically smallest tuple.
pub struct OrbitPartition {
    d: usize,
    table: CayleyTable,
    roots: Vec<u32>,
}

impl OrbitPartition {
    pub fn new(d: usize, n: usize, budget: u128) -> Result<Self> {
        check_shape(d, n)?;
        let m = 2 * n;
        let order = (1..=m as u128).product::<u128>();
        let total = order.checked_pow(d as u32).unwrap_or(u128::MAX);
        check_budget("orbit enumeration", total, budget)?;
        if total > u32::MAX as u128 {
            return Err(Error::BudgetExceeded {
                what: "orbit enumeration",
                needed: total,
                budget: u32::MAX as u128,
            });
        }
        let table = CayleyTable::new(m)?;
        let rank = |p: &Permutation| p.lex_rank();
        let left: Vec<usize> = wreath_generators(n).iter().map(rank).collect();
        let right: Vec<usize> = symmetric_generators(m).iter().map(rank).collect();
        let order = order as usize;
        let total = total as usize;

        let mut uf = UnionFind::new(total);
        let mut slots = vec![0usize; d];
        for idx in 0..total {
            decode(idx, order, &mut slots);
            for i in 0..d {
                for &h in &left {
                    let mut moved = slots.clone();
                    moved[i] = table.mul(h, slots[i]);
                    uf.union(idx as u32, encode(&moved, order) as u32);
                }
            }
            for &g in &right {
                let moved: Vec<usize> = slots.iter().map(|&s| table.mul(s, g)).collect();
                uf.union(idx as u32, encode(&moved, order) as u32);
            }
        }
        let roots = (0..total as u32).map(|x| uf.find(x)).collect();
        Ok(OrbitPartition { d, table, roots })
    }

    pub fn num_orbits(&self) -> usize {
        self.roots
            .iter()
            .enumerate()
            .filter(|&(i, &r)| i as u32 == r)
            .count()
    }

    /// Representative tuples in increasing lexicographic order.
    pub fn representatives(&self) -> Vec<Vec<Permutation>> {
        let order = self.table.order();
        let mut slots = vec![0usize; self.d];
        self.roots
            .iter()
            .enumerate()
            .filter(|&(i, &r)| i as u32 == r)
            .map(|(i, _)| {
                decode(i, order, &mut slots);
                slots.iter().map(|&s| self.table.element(s).clone()).collect()
            })
            .collect()
    }

    /// Orbit sizes aligned with [`OrbitPartition::representatives`].
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.roots.len()];
        for &r in &self.roots {
            counts[r as usize] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| self.roots[i] as usize == i)
            .map(|(_, c)| c)
            .collect()
    }

    /// Representative of the orbit containing `tuple`.
    pub fn canonical(&self, tuple: &[Permutation]) -> Result<Vec<Permutation>> {
        if tuple.len() != self.d {
            return Err(Error::InvalidArgument(format!(
                "expected {} permutations, got {}",
                self.d,
                tuple.len()
            )));
        }
        let m = self.table.degree();
        let order = self.table.order();
        let mut ranks = Vec::with_capacity(self.d);
        for p in tuple {
            if p.degree() != m {
                return Err(Error::DegreeMismatch {
                    left: m,
                    right: p.degree(),
                });
            }
            ranks.push(p.lex_rank());
        }
        let root = self.roots[encode(&ranks, order)] as usize;
        let mut slots = vec![0usize; self.d];
        decode(root, order, &mut slots);
        Ok(slots.iter().map(|&s| self.table.element(s).clone()).collect())
    }
}

fn encode(slots: &[usize], order: usize) -> usize {
    slots.iter().fold(0, |acc, &s| acc * order + s)
}

fn decode(mut idx: usize, order: usize, slots: &mut [usize]) {
    for s in slots.iter_mut().rev() {
        *s = idx % order;
        idx /= order;
    }
}

/// Number of gauge orbits on `(S_2n)^d` by exhaustive union-find.
pub fn orbit_count(d: usize, n: usize) -> Result<BigUint> {
    orbit_count_with_budget(d, n, DEFAULT_BRUTE_BUDGET)
}

pub fn orbit_count_with_budget(d: usize, n: usize, budget: u128) -> Result<BigUint> {
    Ok(BigUint::from(OrbitPartition::new(d, n, budget)?.num_orbits()))
}

/// Burnside count `|H|^{−d} Σ_{γ_1..γ_d ∈ H} Σ_{σ_1..σ_{d−1}} ∏_{i<d} δ(γ_i σ_i γ_d σ_i⁻¹)`.
///
/// For fixed `γ_d` the inner sums factor into `f(γ_d)^{d−1}` with
/// `f(γ_d) = #{σ ∈ S_2n : σ γ_d σ⁻¹ ∈ H}`.
pub fn burnside_count(d: usize, n: usize) -> Result<BigUint> {
    burnside_count_with_budget(d, n, DEFAULT_BRUTE_BUDGET)
}

pub fn burnside_count_with_budget(d: usize, n: usize, budget: u128) -> Result<BigUint> {
    check_shape(d, n)?;
    let m = 2 * n;
    let group_order = (1..=m as u128).product::<u128>();
    check_budget("Burnside sum", wreath_order(n) * group_order, budget)?;
    let h = wreath_elements_with_budget(n, budget)?;
    let sym: Vec<Permutation> = all_permutations(m).collect();
    let mut total = BigUint::zero();
    for gd in &h {
        let f = sym
            .iter()
            .filter(|s| s.compose_same(gd).compose_same(&s.inverse()).stabilizes_base_pairing())
            .count();
        total += BigUint::from(f).pow(d as u32 - 1);
    }
    let denom = BigUint::from(wreath_order(n)).pow(d as u32);
    let value = ratio(total.into()) / ratio(denom.into());
    to_count(&value, "Burnside sum")
}

/// `#{γ ∈ S_2n : σ_i γ σ_i⁻¹ ∈ H for every i}`, the automorphism order of the graph.
pub fn aut_order(tuple: &[Permutation]) -> Result<BigUint> {
    let m = tuple
        .first()
        .map(Permutation::degree)
        .ok_or_else(|| Error::InvalidArgument("aut_order needs at least one permutation".into()))?;
    for p in tuple {
        if p.degree() != m {
            return Err(Error::DegreeMismatch {
                left: m,
                right: p.degree(),
            });
        }
    }
    if m % 2 != 0 {
        return Err(Error::OddDegree(m));
    }
    if m > 8 {
        return Err(Error::BudgetExceeded {
            what: "aut_order",
            needed: (1..=m as u128).product(),
            budget: 40320,
        });
    }
    let inverses: Vec<Permutation> = tuple.iter().map(Permutation::inverse).collect();
    let count = all_permutations(m)
        .filter(|g| {
            tuple
                .iter()
                .zip(&inverses)
                .all(|(s, si)| s.compose_same(g).compose_same(si).stabilizes_base_pairing())
        })
        .count();
    Ok(BigUint::from(count))
}

/// Applies the gauge transformation `σ_i ↦ γ_i σ_i γ`.
pub fn gauge_transform(tuple: &[Permutation], left: &[Permutation], right: &Permutation) -> Result<Vec<Permutation>> {
    if left.len() != tuple.len() {
        return Err(Error::InvalidArgument(format!(
            "{} left factors for {} slots",
            left.len(),
            tuple.len()
        )));
    }
    tuple
        .iter()
        .zip(left)
        .map(|(s, g)| g.compose(s)?.compose(right))
        .collect()
}

/// Total size of the gauge group, `|H|^d·(2n)!`.
pub fn gauge_group_order(d: usize, n: usize) -> BigUint {
    let h = BigUint::from(wreath_order(n));
    h.pow(d as u32) * (1..=2 * n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::wreath_elements;
    use rand::rngs::StdRng;
    use rand::seq::IndexedRandom;
    use rand::SeedableRng;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn generators_generate() {
        for n in 1..=3 {
            let gens = wreath_generators(n);
            assert!(gens.iter().all(Permutation::stabilizes_base_pairing));
            let mut seen = std::collections::BTreeSet::from([Permutation::identity(2 * n)]);
            let mut frontier = vec![Permutation::identity(2 * n)];
            while let Some(p) = frontier.pop() {
                for g in &gens {
                    let q = g * &p;
                    if seen.insert(q.clone()) {
                        frontier.push(q);
                    }
                }
            }
            assert_eq!(seen.into_iter().collect::<Vec<_>>(), wreath_elements(n).unwrap());
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(orbit_count(3, 1).unwrap(), big(1));
        assert_eq!(orbit_count(3, 2).unwrap(), big(5));
        assert_eq!(orbit_count(4, 1).unwrap(), big(1));
        assert_eq!(orbit_count(4, 2).unwrap(), big(14));
        assert_eq!(orbit_count(2, 2).unwrap(), big(2));
        assert!(matches!(orbit_count(3, 3), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn burnside_counts() {
        assert_eq!(burnside_count(3, 1).unwrap(), big(1));
        assert_eq!(burnside_count(3, 2).unwrap(), big(5));
        assert_eq!(burnside_count(4, 2).unwrap(), big(14));
        assert_eq!(burnside_count(3, 3).unwrap(), big(16));
        assert_eq!(burnside_count(5, 3).unwrap(), crate::counting::count_invariants(5, 3).unwrap());
    }

    // the unfactored sum over all γ_1..γ_d and σ_1..σ_{d−1}
    fn burnside_literal(d: usize, n: usize) -> BigUint {
        let h = wreath_elements(n).unwrap();
        let sym: Vec<Permutation> = all_permutations(2 * n).collect();
        let mut total = 0u64;
        let mut gammas = vec![0usize; d];
        let hd = h.len().pow(d as u32);
        for code in 0..hd {
            decode(code, h.len(), &mut gammas);
            let gd = &h[gammas[d - 1]];
            let mut sigmas = vec![0usize; d - 1];
            for scode in 0..sym.len().pow(d as u32 - 1) {
                decode(scode, sym.len(), &mut sigmas);
                let ok = (0..d - 1).all(|i| {
                    let s = &sym[sigmas[i]];
                    (&(&(&h[gammas[i]] * s) * gd) * &s.inverse()).is_identity()
                });
                total += ok as u64;
            }
        }
        big(total / (h.len() as u64).pow(d as u32))
    }

    #[test]
    fn factorized_burnside_matches_literal() {
        assert_eq!(burnside_literal(3, 1), big(1));
        assert_eq!(burnside_literal(3, 2), big(5));
    }

    #[test]
    fn aut_orders() {
        let id2 = vec![Permutation::identity(2); 3];
        assert_eq!(aut_order(&id2).unwrap(), big(2));
        let id4 = vec![Permutation::identity(4); 3];
        assert_eq!(aut_order(&id4).unwrap(), big(8));
        assert!(aut_order(&[]).is_err());
        assert!(aut_order(&[Permutation::identity(3)]).is_err());
    }

    #[test]
    fn aut_order_is_gauge_invariant() {
        let mut rng = StdRng::seed_from_u64(7);
        let h = wreath_elements(2).unwrap();
        let sym: Vec<Permutation> = all_permutations(4).collect();
        let tuple: Vec<Permutation> = (0..3).map(|_| sym.choose(&mut rng).unwrap().clone()).collect();
        let base = aut_order(&tuple).unwrap();
        for _ in 0..10 {
            let left: Vec<Permutation> = (0..3).map(|_| h.choose(&mut rng).unwrap().clone()).collect();
            let g = sym.choose(&mut rng).unwrap();
            let moved = gauge_transform(&tuple, &left, g).unwrap();
            assert_eq!(aut_order(&moved).unwrap(), base);
        }
    }

    #[test]
    fn orbit_stabilizer() {
        for (d, n) in [(3, 1), (3, 2), (4, 2)] {
            let part = OrbitPartition::new(d, n, DEFAULT_BRUTE_BUDGET).unwrap();
            let reps = part.representatives();
            let sizes = part.orbit_sizes();
            let group = gauge_group_order(d, n);
            let mut total = BigUint::zero();
            for (rep, size) in reps.iter().zip(&sizes) {
                let stab = aut_order(rep).unwrap();
                assert_eq!(&group / &stab, big(*size as u64));
                total += &group / stab;
            }
            let m_fact: u64 = (1..=2 * n as u64).product();
            assert_eq!(total, big(m_fact).pow(d as u32));
        }
    }

    #[test]
    fn canonical_is_orbit_invariant() {
        let part = OrbitPartition::new(3, 2, DEFAULT_BRUTE_BUDGET).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        let h = wreath_elements(2).unwrap();
        let sym: Vec<Permutation> = all_permutations(4).collect();
        for _ in 0..20 {
            let tuple: Vec<Permutation> = (0..3).map(|_| sym.choose(&mut rng).unwrap().clone()).collect();
            let left: Vec<Permutation> = (0..3).map(|_| h.choose(&mut rng).unwrap().clone()).collect();
            let moved = gauge_transform(&tuple, &left, sym.choose(&mut rng).unwrap()).unwrap();
            assert_eq!(part.canonical(&tuple).unwrap(), part.canonical(&moved).unwrap());
        }
        assert_eq!(part.representatives()[0], vec![Permutation::identity(4); 3]);
    }
}
