//! Permutations of {1..m} as one-line image arrays.
//!
//! Points are 1-based at the API boundary and 0-based in storage. Composition
//! follows `(p∘q)(i) = p(q(i))`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{check_budget, Error, Result};
use crate::partitions::Partition;

/// Default cap on the number of elements a brute-force group enumeration may yield.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 5_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        assert!(m <= 255, "degree {m} exceeds 255");
        Permutation {
            images: (0..m as u8).collect(),
        }
    }

    /// From 1-based images: `images[i-1] = σ(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let zero: Vec<usize> = images
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation(format!("{images:?} contains 0")))
            })
            .collect::<Result<_>>()?;
        Self::from_zero_based(&zero)
    }

    /// From 0-based images.
    pub fn from_zero_based(images: &[usize]) -> Result<Self> {
        let m = images.len();
        if m > 255 {
            return Err(Error::InvalidPermutation(format!("degree {m} exceeds 255")));
        }
        let mut seen = vec![false; m];
        for &v in images {
            if v >= m || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{m}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&v| v as u8).collect(),
        })
    }

    /// Builds a permutation of degree `m` from disjoint cycles on 1-based points.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut used = vec![false; m];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > m {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} outside 1..{m}"
                    )));
                }
                if used[a - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} appears twice in the cycles"
                    )));
                }
                used[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = b - 1;
            }
        }
        Self::from_zero_based(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        Ok(self.compose_same(q))
    }

    #[inline]
    pub(crate) fn compose_same(&self, q: &Permutation) -> Permutation {
        Permutation {
            images: q.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `g∘p∘g⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation> {
        Ok(g.compose(self)?.compose_same(&g.inverse()))
    }

    /// Disjoint cycles on 1-based points, each starting at its smallest point,
    /// fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn num_cycles(&self) -> usize {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut count = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
            }
        }
        count
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize != i && self.images[v as usize] as usize == i)
    }

    /// `σ⁻¹ ξ σ` for the base pairing `ξ` of the same degree.
    pub fn tilde(&self) -> Result<Permutation> {
        let m = self.degree();
        if m % 2 != 0 {
            return Err(Error::OddDegree(m));
        }
        let xi = base_pairing(m / 2);
        Ok(self.inverse().compose_same(&xi).compose_same(self))
    }

    /// True iff `σ` commutes with the base pairing, i.e. lies in S_n[S_2].
    pub fn stabilizes_base_pairing(&self) -> bool {
        if self.degree() % 2 != 0 {
            return false;
        }
        // σ ξ σ⁻¹ = ξ  ⇔  σ maps every pair {2k, 2k+1} onto a pair
        self.images
            .chunks(2)
            .all(|pair| pair[0] ^ 1 == pair[1])
    }

    /// Lexicographic rank of the image array among all permutations of the same degree.
    pub fn lex_rank(&self) -> usize {
        let m = self.degree();
        let mut rank = 0usize;
        let mut used = vec![false; m];
        for (pos, &v) in self.images.iter().enumerate() {
            let smaller = (0..v as usize).filter(|&u| !used[u]).count();
            rank += smaller * factorial_usize(m - 1 - pos);
            used[v as usize] = true;
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(m: usize, mut rank: usize) -> Permutation {
        let mut pool: Vec<u8> = (0..m as u8).collect();
        let mut images = Vec::with_capacity(m);
        for pos in 0..m {
            let f = factorial_usize(m - 1 - pos);
            let k = rank / f;
            rank %= f;
            images.push(pool.remove(k));
        }
        Permutation { images }
    }

    /// Parses `[2,1,4,3]` (one-line, 1-based) or `(1 2)(3 4)` (cycles).
    ///
    /// Cycle strings need a degree; without one the largest mentioned point is used.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Permutation> {
        let s = s.trim();
        if s.starts_with('[') {
            let inner = s.trim_start_matches('[').trim_end_matches(']');
            let images = parse_numbers(inner, s)?;
            let p = Permutation::from_images(&images)?;
            if let Some(m) = degree {
                if m != p.degree() {
                    return Err(Error::DegreeMismatch {
                        left: m,
                        right: p.degree(),
                    });
                }
            }
            return Ok(p);
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {s:?}")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::InvalidPermutation(format!("stray text in {s:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {s:?}")))?;
            let body = &rest[open + 1..close];
            let cycle = parse_numbers(body, s)?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        let top = cycles.iter().flatten().copied().max().unwrap_or(0);
        let m = degree.unwrap_or(top);
        Permutation::from_cycles(m, &cycles)
    }
}

fn parse_numbers(body: &str, whole: &str) -> Result<Vec<usize>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidPermutation(format!("bad point {t:?} in {whole:?}")))
        })
        .collect()
}

pub(crate) fn factorial_usize(m: usize) -> usize {
    (1..=m).product()
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s, None)
    }
}

/// Canonical output: one-line 1-based array.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Panics on degree mismatch; use [`Permutation::compose`] for a checked product.
impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        self.compose_same(rhs)
    }
}

/// `ξ = (1 2)(3 4)…(2n−1 2n)`.
pub fn base_pairing(n: usize) -> Permutation {
    Permutation {
        images: (0..2 * n as u8).map(|i| i ^ 1).collect(),
    }
}

/// All permutations of degree `m` in lexicographic order of image arrays.
pub fn all_permutations(m: usize) -> impl Iterator<Item = Permutation> {
    let mut next = Some((0..m as u8).collect::<Vec<u8>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            next = Some(succ);
        }
        Some(Permutation { images: cur })
    })
}

fn next_permutation(a: &mut [u8]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All fixed-point-free involutions on `m` points, `(m−1)!!` of them, in
/// lexicographic order of image arrays.
pub fn pairings(m: usize) -> Result<impl Iterator<Item = Permutation>> {
    if m % 2 != 0 {
        return Err(Error::OddDegree(m));
    }
    let mut out = Vec::new();
    let mut images = vec![u8::MAX; m];
    build_pairings(&mut images, &mut out);
    out.sort();
    Ok(out.into_iter())
}

fn build_pairings(images: &mut Vec<u8>, out: &mut Vec<Permutation>) {
    let first = match images.iter().position(|&v| v == u8::MAX) {
        Some(i) => i,
        None => {
            out.push(Permutation {
                images: images.clone(),
            });
            return;
        }
    };
    for partner in first + 1..images.len() {
        if images[partner] != u8::MAX {
            continue;
        }
        images[first] = partner as u8;
        images[partner] = first as u8;
        build_pairings(images, out);
        images[first] = u8::MAX;
        images[partner] = u8::MAX;
    }
}

/// Order of S_n[S_2], `2ⁿ·n!`.
pub fn wreath_order(n: usize) -> u128 {
    (1..=n as u128).product::<u128>() << n
}

/// The hyperoctahedral group S_n[S_2] realized as the centralizer of the base
/// pairing in S_2n, sorted lexicographically.
pub fn wreath_elements(n: usize) -> Result<Vec<Permutation>> {
    wreath_elements_with_budget(n, DEFAULT_ENUMERATION_BUDGET)
}

pub fn wreath_elements_with_budget(n: usize, budget: u128) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::InvalidArgument("wreath_elements needs n ≥ 1".into()));
    }
    check_budget("wreath_elements", wreath_order(n), budget)?;
    let mut out = Vec::with_capacity(wreath_order(n) as usize);
    for block in all_permutations(n) {
        for flips in 0u32..(1 << n) {
            let mut images = vec![0u8; 2 * n];
            for k in 0..n {
                let target = block.at(k) as u8;
                let flip = ((flips >> k) & 1) as u8;
                images[2 * k] = 2 * target + flip;
                images[2 * k + 1] = 2 * target + (1 - flip);
            }
            out.push(Permutation { images });
        }
    }
    out.sort();
    Ok(out)
}

/// Cayley table of S_m over lexicographic ranks; `m ≤ 7`.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    m: usize,
    order: usize,
    elements: Vec<Permutation>,
    product: Vec<u32>,
    inverse: Vec<u32>,
}

impl CayleyTable {
    pub fn new(m: usize) -> Result<Self> {
        let order = factorial_usize(m);
        check_budget("Cayley table", (order as u128) * (order as u128), 30_000_000)?;
        let elements: Vec<Permutation> = all_permutations(m).collect();
        let mut product = vec![0u32; order * order];
        for (a, p) in elements.iter().enumerate() {
            for (b, q) in elements.iter().enumerate() {
                product[a * order + b] = p.compose_same(q).lex_rank() as u32;
            }
        }
        let inverse = elements.iter().map(|p| p.inverse().lex_rank() as u32).collect();
        Ok(CayleyTable {
            m,
            order,
            elements,
            product,
            inverse,
        })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// `m!`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element(&self, rank: usize) -> &Permutation {
        &self.elements[rank]
    }

    /// Rank of `element(a) ∘ element(b)`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
}
