//! The rank-3 complete-graph (K4) contraction with symplectic form
//! insertions, expanded as a polynomial in the tensor entries `T_ijk`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{check_budget, Error, Result};

/// Cap on the number of nonzero terms the K4 loop nest may visit.
pub const DEFAULT_K4_BUDGET: u128 = 100_000_000;

/// The standard form `J = [[0, I_N], [−I_N, 0]]` of size 2N.
pub fn symplectic_matrix(n: usize) -> Vec<Vec<i64>> {
    let dim = 2 * n;
    let mut j = vec![vec![0i64; dim]; dim];
    for k in 0..n {
        j[k][n + k] = 1;
        j[n + k][k] = -1;
    }
    j
}

/// Tensor entry `T_ijk` with indices in `0..dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub i: u8,
    pub j: u8,
    pub k: u8,
}

impl Symbol {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        Symbol {
            i: i as u8,
            j: j as u8,
            k: k as u8,
        }
    }

    /// Flat position `i·dim² + j·dim + k`.
    pub fn index(&self, dim: usize) -> usize {
        (self.i as usize * dim + self.j as usize) * dim + self.k as usize
    }
}

/// `T_032`; single digits only.
impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{}{}{}", self.i, self.j, self.k)
    }
}

impl FromStr for Symbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .trim()
            .strip_prefix("T_")
            .ok_or_else(|| Error::MalformedSymbol(s.to_string()))?;
        let parsed: Vec<u32> = digits.chars().filter_map(|c| c.to_digit(10)).collect();
        if parsed.len() != 3 || digits.chars().count() != 3 {
            return Err(Error::MalformedSymbol(s.to_string()));
        }
        Ok(Symbol::new(parsed[0] as usize, parsed[1] as usize, parsed[2] as usize))
    }
}

/// Parses `T_000*T_032` or `T_000,T_032` into a sorted monomial.
pub fn parse_monomial(s: &str) -> Result<Vec<Symbol>> {
    let mut out = s
        .split(['*', ','])
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Symbol>>>()?;
    if out.is_empty() {
        return Err(Error::MalformedSymbol(s.to_string()));
    }
    out.sort();
    Ok(out)
}

/// Polynomial in the symbols `T_ijk` with integer coefficients; monomials are
/// sorted symbol lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseTensorPolynomial {
    terms: BTreeMap<Vec<Symbol>, i64>,
}

impl SparseTensorPolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Symbol>, &i64)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mut monomial: Vec<Symbol>, c: i64) {
        monomial.sort();
        let entry = self.terms.entry(monomial).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    /// Terms containing each queried symbol with exactly the queried
    /// multiplicity, with the query divided out.
    pub fn coefficient(&self, query: &[Symbol]) -> SparseTensorPolynomial {
        let mut q = query.to_vec();
        q.sort();
        let wanted = multiplicities(&q);
        let mut out = SparseTensorPolynomial::default();
        for (mono, &c) in &self.terms {
            let have = multiplicities(mono);
            if wanted.iter().all(|(s, e)| have.get(s) == Some(e)) {
                let rest: Vec<Symbol> = mono.iter().filter(|s| !wanted.contains_key(s)).copied().collect();
                out.add_term(rest, c);
            }
        }
        out
    }

    /// Coefficient of a full monomial, 0 when absent.
    pub fn coefficient_of(&self, monomial: &[Symbol]) -> i64 {
        let mut key = monomial.to_vec();
        key.sort();
        self.terms.get(&key).copied().unwrap_or(0)
    }

    /// Value at `T_ijk = values[index(i,j,k)]`.
    pub fn evaluate(&self, values: &[BigRational], dim: usize) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (mono, &c)| {
            let prod = mono
                .iter()
                .fold(BigRational::from_integer(BigInt::from(c)), |p, s| p * &values[s.index(dim)]);
            acc + prod
        })
    }
}

fn multiplicities(mono: &[Symbol]) -> BTreeMap<Symbol, usize> {
    let mut out = BTreeMap::new();
    for s in mono {
        *out.entry(*s).or_insert(0) += 1;
    }
    out
}

impl fmt::Display for SparseTensorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (mono, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match idx {
                0 if c < 0 => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.unsigned_abs();
            let body: Vec<String> = mono.iter().map(ToString::to_string).collect();
            match (abs, body.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (1, false) => write!(f, "{}", body.join("*"))?,
                _ => write!(f, "{abs}*{}", body.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Parses the `±c*T_abc*…` sum format produced by [`SparseTensorPolynomial`]'s `Display`.
impl FromStr for SparseTensorPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut out = SparseTensorPolynomial::default();
        let compact: String = s.split_whitespace().collect();
        if compact == "0" {
            return Ok(out);
        }
        let mut chunk = String::new();
        let mut pieces = Vec::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !chunk.is_empty() {
                pieces.push(std::mem::take(&mut chunk));
            }
            chunk.push(ch);
        }
        pieces.push(chunk);
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let mut coeff = 1i64;
            let mut mono = Vec::new();
            for factor in body.split('*') {
                if factor.starts_with("T_") {
                    mono.push(factor.parse()?);
                } else {
                    coeff *= factor
                        .parse::<i64>()
                        .map_err(|_| Error::MalformedSymbol(factor.to_string()))?;
                }
            }
            out.add_term(mono, sign * coeff);
        }
        Ok(out)
    }
}

/// The K4 contraction
/// `Σ J[a1][b1]·J[a2][c2]·J[b3][c3]·J[c1][d1]·J[b2][d2]·J[a3][d3]·T_a·T_b·T_c·T_d`
/// over indices in `0..2N`, evaluated as a nested loop that skips zero factors.
pub fn k4_invariant(n: usize) -> Result<SparseTensorPolynomial> {
    if n == 0 || n > 5 {
        return Err(Error::InvalidArgument(format!(
            "K4 invariant supports 1 ≤ N ≤ 5, got {n}"
        )));
    }
    let dim = 2 * n;
    check_budget("K4 invariant", (dim as u128).pow(6), DEFAULT_K4_BUDGET)?;
    let j = symplectic_matrix(n);
    let mut acc: BTreeMap<[Symbol; 4], i64> = BTreeMap::new();
    let range = 0..dim;
    for a1 in range.clone() {
        for a2 in range.clone() {
            for a3 in range.clone() {
                let ta = Symbol::new(a1, a2, a3);
                for b1 in range.clone() {
                    let f_ab = j[a1][b1];
                    if f_ab == 0 {
                        continue;
                    }
                    for b2 in range.clone() {
                        for b3 in range.clone() {
                            let tb = Symbol::new(b1, b2, b3);
                            for c1 in range.clone() {
                                for c2 in range.clone() {
                                    let f_abc = f_ab * j[a2][c2];
                                    if f_abc == 0 {
                                        continue;
                                    }
                                    for c3 in range.clone() {
                                        let f_abcc = f_abc * j[b3][c3];
                                        if f_abcc == 0 {
                                            continue;
                                        }
                                        let tc = Symbol::new(c1, c2, c3);
                                        for d1 in range.clone() {
                                            let f_d = f_abcc * j[c1][d1];
                                            if f_d == 0 {
                                                continue;
                                            }
                                            for d2 in range.clone() {
                                                let f_dd = f_d * j[b2][d2];
                                                if f_dd == 0 {
                                                    continue;
                                                }
                                                for d3 in range.clone() {
                                                    let f = f_dd * j[a3][d3];
                                                    if f == 0 {
                                                        continue;
                                                    }
                                                    let mut key = [ta, tb, tc, Symbol::new(d1, d2, d3)];
                                                    key.sort();
                                                    *acc.entry(key).or_insert(0) += f;
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = SparseTensorPolynomial::default();
    for (key, c) in acc {
        if c != 0 {
            out.terms.insert(key.to_vec(), c);
        }
    }
    Ok(out)
}

/// `T'_{ijk} = Σ K_{ii'} K_{jj'} K_{kk'} T_{i'j'k'}`.
pub fn transform_tensor(values: &[BigRational], k: &[Vec<BigRational>]) -> Vec<BigRational> {
    let dim = k.len();
    let mut step = values.to_vec();
    // contract one slot at a time
    for slot in 0..3 {
        let mut next = vec![BigRational::zero(); step.len()];
        for idx in 0..step.len() {
            let digits = [idx / (dim * dim), (idx / dim) % dim, idx % dim];
            let mut sum = BigRational::zero();
            for src in 0..dim {
                let mut from = digits;
                from[slot] = src;
                let coeff = &k[digits[slot]][src];
                if !coeff.is_zero() {
                    sum += coeff * &step[(from[0] * dim + from[1]) * dim + from[2]];
                }
            }
            next[idx] = sum;
        }
        step = next;
    }
    step
}

/// The transvection `x ↦ x + c·ω(v, x)·v`, i.e. `I + c·v·vᵀ·J`; it preserves `J`.
pub fn transvection(v: &[i64], c: &BigRational, n: usize) -> Vec<Vec<BigRational>> {
    let j = symplectic_matrix(n);
    let dim = 2 * n;
    let vj: Vec<i64> = (0..dim).map(|col| (0..dim).map(|r| v[r] * j[r][col]).sum()).collect();
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|col| {
                    let id = if r == col { 1 } else { 0 };
                    BigRational::from_integer(BigInt::from(id)) + c * BigRational::from_integer(BigInt::from(v[r] * vj[col]))
                })
                .collect()
        })
        .collect()
}

/// Checks `KᵀJK = J` exactly.
pub fn is_symplectic(k: &[Vec<BigRational>], n: usize) -> bool {
    let j = symplectic_matrix(n);
    let dim = 2 * n;
    (0..dim).all(|a| {
        (0..dim).all(|b| {
            let mut s = BigRational::zero();
            for x in 0..dim {
                for y in 0..dim {
                    if j[x][y] != 0 {
                        s += &k[x][a] * &k[y][b] * BigRational::from_integer(BigInt::from(j[x][y]));
                    }
                }
            }
            s == BigRational::from_integer(BigInt::from(j[a][b]))
        })
    })
}
