//! Real orthogonal irreps of S_m in Young's orthogonal form, and the
//! projector onto S_n[S_2]-invariant vectors.

use nalgebra::{DMatrix, DVector};

use crate::error::{check_budget, Error, Result};
use crate::partitions::Partition;
use crate::perm::{wreath_elements_with_budget, Permutation, DEFAULT_ENUMERATION_BUDGET};

/// Tolerance for structural identities (idempotence, symmetry).
pub const STRUCTURAL_TOL: f64 = 1e-8;
/// Tolerance for rounding traces and ranks to integers.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// Standard Young tableau; `rows[i][j]` is the 1-based letter in box `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// 0-based `(row, column)` of a 1-based letter.
    pub fn position(&self, letter: usize) -> Option<(usize, usize)> {
        self.rows.iter().enumerate().find_map(|(i, row)| {
            row.iter().position(|&v| v == letter).map(|j| (i, j))
        })
    }

    /// Content `column − row` of the box holding `letter`.
    pub fn content(&self, letter: usize) -> i64 {
        let (i, j) = self.position(letter).expect("letter present");
        j as i64 - i as i64
    }

    fn swapped(&self, k: usize) -> StandardTableau {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| match v {
                        v if v == k => k + 1,
                        v if v == k + 1 => k,
                        v => v,
                    })
                    .collect()
            })
            .collect();
        StandardTableau {
            shape: self.shape.clone(),
            rows,
        }
    }
}

/// All standard tableaux of shape `r` in last-letter order: the tableau whose
/// largest letter sits in a higher row comes first.
pub fn standard_tableaux(r: &Partition) -> Vec<StandardTableau> {
    let mut out = Vec::new();
    fill(r.parts().to_vec(), &mut Vec::new(), &mut out, r);
    out
}

// strips the largest letter from each removable corner of `shape`, recursing
fn fill(shape: Vec<usize>, placed: &mut Vec<usize>, out: &mut Vec<StandardTableau>, full: &Partition) {
    let m: usize = shape.iter().sum();
    if m == 0 {
        // placed[k] is the row of letter (weight − k)
        let mut rows: Vec<Vec<usize>> = full.parts().iter().map(|&len| Vec::with_capacity(len)).collect();
        for (k, &row) in placed.iter().enumerate().rev() {
            rows[row].push(full.weight() - k);
        }
        out.push(StandardTableau {
            shape: full.clone(),
            rows,
        });
        return;
    }
    for i in 0..shape.len() {
        let removable = shape[i] > 0 && shape.get(i + 1).is_none_or(|&below| below < shape[i]);
        if removable {
            let mut smaller = shape.clone();
            smaller[i] -= 1;
            placed.push(i);
            fill(smaller, placed, out, full);
            placed.pop();
        }
    }
}

/// One column of the adjacent transposition `s_k` in Young's orthogonal form.
#[derive(Clone, Copy, Debug)]
struct AdjacentEntry {
    diagonal: f64,
    partner: Option<(usize, f64)>,
}

/// Young's orthogonal form for one irrep, with the adjacent-transposition
/// matrices precomputed.
#[derive(Clone, Debug)]
pub struct YoungRepresentation {
    shape: Partition,
    tableaux: Vec<StandardTableau>,
    // adjacent[k-1][t] describes column t of D(s_k)
    adjacent: Vec<Vec<AdjacentEntry>>,
}

impl YoungRepresentation {
    pub fn new(shape: &Partition) -> Self {
        let tableaux = standard_tableaux(shape);
        let index: std::collections::HashMap<&StandardTableau, usize> =
            tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let m = shape.weight();
        let adjacent = (1..m)
            .map(|k| {
                tableaux
                    .iter()
                    .map(|t| {
                        let r = (t.content(k + 1) - t.content(k)) as f64;
                        let diagonal = 1.0 / r;
                        let partner = if r.abs() == 1.0 {
                            None
                        } else {
                            let other = index[&t.swapped(k)];
                            Some((other, (1.0 - 1.0 / (r * r)).sqrt()))
                        };
                        AdjacentEntry { diagonal, partner }
                    })
                    .collect()
            })
            .collect();
        YoungRepresentation {
            shape: shape.clone(),
            tableaux,
            adjacent,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dimension(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    // M ← D(s_k)·M
    fn apply_adjacent(&self, k: usize, mat: &mut DMatrix<f64>) {
        let col = &self.adjacent[k - 1];
        let old = mat.clone();
        for (i, e) in col.iter().enumerate() {
            let mut row = old.row(i) * e.diagonal;
            if let Some((j, s)) = e.partner {
                row += old.row(j) * s;
            }
            mat.set_row(i, &row);
        }
    }

    /// `D(σ)`, a homomorphism for `(p∘q)(i) = p(q(i))`.
    pub fn matrix(&self, sigma: &Permutation) -> Result<DMatrix<f64>> {
        let m = self.shape.weight();
        if sigma.degree() != m {
            return Err(Error::WeightMismatch {
                expected: m,
                got: sigma.degree(),
            });
        }
        // bubble sort σ's images: σ ∘ s_{k1} ∘ … ∘ s_{kL} = id
        let mut images = sigma.images();
        let mut swaps = Vec::new();
        for pass in 0..m {
            for j in 0..m.saturating_sub(pass + 1) {
                if images[j] > images[j + 1] {
                    images.swap(j, j + 1);
                    swaps.push(j + 1);
                }
            }
        }
        let mut mat = DMatrix::identity(self.dimension(), self.dimension());
        for &k in &swaps {
            self.apply_adjacent(k, &mut mat);
        }
        Ok(mat)
    }
}

/// `D^R(σ)` in Young's orthogonal form.
pub fn rep_matrix(r: &Partition, sigma: &Permutation) -> Result<DMatrix<f64>> {
    YoungRepresentation::new(r).matrix(sigma)
}

/// `P = (1/|H|) Σ_{γ ∈ S_n[S_2]} D^R(γ)`.
pub fn branching_projector(r: &Partition) -> Result<DMatrix<f64>> {
    let m = r.weight();
    if m % 2 != 0 || m == 0 {
        return Err(Error::OddDegree(m));
    }
    let rep = YoungRepresentation::new(r);
    let dim = rep.dimension();
    let elements = wreath_elements_with_budget(m / 2, DEFAULT_ENUMERATION_BUDGET)?;
    check_budget(
        "branching projector",
        (elements.len() * dim * dim * m * m) as u128,
        20_000_000_000,
    )?;
    let mut sum = DMatrix::zeros(dim, dim);
    for g in &elements {
        sum += rep.matrix(g)?;
    }
    Ok(sum / elements.len() as f64)
}

/// `P = B·Bᵀ` for the unit vector `B` spanning the H-invariants of `R`;
/// `None` when `R` has no invariant vector. `B`'s first nonzero entry is positive.
pub fn trivial_branching(r: &Partition) -> Result<Option<DVector<f64>>> {
    let p = branching_projector(r)?;
    let defect = (&p * &p - &p).abs().max();
    if defect > STRUCTURAL_TOL || (&p - p.transpose()).abs().max() > STRUCTURAL_TOL {
        return Err(Error::CrossCheck(format!(
            "projector for {r} is not a symmetric idempotent (defect {defect:e})"
        )));
    }
    let trace = p.trace();
    let rank = trace.round();
    if (trace - rank).abs() > INTEGRALITY_TOL || rank > 1.0 {
        return Err(Error::CrossCheck(format!("projector for {r} has trace {trace}")));
    }
    if rank == 0.0 {
        return Ok(None);
    }
    let j = (0..p.ncols())
        .max_by(|&a, &b| p[(a, a)].total_cmp(&p[(b, b)]))
        .expect("nonempty");
    let mut b: DVector<f64> = p.column(j).into_owned();
    b /= b.norm();
    if let Some(first) = b.iter().find(|v| v.abs() > STRUCTURAL_TOL) {
        if *first < 0.0 {
            b = -b;
        }
    }
    Ok(Some(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character;
    use crate::partitions::{dim_sn, f_poly, is_even_partition, partitions_of};
    use crate::perm::all_permutations;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn q(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
        (a - b).abs().max() < tol
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(standard_tableaux(&q(&[2, 1])).len(), 2);
        assert_eq!(standard_tableaux(&q(&[4])).len(), 1);
        assert_eq!(standard_tableaux(&q(&[2, 2])).len(), 2);
        for m in 1..=7 {
            for r in partitions_of(m) {
                let ts = standard_tableaux(&r);
                assert_eq!(ts.len().to_string(), dim_sn(&r).to_string());
                for t in &ts {
                    for row in t.rows() {
                        assert!(row.windows(2).all(|w| w[0] < w[1]));
                    }
                    for (i, row) in t.rows().iter().enumerate().skip(1) {
                        for (j, v) in row.iter().enumerate() {
                            assert!(t.rows()[i - 1][j] < *v);
                        }
                    }
                }
            }
        }
        // last-letter order: 3 in the first row comes first
        let ts = standard_tableaux(&q(&[2, 1]));
        assert_eq!(ts[0].rows(), &[vec![1, 3], vec![2]]);
        assert_eq!(ts[1].rows(), &[vec![1, 2], vec![3]]);
    }

    #[test]
    fn small_matrices() {
        let id = Permutation::identity(3);
        let d = rep_matrix(&q(&[2, 1]), &id).unwrap();
        assert!(close(&d, &DMatrix::identity(2, 2), 1e-12));
        let sign = rep_matrix(&q(&[1, 1]), &"[2,1]".parse().unwrap()).unwrap();
        assert_eq!(sign[(0, 0)], -1.0);
        let c3 = rep_matrix(&q(&[2, 1]), &"[2,3,1]".parse().unwrap()).unwrap();
        assert!((c3.trace() + 1.0).abs() < 1e-12);
        assert!(rep_matrix(&q(&[2, 1]), &Permutation::identity(4)).is_err());
    }

    #[test]
    fn traces_match_characters() {
        for m in 1..=5 {
            for r in partitions_of(m) {
                let rep = YoungRepresentation::new(&r);
                for s in all_permutations(m) {
                    let d = rep.matrix(&s).unwrap();
                    let chi = character(&r, &s.cycle_type()).unwrap() as f64;
                    assert!((d.trace() - chi).abs() < INTEGRALITY_TOL, "{r} {s}");
                    assert!(close(&(d.transpose() * &d), &DMatrix::identity(d.nrows(), d.nrows()), 1e-10));
                }
            }
        }
    }

    #[test]
    fn orthogonality_relations() {
        for m in 1..=5 {
            let irreps: Vec<YoungRepresentation> = partitions_of(m).map(|r| YoungRepresentation::new(&r)).collect();
            let perms: Vec<Permutation> = all_permutations(m).collect();
            let mats: Vec<Vec<DMatrix<f64>>> = irreps
                .iter()
                .map(|rep| perms.iter().map(|s| rep.matrix(s).unwrap()).collect())
                .collect();
            let order = perms.len() as f64;
            for (a, ra) in irreps.iter().enumerate() {
                for (b, rb) in irreps.iter().enumerate() {
                    for i in 0..ra.dimension() {
                        for j in 0..ra.dimension() {
                            for k in 0..rb.dimension() {
                                for l in 0..rb.dimension() {
                                    let sum: f64 = (0..perms.len())
                                        .map(|s| mats[a][s][(i, j)] * mats[b][s][(k, l)])
                                        .sum();
                                    let expect = if a == b && i == k && j == l {
                                        order / ra.dimension() as f64
                                    } else {
                                        0.0
                                    };
                                    assert!((sum - expect).abs() < STRUCTURAL_TOL);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn content_polynomial_identity() {
        for big_n in [2u64, 3] {
            for m in 1..=5 {
                for r in partitions_of(m) {
                    let rep = YoungRepresentation::new(&r);
                    let mut sum = DMatrix::zeros(rep.dimension(), rep.dimension());
                    for s in all_permutations(m) {
                        sum += rep.matrix(&s).unwrap() * (big_n as f64).powi(s.num_cycles() as i32);
                    }
                    let f = f_poly(&r, big_n).to_f64().unwrap();
                    let expect = DMatrix::identity(rep.dimension(), rep.dimension()) * f;
                    assert!(close(&sum, &expect, 1e-6), "N={big_n} R={r}");
                }
            }
        }
    }

    #[test]
    fn projector_traces() {
        for n in 1..=3 {
            for r in partitions_of(2 * n) {
                let p = branching_projector(&r).unwrap();
                let expect = if is_even_partition(&r) { 1.0 } else { 0.0 };
                assert!((p.trace() - expect).abs() < INTEGRALITY_TOL, "{r}");
                let b = trivial_branching(&r).unwrap();
                assert_eq!(b.is_some(), is_even_partition(&r));
                if let Some(b) = b {
                    assert!(close(&(&b * b.transpose()), &p, STRUCTURAL_TOL));
                    let first = b.iter().find(|v| v.abs() > STRUCTURAL_TOL).unwrap();
                    assert!(*first > 0.0);
                }
            }
        }
        assert_eq!(trivial_branching(&q(&[4])).unwrap().unwrap().as_slice(), &[1.0]);
        assert!(trivial_branching(&q(&[3, 1])).unwrap().is_none());
        assert!(branching_projector(&q(&[2, 1])).is_err());
    }

    fn perm_strategy(m: usize) -> impl Strategy<Value = Permutation> {
        Just((0..m).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_zero_based(&v).unwrap())
    }

    proptest! {
        #[test]
        fn homomorphism(p in perm_strategy(6), q in perm_strategy(6), which in 0usize..11) {
            let r = partitions_of(6).nth(which).unwrap();
            let rep = YoungRepresentation::new(&r);
            let lhs = rep.matrix(&(&p * &q)).unwrap();
            let rhs = rep.matrix(&p).unwrap() * rep.matrix(&q).unwrap();
            prop_assert!(close(&lhs, &rhs, 1e-10));
            let inv = rep.matrix(&p.inverse()).unwrap();
            prop_assert!(close(&inv, &rep.matrix(&p).unwrap().transpose(), 1e-10));
        }
    }
}
