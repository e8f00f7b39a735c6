//! Exact linear algebra: matrices over a runtime finite field (Gaussian
//! elimination, kernels, tensor products) and integer matrices with
//! arbitrary-precision entries (Hermite-form lattice membership, p-th-power
//! norms). No floating point anywhere.

use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Row-major matrix over a finite field; entries are element codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldMatrix {
    pub spec: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            spec,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = FieldMatrix::zeros(spec, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(spec: FieldSpec, rows: &[Vec<u64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::validation("ragged rows in matrix literal"));
            }
            for &e in row {
                spec.validate_elem(e)?;
                data.push(e);
            }
        }
        Ok(FieldMatrix {
            spec,
            rows: r,
            cols: c,
            data,
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.spec.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(Error::validation(format!(
                "mul_vec: {} columns vs vector length {}",
                self.cols,
                x.len()
            )));
        }
        let f = &self.spec;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn mul_mat(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::validation("mul_mat: inner dimensions differ"));
        }
        let f = self.spec.clone();
        let mut out = FieldMatrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0;
                for l in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, l), other.get(l, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.cols {
            return Err(Error::validation("vstack: column counts differ"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FieldMatrix {
            spec: self.spec.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.rows != other.rows {
            return Err(Error::validation("hstack: row counts differ"));
        }
        let mut out = FieldMatrix::zeros(self.spec.clone(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }
}

/// Reduced row echelon form with a deterministic pivot rule: scan columns
/// left to right; the pivot for a column is the first not-yet-used row with a
/// nonzero entry there.
struct Rref {
    mat: FieldMatrix,
    /// (row, col) of each pivot, in column order.
    pivots: Vec<(usize, usize)>,
}

fn rref(m: &FieldMatrix) -> Rref {
    let f = m.spec.clone();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..a.cols {
        if next_row == a.rows {
            break;
        }
        let Some(pr) = (next_row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        // swap into position
        if pr != next_row {
            for j in 0..a.cols {
                let (x, y) = (a.get(next_row, j), a.get(pr, j));
                a.set(next_row, j, y);
                a.set(pr, j, x);
            }
        }
        let inv = f.inv(a.get(next_row, col)).expect("pivot is nonzero");
        for j in 0..a.cols {
            a.set(next_row, j, f.mul(a.get(next_row, j), inv));
        }
        for r in 0..a.rows {
            if r == next_row {
                continue;
            }
            let factor = a.get(r, col);
            if factor == 0 {
                continue;
            }
            for j in 0..a.cols {
                let v = f.sub(a.get(r, j), f.mul(factor, a.get(next_row, j)));
                a.set(r, j, v);
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    Rref { mat: a, pivots }
}

pub fn rank(m: &FieldMatrix) -> usize {
    rref(m).pivots.len()
}

/// One solution of `M x = b` if any, with free variables set to zero.
pub fn solve_linear(m: &FieldMatrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    if b.len() != m.rows {
        return Err(Error::validation("solve_linear: rhs length mismatch"));
    }
    // eliminate on the augmented matrix
    let mut aug = FieldMatrix::zeros(m.spec.clone(), m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, m.cols, b[i]);
    }
    let r = rref(&aug);
    // a pivot in the rhs column means inconsistency
    if r.pivots.iter().any(|&(_, c)| c == m.cols) {
        return Ok(None);
    }
    let mut x = vec![0u64; m.cols];
    for &(row, col) in &r.pivots {
        x[col] = r.mat.get(row, m.cols);
    }
    Ok(Some(x))
}

/// Basis of the right kernel, returned as the columns of a matrix (empty
/// `cols` when the map is injective). One basis vector per free column, in
/// column order, with a 1 in the free position.
pub fn kernel_basis(m: &FieldMatrix) -> FieldMatrix {
    let f = m.spec.clone();
    let r = rref(m);
    let pivot_cols: Vec<usize> = r.pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..m.cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = FieldMatrix::zeros(f.clone(), m.cols, free_cols.len());
    for (bi, &fc) in free_cols.iter().enumerate() {
        basis.set(fc, bi, 1);
        for &(row, col) in &r.pivots {
            basis.set(col, bi, f.neg(r.mat.get(row, fc)));
        }
    }
    basis
}

/// Generator of the tensor (product) code: the Kronecker product `G1 (x) G2`,
/// with the output coordinate `(i1, i2)` flattened row-major to
/// `i1 * n2 + i2` and message index `(j1, j2)` to `j1 * m2 + j2`.
pub fn tensor_generator(g1: &FieldMatrix, g2: &FieldMatrix) -> Result<FieldMatrix> {
    if g1.spec != g2.spec {
        return Err(Error::validation("tensor_generator: fields differ"));
    }
    let f = g1.spec.clone();
    let mut out = FieldMatrix::zeros(f.clone(), g1.rows * g2.rows, g1.cols * g2.cols);
    for i1 in 0..g1.rows {
        for j1 in 0..g1.cols {
            let a = g1.get(i1, j1);
            if a == 0 {
                continue;
            }
            for i2 in 0..g2.rows {
                for j2 in 0..g2.cols {
                    out.set(
                        i1 * g2.rows + i2,
                        j1 * g2.cols + j2,
                        f.mul(a, g2.get(i2, j2)),
                    );
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Integer side
// ---------------------------------------------------------------------------

/// Dense integer matrix, row-major, arbitrary-precision entries. Columns are
/// lattice generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::validation("ragged rows in integer matrix literal"));
            }
            data.extend(row.iter().map(|&e| BigInt::from(e)));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::validation("mul_vec: dimension mismatch"));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &x[j])
                    .sum::<BigInt>()
            })
            .collect())
    }
}

/// Lattice membership decisions against a fixed basis, with the Hermite-form
/// triangularization computed once up front.
///
/// Internally `H = B * U` with `U` unimodular and `H` in lower column echelon
/// form: column `j`'s topmost nonzero sits strictly below column `j-1`'s.
pub struct LatticeSolver {
    basis_cols: usize,
    h: IntMatrix,
    u: IntMatrix,
    /// (row, col) of each echelon pivot.
    pivots: Vec<(usize, usize)>,
}

impl LatticeSolver {
    pub fn new(basis: &IntMatrix) -> Self {
        let mut h = basis.clone();
        let mut u = IntMatrix::identity(basis.cols);
        let mut pivots = Vec::new();
        let mut pcol = 0;
        for row in 0..h.rows {
            if pcol == h.cols {
                break;
            }
            // Euclidean column reduction until row has one nonzero at >= pcol.
            loop {
                let nz: Vec<usize> = (pcol..h.cols).filter(|&j| !h.get(row, j).is_zero()).collect();
                if nz.len() <= 1 {
                    break;
                }
                let jmin = *nz
                    .iter()
                    .min_by_key(|&&j| h.get(row, j).abs())
                    .expect("nonempty");
                for &j in &nz {
                    if j == jmin {
                        continue;
                    }
                    let q = h.get(row, j).div_floor(h.get(row, jmin));
                    if !q.is_zero() {
                        col_axpy(&mut h, j, jmin, &q);
                        col_axpy(&mut u, j, jmin, &q);
                    }
                }
            }
            if let Some(j) = (pcol..h.cols).find(|&j| !h.get(row, j).is_zero()) {
                h.data.swap_cols(h.rows, h.cols, j, pcol);
                u.data.swap_cols(u.rows, u.cols, j, pcol);
                if h.get(row, pcol).is_negative() {
                    col_negate(&mut h, pcol);
                    col_negate(&mut u, pcol);
                }
                pivots.push((row, pcol));
                pcol += 1;
            }
        }
        LatticeSolver {
            basis_cols: basis.cols,
            h,
            u,
            pivots,
        }
    }

    /// Coefficients `x` with `B x = v`, in terms of the original basis
    /// columns, or `None` when `v` is not a lattice member.
    pub fn coeffs(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.h.rows, "target dimension mismatch");
        let mut w = v.to_vec();
        let mut y = vec![BigInt::zero(); self.basis_cols];
        let mut next = 0;
        for row in 0..self.h.rows {
            if next < self.pivots.len() && self.pivots[next].0 == row {
                let col = self.pivots[next].1;
                let (q, r) = w[row].div_rem(self.h.get(row, col));
                if !r.is_zero() {
                    return None;
                }
                if !q.is_zero() {
                    for i in row..self.h.rows {
                        let t = self.h.get(i, col) * &q;
                        w[i] -= t;
                    }
                }
                y[col] = q;
                next += 1;
            } else if !w[row].is_zero() {
                return None;
            }
        }
        Some(self.u.mul_vec(&y).expect("square by construction"))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coeffs(v).is_some()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn col_axpy(m: &mut IntMatrix, j: usize, jsrc: usize, q: &BigInt) {
    for i in 0..m.rows {
        let t = m.get(i, jsrc) * q;
        let v = m.get(i, j) - t;
        m.set(i, j, v);
    }
}

fn col_negate(m: &mut IntMatrix, j: usize) {
    for i in 0..m.rows {
        let v = -m.get(i, j);
        m.set(i, j, v);
    }
}

trait SwapCols {
    fn swap_cols(&mut self, rows: usize, cols: usize, a: usize, b: usize);
}

impl SwapCols for Vec<BigInt> {
    fn swap_cols(&mut self, rows: usize, cols: usize, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..rows {
            self.swap(i * cols + a, i * cols + b);
        }
    }
}

/// Whether `v` lies in the lattice generated by the columns of `basis`.
/// For repeated queries against one basis build a [`LatticeSolver`].
pub fn lattice_membership(basis: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != basis.rows {
        return Err(Error::validation("lattice_membership: dimension mismatch"));
    }
    Ok(LatticeSolver::new(basis).coeffs(v))
}

/// Which norm a problem instance measures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "p")]
pub enum NormSpec {
    /// Hamming weight: number of nonzero coordinates.
    L0,
    /// `sum |v_i|^p` (the p-th power, kept integral on purpose).
    LpPow(u32),
}

/// Exact norm value: a count for `L0`, `sum |v_i|^p` for `LpPow(p)`.
pub fn norm(v: &[BigInt], spec: &NormSpec) -> BigInt {
    match spec {
        NormSpec::L0 => BigInt::from(v.iter().filter(|x| !x.is_zero()).count()),
        NormSpec::LpPow(p) => v.iter().map(|x| x.abs().pow(*p)).sum(),
    }
}
