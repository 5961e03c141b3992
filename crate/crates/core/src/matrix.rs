//! Dense exact linear algebra and polynomial determinants.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::HomPoly;
use crate::scalar::Scalar;

/// Row-major dense matrix over [`Scalar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds from rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<ExactMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r);
        }
        Ok(ExactMatrix { rows: nrows, cols, data })
    }

    pub fn from_ints(rows: &[&[i64]]) -> ExactMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
        ExactMatrix::from_rows(cols, rows).expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Exact reduced row echelon form; pivots are taken left to right, first
    /// nonzero row wins, so the result is deterministic.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let inv = rows[next][c].inv().expect("nonzero pivot");
            for v in rows[next][c..].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                axpy(row, &f, &pivot_row, c);
            }
            pivots.push(c);
            next += 1;
        }
        let matrix = ExactMatrix::from_rows(self.cols, rows).expect("rectangular");
        Rref { matrix, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Rank and a basis of the right null space. Each basis vector has a 1 in
    /// one free column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> (usize, Vec<Vec<Scalar>>) {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                let e = matrix.get(i, free);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// `row -= f · pivot` over columns `from..`.
fn axpy(row: &mut [Scalar], f: &Scalar, pivot: &[Scalar], from: usize) {
    for (v, p) in row[from..].iter_mut().zip(&pivot[from..]) {
        if !p.is_zero() {
            *v = &*v - &(f * p);
        }
    }
}

/// Incrementally built echelon basis of a subspace of `𝕂^n`.
///
/// Each stored row is normalized at its pivot and has zeros at the pivots of
/// earlier rows, so reducing a vector against the rows in insertion order
/// clears every pivot coordinate.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                axpy(&mut v, &f, row, *p);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// The reduced row echelon basis of the span, independent of insertion order.
    pub fn canonical_basis(&self) -> Vec<Vec<Scalar>> {
        let rows = self.rows.iter().map(|(_, r)| r.clone()).collect();
        let m = ExactMatrix::from_rows(self.dim, rows).expect("rectangular");
        let rref = m.rref();
        (0..rref.pivots.len()).map(|i| rref.matrix.row(i).to_vec()).collect()
    }

    /// Adds `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r[p..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Determinant of a square matrix of homogeneous polynomials whose nonzero
/// entries share one degree per row.
///
/// Cofactor expansion up to size 4, fraction-free Bareiss elimination above.
pub fn det_poly(m: &[Vec<HomPoly>]) -> Result<HomPoly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    let nvars = m.first().and_then(|r| r.first()).map_or(0, HomPoly::nvars);
    let mut row_deg = Vec::with_capacity(n);
    for row in m {
        let mut deg = None;
        for e in row.iter().filter(|e| !e.is_zero()) {
            match deg {
                None => deg = Some(e.degree()),
                Some(d) if d != e.degree() => return Err(Error::NonHomogeneous),
                _ => {}
            }
        }
        row_deg.push(deg.unwrap_or_else(|| row.first().map_or(0, HomPoly::degree)));
    }
    let total: u32 = row_deg.iter().sum();
    if n == 0 {
        return Ok(HomPoly::one(nvars));
    }
    let det = if n <= 4 {
        let cols: Vec<usize> = (0..n).collect();
        cofactor(m, 0, &cols)
    } else {
        bareiss(m)?
    };
    if det.is_zero() {
        return Ok(HomPoly::zero(nvars, total));
    }
    Ok(det)
}

fn cofactor(m: &[Vec<HomPoly>], row: usize, cols: &[usize]) -> HomPoly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc: Option<HomPoly> = None;
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor(m, row + 1, &rest);
        if minor.is_zero() {
            continue;
        }
        let mut term = entry.mul(&minor);
        if k % 2 == 1 {
            term = term.neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.unwrap_or_else(|| HomPoly::zero(m[row][cols[0]].nvars(), 0))
}

fn bareiss(m: &[Vec<HomPoly>]) -> Result<HomPoly> {
    let n = m.len();
    let nvars = m[0][0].nvars();
    let mut a: Vec<Vec<HomPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = HomPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(HomPoly::zero(nvars, 0));
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = if num.is_zero() {
                    HomPoly::zero(nvars, 0)
                } else {
                    num.exact_divide(&prev)?
                };
            }
            a[i][k] = HomPoly::zero(nvars, 0);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        let (r, k) = ExactMatrix::identity(3).kernel_basis();
        assert_eq!((r, k.len()), (3, 0));
        let (r, k) = ExactMatrix::zeros(2, 4).kernel_basis();
        assert_eq!((r, k.len()), (0, 4));
        let m = ExactMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let (r, k) = m.kernel_basis();
        assert_eq!((r, k.len()), (1, 2));
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = Echelon::new(3);
        let v = |a: i64, b: i64, c: i64| vec![Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c)];
        assert!(e.insert(v(1, 2, 3)));
        assert!(e.insert(v(0, 1, 1)));
        assert!(!e.insert(v(2, 5, 7)));
        assert!(e.contains(&v(1, 3, 4)));
        assert!(e.insert(v(0, 0, 5)));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn diagonal_determinant() {
        let x = |i| HomPoly::var(3, i);
        let z = || HomPoly::zero(3, 1);
        let m = vec![vec![x(0), z(), z()], vec![z(), x(1), z()], vec![z(), z(), x(2)]];
        assert_eq!(det_poly(&m).unwrap(), x(0).mul(&x(1)).mul(&x(2)));
        let mut swapped = m.clone();
        swapped.swap(0, 1);
        assert_eq!(det_poly(&swapped).unwrap(), x(0).mul(&x(1)).mul(&x(2)).neg());
    }

    #[test]
    fn bareiss_agrees_with_cofactor_on_5x5() {
        // rows of degree 1 built from a fixed integer pattern
        let x = |i| HomPoly::var(2, i);
        let mut m = Vec::new();
        for i in 0..5i64 {
            let row: Vec<HomPoly> = (0..5i64)
                .map(|j| {
                    let a = Scalar::from_int((i * 3 + j * 7) % 5 - 2);
                    let b = Scalar::from_int((i * j + 1) % 3);
                    x(0).scale(&a).add(&x(1).scale(&b))
                })
                .collect();
            m.push(row);
        }
        let via_bareiss = det_poly(&m).unwrap();
        // Laplace expansion along the first row using 4x4 cofactors
        let mut laplace = HomPoly::zero(2, 5);
        for c in 0..5 {
            let minor: Vec<Vec<HomPoly>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, e)| e.clone()).collect())
                .collect();
            let mut t = m[0][c].mul(&det_poly(&minor).unwrap());
            if c % 2 == 1 {
                t = t.neg();
            }
            laplace = laplace.add(&t);
        }
        assert_eq!(via_bareiss, laplace);
    }

    #[test]
    fn rejects_bad_shapes() {
        let x = |i| HomPoly::var(2, i);
        assert_eq!(det_poly(&[vec![x(0), x(1)]]), Err(Error::NotSquare));
        let m = vec![vec![x(0), HomPoly::one(2)], vec![x(0), x(1)]];
        assert_eq!(det_poly(&m), Err(Error::NonHomogeneous));
    }
}
