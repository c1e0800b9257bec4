//! Row reduction, kernels, and subspaces in canonical echelon form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Reduced row echelon form with first-nonzero pivoting. Returns the reduced
/// matrix and the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].checked_recip().expect("pivot is nonzero");
        for j in c..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let v = &a[(r, j)] * &f;
                    a[(i, j)] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Basis of `{v : Mv = 0}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let mut vectors = Vec::new();
    let mut next_pivot = 0;
    for f in 0..cols {
        if next_pivot < pivots.len() && pivots[next_pivot] == f {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[f] = Scalar::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -&r[(i, f)];
        }
        vectors.push(v);
    }
    Subspace::span(cols, &vectors)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows();
    let (r, pivots) = rref(&Matrix::hstack(&[m.clone(), Matrix::identity(n)]));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    Some(r.select_columns(&cols))
}

/// A subspace of `Q^ambient_dim`, stored with a canonical basis: each basis
/// vector has a 1 at its pivot coordinate and every other basis vector is 0
/// there (reduced column echelon form). Two subspaces are equal iff their
/// stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient_dim];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace { ambient_dim, basis, pivots: (0..ambient_dim).collect() }
    }

    /// Canonical span of arbitrary vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut s = Subspace::zero(ambient_dim);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as the columns of an `ambient_dim × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    /// Subtracts the span's components at the pivot coordinates.
    fn reduce(&self, v: &mut [Scalar]) {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= y * &f;
                }
            }
        }
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].checked_recip().expect("nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for b in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let f = b[p].clone();
            for (x, y) in b.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= y * &f;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Scalar::zero(); self.ambient_dim];
        for (b, c) in self.basis.iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in recon.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += y * c;
                }
            }
        }
        (recon.as_slice() == v).then_some(coords)
    }

    /// Coordinates of every column of `y` (an `ambient_dim × k` matrix),
    /// returned as a `dim × k` matrix.
    pub fn coordinates_of_columns(&self, y: &Matrix) -> Result<Matrix> {
        assert_eq!(y.rows(), self.ambient_dim);
        let mut out = Matrix::zeros(self.dim(), y.cols());
        for j in 0..y.cols() {
            let c = self.coordinates(&y.column(j)).ok_or(Error::NotInvariant)?;
            for (i, x) in c.into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        Ok(out)
    }

    /// Dimension of the sum of `spaces`.
    pub fn sum_dim(spaces: &[&Subspace]) -> usize {
        let ambient = spaces.first().map_or(0, |s| s.ambient_dim);
        let mut acc = Subspace::zero(ambient);
        for s in spaces {
            for v in &s.basis {
                acc.insert(v.clone());
            }
        }
        acc.dim()
    }
}

/// The matrix of `m` on `span(s)` in the basis of `s`.
pub fn restrict_operator(m: &Matrix, s: &Subspace) -> Result<Matrix> {
    assert!(m.is_square() && m.rows() == s.ambient_dim(), "operator/subspace size mismatch");
    let image = m.mul(&s.basis_matrix());
    s.coordinates_of_columns(&image)
}

/// The scalar `c` with `restrict_operator(m, s) = c·I`.
pub fn scalar_on_subspace(m: &Matrix, s: &Subspace) -> Result<Scalar> {
    let r = restrict_operator(m, s)?;
    r.as_scalar().ok_or_else(|| Error::NotScalar(format!("restriction has {} nonzero entries", r.nnz())))
}
