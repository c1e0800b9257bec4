//! Irreducible polynomial gl(k) modules realized inside tensor powers of the
//! vector module.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Subspace};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::superalgebra::{Signature, Weight};

use super::GModule;

/// Basis of `V^{⊗d}` for `V = Q^k`, encoded as base-`k` digits.
struct TensorPower {
    k: usize,
    d: usize,
    len: usize,
}

impl TensorPower {
    fn new(k: usize, d: usize) -> Self {
        TensorPower { k, d, len: k.pow(d as u32) }
    }

    fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.d];
        for slot in (0..self.d).rev() {
            out[slot] = idx % self.k;
            idx /= self.k;
        }
        out
    }

    fn index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &x| acc * self.k + x)
    }

    fn weight(&self, idx: usize) -> Vec<i64> {
        let mut w = vec![0; self.k];
        for x in self.digits(idx) {
            w[x] += 1;
        }
        w
    }

    /// `E_ij` (0-based) applied to a dense vector.
    fn act(&self, i: usize, j: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.len];
        for (a, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = self.digits(a);
            for slot in 0..self.d {
                if t[slot] == j {
                    let mut t2 = t.clone();
                    t2[slot] = i;
                    out[self.index(&t2)] += c;
                }
            }
        }
        out
    }
}

/// The irreducible gl(k) module with dominant integral highest weight `lam`.
pub fn build_gl_k_irrep(k: usize, lam: &Weight) -> Result<GModule> {
    let sig = Signature::new(k, 0)?;
    if lam.signature() != sig {
        return Err(Error::SignatureMismatch { expected: sig.to_string(), got: lam.signature().to_string() });
    }
    lam.require_integral()?;
    lam.require_dominant()?;
    let shift = lam.even[k - 1].clone();
    let part: Vec<i64> = lam.even.iter().map(|x| (x - &shift).to_i64().expect("small partition")).collect();
    let d = part.iter().sum::<i64>() as usize;
    let tp = TensorPower::new(k, d);

    let top: Vec<usize> = (0..tp.len).filter(|&a| tp.weight(a) == part).collect();
    let unit = |a: usize| {
        let mut v = vec![Scalar::zero(); tp.len];
        v[a] = Scalar::one();
        v
    };
    let mut raising_rows = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let images: Vec<Vec<Scalar>> = top.iter().map(|&a| tp.act(i, j, &unit(a))).collect();
            for r in 0..tp.len {
                raising_rows.push(images.iter().map(|col| col[r].clone()).collect::<Vec<_>>());
            }
        }
    }
    let hw_coords = if raising_rows.is_empty() {
        Subspace::full(top.len())
    } else {
        kernel_basis(&Matrix::from_rows(raising_rows))
    };
    let coords = hw_coords.basis().first().expect("a partition always has a highest weight vector");
    let mut hw = vec![Scalar::zero(); tp.len];
    for (c, &a) in coords.iter().zip(&top) {
        hw[a] = c.clone();
    }

    let mut span = Subspace::zero(tp.len);
    span.insert(hw.clone());
    let mut queue = VecDeque::from([hw]);
    while let Some(x) = queue.pop_front() {
        for i in 0..k.saturating_sub(1) {
            let y = tp.act(i + 1, i, &x);
            if span.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }

    // Canonical basis vectors are weight vectors: weight spaces of the tensor
    // power are coordinate-disjoint.
    let weights: Vec<Vec<i64>> = span.pivots().iter().map(|&p| tp.weight(p)).collect();
    let mut order: Vec<usize> = (0..span.dim()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]));
    let mut position = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let dim = span.dim();
    let mut gens = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut g = Matrix::zeros(dim, dim);
            for (new_col, &old_col) in order.iter().enumerate() {
                let image = tp.act(i, j, &span.basis()[old_col]);
                let c = span.coordinates(&image).ok_or(Error::NotInvariant)?;
                for (old_row, x) in c.into_iter().enumerate() {
                    g[(position[old_row], new_col)] = x;
                }
            }
            if i == j {
                g = g.sub_identity(&-&shift);
            }
            gens.push(g);
        }
    }
    let basis_weight = order
        .iter()
        .map(|&o| Weight::new(weights[o].iter().map(|&x| Scalar::from_int(x) + &shift).collect(), Vec::new()))
        .collect();
    Ok(GModule::new(sig, gens, vec![0; dim], basis_weight))
}
