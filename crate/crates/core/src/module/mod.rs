//! Explicit finite-dimensional modules: every generator `E_pq` as an exact
//! matrix, with a homogeneous weight basis.

mod cache;
mod decompose;
mod glk;
mod kac;
mod tensor;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{restrict_operator, Subspace};
use crate::matrix::Matrix;
use crate::parallel;
use crate::scalar::Scalar;
use crate::superalgebra::{Signature, Weight};

pub use cache::ModuleCache;
pub use decompose::{find_maximal_vectors, restrict_decompose, Component, ComponentDecomposition};
pub use glk::build_gl_k_irrep;
pub use kac::{build_kac_module, kac_dimension};
pub use tensor::{dual_vector_module, tensor_product, tensor_vector_decompose, vector_module};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GModule {
    signature: Signature,
    dim: usize,
    /// `E_pq` at position `(p−1)(m+n) + (q−1)`.
    gens: Vec<Matrix>,
    basis_parity: Vec<u8>,
    basis_weight: Vec<Weight>,
}

impl GModule {
    pub fn new(signature: Signature, gens: Vec<Matrix>, basis_parity: Vec<u8>, basis_weight: Vec<Weight>) -> Self {
        let n = signature.size();
        assert_eq!(gens.len(), n * n, "generator count");
        let dim = basis_parity.len();
        assert_eq!(basis_weight.len(), dim);
        assert!(gens.iter().all(|g| g.rows() == dim && g.cols() == dim), "generator shape");
        GModule { signature, dim, gens, basis_parity, basis_weight }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of `E_pq` (1-based).
    pub fn gen(&self, p: usize, q: usize) -> &Matrix {
        let n = self.signature.size();
        &self.gens[(p - 1) * n + (q - 1)]
    }

    pub fn basis_parity(&self) -> &[u8] {
        &self.basis_parity
    }

    pub fn basis_weight(&self) -> &[Weight] {
        &self.basis_weight
    }

    /// All index pairs `(p, q)` in row-major order.
    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.signature.size();
        (1..=n).flat_map(|p| (1..=n).map(move |q| (p, q))).collect()
    }

    /// First quadruple `(p, q, r, s)` violating
    /// `[E_pq, E_rs} = δ_qr E_ps − (−1)^{|pq||rs|} δ_ps E_rq`, if any.
    pub fn relation_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let sig = self.signature;
        let pairs = self.pairs();
        let bad = parallel::map_slice(&pairs, |&(p, q)| {
            for &(r, s) in &pairs {
                let sign = Scalar::sign(sig.gen_parity(p, q) * sig.gen_parity(r, s));
                let (a, b) = (self.gen(p, q), self.gen(r, s));
                // graded bracket: ab − (−1)^{|a||b|} ba
                let mut lhs = a.mul(b);
                lhs.add_scaled_assign(&b.mul(a), &-&sign);
                if q == r {
                    lhs.sub_assign(self.gen(p, s));
                }
                if p == s {
                    lhs.add_scaled_assign(self.gen(r, q), &sign);
                }
                if !lhs.is_zero() {
                    return Some((p, q, r, s));
                }
            }
            None
        });
        bad.into_iter().flatten().next()
    }

    pub fn check_relations(&self) -> Result<()> {
        match self.relation_violation() {
            None => Ok(()),
            Some(quad) => Err(Error::ConsistencyFailure(format!("graded commutation relation fails at {quad:?}"))),
        }
    }

    /// Cartan generators are diagonal with the stored weights, and each
    /// `E_pq` shifts parity by `(p)+(q)`.
    pub fn check_basis(&self) -> Result<()> {
        let sig = self.signature;
        for p in 1..=sig.size() {
            let h = self.gen(p, p);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let want = if i == j { self.basis_weight[i].label(p).clone() } else { Scalar::zero() };
                    if h[(i, j)] != want {
                        return Err(Error::ConsistencyFailure(format!("E_{p}{p} is not diagonal with the basis weights")));
                    }
                }
            }
        }
        for (p, q) in self.pairs() {
            let g = self.gen(p, q);
            let gp = sig.gen_parity(p, q) as u8;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if !g[(i, j)].is_zero() && self.basis_parity[i] != (self.basis_parity[j] + gp) % 2 {
                        return Err(Error::ConsistencyFailure(format!("E_{p}{q} is not homogeneous")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `I₂ = Σ_{p,q} (−1)^{(q)} E_pq E_qp`.
    pub fn casimir2_matrix(&self) -> Matrix {
        let sig = self.signature;
        let terms = parallel::map_slice(&self.pairs(), |&(p, q)| self.gen(p, q).mul(self.gen(q, p)).scale(&sig.sign(q)));
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for t in &terms {
            acc.add_assign(t);
        }
        acc
    }

    /// The gl(sub) action on an invariant subspace, in the subspace basis.
    /// `sub` must be a leading block of this module's signature.
    pub fn restrict(&self, space: &Subspace, sub: Signature) -> Result<GModule> {
        check_leading_block(self.signature, sub)?;
        let n = sub.size();
        let gens = (1..=n)
            .flat_map(|p| (1..=n).map(move |q| (p, q)))
            .map(|(p, q)| restrict_operator(self.gen(p, q), space))
            .collect::<Result<Vec<_>>>()?;
        let mut parity = Vec::with_capacity(space.dim());
        let mut weight = Vec::with_capacity(space.dim());
        for v in space.basis() {
            let i = v.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
            parity.push(self.basis_parity[i]);
            weight.push(self.basis_weight[i].truncate(sub));
        }
        Ok(GModule::new(sub, gens, parity, weight))
    }

    /// The same module viewed over a leading block `sub`.
    pub fn restrict_algebra(&self, sub: Signature) -> Result<GModule> {
        self.restrict(&Subspace::full(self.dim), sub)
    }
}

pub(crate) fn check_leading_block(sig: Signature, sub: Signature) -> Result<()> {
    if sub.m != sig.m || sub.n > sig.n {
        return Err(Error::SignatureMismatch { expected: format!("leading block of gl({sig})"), got: sub.to_string() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_module_relations() {
        for (m, n) in [(1, 0), (1, 1), (2, 1), (0, 2)] {
            let v = vector_module(Signature { m, n });
            v.check_relations().unwrap();
            v.check_basis().unwrap();
            let c = v.casimir2_matrix().as_scalar().unwrap();
            assert_eq!(c, Scalar::from_int(m as i64 - n as i64));
        }
    }
}
