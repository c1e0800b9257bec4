//! The vector module, its dual, graded tensor products, and the
//! decomposition of `V ⊗ M` and `V* ⊗ M`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::roots::characteristic_roots;
use crate::scalar::Scalar;
use crate::superalgebra::{Signature, Weight};

use super::decompose::{decompose, top_weight};
use super::{ComponentDecomposition, GModule};

fn unit_weights(sig: Signature, sign: i64) -> Vec<Weight> {
    (1..=sig.size()).map(|p| Weight::unit(sig, p).scale(&Scalar::from_int(sign))).collect()
}

/// `E_pq` acts as the matrix unit on `Q^{m|n}`.
pub fn vector_module(sig: Signature) -> GModule {
    let n = sig.size();
    let gens = (0..n).flat_map(|p| (0..n).map(move |q| Matrix::unit(n, n, p, q))).collect();
    let parity = (1..=n).map(|p| sig.parity(p) as u8).collect();
    GModule::new(sig, gens, parity, unit_weights(sig, 1))
}

/// The dual of the vector module: `E_pq e^q = −(−1)^{(q)((p)+(q))} e^p`.
pub fn dual_vector_module(sig: Signature) -> GModule {
    let n = sig.size();
    let mut gens = Vec::with_capacity(n * n);
    for p in 1..=n {
        for q in 1..=n {
            let mut g = Matrix::zeros(n, n);
            g[(q - 1, p - 1)] = -Scalar::sign(sig.parity(q) * sig.gen_parity(p, q));
            gens.push(g);
        }
    }
    let parity = (1..=n).map(|p| sig.parity(p) as u8).collect();
    GModule::new(sig, gens, parity, unit_weights(sig, -1))
}

/// `x(v ⊗ w) = xv ⊗ w + (−1)^{|x||v|} v ⊗ xw`, basis index `i·dim(b) + j`.
pub fn tensor_product(a: &GModule, b: &GModule) -> Result<GModule> {
    let sig = a.signature();
    if b.signature() != sig {
        return Err(Error::SignatureMismatch { expected: sig.to_string(), got: b.signature().to_string() });
    }
    let n = sig.size();
    let id_b = Matrix::identity(b.dim());
    let mut gens = Vec::with_capacity(n * n);
    for p in 1..=n {
        for q in 1..=n {
            let x = sig.gen_parity(p, q);
            let twist =
                Matrix::diagonal(&a.basis_parity().iter().map(|&v| Scalar::sign(x * v as usize)).collect::<Vec<_>>());
            let mut g = a.gen(p, q).kron(&id_b);
            g.add_assign(&twist.kron(b.gen(p, q)));
            gens.push(g);
        }
    }
    let mut parity = Vec::with_capacity(a.dim() * b.dim());
    let mut weight = Vec::with_capacity(a.dim() * b.dim());
    for (pa, wa) in a.basis_parity().iter().zip(a.basis_weight()) {
        for (pb, wb) in b.basis_parity().iter().zip(b.basis_weight()) {
            parity.push((pa + pb) % 2);
            weight.push(wa.add(wb)?);
        }
    }
    Ok(GModule::new(sig, gens, parity, weight))
}

/// Decomposes `V ⊗ M` (or `V* ⊗ M`) for a highest-weight module `M` of weight
/// `Λ`; components must have highest weights `Λ + ε_r` (or `Λ − ε_r`).
/// Requires distinct adjoint roots (resp. vector roots) of `Λ`.
pub fn tensor_vector_decompose(m: &GModule, dual: bool) -> Result<ComponentDecomposition> {
    let sig = m.signature();
    let top = top_weight(m);
    let roots = characteristic_roots(&top);
    if dual {
        roots.require_distinct()?;
    } else {
        roots.require_adjoint_distinct()?;
    }
    let v = if dual { dual_vector_module(sig) } else { vector_module(sig) };
    let t = tensor_product(&v, m)?;
    let d = decompose(&t, sig)?;
    for c in &d.parts {
        let allowed = (1..=sig.size()).any(|r| c.weight == top.shifted(r, !dual));
        if !allowed {
            return Err(Error::ConsistencyFailure(format!("component {} is not {top} ± a unit weight", c.weight)));
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::build_kac_module;

    #[test]
    fn dual_relations() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (0, 2)] {
            let d = dual_vector_module(Signature { m, n });
            d.check_relations().unwrap();
            d.check_basis().unwrap();
        }
    }

    #[test]
    fn gl11_tensor() {
        let k = build_kac_module(&Weight::from_ints(&[2], &[0])).unwrap();
        let d = tensor_vector_decompose(&k, false).unwrap();
        assert_eq!(d.weights(), vec![Weight::from_ints(&[3], &[0]), Weight::from_ints(&[2], &[1])]);
        assert!(d.parts.iter().all(|c| c.dim() == 2));
    }

    #[test]
    fn gl1_tensor() {
        let k = build_kac_module(&Weight::from_ints(&[5], &[])).unwrap();
        let d = tensor_vector_decompose(&k, false).unwrap();
        assert_eq!(d.weights(), vec![Weight::from_ints(&[6], &[])]);
    }
}
