//! Maximal-vector search and decomposition of a module into cyclic
//! highest-weight components.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::closed_forms::branch_candidates;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Subspace};
use crate::matrix::Matrix;
use crate::parallel;
use crate::scalar::Scalar;
use crate::superalgebra::{Signature, Weight};

use super::{check_leading_block, GModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub weight: Weight,
    pub space: Subspace,
    pub maximal_vector: Vec<Scalar>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDecomposition {
    /// The subalgebra the components are irreducible under.
    pub sub: Signature,
    pub parent_dim: usize,
    pub parts: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn find(&self, weight: &Weight) -> Option<&Component> {
        self.parts.iter().find(|c| &c.weight == weight)
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.parts.iter().map(|c| c.weight.clone()).collect()
    }

    /// The `dim × dim` matrix whose column blocks are the component bases.
    pub fn change_of_basis(&self) -> Matrix {
        Matrix::hstack(&self.parts.iter().map(|c| c.space.basis_matrix()).collect::<Vec<_>>())
    }
}

/// Basis indices grouped by their weight under `sub`, highest first.
fn weight_groups(m: &GModule, sub: Signature) -> Vec<(Weight, Vec<usize>)> {
    let mut groups: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (i, w) in m.basis_weight().iter().enumerate() {
        groups.entry(w.truncate(sub)).or_default().push(i);
    }
    groups.into_iter().rev().collect()
}

/// One vector per weight annihilated by every raising generator of `sub`,
/// in descending lexicographic weight order.
pub fn find_maximal_vectors(m: &GModule, sub: Signature) -> Result<Vec<(Weight, Vec<Scalar>)>> {
    check_leading_block(m.signature(), sub)?;
    let raising: Vec<(usize, usize)> =
        (1..=sub.size()).flat_map(|p| (p + 1..=sub.size()).map(move |q| (p, q))).collect();
    let groups = weight_groups(m, sub);
    let found = parallel::map_slice(&groups, |(w, idx)| -> Result<Option<(Weight, Vec<Scalar>)>> {
        let mut rows = Vec::new();
        for &(p, q) in &raising {
            let g = m.gen(p, q).select_columns(idx);
            for r in 0..g.rows() {
                if g.row(r).iter().any(|x| !x.is_zero()) {
                    rows.push(g.row(r).to_vec());
                }
            }
        }
        let kernel = if rows.is_empty() { Subspace::full(idx.len()) } else { kernel_basis(&Matrix::from_rows(rows)) };
        match kernel.dim() {
            0 => Ok(None),
            1 => {
                let mut v = vec![Scalar::zero(); m.dim()];
                for (c, &i) in kernel.basis()[0].iter().zip(idx) {
                    v[i] = c.clone();
                }
                Ok(Some((w.clone(), v)))
            }
            k => Err(Error::MultiplicityAmbiguity(format!("{w} ({k} independent maximal vectors)"))),
        }
    });
    found.into_iter().filter_map(Result::transpose).collect()
}

/// Closure of `v` under all lowering generators of `sub`.
pub(crate) fn cyclic_span(m: &GModule, sub: Signature, v: &[Scalar]) -> Subspace {
    let lowering: Vec<(usize, usize)> = (1..=sub.size()).flat_map(|p| (1..p).map(move |q| (p, q))).collect();
    let mut span = Subspace::zero(m.dim());
    span.insert(v.to_vec());
    let mut queue = VecDeque::from([v.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for &(p, q) in &lowering {
            let y = m.gen(p, q).mul_vec(&x);
            if span.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    span
}

/// Decomposes `m` under `sub` into cyclic spans of maximal vectors and checks
/// that they are independent and exhaust `m`.
pub(crate) fn decompose(m: &GModule, sub: Signature) -> Result<ComponentDecomposition> {
    let maximal = find_maximal_vectors(m, sub)?;
    let parts: Vec<Component> = parallel::map_slice(&maximal, |(w, v)| Component {
        weight: w.clone(),
        space: cyclic_span(m, sub, v),
        maximal_vector: v.clone(),
    });
    let total: usize = parts.iter().map(Component::dim).sum();
    let spanned = Subspace::sum_dim(&parts.iter().map(|c| &c.space).collect::<Vec<_>>());
    if total != m.dim() || spanned != m.dim() {
        return Err(Error::IncompleteDecomposition(format!(
            "component dimensions sum to {total}, span {spanned}, module has {}",
            m.dim()
        )));
    }
    Ok(ComponentDecomposition { sub, parent_dim: m.dim(), parts })
}

/// Lexicographically greatest basis weight, which is the highest weight of a
/// highest-weight module.
pub(crate) fn top_weight(m: &GModule) -> Weight {
    m.basis_weight().iter().max().expect("modules are nonzero").clone()
}

/// Restriction of a gl(m|n+1) module to gl(m|n), with every component
/// weight checked against the betweenness candidates.
pub fn restrict_decompose(m: &GModule) -> Result<ComponentDecomposition> {
    let sig = m.signature();
    if sig.n == 0 {
        return Err(Error::SignatureMismatch { expected: format!("{}|n+1", sig.m), got: sig.to_string() });
    }
    let sub = Signature { m: sig.m, n: sig.n - 1 };
    let d = decompose(m, sub)?;
    let candidates = branch_candidates(&top_weight(m))?;
    for c in &d.parts {
        if !candidates.contains(&c.weight) {
            return Err(Error::ConsistencyFailure(format!("component {} violates betweenness", c.weight)));
        }
    }
    Ok(d)
}
