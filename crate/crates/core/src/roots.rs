//! Characteristic roots of the vector and adjoint identities and the index
//! sets that govern which branching invariants vanish.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::{Signature, Weight};

/// Vector roots `α_r` and adjoint roots `ᾱ_r` of a weight, indexed `1..=m+n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSet {
    pub signature: Signature,
    pub weight: Weight,
    pub vector_roots: Vec<Scalar>,
    pub adjoint_roots: Vec<Scalar>,
}

impl RootSet {
    /// `α_r` (1-based).
    pub fn alpha(&self, r: usize) -> &Scalar {
        &self.vector_roots[r - 1]
    }

    /// `ᾱ_r` (1-based).
    pub fn alphabar(&self, r: usize) -> &Scalar {
        &self.adjoint_roots[r - 1]
    }

    pub fn len(&self) -> usize {
        self.vector_roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vector_roots.is_empty()
    }

    /// First pair `(r, s)` with `r < s` and `α_r = α_s`.
    pub fn coinciding_pair(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (1..=n).flat_map(|r| (r + 1..=n).map(move |s| (r, s))).find(|&(r, s)| self.alpha(r) == self.alpha(s))
    }

    /// First pair `(r, s)` with `r < s` and `ᾱ_r = ᾱ_s`.
    pub fn coinciding_adjoint_pair(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (1..=n).flat_map(|r| (r + 1..=n).map(move |s| (r, s))).find(|&(r, s)| self.alphabar(r) == self.alphabar(s))
    }

    pub fn require_adjoint_distinct(&self) -> Result<()> {
        match self.coinciding_adjoint_pair() {
            None => Ok(()),
            Some(pair) => Err(Error::RootsCoincide { pair, value: self.alphabar(pair.0).to_string() }),
        }
    }

    pub fn require_distinct(&self) -> Result<()> {
        match self.coinciding_pair() {
            None => Ok(()),
            Some(pair) => Err(Error::RootsCoincide { pair, value: self.alpha(pair.0).to_string() }),
        }
    }
}

/// `α_i = Λ_i + m − n − i`, `α_μ = μ − Λ_μ − n`, `ᾱ_i = i − 1 − Λ_i`,
/// `ᾱ_μ = Λ_μ + m + 1 − μ`.
pub fn characteristic_roots(l: &Weight) -> RootSet {
    let sig = l.signature();
    let (m, n) = (sig.m as i64, sig.n as i64);
    let mut vector_roots = Vec::with_capacity(sig.size());
    let mut adjoint_roots = Vec::with_capacity(sig.size());
    for (k, li) in l.even.iter().enumerate() {
        let i = k as i64 + 1;
        vector_roots.push(li + Scalar::from_int(m - n - i));
        adjoint_roots.push(Scalar::from_int(i - 1) - li);
    }
    for (k, lmu) in l.odd.iter().enumerate() {
        let mu = k as i64 + 1;
        vector_roots.push(Scalar::from_int(mu - n) - lmu);
        adjoint_roots.push(lmu + Scalar::from_int(m + 1 - mu));
    }
    RootSet { signature: sig, weight: l.clone(), vector_roots, adjoint_roots }
}

pub fn roots_distinct(r: &RootSet) -> bool {
    r.coinciding_pair().is_none()
}

/// Index sets for a branching pair. Indices are 1-based in the gl(m|n+1)
/// numbering: even `1..=m`, odd `m+1..=m+n`, and `plus = m+n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSets {
    pub i0: Vec<usize>,
    pub i0bar: Vec<usize>,
    pub i1: Vec<usize>,
    pub i: Vec<usize>,
    pub itilde: Vec<usize>,
    pub iprime: Vec<usize>,
    pub itilde_prime: Vec<usize>,
    pub plus: usize,
}

impl IndexSets {
    pub fn in_i(&self, r: usize) -> bool {
        self.i.contains(&r)
    }

    pub fn in_itilde(&self, r: usize) -> bool {
        self.itilde.contains(&r)
    }

    pub fn in_iprime(&self, r: usize) -> bool {
        self.iprime.contains(&r)
    }

    pub fn in_itilde_prime(&self, r: usize) -> bool {
        self.itilde_prime.contains(&r)
    }
}

/// Partitions the even indices by `β_i = α_i` (`I₀`) or `β_i = α_i − 1` (`Ī₀`).
pub fn index_sets(sub: &RootSet, top: &RootSet) -> Result<IndexSets> {
    let (s, t) = (sub.signature, top.signature);
    if t != s.extended() {
        return Err(Error::SignatureMismatch { expected: s.extended().to_string(), got: t.to_string() });
    }
    let mut i0 = Vec::new();
    let mut i0bar = Vec::new();
    for i in 1..=s.m {
        let (a, b) = (sub.alpha(i), top.alpha(i));
        if a == b {
            i0.push(i);
        } else if a == &(b + Scalar::one()) {
            i0bar.push(i);
        } else {
            return Err(Error::NotBranchCompatible(format!("β_{i} = {b} is neither α_{i} = {a} nor α_{i} − 1")));
        }
    }
    let i1: Vec<usize> = (s.m + 1..=s.size()).collect();
    let plus = s.size() + 1;
    let i: Vec<usize> = i0.iter().chain(&i1).copied().collect();
    let iprime: Vec<usize> = i0bar.iter().chain(&i1).copied().collect();
    let mut itilde = i.clone();
    itilde.push(plus);
    let mut itilde_prime = iprime.clone();
    itilde_prime.push(plus);
    Ok(IndexSets { i0, i0bar, i1, i, itilde, iprime, itilde_prime, plus })
}
