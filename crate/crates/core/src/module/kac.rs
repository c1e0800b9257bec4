//! Kac modules: the odd lowering generators acting freely (as an exterior
//! algebra) on the irreducible even-subalgebra module of the top weight.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::parallel;
use crate::roots::characteristic_roots;
use crate::scalar::Scalar;
use crate::superalgebra::{casimir2_eigenvalue, require_typical, Signature, Weight};

use super::{build_gl_k_irrep, GModule};

type Sparse = BTreeMap<usize, Scalar>;

/// Classical Weyl dimension `Π_{i<j} (λ_i − λ_j + j − i)/(j − i)`.
fn weyl_dimension(lam: &[Scalar]) -> Scalar {
    let mut out = Scalar::one();
    for i in 0..lam.len() {
        for j in i + 1..lam.len() {
            let gap = Scalar::from_int((j - i) as i64);
            out *= (&lam[i] - &lam[j] + &gap) / gap;
        }
    }
    out
}

/// `2^{mn} · dim V₀(Λ)` without building anything.
pub fn kac_dimension(l: &Weight) -> Scalar {
    let sig = l.signature();
    let free = Scalar::from_int(2).pow((sig.m * sig.n) as u32);
    free * weyl_dimension(&l.even) * weyl_dimension(&l.odd)
}

struct Builder<'a> {
    sig: Signature,
    d0: usize,
    /// Even-subalgebra action on V₀, indexed like [`GModule::gen`].
    v0: &'a [Option<Matrix>],
    /// Odd lowering generators `E_{μ,i}` in row-major `(μ, i)` order.
    lows: &'a [(usize, usize)],
    memo: HashMap<(usize, usize, u32, usize), Sparse>,
}

impl Builder<'_> {
    fn low_index(&self, p: usize, q: usize) -> usize {
        (p - self.sig.m - 1) * self.sig.m + (q - 1)
    }

    /// `f_b · x`, reordering into increasing monomials.
    fn left_mul(&self, b: usize, x: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&idx, c) in x {
            let (mask, v) = (idx / self.d0, idx % self.d0);
            if mask & (1 << b) != 0 {
                continue;
            }
            let before = (mask & ((1 << b) - 1)).count_ones() as usize;
            let key = (mask | (1 << b)) * self.d0 + v;
            *out.entry(key).or_insert_with(Scalar::zero) += Scalar::sign(before) * c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `E_pq · (f_S v)`.
    fn act(&mut self, p: usize, q: usize, mask: u32, v: usize) -> Sparse {
        if let Some(hit) = self.memo.get(&(p, q, mask, v)) {
            return hit.clone();
        }
        let m = self.sig.m;
        let mut out = Sparse::new();
        if mask == 0 {
            let n = self.sig.size();
            if let Some(g) = &self.v0[(p - 1) * n + (q - 1)] {
                for r in 0..self.d0 {
                    if !g[(r, v)].is_zero() {
                        out.insert(r, g[(r, v)].clone());
                    }
                }
            } else if p > m && q <= m {
                out.insert((1 << self.low_index(p, q)) * self.d0 + v, Scalar::one());
            }
        } else {
            let a = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << a);
            let (fp, fq) = self.lows[a];
            let sig = self.sig;
            let x_parity = sig.gen_parity(p, q);
            // x f_a w = [x, f_a} w + (−1)^{|x|} f_a (x w)
            if q == fp {
                for (k, c) in self.act(p, fq, rest, v) {
                    *out.entry(k).or_insert_with(Scalar::zero) += c;
                }
            }
            if p == fq {
                let sign = Scalar::sign(x_parity * sig.gen_parity(fp, fq));
                for (k, c) in self.act(fp, q, rest, v) {
                    *out.entry(k).or_insert_with(Scalar::zero) -= &sign * c;
                }
            }
            let xw = self.act(p, q, rest, v);
            let sign = Scalar::sign(x_parity);
            for (k, c) in self.left_mul(a, &xw) {
                *out.entry(k).or_insert_with(Scalar::zero) += &sign * c;
            }
            out.retain(|_, c| !c.is_zero());
        }
        self.memo.insert((p, q, mask, v), out.clone());
        out
    }
}

fn trivial_gl0() -> (usize, Vec<Matrix>, Vec<Weight>) {
    (1, Vec::new(), vec![Weight::new(Vec::new(), Vec::new())])
}

/// The Kac module with highest weight `l`. The weight must be integral,
/// dominant, typical, and have pairwise distinct characteristic roots.
/// Basis vector `mask·dim V₀ + v` is `f_{s_1}⋯f_{s_k} v` for the set bits
/// `s_1 < ⋯ < s_k` of `mask`.
pub fn build_kac_module(l: &Weight) -> Result<GModule> {
    let sig = l.signature();
    Signature::new(sig.m, sig.n)?;
    l.require_integral()?;
    l.require_dominant()?;
    require_typical(l)?;
    characteristic_roots(l).require_distinct()?;
    let (m, n) = (sig.m, sig.n);
    let size = sig.size();

    let (d_even, g_even, w_even) = if m > 0 {
        let g = build_gl_k_irrep(m, &Weight::new(l.even.clone(), Vec::new()))?;
        let gens = (1..=m).flat_map(|i| (1..=m).map(move |j| (i, j))).map(|(i, j)| g.gen(i, j).clone()).collect();
        (g.dim(), gens, g.basis_weight().to_vec())
    } else {
        trivial_gl0()
    };
    let (d_odd, g_odd, w_odd) = if n > 0 {
        let g = build_gl_k_irrep(n, &Weight::new(l.odd.clone(), Vec::new()))?;
        let gens = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).map(|(i, j)| g.gen(i, j).clone()).collect();
        (g.dim(), gens, g.basis_weight().to_vec())
    } else {
        trivial_gl0()
    };
    let d0 = d_even * d_odd;
    let mut v0: Vec<Option<Matrix>> = vec![None; size * size];
    for i in 1..=m {
        for j in 1..=m {
            v0[(i - 1) * size + (j - 1)] = Some(g_even[(i - 1) * m + (j - 1)].kron(&Matrix::identity(d_odd)));
        }
    }
    for a in 1..=n {
        for b in 1..=n {
            v0[(m + a - 1) * size + (m + b - 1)] = Some(Matrix::identity(d_even).kron(&g_odd[(a - 1) * n + (b - 1)]));
        }
    }
    let lows: Vec<(usize, usize)> = (1..=n).flat_map(|mu| (1..=m).map(move |i| (m + mu, i))).collect();
    let subsets = 1usize << lows.len();
    let dim = subsets * d0;

    let pairs: Vec<(usize, usize)> = (1..=size).flat_map(|p| (1..=size).map(move |q| (p, q))).collect();
    let gens = parallel::map_slice(&pairs, |&(p, q)| {
        let mut b = Builder { sig, d0, v0: &v0, lows: &lows, memo: HashMap::new() };
        let mut g = Matrix::zeros(dim, dim);
        for mask in 0..subsets {
            for v in 0..d0 {
                for (row, c) in b.act(p, q, mask as u32, v) {
                    g[(row, mask * d0 + v)] = c;
                }
            }
        }
        g
    });

    let mut parity = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for mask in 0..subsets {
        for v in 0..d0 {
            let mut w = Weight::new(w_even[v / d_odd].even.clone(), w_odd[v % d_odd].even.clone());
            for (a, &(mu, i)) in lows.iter().enumerate() {
                if mask & (1 << a) != 0 {
                    *w.label_mut(mu) += Scalar::one();
                    *w.label_mut(i) -= Scalar::one();
                }
            }
            parity.push((mask.count_ones() % 2) as u8);
            weights.push(w);
        }
    }
    let module = GModule::new(sig, gens, parity, weights);
    module.check_relations()?;
    let expected = casimir2_eigenvalue(l);
    match module.casimir2_matrix().as_scalar() {
        Some(c) if c == expected => Ok(module),
        _ => Err(Error::ConsistencyFailure(format!("I₂ is not {expected}·identity on the Kac module of {l}"))),
    }
}
