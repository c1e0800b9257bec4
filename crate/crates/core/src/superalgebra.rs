//! Signatures, weights, parities, the graded bilinear form, ρ, the quadratic
//! Casimir eigenvalue, and typicality for gl(m|n).
//!
//! Generator indices are 1-based throughout: `1..=m` are even, `m+1..=m+n`
//! are odd.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub m: usize,
    pub n: usize,
}

impl Signature {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::Parse("gl(0|0) is not a valid signature".into()));
        }
        Ok(Signature { m, n })
    }

    /// Total number of indices, `m + n`.
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    /// Parity `(p)` of a 1-based index: 0 for `p ≤ m`, 1 otherwise.
    pub fn parity(&self, p: usize) -> usize {
        debug_assert!(p >= 1);
        usize::from(p > self.m)
    }

    /// `(-1)^{(p)}`.
    pub fn sign(&self, p: usize) -> Scalar {
        Scalar::sign(self.parity(p))
    }

    /// Parity of the generator `E_pq`.
    pub fn gen_parity(&self, p: usize, q: usize) -> usize {
        (self.parity(p) + self.parity(q)) % 2
    }

    /// The signature with one more odd index, gl(m|n+1).
    pub fn extended(&self) -> Signature {
        Signature { m: self.m, n: self.n + 1 }
    }

    /// `m − n` as a scalar.
    pub fn superdim(&self) -> Scalar {
        Scalar::from_int(self.m as i64 - self.n as i64)
    }

    /// Human label for index `p`: `"i"` for even, `"μj"` for odd.
    pub fn index_label(&self, p: usize) -> String {
        if p <= self.m {
            p.to_string()
        } else {
            format!("μ{}", p - self.m)
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.m, self.n)
    }
}

/// A weight `Σ Λ_i ε_i + Σ Λ_μ δ_μ`. Serializes in the text form
/// `"a_1,...,a_m|b_1,...,b_n"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Weight {
    pub even: Vec<Scalar>,
    pub odd: Vec<Scalar>,
}

impl Weight {
    pub fn new(even: Vec<Scalar>, odd: Vec<Scalar>) -> Self {
        Weight { even, odd }
    }

    pub fn from_ints(even: &[i64], odd: &[i64]) -> Self {
        Weight {
            even: even.iter().map(|&x| Scalar::from_int(x)).collect(),
            odd: odd.iter().map(|&x| Scalar::from_int(x)).collect(),
        }
    }

    /// Splits `labels` (length `m + n`) into even and odd parts.
    pub fn from_flat(sig: Signature, labels: Vec<Scalar>) -> Self {
        assert_eq!(labels.len(), sig.size());
        let mut even = labels;
        let odd = even.split_off(sig.m);
        Weight { even, odd }
    }

    pub fn zero(sig: Signature) -> Self {
        Weight { even: vec![Scalar::zero(); sig.m], odd: vec![Scalar::zero(); sig.n] }
    }

    /// The unit weight for index `p`: `ε_p` if even, `δ_{p−m}` if odd.
    pub fn unit(sig: Signature, p: usize) -> Self {
        let mut w = Weight::zero(sig);
        *w.label_mut(p) = Scalar::one();
        w
    }

    pub fn signature(&self) -> Signature {
        Signature { m: self.even.len(), n: self.odd.len() }
    }

    /// Label `Λ_p` at 1-based index `p`.
    pub fn label(&self, p: usize) -> &Scalar {
        let m = self.even.len();
        if p <= m {
            &self.even[p - 1]
        } else {
            &self.odd[p - m - 1]
        }
    }

    pub fn label_mut(&mut self, p: usize) -> &mut Scalar {
        let m = self.even.len();
        if p <= m {
            &mut self.even[p - 1]
        } else {
            &mut self.odd[p - m - 1]
        }
    }

    /// All labels in index order.
    pub fn flat(&self) -> Vec<Scalar> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        check_same(self, other)?;
        Ok(Weight {
            even: self.even.iter().zip(&other.even).map(|(a, b)| a + b).collect(),
            odd: self.odd.iter().zip(&other.odd).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        check_same(self, other)?;
        Ok(Weight {
            even: self.even.iter().zip(&other.even).map(|(a, b)| a - b).collect(),
            odd: self.odd.iter().zip(&other.odd).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Weight {
        Weight {
            even: self.even.iter().map(|a| a * c).collect(),
            odd: self.odd.iter().map(|a| a * c).collect(),
        }
    }

    /// `self ± ε_p` (or `δ_μ` for odd `p`).
    pub fn shifted(&self, p: usize, up: bool) -> Weight {
        let mut w = self.clone();
        let l = w.label_mut(p);
        if up {
            *l += Scalar::one();
        } else {
            *l -= Scalar::one();
        }
        w
    }

    /// Restriction to the leading `sub` block (drops trailing odd labels).
    pub fn truncate(&self, sub: Signature) -> Weight {
        assert_eq!(sub.m, self.even.len());
        Weight { even: self.even.clone(), odd: self.odd[..sub.n].to_vec() }
    }

    pub fn is_integral(&self) -> bool {
        self.even.iter().chain(&self.odd).all(Scalar::is_integer)
    }

    /// Lexicality: consecutive even differences and consecutive odd
    /// differences are nonnegative integers.
    pub fn is_dominant(&self) -> bool {
        dominant_run(&self.even) && dominant_run(&self.odd)
    }

    pub fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NonDominant(self.to_string()))
        }
    }

    pub fn require_integral(&self) -> Result<()> {
        if self.is_integral() {
            Ok(())
        } else {
            Err(Error::NonIntegral(self.to_string()))
        }
    }

    /// Parses `"a_1,...,a_m|b_1,...,b_n"` against a known signature.
    pub fn parse_for(sig: Signature, s: &str) -> Result<Weight> {
        let w: Weight = s.parse()?;
        if w.signature() != sig {
            return Err(Error::SignatureMismatch { expected: sig.to_string(), got: w.signature().to_string() });
        }
        Ok(w)
    }
}

fn dominant_run(xs: &[Scalar]) -> bool {
    xs.windows(2).all(|w| {
        let d = &w[0] - &w[1];
        d.is_integer() && !d.is_negative()
    })
}

fn check_same(a: &Weight, b: &Weight) -> Result<()> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch { expected: a.signature().to_string(), got: b.signature().to_string() });
    }
    Ok(())
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[Scalar]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.even), join(&self.odd))
    }
}

impl From<Weight> for String {
    fn from(w: Weight) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Weight {
    type Error = Error;

    fn try_from(s: String) -> Result<Weight> {
        s.parse()
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once('|').ok_or_else(|| Error::Parse(format!("weight {s:?} has no '|' separator")))?;
        let side = |t: &str| -> Result<Vec<Scalar>> {
            let t = t.trim();
            if t.is_empty() {
                return Ok(Vec::new());
            }
            t.split(',').map(str::parse).collect()
        };
        let w = Weight { even: side(a)?, odd: side(b)? };
        if w.even.is_empty() && w.odd.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        Ok(w)
    }
}

/// Graded half-sum of positive roots: even labels `½(m−n−2j+1)`, odd labels
/// `½(m+n−2ν+1)`.
pub fn rho(sig: Signature) -> Weight {
    let (m, n) = (sig.m as i64, sig.n as i64);
    Weight {
        even: (1..=m).map(|j| Scalar::ratio(m - n - 2 * j + 1, 2)).collect(),
        odd: (1..=n).map(|nu| Scalar::ratio(m + n - 2 * nu + 1, 2)).collect(),
    }
}

/// `(a, b) = Σ a_i b_i − Σ a_μ b_μ`.
pub fn weight_form(a: &Weight, b: &Weight) -> Result<Scalar> {
    check_same(a, b)?;
    let even: Scalar = a.even.iter().zip(&b.even).map(|(x, y)| x * y).sum();
    let odd: Scalar = a.odd.iter().zip(&b.odd).map(|(x, y)| x * y).sum();
    Ok(even - odd)
}

/// Eigenvalue `(Λ, Λ+2ρ)` of the quadratic Casimir on the irreducible module
/// of highest weight `l`.
pub fn casimir2_eigenvalue(l: &Weight) -> Scalar {
    let two_rho = rho(l.signature()).scale(&Scalar::from_int(2));
    let shifted = l.add(&two_rho).expect("same signature");
    weight_form(l, &shifted).expect("same signature")
}

/// Atypicality witnesses: all `(i, μ)` (1-based within each parity) with
/// `(Λ+ρ, ε_i − δ_μ) = 0`. Empty means typical.
pub fn typicality(l: &Weight) -> Vec<(usize, usize)> {
    let sig = l.signature();
    let lr = l.add(&rho(sig)).expect("same signature");
    let mut out = Vec::new();
    for i in 1..=sig.m {
        for mu in 1..=sig.n {
            // (Λ+ρ, ε_i − δ_μ) = (Λ+ρ)_i + (Λ+ρ)_μ
            if (&lr.even[i - 1] + &lr.odd[mu - 1]).is_zero() {
                out.push((i, mu));
            }
        }
    }
    out
}

pub fn require_typical(l: &Weight) -> Result<()> {
    match typicality(l).first() {
        None => Ok(()),
        Some(&witness) => Err(Error::Atypical { witness }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(m: usize, n: usize) -> Signature {
        Signature::new(m, n).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(sig(2, 1)), Weight::from_ints(&[0, -1], &[1]));
        assert_eq!(rho(sig(1, 1)).to_string(), "-1/2|1/2");
        assert_eq!(rho(sig(1, 2)), Weight::from_ints(&[-1], &[1, 0]));
    }

    #[test]
    fn form_on_units() {
        let s = sig(1, 1);
        let e1 = Weight::unit(s, 1);
        let d1 = Weight::unit(s, 2);
        assert_eq!(weight_form(&e1, &e1).unwrap(), Scalar::one());
        assert_eq!(weight_form(&d1, &d1).unwrap(), Scalar::from_int(-1));
        assert_eq!(weight_form(&e1, &d1).unwrap(), Scalar::zero());
        assert!(weight_form(&e1, &Weight::unit(sig(2, 1), 1)).is_err());
    }

    #[test]
    fn casimir_examples() {
        for (m, n) in [(1, 0), (2, 1), (1, 2), (0, 3)] {
            let s = sig(m, n);
            assert_eq!(casimir2_eigenvalue(&Weight::unit(s, 1)), s.superdim(), "gl({m}|{n})");
        }
        assert_eq!(casimir2_eigenvalue(&Weight::from_ints(&[1, 0], &[0])), Scalar::one());
        assert_eq!(casimir2_eigenvalue(&Weight::from_ints(&[2], &[0])), Scalar::from_int(2));
    }

    #[test]
    fn typicality_examples() {
        assert!(typicality(&Weight::from_ints(&[2], &[0])).is_empty());
        // Coinciding roots but typical: the Kac module has a single maximal vector.
        assert!(typicality(&Weight::from_ints(&[1], &[0, -1])).is_empty());
        assert_eq!(typicality(&Weight::from_ints(&[1], &[-1, -2])), vec![(1, 1)]);
        assert_eq!(typicality(&Weight::from_ints(&[1], &[-1])), vec![(1, 1)]);
        assert!(typicality(&Weight::from_ints(&[4], &[0, -1])).is_empty());
    }

    #[test]
    fn weight_text_format() {
        let w: Weight = "1,0|-1/2".parse().unwrap();
        assert_eq!(w.even, vec![Scalar::one(), Scalar::zero()]);
        assert_eq!(w.odd, vec![Scalar::ratio(-1, 2)]);
        assert_eq!(w.to_string(), "1,0|-1/2");
        let odd_only: Weight = "|1,0".parse().unwrap();
        assert_eq!(odd_only.signature(), sig(0, 2));
        assert!("1,0".parse::<Weight>().is_err());
        assert!(Weight::parse_for(sig(1, 1), "1,0|0").is_err());
    }

    #[test]
    fn dominance() {
        assert!(Weight::from_ints(&[3, 1], &[0, -2]).is_dominant());
        assert!(!Weight::from_ints(&[1, 3], &[0]).is_dominant());
        assert!(!"1/2,0|0".parse::<Weight>().unwrap().is_dominant());
    }
}
