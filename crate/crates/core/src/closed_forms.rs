//! Closed-form eigenvalues of the branching invariants for a pair
//! gl(m|n) ⊂ gl(m|n+1): reduced Wigner coefficients `c`, `c̄`, squared
//! reduced matrix elements `γ`, `γ̄`, `δ`, `δ̄`, and projector supertraces.
//!
//! Indices follow the gl(m|n+1) numbering: even `1..=m`, odd `m+1..=m+n`,
//! and the extra odd index `m+n+1`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::roots::{characteristic_roots, index_sets, IndexSets, RootSet};
use crate::scalar::Scalar;
use crate::superalgebra::{Signature, Weight};

/// A top weight over gl(m|n+1) and a sub weight over gl(m|n) satisfying the
/// betweenness conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchPair {
    pub top: Weight,
    pub sub: Weight,
    pub roots_top: RootSet,
    pub roots_sub: RootSet,
    pub sets: IndexSets,
}

impl BranchPair {
    pub fn new(top: &Weight, sub: &Weight) -> Result<Self> {
        let (ts, ss) = (top.signature(), sub.signature());
        if ts != ss.extended() {
            return Err(Error::SignatureMismatch { expected: ss.extended().to_string(), got: ts.to_string() });
        }
        check_betweenness(top, sub)?;
        let roots_top = characteristic_roots(top);
        let roots_sub = characteristic_roots(sub);
        let sets = index_sets(&roots_sub, &roots_top)?;
        Ok(BranchPair { top: top.clone(), sub: sub.clone(), roots_top, roots_sub, sets })
    }

    pub fn sub_signature(&self) -> Signature {
        self.sub.signature()
    }

    /// Both root sets pairwise distinct.
    pub fn require_distinct(&self) -> Result<()> {
        self.roots_top.require_distinct()?;
        self.roots_sub.require_distinct()
    }

    fn alpha(&self, r: usize) -> &Scalar {
        self.roots_sub.alpha(r)
    }

    fn alphabar(&self, r: usize) -> &Scalar {
        self.roots_sub.alphabar(r)
    }

    fn beta(&self, r: usize) -> &Scalar {
        self.roots_top.alpha(r)
    }

    fn betabar(&self, r: usize) -> &Scalar {
        self.roots_top.alphabar(r)
    }

    /// `(−1)^{(k)}` in the gl(m|n+1) grading.
    fn e(&self, k: usize) -> Scalar {
        self.top.signature().sign(k)
    }
}

fn nonneg_int(d: &Scalar) -> bool {
    d.is_integer() && !d.is_negative()
}

fn check_betweenness(top: &Weight, sub: &Weight) -> Result<()> {
    for (i, (t, s)) in top.even.iter().zip(&sub.even).enumerate() {
        let d = t - s;
        if !(d.is_zero() || d.is_one()) {
            return Err(Error::NotBranchCompatible(format!("even label {}: {t} − {s} ∉ {{0, 1}}", i + 1)));
        }
    }
    for (mu, s) in sub.odd.iter().enumerate() {
        let (hi, lo) = (&top.odd[mu], &top.odd[mu + 1]);
        if !nonneg_int(&(hi - s)) || !nonneg_int(&(s - lo)) {
            return Err(Error::NotBranchCompatible(format!("odd label {}: need {hi} ≥ {s} ≥ {lo} in integer steps", mu + 1)));
        }
    }
    Ok(())
}

/// All dominant gl(m|n) weights allowed by betweenness below `top`, in
/// descending lexicographic order.
pub fn branch_candidates(top: &Weight) -> Result<Vec<Weight>> {
    top.require_dominant()?;
    let sig = top.signature();
    if sig.n == 0 {
        return Err(Error::SignatureMismatch { expected: format!("{}|n+1 with n+1 ≥ 1", sig.m), got: sig.to_string() });
    }
    let mut choices: Vec<Vec<Scalar>> = top.even.iter().map(|t| vec![t.clone(), t - Scalar::one()]).collect();
    for mu in 0..sig.n - 1 {
        let (hi, lo) = (&top.odd[mu], &top.odd[mu + 1]);
        let steps = (hi - lo).to_i64().expect("dominant top has integral odd steps");
        choices.push((0..=steps).map(|k| hi - Scalar::from_int(k)).collect());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let labels: Vec<Scalar> = idx.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
        let w = Weight::from_flat(Signature { m: sig.m, n: sig.n - 1 }, labels);
        if w.is_dominant() {
            out.push(w);
        }
        // odometer, last position fastest
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// A table entry: a computed value, a structural zero forced by index-set
/// membership, or undefined (index out of range or a formula pole).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Value(Scalar),
    Vanishes,
    Undefined,
}

impl Entry {
    /// Value with `Vanishes` read as zero; `None` when undefined.
    pub fn numeric(&self) -> Option<Scalar> {
        match self {
            Entry::Value(v) => Some(v.clone()),
            Entry::Vanishes => Some(Scalar::zero()),
            Entry::Undefined => None,
        }
    }

    pub fn is_vanishes(&self) -> bool {
        matches!(self, Entry::Vanishes)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Value(v) => write!(f, "{v}"),
            Entry::Vanishes => f.write_str("vanishes"),
            Entry::Undefined => f.write_str("undefined"),
        }
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Entry::Value(v) => s.serialize_str(&v.to_string()),
            Entry::Vanishes => s.serialize_str("vanishes"),
            Entry::Undefined => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        match raw.as_deref() {
            None => Ok(Entry::Undefined),
            Some("vanishes") => Ok(Entry::Vanishes),
            Some(t) => t.parse().map(Entry::Value).map_err(serde::de::Error::custom),
        }
    }
}

/// Accumulates a product of factors, failing on a zero denominator.
struct Product {
    value: Scalar,
}

impl Product {
    fn new(sign_exp: usize) -> Self {
        Product { value: Scalar::sign(sign_exp) }
    }

    fn times(&mut self, x: Scalar) {
        self.value *= x;
    }

    fn over(&mut self, x: Scalar, pair: (usize, usize)) -> Result<()> {
        if x.is_zero() {
            return Err(Error::RootsCoincide { pair, value: "0 denominator".into() });
        }
        self.value = &self.value / &x;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CKind {
    C,
    CBar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GammaKind {
    Gamma,
    GammaBar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaKind {
    Delta,
    DeltaBar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProjKind {
    P,
    PBar,
}

/// Sign conventions for the formulas whose printed overall sign disagrees
/// with the operator measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Signs as measured on explicit modules.
    Measured,
    /// Signs exactly as originally printed.
    Printed,
}

fn check_range(pair: &BranchPair, r: usize, max: usize) -> Result<()> {
    if r == 0 || r > max {
        return Err(Error::Parse(format!("index {r} outside 1..={max} for gl({})", pair.sub_signature())));
    }
    Ok(())
}

/// Root accessor on a branching pair (`α`, `β` or their adjoint versions).
type RootFn = fn(&BranchPair, usize) -> &Scalar;

/// `c_r` (kind `C`, `r ∈ Ĩ`) or `c̄_r` (kind `CBar`, `r ∈ Ĩ′`).
pub fn eval_c(pair: &BranchPair, r: usize, kind: CKind) -> Result<Entry> {
    check_range(pair, r, pair.sets.plus)?;
    pair.require_distinct()?;
    let s = &pair.sets;
    let (tilde, base, top, sub): (&[usize], &[usize], RootFn, RootFn) =
        match kind {
            CKind::C => (&s.itilde, &s.i, BranchPair::beta, BranchPair::alpha),
            CKind::CBar => (&s.itilde_prime, &s.iprime, BranchPair::betabar, BranchPair::alphabar),
        };
    if !tilde.contains(&r) {
        return Ok(Entry::Vanishes);
    }
    let mut p = Product::new(0);
    for &k in tilde.iter().filter(|&&k| k != r) {
        p.over(top(pair, r) - top(pair, k), (r, k))?;
    }
    for &q in base {
        p.times(top(pair, r) - sub(pair, q) - pair.e(q));
    }
    Ok(Entry::Value(p.value))
}

/// `γ_r` (`r ∈ I`) or `γ̄_r` (`r ∈ I′`).
pub fn eval_gamma(pair: &BranchPair, r: usize, kind: GammaKind) -> Result<Entry> {
    check_range(pair, r, pair.sets.plus - 1)?;
    pair.require_distinct()?;
    let s = &pair.sets;
    let (base, tilde, top, sub): (&[usize], &[usize], RootFn, RootFn) =
        match kind {
            GammaKind::Gamma => (&s.i, &s.itilde, BranchPair::beta, BranchPair::alpha),
            GammaKind::GammaBar => (&s.iprime, &s.itilde_prime, BranchPair::betabar, BranchPair::alphabar),
        };
    if !base.contains(&r) {
        return Ok(Entry::Vanishes);
    }
    let sign_exp = match kind {
        GammaKind::Gamma => tilde.len(),
        GammaKind::GammaBar => base.len(),
    };
    let mut p = Product::new(sign_exp);
    let er = pair.e(r);
    for &q in base.iter().filter(|&&q| q != r) {
        p.over(sub(pair, r) - sub(pair, q) + &er - pair.e(q), (r, q))?;
    }
    for &k in tilde {
        p.times(top(pair, k) - sub(pair, r) - &er);
    }
    Ok(Entry::Value(p.value))
}

/// `δ_r` (`r ∈ I′`) or `δ̄_r` (`r ∈ I`), with measured signs. The measured
/// values equal `γ_r` at `Λ−ε_r` and `γ̄_r` at `Λ+ε_r` respectively, so the
/// overall signs are `(−1)^{|Ĩ|}` and `(−1)^{|I′ ∪ {r}|}`.
pub fn eval_delta(pair: &BranchPair, r: usize, kind: DeltaKind) -> Result<Entry> {
    eval_delta_with(pair, r, kind, Convention::Measured)
}

/// `δ_r`, `δ̄_r` with the printed overall signs `(−1)^{|I|}` and `(−1)^{|I′|}`.
pub fn eval_delta_printed(pair: &BranchPair, r: usize, kind: DeltaKind) -> Result<Entry> {
    eval_delta_with(pair, r, kind, Convention::Printed)
}

pub fn eval_delta_with(pair: &BranchPair, r: usize, kind: DeltaKind, conv: Convention) -> Result<Entry> {
    check_range(pair, r, pair.sets.plus - 1)?;
    pair.require_distinct()?;
    let s = &pair.sets;
    let er = pair.e(r);
    match kind {
        DeltaKind::Delta => {
            if !s.in_iprime(r) {
                return Ok(Entry::Vanishes);
            }
            let sign_exp = match conv {
                Convention::Measured => s.itilde.len(),
                Convention::Printed => s.i.len(),
            };
            let mut p = Product::new(sign_exp);
            for &q in s.i.iter().filter(|&&q| q != r) {
                p.over(pair.alpha(r) - pair.alpha(q) - pair.e(q), (r, q))?;
            }
            for &q in &s.itilde {
                p.times(pair.beta(q) - pair.alpha(r));
            }
            Ok(Entry::Value(p.value))
        }
        DeltaKind::DeltaBar => {
            if !s.in_i(r) {
                return Ok(Entry::Vanishes);
            }
            let sign_exp = match conv {
                Convention::Measured => s.iprime.len() + usize::from(!s.in_iprime(r)),
                Convention::Printed => s.iprime.len(),
            };
            let mut p = Product::new(sign_exp);
            for &q in s.iprime.iter().filter(|&&q| q != r) {
                p.over(pair.alpha(r) - pair.alpha(q) + &er, (r, q))?;
            }
            for &q in &s.itilde_prime {
                p.times(pair.beta(q) - pair.alpha(r) + pair.e(q) - &er + Scalar::one());
            }
            Ok(Entry::Value(p.value))
        }
    }
}

/// The six branching invariants that have index-free product forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Invariant {
    C,
    CBar,
    Gamma,
    GammaBar,
    Delta,
    DeltaBar,
}

impl Invariant {
    pub const ALL: [Invariant; 6] =
        [Invariant::C, Invariant::CBar, Invariant::Gamma, Invariant::GammaBar, Invariant::Delta, Invariant::DeltaBar];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::C => "c",
            Invariant::CBar => "cbar",
            Invariant::Gamma => "gamma",
            Invariant::GammaBar => "gammabar",
            Invariant::Delta => "delta",
            Invariant::DeltaBar => "deltabar",
        }
    }

    /// Largest valid index (`m+n+1` for `c`, `c̄`, else `m+n`).
    pub fn max_index(self, sub: Signature) -> usize {
        match self {
            Invariant::C | Invariant::CBar => sub.size() + 1,
            _ => sub.size(),
        }
    }
}

/// Set-indexed evaluation dispatch (measured signs).
pub fn eval_set_indexed(pair: &BranchPair, which: Invariant, r: usize) -> Result<Entry> {
    match which {
        Invariant::C => eval_c(pair, r, CKind::C),
        Invariant::CBar => eval_c(pair, r, CKind::CBar),
        Invariant::Gamma => eval_gamma(pair, r, GammaKind::Gamma),
        Invariant::GammaBar => eval_gamma(pair, r, GammaKind::GammaBar),
        Invariant::Delta => eval_delta(pair, r, DeltaKind::Delta),
        Invariant::DeltaBar => eval_delta(pair, r, DeltaKind::DeltaBar),
    }
}

/// Index-free product forms, which need no index-set bookkeeping. With
/// [`Convention::Measured`] the overall signs of even `γ_i`, `γ̄_i`, `δ̄_i`
/// and odd `δ_μ` are flipped relative to the printed forms, and the free
/// subscript in the `δ̄_i` product is read as `i`.
pub fn eval_index_free(pair: &BranchPair, which: Invariant, r: usize, conv: Convention) -> Result<Scalar> {
    check_range(pair, r, which.max_index(pair.sub_signature()))?;
    pair.require_distinct()?;
    let sub = pair.sub_signature();
    let m = sub.m;
    let evens: Vec<usize> = (1..=m).collect();
    let odds: Vec<usize> = (m + 1..=sub.size()).collect();
    let odds_top: Vec<usize> = (m + 1..=sub.size() + 1).collect();
    let a = |k: usize| pair.alpha(k).clone();
    let b = |k: usize| pair.beta(k).clone();
    let int = Scalar::from_int;
    let even = r <= m;
    let mut p = Product::new(0);
    match (which, even) {
        (Invariant::C, true) => {
            p.times(a(r) - b(r) - int(1));
            for &k in evens.iter().filter(|&&k| k != r) {
                p.times(b(r) - b(k) - int(1));
                p.over(b(r) - a(k), (r, k))?;
            }
            for &v in &odds_top {
                p.over(b(r) - b(v), (r, v))?;
            }
            for &v in &odds {
                p.times(b(r) - a(v) + int(1));
            }
        }
        (Invariant::C, false) => {
            for &k in &evens {
                p.times(b(r) - b(k) - int(1));
                p.over(b(r) - a(k), (r, k))?;
            }
            for &v in odds_top.iter().filter(|&&v| v != r) {
                p.over(b(r) - b(v), (r, v))?;
            }
            for &v in &odds {
                p.times(b(r) - a(v) + int(1));
            }
        }
        (Invariant::CBar, true) => {
            p.times(b(r) - a(r));
            for &k in evens.iter().filter(|&&k| k != r) {
                p.times(b(k) - b(r) - int(1));
                p.over(a(k) - b(r) - int(1), (r, k))?;
            }
            for &v in &odds_top {
                p.over(b(v) - b(r) - int(2), (r, v))?;
            }
            for &v in &odds {
                p.times(a(v) - b(r) - int(2));
            }
        }
        (Invariant::CBar, false) => {
            for &k in &evens {
                p.times(b(k) - b(r) + int(1));
                p.over(a(k) - b(r) + int(1), (r, k))?;
            }
            for &v in odds_top.iter().filter(|&&v| v != r) {
                p.over(b(v) - b(r), (r, v))?;
            }
            for &v in &odds {
                p.times(a(v) - b(r));
            }
        }
        (Invariant::Gamma, true) => {
            if conv == Convention::Measured {
                p.times(int(-1));
            }
            p.times(b(r) - a(r) + int(1));
            for &k in evens.iter().filter(|&&k| k != r) {
                p.times(a(k) - a(r) - int(1));
                p.over(b(k) - a(r), (r, k))?;
            }
            for &v in &odds_top {
                p.times(b(v) - a(r) - int(1));
            }
            for &v in &odds {
                p.over(a(v) - a(r) - int(2), (r, v))?;
            }
        }
        (Invariant::Gamma, false) => {
            for &k in &evens {
                p.times(a(k) - a(r) + int(1));
                p.over(b(k) - a(r) + int(2), (r, k))?;
            }
            for &v in &odds_top {
                p.times(b(v) - a(r) + int(1));
            }
            for &v in odds.iter().filter(|&&v| v != r) {
                p.over(a(v) - a(r), (r, v))?;
            }
        }
        (Invariant::GammaBar, true) => {
            if conv == Convention::Measured {
                p.times(int(-1));
            }
            p.times(a(r) - b(r));
            for &k in evens.iter().filter(|&&k| k != r) {
                p.times(a(k) - a(r) + int(1));
                p.over(b(k) - a(r) + int(1), (r, k))?;
            }
            for &v in &odds_top {
                p.times(b(v) - a(r));
            }
            for &v in &odds {
                p.over(a(v) - a(r), (r, v))?;
            }
        }
        (Invariant::GammaBar, false) => {
            p.times(int(-1));
            for &k in &evens {
                p.times(a(k) - a(r) + int(1));
                p.over(b(k) - a(r) + int(1), (r, k))?;
            }
            for &v in &odds_top {
                p.times(b(v) - a(r));
            }
            for &v in odds.iter().filter(|&&v| v != r) {
                p.over(a(v) - a(r), (r, v))?;
            }
        }
        (Invariant::Delta, true) => {
            p.times(b(r) - a(r));
            for &k in evens.iter().filter(|&&k| k != r) {
                p.times(a(k) - a(r));
                p.over(b(k) - a(r) + int(1), (r, k))?;
            }
            for &v in &odds {
                p.over(a(v) - a(r) - int(1), (r, v))?;
            }
            for &v in &odds_top {
                p.times(b(v) - a(r));
            }
        }
        (Invariant::Delta, false) => {
            if conv == Convention::Printed {
                p.times(int(-1));
            }
            for &k in &evens {
                p.times(a(k) - a(r));
                p.over(b(k) - a(r) + int(1), (r, k))?;
            }
            for &v in odds.iter().filter(|&&v| v != r) {
                p.over(a(v) - a(r) - int(1), (r, v))?;
            }
            for &v in &odds_top {
                p.times(b(v) - a(r));
            }
        }
        (Invariant::DeltaBar, true) => {
            if conv == Convention::Measured {
                p.times(int(-1));
            }
            p.times(b(r) - a(r) + int(1));
            for &k in evens.iter().filter(|&&k| k != r) {
                p.times(a(k) - a(r));
                p.over(b(k) - a(r), (r, k))?;
            }
            for &v in &odds_top {
                p.times(b(v) - a(r) - int(1));
            }
            for &v in &odds {
                p.over(a(v) - a(r) - int(1), (r, v))?;
            }
        }
        (Invariant::DeltaBar, false) => {
            p.times(int(-1));
            for &k in &evens {
                p.times(a(k) - a(r) + int(2));
                p.over(b(k) - a(r) + int(2), (r, k))?;
            }
            for &v in &odds_top {
                p.times(b(v) - a(r) + int(1));
            }
            for &v in odds.iter().filter(|&&v| v != r) {
                p.over(a(v) - a(r) + int(1), (r, v))?;
            }
        }
    }
    Ok(p.value)
}

fn supertrace_with(l: &Weight, r: usize, kind: ProjKind, conv: Convention) -> Result<Scalar> {
    let roots = characteristic_roots(l);
    roots.require_distinct()?;
    let sig = l.signature();
    if r == 0 || r > sig.size() {
        return Err(Error::Parse(format!("index {r} outside 1..={}", sig.size())));
    }
    let er = sig.sign(r);
    let mut p = Product::new(0);
    if conv == Convention::Measured {
        p.times(er.clone());
    }
    let ar = roots.alpha(r);
    for q in (1..=sig.size()).filter(|&q| q != r) {
        let d = ar - roots.alpha(q);
        match kind {
            ProjKind::P => {
                p.times(&d - sig.sign(q));
                p.over(d, (r, q))?;
            }
            ProjKind::PBar => {
                p.times(&d + &er);
                p.over(&d + &er - sig.sign(q), (r, q))?;
            }
        }
    }
    Ok(p.value)
}

/// Supertrace of `P[r]` or `P̄[r]` on the irreducible module of weight `l`,
/// with the supertrace taken as `Σ_p (−1)^{(p)}` over the auxiliary index.
/// This carries a factor `(−1)^{(r)}` relative to the printed product.
pub fn eval_supertrace(l: &Weight, r: usize, kind: ProjKind) -> Result<Scalar> {
    supertrace_with(l, r, kind, Convention::Measured)
}

/// The printed supertrace product, without the `(−1)^{(r)}` factor.
pub fn eval_supertrace_printed(l: &Weight, r: usize, kind: ProjKind) -> Result<Scalar> {
    supertrace_with(l, r, kind, Convention::Printed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CasimirKind {
    I,
    IBar,
}

/// `I_k = Σ_r α_r^k str P[r]` or `Ī_k = Σ_r ᾱ_r^k str P̄[r]`.
pub fn casimir_from_roots(l: &Weight, k: u32, kind: CasimirKind) -> Result<Scalar> {
    let roots = characteristic_roots(l);
    roots.require_distinct()?;
    (1..=l.signature().size())
        .map(|r| match kind {
            CasimirKind::I => Ok(roots.alpha(r).pow(k) * eval_supertrace(l, r, ProjKind::P)?),
            CasimirKind::IBar => Ok(roots.alphabar(r).pow(k) * eval_supertrace(l, r, ProjKind::PBar)?),
        })
        .sum()
}

/// Every invariant for one branching pair, indexed by `r − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTable {
    pub top: Weight,
    pub sub: Weight,
    pub c: Vec<Entry>,
    pub cbar: Vec<Entry>,
    pub gamma: Vec<Entry>,
    pub gammabar: Vec<Entry>,
    pub delta: Vec<Entry>,
    pub deltabar: Vec<Entry>,
    #[serde(rename = "strP")]
    pub str_p: Vec<Entry>,
    #[serde(rename = "strPbar")]
    pub str_pbar: Vec<Entry>,
}

/// Formula poles become `Undefined`; other errors propagate.
fn pole_to_undefined(r: Result<Entry>) -> Result<Entry> {
    match r {
        Err(Error::RootsCoincide { value, .. }) if value == "0 denominator" => Ok(Entry::Undefined),
        other => other,
    }
}

impl InvariantTable {
    pub fn get(&self, which: Invariant) -> &[Entry] {
        match which {
            Invariant::C => &self.c,
            Invariant::CBar => &self.cbar,
            Invariant::Gamma => &self.gamma,
            Invariant::GammaBar => &self.gammabar,
            Invariant::Delta => &self.delta,
            Invariant::DeltaBar => &self.deltabar,
        }
    }

    /// Rows `r, c, cbar, gamma, gammabar, delta, deltabar, strP, strPbar`.
    pub fn rows(&self) -> Vec<[String; 9]> {
        let cell = |v: &[Entry], r: usize| v.get(r).map_or_else(|| Entry::Undefined.to_string(), ToString::to_string);
        (0..self.c.len())
            .map(|r| {
                [
                    (r + 1).to_string(),
                    cell(&self.c, r),
                    cell(&self.cbar, r),
                    cell(&self.gamma, r),
                    cell(&self.gammabar, r),
                    cell(&self.delta, r),
                    cell(&self.deltabar, r),
                    cell(&self.str_p, r),
                    cell(&self.str_pbar, r),
                ]
            })
            .collect()
    }
}

/// Builds the full table and checks the internal relations: `Σ_{Ĩ} c_r = 1`,
/// `Σ_{r∈Ĩ} c_r/(β_r − α_s − (−1)^{(s)}) = 0` for `s ∈ I`, `γ̄_r = δ_r str P[r]`
/// and `γ_r = δ̄_r str P̄[r]`.
pub fn invariant_table(pair: &BranchPair) -> Result<InvariantTable> {
    pair.require_distinct()?;
    let size = pair.sets.plus;
    let row = |which: Invariant| -> Result<Vec<Entry>> {
        (1..=size)
            .map(|r| {
                if r > which.max_index(pair.sub_signature()) {
                    Ok(Entry::Undefined)
                } else {
                    pole_to_undefined(eval_set_indexed(pair, which, r))
                }
            })
            .collect()
    };
    let st = |kind: ProjKind| -> Result<Vec<Entry>> {
        (1..=size)
            .map(|r| if r == size { Ok(Entry::Undefined) } else { eval_supertrace(&pair.sub, r, kind).map(Entry::Value) })
            .collect()
    };
    let table = InvariantTable {
        top: pair.top.clone(),
        sub: pair.sub.clone(),
        c: row(Invariant::C)?,
        cbar: row(Invariant::CBar)?,
        gamma: row(Invariant::Gamma)?,
        gammabar: row(Invariant::GammaBar)?,
        delta: row(Invariant::Delta)?,
        deltabar: row(Invariant::DeltaBar)?,
        str_p: st(ProjKind::P)?,
        str_pbar: st(ProjKind::PBar)?,
    };
    check_table(pair, &table)?;
    Ok(table)
}

fn check_table(pair: &BranchPair, t: &InvariantTable) -> Result<()> {
    let s = &pair.sets;
    let fail = |msg: String| Err(Error::ConsistencyFailure(msg));
    let total: Option<Scalar> = s.itilde.iter().map(|&r| t.c[r - 1].numeric()).sum();
    if total != Some(Scalar::one()) {
        return fail(format!("Σ c_r over Ĩ = {total:?}, expected 1"));
    }
    for &q in &s.i {
        // c_r/(β_r − α_q − e_q) with the vanishing factor divided out analytically
        let mut acc = Scalar::zero();
        for &r in &s.itilde {
            let mut p = Product::new(0);
            for &k in s.itilde.iter().filter(|&&k| k != r) {
                p.over(pair.beta(r) - pair.beta(k), (r, k))?;
            }
            for &q2 in s.i.iter().filter(|&&q2| q2 != q) {
                p.times(pair.beta(r) - pair.alpha(q2) - pair.e(q2));
            }
            acc += p.value;
        }
        if !acc.is_zero() {
            return fail(format!("linear relation for s = {q} sums to {acc}"));
        }
    }
    for r in 1..s.plus {
        let checks = [
            (&t.gammabar[r - 1], &t.delta[r - 1], &t.str_p[r - 1], "γ̄ = δ·strP"),
            (&t.gamma[r - 1], &t.deltabar[r - 1], &t.str_pbar[r - 1], "γ = δ̄·strP̄"),
        ];
        for (lhs, d, st, what) in checks {
            if let (Some(l), Some(d), Some(st)) = (lhs.numeric(), d.numeric(), st.numeric()) {
                if l != &d * &st {
                    return fail(format!("{what} fails at r = {r}: {l} vs {d}·{st}"));
                }
            }
        }
    }
    Ok(())
}
