//! Operator-valued characteristic matrices on explicit modules, their
//! polynomial identities, projectors, shift components, and measurement of
//! the branching invariants as literal operators.

use serde::{Deserialize, Serialize};

use crate::closed_forms::{Invariant, ProjKind};
use crate::error::{Error, Result};
use crate::linalg::{inverse, scalar_on_subspace};
use crate::matrix::Matrix;
use crate::module::{restrict_decompose, Component, ComponentDecomposition, GModule};
use crate::parallel;
use crate::roots::{characteristic_roots, RootSet};
use crate::scalar::Scalar;
use crate::superalgebra::{Signature, Weight};

/// A `side × side` array of `dim × dim` blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpMatrix {
    side: usize,
    dim: usize,
    blocks: Vec<Matrix>,
}

/// A block column: `side` blocks of shape `dim × k`.
pub type OpColumn = Vec<Matrix>;

impl OpMatrix {
    pub fn from_fn(side: usize, dim: usize, f: impl Fn(usize, usize) -> Matrix + Sync + Send) -> Self {
        let blocks = parallel::map_range(side * side, |i| f(i / side + 1, i % side + 1));
        OpMatrix { side, dim, blocks }
    }

    pub fn identity(side: usize, dim: usize) -> Self {
        OpMatrix::from_fn(side, dim, |p, q| if p == q { Matrix::identity(dim) } else { Matrix::zeros(dim, dim) })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Block `(p, q)`, 1-based.
    pub fn block(&self, p: usize, q: usize) -> &Matrix {
        &self.blocks[(p - 1) * self.side + (q - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// `(XY)^p_q = Σ_r X^p_r Y^r_q`.
    pub fn mul(&self, other: &OpMatrix) -> OpMatrix {
        assert_eq!((self.side, self.dim), (other.side, other.dim), "operator matrix shapes");
        OpMatrix::from_fn(self.side, self.dim, |p, q| {
            let mut acc = Matrix::zeros(self.dim, self.dim);
            for r in 1..=self.side {
                let x = self.block(p, r);
                if !x.is_zero() {
                    acc.add_assign(&x.mul_sequential(other.block(r, q)));
                }
            }
            acc
        })
    }

    /// `X − x·1`.
    pub fn minus_scalar(&self, x: &Scalar) -> OpMatrix {
        OpMatrix::from_fn(self.side, self.dim, |p, q| {
            if p == q {
                self.block(p, q).sub_identity(x)
            } else {
                self.block(p, q).clone()
            }
        })
    }

    pub fn scale(&self, c: &Scalar) -> OpMatrix {
        OpMatrix { side: self.side, dim: self.dim, blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
    }

    /// `(Xc)^p = Σ_q X^p_q c^q`.
    pub fn apply(&self, col: &[Matrix]) -> OpColumn {
        assert_eq!(col.len(), self.side);
        parallel::map_range(self.side, |i| {
            let p = i + 1;
            let k = col[0].cols();
            let mut acc = Matrix::zeros(self.dim, k);
            for (q, c) in col.iter().enumerate() {
                let x = self.block(p, q + 1);
                if !x.is_zero() {
                    acc.add_assign(&x.mul_sequential(c));
                }
            }
            acc
        })
    }

    /// Entrywise sign twist `(−1)^{(p)+(q)}` in the grading of `sig`.
    pub fn twisted(&self, sig: Signature) -> OpMatrix {
        OpMatrix::from_fn(self.side, self.dim, |p, q| self.block(p, q).scale(&Scalar::sign(sig.gen_parity(p, q))))
    }

    /// `Σ_p (−1)^{(p)} X^p_p`.
    pub fn supertrace(&self, sig: Signature) -> Matrix {
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for p in 1..=self.side {
            acc.add_scaled_assign(self.block(p, p), &sig.sign(p));
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CharKind {
    /// `(−1)^{(p)} E_pq`
    Vector,
    /// `−(−1)^{(p)(q)} E_qp`
    Adjoint,
    /// vector matrix twisted by `(−1)^{(p)+(q)}`
    DoubleAdjoint,
    /// adjoint matrix twisted by `(−1)^{(p)+(q)}`
    TripleAdjoint,
}

impl CharKind {
    pub const ALL: [CharKind; 4] = [CharKind::Vector, CharKind::Adjoint, CharKind::DoubleAdjoint, CharKind::TripleAdjoint];

    /// The roots of this kind's identity: vector roots for the vector and
    /// double adjoint matrices, adjoint roots otherwise.
    pub fn roots(self, r: &RootSet) -> Vec<Scalar> {
        match self {
            CharKind::Vector | CharKind::DoubleAdjoint => r.vector_roots.clone(),
            CharKind::Adjoint | CharKind::TripleAdjoint => r.adjoint_roots.clone(),
        }
    }
}

/// Characteristic matrix over the full index range of `m`.
pub fn char_matrix(m: &GModule, kind: CharKind) -> OpMatrix {
    char_matrix_sized(m, kind, m.signature().size())
}

/// Characteristic matrix over the leading `side` indices of `m`.
pub fn char_matrix_sized(m: &GModule, kind: CharKind, side: usize) -> OpMatrix {
    let sig = m.signature();
    assert!(side <= sig.size());
    OpMatrix::from_fn(side, m.dim(), |p, q| {
        let (pp, pq) = (sig.parity(p), sig.parity(q));
        let twist = Scalar::sign(pp + pq);
        match kind {
            CharKind::Vector => m.gen(p, q).scale(&Scalar::sign(pp)),
            CharKind::Adjoint => m.gen(q, p).scale(&-Scalar::sign(pp * pq)),
            CharKind::DoubleAdjoint => m.gen(p, q).scale(&(Scalar::sign(pp) * twist)),
            CharKind::TripleAdjoint => m.gen(q, p).scale(&(-Scalar::sign(pp * pq) * twist)),
        }
    })
}

/// `Π_r (X − x_r)`.
pub fn char_polynomial(x: &OpMatrix, roots: &[Scalar]) -> OpMatrix {
    let mut acc = OpMatrix::identity(x.side(), x.dim());
    for r in roots {
        acc = x.minus_scalar(r).mul(&acc);
    }
    acc
}

/// Highest weight of an irreducible module: its greatest basis weight.
fn highest_weight(m: &GModule) -> Weight {
    m.basis_weight().iter().max().expect("nonzero module").clone()
}

/// The residual `Π_r (X − x_r)` for the characteristic matrix of `kind` on an
/// irreducible module, with roots from its highest weight. Zero when the
/// identity holds.
pub fn verify_char_identity(m: &GModule, kind: CharKind) -> OpMatrix {
    let roots = characteristic_roots(&highest_weight(m));
    char_polynomial(&char_matrix(m, kind), &kind.roots(&roots))
}

fn lagrange_denominator(roots: &[Scalar], r: usize) -> Result<Scalar> {
    let mut den = Scalar::one();
    for (k, x) in roots.iter().enumerate() {
        if k + 1 != r {
            let d = &roots[r - 1] - x;
            if d.is_zero() {
                return Err(Error::RootsCoincide { pair: (r.min(k + 1), r.max(k + 1)), value: x.to_string() });
            }
            den *= d;
        }
    }
    Ok(den)
}

/// `Π_{k≠r} (X − x_k)/(x_r − x_k)`.
pub fn projector(x: &OpMatrix, roots: &[Scalar], r: usize) -> Result<OpMatrix> {
    let den = lagrange_denominator(roots, r)?;
    let mut acc = OpMatrix::identity(x.side(), x.dim());
    for (k, root) in roots.iter().enumerate() {
        if k + 1 != r {
            acc = x.minus_scalar(root).mul(&acc);
        }
    }
    Ok(acc.scale(&den.checked_recip().expect("nonzero")))
}

/// The projector applied to a block column, without forming it.
pub fn projector_column(x: &OpMatrix, roots: &[Scalar], r: usize, col: &[Matrix]) -> Result<OpColumn> {
    let den = lagrange_denominator(roots, r)?.checked_recip().expect("nonzero");
    let mut c = col.to_vec();
    for (k, root) in roots.iter().enumerate() {
        if k + 1 != r {
            let mut next = x.apply(&c);
            for (n, old) in next.iter_mut().zip(&c) {
                n.add_scaled_assign(old, &-root);
            }
            c = next;
        }
    }
    Ok(c.into_iter().map(|b| b.scale(&den)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShiftKind {
    /// `ψ^p = (−1)^{(p)} E_{p,+}`, raising the label by `ε_r`.
    Psi,
    /// `φ_p = (−1)^{(p)} E_{+,p}`, lowering the label by `ε_r`.
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Shift component `ψ[r]^p` or `φ[r]_p` restricted to one component: block
/// `p − 1` is a `dim × d` matrix mapping component coordinates into the
/// parent module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftFamily {
    pub kind: ShiftKind,
    pub r: usize,
    pub blocks: Vec<Matrix>,
}

impl ShiftFamily {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }
}

/// Per-component data: basis, restricted action, roots, projectors.
#[derive(Clone, Debug)]
pub struct ComponentOps {
    pub weight: Weight,
    pub roots: RootSet,
    /// `dim × d` basis matrix inside the parent.
    pub basis: Matrix,
    pub module: GModule,
    pub p: Vec<OpMatrix>,
    pub pbar: Vec<OpMatrix>,
    component: Component,
}

impl ComponentOps {
    fn new(parent: &GModule, sub: Signature, c: &Component) -> Result<Self> {
        let roots = characteristic_roots(&c.weight);
        roots.require_distinct()?;
        let module = parent.restrict(&c.space, sub)?;
        let a = char_matrix(&module, CharKind::Vector);
        let abar = char_matrix(&module, CharKind::Adjoint);
        let p = (1..=sub.size()).map(|r| projector(&a, &roots.vector_roots, r)).collect::<Result<Vec<_>>>()?;
        let pbar = (1..=sub.size()).map(|r| projector(&abar, &roots.adjoint_roots, r)).collect::<Result<Vec<_>>>()?;
        Ok(ComponentOps {
            weight: c.weight.clone(),
            roots,
            basis: c.space.basis_matrix(),
            module,
            p,
            pbar,
            component: c.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of the columns of `y` in this component's basis.
    pub fn coords(&self, y: &Matrix) -> Result<Matrix> {
        self.component.space.coordinates_of_columns(y)
    }

    pub fn projector(&self, kind: ProjKind, r: usize) -> &OpMatrix {
        match kind {
            ProjKind::P => &self.p[r - 1],
            ProjKind::PBar => &self.pbar[r - 1],
        }
    }
}

/// What `measure` evaluates on a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    Invariant(Invariant),
    StrP,
    StrPbar,
    I2,
}

/// A gl(m|n+1) module together with its gl(m|n) decomposition and the
/// operator data needed to measure invariants.
#[derive(Clone, Debug)]
pub struct BranchingModule {
    pub top: Weight,
    pub top_roots: RootSet,
    pub module: GModule,
    pub decomposition: ComponentDecomposition,
    pub components: Vec<ComponentOps>,
    pub b: OpMatrix,
    pub bbar: OpMatrix,
}

impl BranchingModule {
    pub fn new(module: GModule) -> Result<Self> {
        let top = highest_weight(&module);
        let top_roots = characteristic_roots(&top);
        top_roots.require_distinct()?;
        // A component with coinciding roots is atypical for gl(m|n) and the
        // restriction need not split, so reject before decomposing.
        for w in crate::closed_forms::branch_candidates(&top)? {
            let r = characteristic_roots(&w);
            r.require_distinct()?;
            r.require_adjoint_distinct()?;
        }
        let decomposition = restrict_decompose(&module)?;
        let sub = decomposition.sub;
        let components = parallel::map_slice(&decomposition.parts, |c| ComponentOps::new(&module, sub, c))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let b = char_matrix(&module, CharKind::Vector);
        let bbar = char_matrix(&module, CharKind::Adjoint);
        Ok(BranchingModule { top, top_roots, module, decomposition, components, b, bbar })
    }

    pub fn sub(&self) -> Signature {
        self.decomposition.sub
    }

    fn plus(&self) -> usize {
        self.sub().size() + 1
    }

    pub fn component_index(&self, w: &Weight) -> Option<usize> {
        self.components.iter().position(|c| &c.weight == w)
    }

    /// `ψ^q` or `φ_q` as a `dim × dim` matrix.
    fn vector_operator(&self, kind: ShiftKind, q: usize) -> Matrix {
        let sig = self.module.signature();
        let g = match kind {
            ShiftKind::Psi => self.module.gen(q, self.plus()),
            ShiftKind::Phi => self.module.gen(self.plus(), q),
        };
        g.scale(&sig.sign(q))
    }

    /// Shift components on component `ci`. Right side: `ψ[r]^p = ψ^q P̄[r]_q^p`
    /// and `φ[r]_p = (−1)^{(p)+(q)} φ_q P[r]^q_p` with projectors of the
    /// component. Left side: the projector polynomial in the parent's
    /// characteristic matrix applied to `ψ^q` (`φ_q`), with roots
    /// `α_k + (−1)^{(k)}` (`ᾱ_k + (−1)^{(k)}`) of the component.
    pub fn shift(&self, ci: usize, kind: ShiftKind, r: usize, side: Side) -> Result<ShiftFamily> {
        let c = &self.components[ci];
        let sub = self.sub();
        let s = sub.size();
        let raw: Vec<Matrix> = (1..=s).map(|q| self.vector_operator(kind, q).mul(&c.basis)).collect();
        let blocks = match side {
            Side::Right => {
                let proj = match kind {
                    ShiftKind::Psi => &c.pbar[r - 1],
                    ShiftKind::Phi => &c.p[r - 1],
                };
                (1..=s)
                    .map(|p| {
                        let mut acc = Matrix::zeros(self.module.dim(), c.dim());
                        for q in 1..=s {
                            let coeff = proj.block(q, p);
                            if coeff.is_zero() {
                                continue;
                            }
                            let term = raw[q - 1].mul(coeff);
                            match kind {
                                ShiftKind::Psi => acc.add_assign(&term),
                                ShiftKind::Phi => acc.add_scaled_assign(&term, &Scalar::sign(sub.gen_parity(p, q))),
                            }
                        }
                        acc
                    })
                    .collect()
            }
            Side::Left => {
                let (ck, base) = match kind {
                    ShiftKind::Psi => (CharKind::Vector, &c.roots.vector_roots),
                    ShiftKind::Phi => (CharKind::Adjoint, &c.roots.adjoint_roots),
                };
                let roots: Vec<Scalar> = base.iter().enumerate().map(|(k, x)| x + sub.sign(k + 1)).collect();
                let x = char_matrix_sized(&self.module, ck, s);
                projector_column(&x, &roots, r, &raw)?
            }
        };
        Ok(ShiftFamily { kind, r, blocks })
    }

    /// Component an operator's image lies in, after checking the image is in
    /// the component of weight `target` (or zero).
    fn landing(&self, family: &ShiftFamily, target: &Weight) -> Result<Option<(usize, Vec<Matrix>)>> {
        if family.is_zero() {
            return Ok(None);
        }
        let ti = self.component_index(target).ok_or_else(|| {
            Error::ConsistencyFailure(format!("shift image is nonzero but {target} is not a component"))
        })?;
        let coords = family.blocks.iter().map(|b| self.components[ti].coords(b)).collect::<Result<Vec<_>>>()?;
        Ok(Some((ti, coords)))
    }

    /// Checks that `ψ[r]` (`φ[r]`) on component `ci` lands in the component of
    /// weight `Λ + ε_r` (`Λ − ε_r`) or vanishes.
    pub fn check_landing(&self, ci: usize, kind: ShiftKind, r: usize) -> Result<()> {
        let fam = self.shift(ci, kind, r, Side::Right)?;
        let target = self.components[ci].weight.shifted(r, kind == ShiftKind::Psi);
        self.landing(&fam, &target).map(|_| ())
    }

    /// Restriction of `y` (`dim × d`) to component `ci`, as a scalar.
    fn scalar_in(&self, ci: usize, y: &Matrix) -> Result<Scalar> {
        let c = self.components[ci].coords(y)?;
        c.as_scalar().ok_or_else(|| Error::NotScalar(format!("{} nonzero entries on {}", c.nnz(), self.components[ci].weight)))
    }

    fn corner(&self, ci: usize, bar: bool, r: usize) -> Result<Scalar> {
        let c = &self.components[ci];
        let plus = self.plus();
        let mut col: OpColumn = (1..=plus).map(|_| Matrix::zeros(self.module.dim(), c.dim())).collect();
        col[plus - 1] = c.basis.clone();
        let (x, roots) = if bar {
            (&self.bbar, &self.top_roots.adjoint_roots)
        } else {
            (&self.b, &self.top_roots.vector_roots)
        };
        let out = projector_column(x, roots, r, &col)?;
        self.scalar_in(ci, &out[plus - 1])
    }

    /// `c·P[r]^p_q = (−1)^{(q)} ψ[r]^p φ[r]_q` (or `φ[r]_p ψ[r]^q = c·P̄[r]_p^q`),
    /// composing with the shift on the intermediate component.
    fn proportionality(&self, ci: usize, r: usize, delta_bar: bool) -> Result<Scalar> {
        let c = &self.components[ci];
        let s = self.sub().size();
        let sub = self.sub();
        let (first, second, up) =
            if delta_bar { (ShiftKind::Psi, ShiftKind::Phi, true) } else { (ShiftKind::Phi, ShiftKind::Psi, false) };
        let inner = self.shift(ci, first, r, Side::Right)?;
        let proj = if delta_bar { &c.pbar[r - 1] } else { &c.p[r - 1] };
        let products: Vec<Vec<Matrix>> = match self.landing(&inner, &c.weight.shifted(r, up))? {
            None => vec![vec![Matrix::zeros(c.dim(), c.dim()); s]; s],
            Some((ti, coords)) => {
                let outer = self.shift(ti, second, r, Side::Right)?;
                (1..=s)
                    .map(|p| {
                        (1..=s)
                            .map(|q| {
                                let z = outer.blocks[p - 1].mul(&coords[q - 1]);
                                let z = if delta_bar { z } else { z.scale(&sub.sign(q)) };
                                c.coords(&z)
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let mut factor: Option<Scalar> = None;
        for p in 1..=s {
            for q in 1..=s {
                let (lhs, pq) = (&products[p - 1][q - 1], proj.block(p, q));
                for i in 0..c.dim() {
                    for j in 0..c.dim() {
                        if pq[(i, j)].is_zero() {
                            continue;
                        }
                        let ratio = &lhs[(i, j)] / &pq[(i, j)];
                        match &factor {
                            None => factor = Some(ratio),
                            Some(f) if *f != ratio => {
                                return Err(Error::NotProportional(format!("ratios {f} and {ratio} at r = {r}")));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        let Some(f) = factor else {
            let detail = if products.iter().flatten().all(Matrix::is_zero) {
                format!("factor undetermined: projector {r} and the product both vanish on {}", c.weight)
            } else {
                format!("projector {r} vanishes on {} but the product does not", c.weight)
            };
            return Err(Error::NotProportional(detail));
        };
        for p in 1..=s {
            for q in 1..=s {
                if products[p - 1][q - 1] != proj.block(p, q).scale(&f) {
                    return Err(Error::NotProportional(format!("block ({p},{q}) at r = {r}")));
                }
            }
        }
        Ok(f)
    }

    /// Whether the proportionality defining `which` at `r` is empty on
    /// component `ci` because the projector itself vanishes there. The
    /// factor then has no operator meaning.
    pub fn undetermined(&self, ci: usize, which: Invariant, r: usize) -> bool {
        let c = &self.components[ci];
        match which {
            Invariant::Delta => c.p[r - 1].is_zero(),
            Invariant::DeltaBar => c.pbar[r - 1].is_zero(),
            _ => false,
        }
    }

    /// Measures an invariant as a literal operator on component `ci`.
    pub fn measure(&self, ci: usize, which: Measure, r: usize) -> Result<Scalar> {
        let c = &self.components[ci];
        let sub = self.sub();
        let plus = self.plus();
        match which {
            Measure::Invariant(Invariant::C) => self.corner(ci, false, r),
            Measure::Invariant(Invariant::CBar) => self.corner(ci, true, r),
            Measure::Invariant(Invariant::Gamma) => {
                let psi = self.shift(ci, ShiftKind::Psi, r, Side::Right)?;
                let mut acc = Matrix::zeros(self.module.dim(), c.dim());
                for q in 1..=sub.size() {
                    acc.add_assign(&self.module.gen(plus, q).mul(&psi.blocks[q - 1]));
                }
                self.scalar_in(ci, &acc)
            }
            Measure::Invariant(Invariant::GammaBar) => {
                let phi = self.shift(ci, ShiftKind::Phi, r, Side::Right)?;
                let mut acc = Matrix::zeros(self.module.dim(), c.dim());
                for p in 1..=sub.size() {
                    acc.add_scaled_assign(&self.module.gen(p, plus).mul(&phi.blocks[p - 1]), &sub.sign(p));
                }
                self.scalar_in(ci, &acc)
            }
            Measure::Invariant(Invariant::Delta) => self.proportionality(ci, r, false),
            Measure::Invariant(Invariant::DeltaBar) => self.proportionality(ci, r, true),
            Measure::StrP | Measure::StrPbar => {
                let proj = if which == Measure::StrP { &c.p[r - 1] } else { &c.pbar[r - 1] };
                let st = proj.supertrace(sub);
                st.as_scalar().ok_or_else(|| Error::NotScalar(format!("supertrace of projector {r}")))
            }
            Measure::I2 => {
                let m = c.module.casimir2_matrix();
                m.as_scalar().ok_or_else(|| Error::NotScalar("I₂ on component".into()))
            }
        }
    }

    /// `φ[r]_p` on the whole module: the sum over components of the shift
    /// composed with the projection onto that component.
    pub fn global_phi(&self, r: usize) -> Result<Vec<Matrix>> {
        let change = self.decomposition.change_of_basis();
        let inv = inverse(&change).ok_or_else(|| Error::IncompleteDecomposition("components are dependent".into()))?;
        let s = self.sub().size();
        let dim = self.module.dim();
        let mut out = vec![Matrix::zeros(dim, dim); s];
        let mut offset = 0;
        for ci in 0..self.components.len() {
            let d = self.components[ci].dim();
            let rows: Vec<usize> = (offset..offset + d).collect();
            let proj = inv.select_rows(&rows);
            let fam = self.shift(ci, ShiftKind::Phi, r, Side::Right)?;
            for (o, b) in out.iter_mut().zip(&fam.blocks) {
                o.add_assign(&b.mul(&proj));
            }
            offset += d;
        }
        Ok(out)
    }

    /// Products of global `φ` shift components in which an even shift index
    /// appears twice: `φ[i]_p φ[i]_q` and `φ[i]_p φ[j]_t φ[i]_q`. Returns the
    /// offending index tuples (empty when every product vanishes).
    pub fn repeated_even_phi_products(&self) -> Result<Vec<(usize, usize, usize)>> {
        let s = self.sub().size();
        let m = self.sub().m;
        let phis = (1..=s).map(|r| self.global_phi(r)).collect::<Result<Vec<_>>>()?;
        let mut bad = Vec::new();
        for i in 1..=m {
            for p in 0..s {
                for q in 0..s {
                    let outer = &phis[i - 1][p];
                    if !outer.mul(&phis[i - 1][q]).is_zero() {
                        bad.push((i, 0, p + 1));
                    }
                    for j in 1..=s {
                        for t in 0..s {
                            let prod = outer.mul(&phis[j - 1][t]).mul(&phis[i - 1][q]);
                            if !prod.is_zero() {
                                bad.push((i, j, p + 1));
                            }
                        }
                    }
                }
            }
        }
        bad.sort_unstable();
        bad.dedup();
        Ok(bad)
    }
}

/// Scalar of `I₂` on a whole irreducible module.
pub fn casimir2_scalar(m: &GModule) -> Result<Scalar> {
    scalar_on_subspace(&m.casimir2_matrix(), &crate::linalg::Subspace::full(m.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{eval_c, eval_gamma, BranchPair, CKind, GammaKind};
    use crate::module::build_kac_module;

    fn trivial_gl02() -> GModule {
        let sig = Signature { m: 0, n: 2 };
        GModule::new(sig, vec![Matrix::zeros(1, 1); 4], vec![0], vec![Weight::zero(sig)])
    }

    #[test]
    fn trivial_odd_module() {
        let t = trivial_gl02();
        assert!(char_matrix(&t, CharKind::Vector).is_zero());
        assert!(verify_char_identity(&t, CharKind::Vector).is_zero());
        let x = char_matrix(&t, CharKind::Vector);
        let roots = characteristic_roots(&Weight::zero(t.signature())).vector_roots;
        assert_eq!(roots, vec![Scalar::from_int(-1), Scalar::zero()]);
        assert!(projector(&x, &roots, 1).unwrap().is_zero());
        assert_eq!(projector(&x, &roots, 2).unwrap(), OpMatrix::identity(2, 1));
    }

    #[test]
    fn identities_on_kac() {
        for w in [Weight::from_ints(&[2], &[0]), Weight::from_ints(&[4], &[0, -1])] {
            let k = build_kac_module(&w).unwrap();
            for kind in CharKind::ALL {
                assert!(verify_char_identity(&k, kind).is_zero(), "{w} {kind:?}");
            }
            let a = char_matrix(&k, CharKind::Adjoint);
            assert_eq!(a.block(1, 1), &k.gen(1, 1).scale(&Scalar::from_int(-1)));
        }
    }

    #[test]
    fn sample_measurements() {
        let top = Weight::from_ints(&[4], &[0, -1]);
        let bm = BranchingModule::new(build_kac_module(&top).unwrap()).unwrap();
        let ci = bm.component_index(&Weight::from_ints(&[4], &[-1])).unwrap();
        assert_eq!(bm.measure(ci, Measure::Invariant(Invariant::Gamma), 2).unwrap(), Scalar::from_int(-1));
        let pair = BranchPair::new(&top, &Weight::from_ints(&[4], &[-1])).unwrap();
        assert_eq!(eval_gamma(&pair, 2, GammaKind::Gamma).unwrap().numeric().unwrap(), Scalar::from_int(-1));
        let cj = bm.component_index(&Weight::from_ints(&[4], &[0])).unwrap();
        assert_eq!(bm.measure(cj, Measure::Invariant(Invariant::C), 3).unwrap(), Scalar::one());
        let pair = BranchPair::new(&top, &Weight::from_ints(&[4], &[0])).unwrap();
        assert_eq!(eval_c(&pair, 3, CKind::C).unwrap().numeric().unwrap(), Scalar::one());
        assert_eq!(bm.measure(cj, Measure::Invariant(Invariant::Delta), 2).unwrap(), Scalar::from_int(-1));
    }
}
