//! Acceptance suite: one PASS/FAIL line per criterion, exact rational
//! equality throughout. Criteria that test a printed formula are checked
//! literally; where the printed form is wrong the line reads FAIL and the
//! detail lines show the corrected form that does hold. The process exits
//! nonzero only when an outcome differs from `EXPECTED_FAIL`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use superchar::closed_forms::{
    branch_candidates, casimir_from_roots, eval_c, eval_delta_printed, eval_supertrace, eval_supertrace_printed,
    invariant_table, BranchPair, CKind, CasimirKind, DeltaKind, ProjKind,
};
use superchar::module::{dual_vector_module, tensor_product, tensor_vector_decompose, vector_module};
use superchar::operator::{char_matrix, projector, BranchingModule, CharKind};
use superchar::tower::{power_supertrace, tower_scalars, TowerReport, DEFAULT_ORDER};
use superchar::verify::{verify_branching, KacReport};
use superchar::*;

/// Criteria whose printed formulas do not hold as printed.
const EXPECTED_FAIL: [usize; 2] = [6, 10];

fn w(text: &str) -> Weight {
    text.parse().expect("valid weight")
}

/// Kac modules over gl(m|n+1), each restricting to gl(m|n).
const TOPS: [&str; 7] = ["2|0", "3|1", "4|0,-1", "5|1,-2", "0,-2|4", "-1,-3|-2", "2,0|4,3"];
/// Tower modules: two gl(1|2), one gl(2|1), one gl(2|2).
const TOWER_TOPS: [&str; 4] = ["4|0,-1", "5|1,-2", "0,-2|4", "2,0|4,3"];
/// Tensor inputs, including a small gl(2|2) Kac module.
const TENSOR_TOPS: [&str; 5] = ["2|0", "4|0,-1", "5|1,-2", "0,-2|4", "-1,-1|-2,-2"];

struct Fixture {
    modules: Vec<BranchingModule>,
    reports: Vec<KacReport>,
    towers: Vec<TowerReport>,
}

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome { pass, summary: summary.into(), details: Vec::new() }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.details.push(d.into());
        self
    }
}

fn all_checks<'a>(f: &'a Fixture, prefix: &'a str) -> impl Iterator<Item = (String, bool)> + 'a {
    f.reports.iter().flat_map(move |r| {
        let module = r.checks.iter().filter(move |(k, _)| k.starts_with(prefix)).map(move |(k, v)| (format!("{} {k}", r.top), *v));
        let comps = r.components.iter().flat_map(move |c| {
            c.checks
                .iter()
                .filter(move |(k, _)| k.starts_with(prefix))
                .map(move |(k, v)| (format!("{} > {} {k}", r.top, c.weight), *v))
        });
        module.chain(comps)
    })
}

fn failing(items: impl Iterator<Item = (String, bool)>) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for (k, v) in items {
        n += 1;
        if !v {
            bad.push(k);
        }
    }
    (n, bad)
}

fn c1_structure(f: &Fixture) -> Outcome {
    let mut per_sig: BTreeMap<String, usize> = BTreeMap::new();
    let mut bad = Vec::new();
    let mut record = |m: &GModule, what: String| {
        *per_sig.entry(m.signature().to_string()).or_default() += 1;
        if m.check_relations().is_err() {
            bad.push(what);
        }
    };
    for bm in &f.modules {
        record(&bm.module, format!("Kac {}", bm.top));
        for c in &bm.components {
            record(&c.module, format!("component {} of {}", c.weight, bm.top));
        }
    }
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let sig = Signature::new(m, n).unwrap();
        let v = vector_module(sig);
        let d = dual_vector_module(sig);
        record(&v, format!("vector gl({sig})"));
        record(&d, format!("dual vector gl({sig})"));
        record(&tensor_product(&v, &d).unwrap(), format!("V ⊗ V* gl({sig})"));
    }
    let thin: Vec<_> = per_sig.iter().filter(|(_, &n)| n < 3).map(|(s, _)| s.clone()).collect();
    let total: usize = per_sig.values().sum();
    let o = Outcome::new(bad.is_empty() && thin.is_empty(), format!("graded relations exact on {total} modules"));
    let o = o.detail(format!("modules per signature: {per_sig:?}"));
    bad.into_iter().chain(thin.into_iter().map(|s| format!("fewer than 3 modules over gl({s})"))).fold(o, |o, b| o.detail(format!("violation: {b}")))
}

fn c2_casimir(f: &Fixture) -> Outcome {
    let (n, bad) = failing(all_checks(f, "casimir_I2"));
    let weights = f.reports.len();
    let o = Outcome::new(bad.is_empty() && weights >= 5, format!("I₂ = (Λ,Λ+2ρ)·1 on {weights} Kac modules and {} components", n - weights));
    bad.into_iter().fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn c3_identities(f: &Fixture) -> Outcome {
    let (n1, mut bad) = failing(all_checks(f, "identity_").chain(all_checks(f, "component_identity_")));
    let (n2, bad2) = failing(all_checks(f, "sign_twist").chain(all_checks(f, "component_sign_twist")));
    bad.extend(bad2);
    let o = Outcome::new(bad.is_empty(), format!("{n1} identity residuals zero (4 kinds), {n2} sign-twist relations exact"));
    bad.into_iter().fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn c4_branching(f: &Fixture) -> Outcome {
    let bm = f.modules.iter().find(|b| b.top == w("4|0,-1")).expect("fixture");
    let mut found = bm.decomposition.weights();
    found.sort();
    let mut expected = branch_candidates(&bm.top).unwrap();
    expected.sort();
    let dims: Vec<usize> = bm.components.iter().map(|c| c.dim()).collect();
    let exact = found == expected && dims == [2, 2, 2, 2] && bm.module.dim() == 8;
    let (n, bad) = failing(all_checks(f, "branching_"));
    let o = Outcome::new(exact && bad.is_empty(), format!("(4|0,-1) → {} candidates, dims {dims:?}; multiplicity-free on {} modules", found.len(), f.reports.len()));
    let o = o.detail(format!("components: {}", found.iter().map(ToString::to_string).collect::<Vec<_>>().join("  ")));
    let o = o.detail(format!("{n} branching checks (candidates each once, dimensions exhaust the module)"));
    bad.into_iter().fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn comparisons<'a>(f: &'a Fixture, names: &'a [&str]) -> impl Iterator<Item = (String, &'a superchar::verify::Comparison)> + 'a {
    f.reports.iter().flat_map(move |r| {
        r.components.iter().flat_map(move |c| {
            c.comparisons
                .iter()
                .filter(move |x| names.contains(&x.invariant))
                .map(move |x| (format!("{} > {} {}[{}]", r.top, c.weight, x.invariant, x.r), x))
        })
    })
}

fn c5_branching_coefficients(f: &Fixture) -> Outcome {
    let mut n = 0;
    let mut bad = Vec::new();
    let mut zeros = 0;
    for (label, x) in comparisons(f, &["c", "cbar"]) {
        n += 1;
        zeros += usize::from(x.formula.is_vanishes());
        if !x.agree {
            bad.push(format!("{label}: measured {:?}, formula {}", x.measured, x.formula));
        }
    }
    let (nr, bad_rel) = failing(all_checks(f, "formula_relations"));
    // the sum rule directly on measured values
    let mut sums_ok = true;
    for bm in &f.modules {
        for (ci, c) in bm.components.iter().enumerate() {
            let pair = BranchPair::new(&bm.top, &c.weight).unwrap();
            let total: Scalar = pair
                .sets
                .itilde
                .iter()
                .map(|&r| bm.measure(ci, superchar::operator::Measure::Invariant(superchar::closed_forms::Invariant::C), r).unwrap())
                .sum();
            let formula_ok = pair.sets.itilde.iter().all(|&r| eval_c(&pair, r, CKind::C).is_ok());
            sums_ok &= total == Scalar::one() && formula_ok;
        }
    }
    let pass = bad.is_empty() && bad_rel.is_empty() && sums_ok;
    let o = Outcome::new(pass, format!("{n} measured c/c̄ equal the closed forms ({zeros} structural zeros); Σc = 1 and linear relations on {nr} components"));
    let o = if sums_ok { o } else { o.detail("measured Σ_{Ĩ} c_r ≠ 1 somewhere") };
    bad.into_iter().chain(bad_rel).fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn c6_shift_coefficients(f: &Fixture) -> Outcome {
    let mut gamma_n = 0;
    let mut gamma_bad = Vec::new();
    for (label, x) in comparisons(f, &["gamma", "gammabar"]) {
        gamma_n += 1;
        if !x.agree {
            gamma_bad.push(label);
        }
    }
    // δ, δ̄ against the printed closed forms, and against the corrected sign
    let mut delta_n = 0;
    let mut printed_bad = Vec::new();
    let mut corrected_bad = Vec::new();
    let mut proportional_bad = Vec::new();
    for r in &f.reports {
        for c in &r.components {
            let pair = BranchPair::new(&r.top, &c.weight).unwrap();
            for x in c.comparisons.iter().filter(|x| x.invariant == "delta" || x.invariant == "deltabar") {
                delta_n += 1;
                let label = format!("{} > {} {}[{}]", r.top, c.weight, x.invariant, x.r);
                let Ok(m) = &x.measured else {
                    proportional_bad.push(format!("{label}: {}", x.measured.as_ref().unwrap_err()));
                    continue;
                };
                let kind = if x.invariant == "delta" { DeltaKind::Delta } else { DeltaKind::DeltaBar };
                let printed = eval_delta_printed(&pair, x.r, kind).ok().and_then(|e| e.numeric());
                if printed.as_ref() != Some(m) {
                    printed_bad.push(format!("{label}: measured {m}, printed form {}", printed.map_or("undefined".into(), |p| p.to_string())));
                }
                if !x.agree {
                    corrected_bad.push(label);
                }
            }
        }
    }
    let pass = gamma_bad.is_empty() && printed_bad.is_empty() && proportional_bad.is_empty();
    let mut o = Outcome::new(
        pass,
        format!(
            "γ/γ̄: {}/{gamma_n} agree; δ/δ̄ printed forms: {}/{delta_n} agree; proportionality exact on {}/{delta_n}",
            gamma_n - gamma_bad.len(),
            delta_n - printed_bad.len(),
            delta_n - proportional_bad.len()
        ),
    );
    o = o.detail(format!(
        "corrected signs (−1)^|Ĩ| for δ and (−1)^|I′∪{{r}}| for δ̄: {}/{delta_n} agree",
        delta_n - corrected_bad.len()
    ));
    for b in printed_bad.iter().take(6) {
        o = o.detail(format!("printed mismatch: {b}"));
    }
    if printed_bad.len() > 6 {
        o = o.detail(format!("… {} more printed mismatches", printed_bad.len() - 6));
    }
    gamma_bad.into_iter().chain(corrected_bad).chain(proportional_bad).fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn c7_shifts(f: &Fixture) -> Outcome {
    let (n, bad) = failing(all_checks(f, "shift_left_right_").chain(all_checks(f, "landing_")));
    let o = Outcome::new(bad.is_empty(), format!("left = right and correct landing for ψ and φ: {n} component checks"));
    bad.into_iter().fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn c8_supertraces(f: &Fixture) -> Outcome {
    let (n, mut bad) = failing(all_checks(f, "supertrace_"));
    // witness: the trivial gl(0|2) module
    let sig = Signature::new(0, 2).unwrap();
    let zero = Weight::zero(sig);
    let triv = GModule::new(sig, vec![Matrix::zeros(1, 1); 4], vec![0], vec![zero.clone()]);
    let x = char_matrix(&triv, CharKind::Vector);
    let roots = characteristic_roots(&zero).vector_roots;
    let measured = projector(&x, &roots, 2).unwrap().supertrace(sig).as_scalar().unwrap();
    let printed = eval_supertrace_printed(&zero, 2, ProjKind::P).unwrap();
    let adjusted = eval_supertrace(&zero, 2, ProjKind::P).unwrap();
    if measured != adjusted {
        bad.push("gl(0|2) witness: adjusted form differs from measurement".into());
    }
    // Σ ᾱ^k str P̄ and Σ α^k str P against str of the matrix powers on each Kac module
    let mut powers = 0;
    for bm in &f.modules {
        let m = &bm.module;
        for (kind, ck) in [(CharKind::Vector, CasimirKind::I), (CharKind::Adjoint, CasimirKind::IBar)] {
            let xm = char_matrix(m, kind);
            for k in 0..=4 {
                powers += 1;
                let direct = power_supertrace(&xm, m, k).as_scalar();
                let roots = casimir_from_roots(&bm.top, k as u32, ck).ok();
                if direct.is_none() || direct != roots {
                    bad.push(format!("{} {kind:?} k={k}: str(X^k) {direct:?} vs roots {roots:?}", bm.top));
                }
            }
        }
    }
    let comps_ok = f.towers.iter().all(|t| t.components.iter().all(|c| c.casimir_from_roots));
    if !comps_ok {
        bad.push("component I_k differs from casimir_from_roots".into());
    }
    let o = Outcome::new(bad.is_empty(), format!("{n} supertrace checks (formula and Σ str P = m−n); {powers} power traces match the roots"));
    let o = o.detail(format!(
        "sign convention: measured str P[r] = (−1)^(r) × printed product; gl(0|2) trivial witness str P[2] = {measured}, printed {printed}"
    ));
    bad.into_iter().fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn c9_tensor() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for t in TENSOR_TOPS {
        let top = w(t);
        let k = build_kac_module(&top).unwrap();
        for dual in [false, true] {
            n += 1;
            match tensor_vector_decompose(&k, dual) {
                Ok(d) => {
                    let total: usize = d.parts.iter().map(|c| c.dim()).sum();
                    let mut ws = d.weights();
                    ws.sort();
                    ws.dedup();
                    if total != top.signature().size() * k.dim() || ws.len() != d.parts.len() {
                        bad.push(format!("{top} dual={dual}: dims {total}, {} distinct of {}", ws.len(), d.parts.len()));
                    }
                }
                Err(e) => bad.push(format!("{top} dual={dual}: {e}")),
            }
        }
    }
    let o = Outcome::new(bad.is_empty(), format!("{n} decompositions of V⊗V(Λ) and V*⊗V(Λ) into distinct Λ±ε_r, dimensions exhaust"));
    bad.into_iter().fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn c10_tower(f: &Fixture) -> Outcome {
    let mut literal_bad = Vec::new();
    let mut other_bad = Vec::new();
    let mut n = 0;
    for t in &f.towers {
        for (k, ok) in &t.identities {
            if k.ends_with("_corrected") {
                if !ok {
                    other_bad.push(format!("{} {k}", t.top));
                }
                continue;
            }
            n += 1;
            if !ok {
                if k.ends_with("_printed") {
                    literal_bad.push(format!("{} {k}", t.top));
                } else {
                    other_bad.push(format!("{} {k}", t.top));
                }
            }
        }
        for c in &t.components {
            if c.tau[0] != Scalar::one() {
                other_bad.push(format!("{} > {} τ₀ ≠ 1", t.top, c.weight));
            }
        }
    }
    let gl22 = f.towers.iter().any(|t| t.top.signature() == Signature::new(2, 2).unwrap());
    let pass = literal_bad.is_empty() && other_bad.is_empty() && gl22 && f.towers.len() >= 2;
    let mut o = Outcome::new(pass, format!("{}/{n} printed identities hold on {} modules", n - literal_bad.len(), f.towers.len()));
    o = o.detail("τ₀ = 1, τ₁ = I₁−Î₁, 2τ₂, σ₀..σ₂, [τ_ℓ,τ_k] = 0 (ℓ,k ≤ 4) and the graded upper-lower commutator (ℓ,k ≤ 2) hold everywhere".to_string());
    o = o.detail("corrected 3τ₃ (lone +τ₂ → −τ₂) and 4τ₄ (+τ₃ → −τ₃ in the triple group, sign of the τ₁/Î₁ group flipped) hold on every module".to_string());
    for b in literal_bad {
        o = o.detail(format!("printed form fails: {b}"));
    }
    other_bad.into_iter().fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn c11_repeated_phi(f: &Fixture) -> Outcome {
    let (n, bad) = failing(all_checks(f, "repeated_even_phi_vanish"));
    let o = Outcome::new(bad.is_empty(), format!("φ[i]_p φ[i]_q = 0 and φ[i]_p φ[j]_t φ[i]_q = 0 for even i on {n} modules"));
    bad.into_iter().fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn c12_degenerate() -> Outcome {
    let mut bad = Vec::new();
    let mut expect = |what: &str, got: std::result::Result<(), Error>, name: &str| match got {
        Err(e) if e.name() == name => {}
        Err(e) => bad.push(format!("{what}: expected {name}, got {}", e.name())),
        Ok(()) => bad.push(format!("{what}: accepted")),
    };
    let coinciding = w("1|0,-1");
    let atypical = w("1|-1,-2");
    expect("Kac (1|0,-1)", build_kac_module(&coinciding).map(|_| ()), "RootsCoincide");
    expect("Kac (1|-1,-2)", build_kac_module(&atypical).map(|_| ()), "Atypical");
    expect("gl(2|1) Kac (2,0|0)", build_kac_module(&w("2,0|0")).map(|_| ()), "Atypical");
    expect("gl(2|1) Kac (3,1|0)", build_kac_module(&w("3,1|0")).map(|_| ()), "RootsCoincide");
    let pair = BranchPair::new(&coinciding, &w("1|0")).unwrap();
    expect("table (1|0,-1)/(1|0)", invariant_table(&pair).map(|_| ()), "RootsCoincide");
    expect("supertrace (1|0,-1)", eval_supertrace(&coinciding, 1, ProjKind::P).map(|_| ()), "RootsCoincide");
    expect("Kac (3|-1,-3) branching", build_kac_module(&w("3|-1,-3")).and_then(BranchingModule::new).map(|_| ()), "RootsCoincide");
    let o = Outcome::new(bad.is_empty(), "coinciding-root and atypical weights rejected with RootsCoincide / Atypical (7 cases)");
    let o = o.detail("(1|0,-1) is typical ((Λ+ρ) = (0|1,-1)) but α₁ = α_μ₁ = -1, so it is rejected as RootsCoincide");
    bad.into_iter().fold(o, |o, b| o.detail(format!("fails: {b}")))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let modules: Vec<BranchingModule> = TOPS
        .iter()
        .map(|t| BranchingModule::new(build_kac_module(&w(t)).expect("Kac module")).expect("branching"))
        .collect();
    let reports: Vec<KacReport> = modules.iter().map(|bm| verify_branching(bm).expect("report")).collect();
    let towers: Vec<TowerReport> = TOWER_TOPS
        .iter()
        .map(|t| {
            let bm = modules.iter().find(|b| b.top == w(t)).expect("tower module in fixture");
            tower_scalars(&bm.module, DEFAULT_ORDER).expect("tower")
        })
        .collect();
    let f = Fixture { modules, reports, towers };
    println!("fixture: {} Kac modules, {} towers, built in {:.1?}", f.modules.len(), f.towers.len(), start.elapsed());

    let outcomes = [
        c1_structure(&f),
        c2_casimir(&f),
        c3_identities(&f),
        c4_branching(&f),
        c5_branching_coefficients(&f),
        c6_shift_coefficients(&f),
        c7_shifts(&f),
        c8_supertraces(&f),
        c9_tensor(),
        c10_tower(&f),
        c11_repeated_phi(&f),
        c12_degenerate(),
    ];
    let mut unexpected = Vec::new();
    for (i, o) in outcomes.iter().enumerate() {
        let id = i + 1;
        println!("criterion {id:>2} {} {}", if o.pass { "PASS" } else { "FAIL" }, o.summary);
        for d in &o.details {
            println!("             {d}");
        }
        if o.pass == EXPECTED_FAIL.contains(&id) {
            unexpected.push(id);
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("{passed}/{} criteria pass; total {:.1?}", outcomes.len(), start.elapsed());
    if unexpected.is_empty() {
        println!("all outcomes as expected (expected FAIL: {EXPECTED_FAIL:?})");
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
