//! Self-verification suites: each check exercises one invariant on the
//! bundled corpus plus seeded random instances and reports a minimized
//! counterexample on failure. Reports serialize deterministically.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::corpus;
use crate::gf2::Gf2Vector;
use crate::graph::{EdgeId, GraphInvolution, HalfEdgeGraph};
use crate::randgen::{random_real_trivalent, rng_from_seed};
use crate::realpart::{maximal_coset, ribbon_boundary_count, trace_real_part, trace_with_basis};
use crate::tropical::{
    compact_component_count, patchwork_arcs, signs_to_twists, standard_poly, twists_to_signs,
    TropicalCurve,
};
use crate::wspace::{direction_basis, w_kernel, w_structural, ActionCalculator, DirectionBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Wspace,
    Realpart,
    Tropical,
    All,
}

impl Scope {
    pub fn name(self) -> &'static str {
        match self {
            Scope::Wspace => "wspace",
            Scope::Realpart => "realpart",
            Scope::Tropical => "tropical",
            Scope::All => "all",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub scope: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn pass(name: &str, details: String) -> Check {
    Check { name: name.to_string(), passed: true, details, counterexample: None }
}

fn fail(name: &str, details: String, counterexample: String) -> Check {
    Check {
        name: name.to_string(),
        passed: false,
        details,
        counterexample: Some(counterexample),
    }
}

fn all_twists(basis: &DirectionBasis) -> Vec<Gf2Vector> {
    let k = basis.dim();
    (0..1u64 << k)
        .map(|bits| {
            Gf2Vector::from_indices(basis.labels.clone(), (0..k).filter(|i| bits >> i & 1 == 1))
        })
        .collect()
}

fn corpus_kernel_vs_structural() -> Check {
    let name = "wspace/corpus-kernel-vs-structural";
    for (gname, g, t) in corpus::all() {
        let wk = w_kernel(&g, &t);
        let ws = w_structural(&g, &t);
        if !wk.subspace_equal(&ws).expect("same labels") {
            return fail(
                name,
                format!("bases disagree on {gname}"),
                crate::graph::to_json_string(&g, &t),
            );
        }
    }
    pass(name, format!("{} corpus graphs", corpus::all().len()))
}

fn random_kernel_vs_structural(seed: u64, samples: usize) -> Check {
    let name = "wspace/random-kernel-vs-structural";
    let mut rng = rng_from_seed(seed);
    let mut failures: Vec<(HalfEdgeGraph, GraphInvolution)> = Vec::new();
    for _ in 0..samples {
        let (g, t) = random_real_trivalent(&mut rng, 20);
        let wk = w_kernel(&g, &t);
        let ws = w_structural(&g, &t);
        if !wk.subspace_equal(&ws).expect("same labels") {
            failures.push((g, t));
        }
    }
    match failures
        .into_iter()
        .min_by_key(|(g, _)| (g.vertices().len(), g.edges().len()))
    {
        None => pass(name, format!("{samples} random graphs, seed {seed}")),
        Some((g, t)) => fail(
            name,
            "kernel and structural bases disagree".to_string(),
            crate::graph::to_json_string(&g, &t),
        ),
    }
}

fn action_kernel_equivalence() -> Check {
    let name = "wspace/action-zero-iff-kernel";
    let mut lifts = 0usize;
    for (gname, g, t) in corpus::all() {
        let calc = ActionCalculator::new(&g, &t);
        if calc.basis.dim() > 12 {
            continue;
        }
        let w = w_kernel(&g, &t);
        for tw in all_twists(&calc.basis) {
            lifts += 1;
            let zero = calc.action(&tw).expect("basis labels").is_zero();
            if zero != w.in_span(&tw).expect("same labels") {
                return fail(
                    name,
                    format!("action/kernel mismatch on {gname}"),
                    format!("{gname}: T = {:?}", tw.support_labels()),
                );
            }
        }
    }
    pass(name, format!("{lifts} lifts checked"))
}

fn coset_law() -> Check {
    let name = "realpart/maximal-coset-law";
    for (gname, g, t) in corpus::all() {
        if direction_basis(&g, &t).dim() > crate::realpart::DEFAULT_CAP {
            continue;
        }
        if let Err(e) = maximal_coset(&g, &t, crate::realpart::DEFAULT_CAP) {
            return fail(name, format!("coset law fails on {gname}"), e.to_string());
        }
    }
    pass(name, "maximal lifts form one W-coset or none on every corpus graph".to_string())
}

fn tracer_vs_ribbon() -> Check {
    let name = "realpart/tracer-vs-ribbon-walk";
    let mut lifts = 0usize;
    for (gname, g, t) in corpus::all() {
        if !t.is_identity() {
            continue;
        }
        let basis = direction_basis(&g, &t);
        if basis.dim() > 12 {
            continue;
        }
        let rot = g.rotation_or_default();
        for tw in all_twists(&basis) {
            lifts += 1;
            let traced = trace_with_basis(&g, &t, &basis, &tw).expect("traceable").count;
            let walked = ribbon_boundary_count(&g, &rot, &tw).expect("walkable");
            if traced != walked {
                return fail(
                    name,
                    format!("tracer {traced} != walk {walked} on {gname}"),
                    format!("{gname}: T = {:?}", tw.support_labels()),
                );
            }
        }
    }
    pass(name, format!("{lifts} lifts cross-checked"))
}

fn harnack_klein_bound() -> Check {
    let name = "realpart/harnack-klein-bound";
    let mut lifts = 0usize;
    for (gname, g, t) in corpus::all() {
        let basis = direction_basis(&g, &t);
        if basis.dim() > 12 {
            continue;
        }
        for tw in all_twists(&basis) {
            lifts += 1;
            let r = trace_with_basis(&g, &t, &basis, &tw).expect("traceable");
            if r.count > r.genus + 1 {
                return fail(
                    name,
                    format!("count {} exceeds g+1 = {} on {gname}", r.count, r.genus + 1),
                    format!("{gname}: T = {:?}", tw.support_labels()),
                );
            }
        }
    }
    pass(name, format!("count <= g+1 on {lifts} lifts"))
}

fn haas_three_way() -> Check {
    let name = "tropical/haas-three-way-equivalence";
    let id = GraphInvolution::identity();
    let mut sets = 0usize;
    for d in 1..=3u32 {
        let c = TropicalCurve::new(standard_poly(d)).expect("standard curves are non-singular");
        let w = w_kernel(&c.graph, &id);
        let k = c.edges.len();
        for bits in 0..1u64 << k {
            let t: BTreeSet<EdgeId> = (0..k).filter(|i| bits >> i & 1 == 1).map(EdgeId).collect();
            if !c.is_twist_admissible(&t).expect("bounded edges") {
                continue;
            }
            sets += 1;
            let haas = c.is_haas_maximal(&t).expect("admissible");
            let v = c.twist_vector(&t).expect("bounded edges");
            let in_w = w.in_span(&v).expect("same labels");
            let traced = trace_real_part(&c.graph, &id, &v).expect("traceable").maximal;
            if haas != in_w || haas != traced {
                return fail(
                    name,
                    format!("criteria disagree (haas {haas}, W {in_w}, tracer {traced})"),
                    format!("degree {d}: T = {t:?}"),
                );
            }
        }
    }
    pass(name, format!("{sets} admissible twist sets on degrees 1-3"))
}

fn harnack_origin_counts() -> Check {
    let name = "tropical/harnack-origin-counts";
    for (d, expected) in [(1u32, 1usize), (2, 1), (3, 2), (6, 11)] {
        let c = TropicalCurve::new(standard_poly(d)).expect("non-singular");
        let t = BTreeSet::new();
        if !c.is_haas_maximal(&t).expect("empty set is admissible") {
            return fail(name, format!("T = {{}} not maximal at degree {d}"), format!("degree {d}"));
        }
        let arcs = patchwork_arcs(&c, &t).expect("admissible");
        let count = compact_component_count(&c, &arcs);
        if count != expected {
            return fail(
                name,
                format!("degree {d}: compact count {count}, expected {expected}"),
                format!("degree {d}"),
            );
        }
    }
    pass(name, "compact counts 1, 1, 2, 11 at degrees 1, 2, 3, 6".to_string())
}

fn sign_twist_roundtrip() -> Check {
    let name = "tropical/sign-twist-roundtrip";
    let c = TropicalCurve::new(standard_poly(3)).expect("non-singular");
    let k = c.edges.len();
    let mut sets = 0usize;
    for bits in 0..1u64 << k {
        let t: BTreeSet<EdgeId> = (0..k).filter(|i| bits >> i & 1 == 1).map(EdgeId).collect();
        if !c.is_twist_admissible(&t).expect("bounded edges") {
            continue;
        }
        sets += 1;
        let nu = twists_to_signs(&c, &t).expect("admissible");
        let back = signs_to_twists(&c, &nu).expect("complete distribution");
        if back != t {
            return fail(
                name,
                "twists -> signs -> twists is not the identity".to_string(),
                format!("T = {t:?}, back = {back:?}"),
            );
        }
    }
    pass(name, format!("{sets} admissible twist sets on the cubic"))
}

pub fn verify(scope: Scope, seed: u64) -> VerifyReport {
    let mut checks = Vec::new();
    if matches!(scope, Scope::Wspace | Scope::All) {
        checks.push(corpus_kernel_vs_structural());
        checks.push(random_kernel_vs_structural(seed, 200));
        checks.push(action_kernel_equivalence());
    }
    if matches!(scope, Scope::Realpart | Scope::All) {
        checks.push(coset_law());
        checks.push(tracer_vs_ribbon());
        checks.push(harnack_klein_bound());
    }
    if matches!(scope, Scope::Tropical | Scope::All) {
        checks.push(haas_three_way());
        checks.push(harnack_origin_counts());
        checks.push(sign_twist_roundtrip());
    }
    VerifyReport {
        scope: scope.name().to_string(),
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
