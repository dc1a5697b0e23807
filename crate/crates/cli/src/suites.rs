//! The verification suites: every published value the tool can check, keyed
//! by stable claim ids.

use std::time::Instant;

use matchtop_core::complex::{matching_complex, BuildOptions, ComplexError};
use matchtop_core::families::{build, components_of_product, FamilyId, FamilyName};
use matchtop_core::graph::Graph;
use matchtop_core::homology::{reduced_homology, HomologyError, HomologyProfile};
use matchtop_core::recurrence::{cycle_independence, path_independence, Evaluator, WedgeDescriptor};
use matchtop_core::reduce::{
    self, apply_fold, find_edge_invariant_triplets, find_folds, link_deletion_split, parse_script,
    profile_of_graph, profile_of_graph_with_stats, simplicial_split, simplicial_vertices,
    toggle_edge, EvalOptions, ReduceError, Strategy,
};
use matchtop_core::tables::{
    closed_form_count, closed_form_dims, family_dims, is_known_family_table_defect,
    known_product_table_exception,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::report::{Report, Status, VerifyItem};

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub max_simplices: usize,
    pub max_matrix: usize,
    pub timings: bool,
    /// Upper index bound per family in the recurrence scan; by default 7 for
    /// three rows, 4 for four, 3 for five.
    pub max_n: Option<i64>,
    /// Largest index replayed per fixture script.
    pub replay_max_n: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_simplices: matchtop_core::complex::DEFAULT_SIMPLEX_BUDGET,
            max_matrix: matchtop_core::homology::DEFAULT_MATRIX_BUDGET,
            timings: false,
            max_n: None,
            replay_max_n: 4,
        }
    }
}

impl Config {
    fn eval_options(&self, fold_first: bool) -> EvalOptions {
        EvalOptions {
            build: BuildOptions {
                max_dim: None,
                max_simplices: self.max_simplices,
            },
            max_matrix_entries: self.max_matrix,
            fold_first,
        }
    }

    fn scan_cap(&self, m: u8) -> i64 {
        self.max_n.unwrap_or(match m {
            3 => 7,
            4 => 4,
            _ => 3,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    BaseCases,
    Recurrences,
    Tables,
    Rewrites,
    Matching,
    Components,
    Replay,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "base-cases" => Suite::BaseCases,
            "recurrences" => Suite::Recurrences,
            "tables" => Suite::Tables,
            "rewrites" => Suite::Rewrites,
            "matching" => Suite::Matching,
            "components" => Suite::Components,
            "replay" => Suite::Replay,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::BaseCases => "base-cases",
            Suite::Recurrences => "recurrences",
            Suite::Tables => "tables",
            Suite::Rewrites => "rewrites",
            Suite::Matching => "matching",
            Suite::Components => "components",
            Suite::Replay => "replay",
            Suite::All => "all",
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &Config) -> Report {
    let items = match suite {
        Suite::BaseCases => base_cases(cfg),
        Suite::Recurrences => recurrences(cfg),
        Suite::Tables => tables(cfg),
        Suite::Rewrites => rewrites(cfg),
        Suite::Matching => matching(cfg),
        Suite::Components => components(cfg),
        Suite::Replay => replay(cfg),
        Suite::All => {
            let mut all = Vec::new();
            all.extend(base_cases(cfg));
            all.extend(recurrences(cfg));
            all.extend(tables(cfg));
            all.extend(rewrites(cfg));
            all.extend(matching(cfg));
            all.extend(components(cfg));
            all.extend(replay(cfg));
            all
        }
    };
    Report::new(suite.name(), items, cfg.timings)
}

/// Runs jobs in the rayon pool, keeping deterministic output through the
/// final sort by id.
fn run_jobs(jobs: Vec<Box<dyn FnOnce() -> VerifyItem + Send>>) -> Vec<VerifyItem> {
    jobs.into_par_iter().map(|j| j()).collect()
}

fn is_budget(err: &ReduceError) -> bool {
    matches!(
        err,
        ReduceError::Complex(ComplexError::BudgetExceeded { .. })
            | ReduceError::Homology(HomologyError::MatrixBudget { .. })
    )
}

/// predicted-vs-computed item for the independence complex of a graph.
fn profile_item(
    id: String,
    target: String,
    g: Graph,
    predicted: WedgeDescriptor,
    cfg: &Config,
    fold_first: bool,
) -> VerifyItem {
    let t0 = Instant::now();
    let mut item = VerifyItem::new(id, target);
    item.predicted = Some(predicted.to_string());
    match profile_of_graph_with_stats(&g, &cfg.eval_options(fold_first)) {
        Ok((p, stats)) => {
            item.computed = Some(p.to_json());
            item.simplices = Some(stats.simplices);
            item.status = if predicted.matches_profile(&p) {
                Status::Match
            } else {
                Status::Mismatch
            };
        }
        Err(e) if is_budget(&e) => {
            item.status = Status::SkippedOverBudget;
            item.note = Some(e.to_string());
        }
        Err(e) => {
            item.status = Status::Mismatch;
            item.note = Some(format!("error: {e}"));
        }
    }
    item.wall_ms = Some(t0.elapsed().as_millis());
    item
}

fn family_item(id_str: &str, fam: FamilyId, cfg: &Config) -> VerifyItem {
    let predicted = Evaluator::new().predict_family(fam).expect("defined family");
    profile_item(
        id_str.to_string(),
        format!("Ind({fam})"),
        build(fam).expect("defined family"),
        predicted,
        cfg,
        false,
    )
}

// --- base cases -------------------------------------------------------------

fn base_cases(cfg: &Config) -> Vec<VerifyItem> {
    let mut jobs: Vec<Box<dyn FnOnce() -> VerifyItem + Send>> = Vec::new();
    let c = *cfg;

    for n in 1..=15usize {
        jobs.push(Box::new(move || {
            profile_item(
                format!("path-P{n:02}"),
                format!("Ind(P_{n})"),
                Graph::path(n).unwrap(),
                path_independence(n),
                &c,
                false,
            )
        }));
    }
    for n in 3..=15usize {
        jobs.push(Box::new(move || {
            profile_item(
                format!("cycle-C{n:02}"),
                format!("Ind(C_{n})"),
                Graph::cycle(n).unwrap(),
                cycle_independence(n),
                &c,
                false,
            )
        }));
    }

    let five_plain: [(&str, &str); 10] = [
        ("claim-3.1-A0", "A:5:0"),
        ("claim-3.2-B0", "B:5:0"),
        ("claim-3.3-C0", "C:5:0"),
        ("claim-3.4-D0", "D:5:0"),
        ("claim-3.5-E0", "E:5:0"),
        ("claim-3.6-F0", "F:5:0"),
        ("claim-3.7-Gamma0", "Gamma:5:0"),
        ("claim-3.8-Lambda0", "Lambda:5:0"),
        ("claim-3.9-Gamma1", "Gamma:5:1"),
        ("claim-3.9-Gamma2", "Gamma:5:2"),
    ];
    for (id, spec) in five_plain {
        jobs.push(Box::new(move || {
            family_item(id, spec.parse().unwrap(), &c)
        }));
    }
    jobs.push(Box::new(move || {
        family_item("gadget-B-minus1", "B:5:-1".parse().unwrap(), &c)
    }));
    jobs.push(Box::new(move || {
        family_item("gadget-BTilde-minus1", "BTilde:5:-1".parse().unwrap(), &c)
    }));

    let tilde: [(&str, &str); 13] = [
        ("tilde-base-A0", "ATilde:5:0"),
        ("tilde-base-B0", "BTilde:5:0"),
        ("tilde-base-C0", "CTilde:5:0"),
        ("tilde-base-C1", "CTilde:5:1"),
        ("tilde-base-D0", "DTilde:5:0"),
        ("tilde-base-D1", "DTilde:5:1"),
        ("tilde-base-Gamma0", "GammaTilde:5:0"),
        ("tilde-base-Gamma1", "GammaTilde:5:1"),
        ("tilde-base-Gamma2", "GammaTilde:5:2"),
        ("tilde-base-Lambda0", "LambdaTilde:5:0"),
        ("tilde-base-E0", "ETilde:5:0"),
        ("tilde-base-E1", "ETilde:5:1"),
        ("tilde-base-F0", "FTilde:5:0"),
    ];
    for (id, spec) in tilde {
        jobs.push(Box::new(move || {
            family_item(id, spec.parse().unwrap(), &c)
        }));
    }
    // The published value for the tilde Lambda start reads two spheres; the
    // computation (and everything downstream) gives three. Reported, never
    // silently passed.
    jobs.push(Box::new(move || {
        let mut item = VerifyItem::new(
            "tilde-base-Lambda0-stated",
            "published value for Ind(LambdaTilde:5:0)",
        );
        let computed = profile_of_graph(
            &build("LambdaTilde:5:0".parse().unwrap()).unwrap(),
            &c.eval_options(false),
        )
        .unwrap();
        item.predicted = Some(WedgeDescriptor::spheres(2, 2).to_string());
        item.computed = Some(computed.to_json());
        item.status = Status::KnownDiscrepancy;
        item.note = Some(
            "stated wedge of 2 spheres; proof steps, direct homology, and the \
             recurrence web all give 3"
                .to_string(),
        );
        item
    }));

    let four: [(&str, &str); 11] = [
        ("claim-4.1-Gamma0", "Gamma:4:0"),
        ("claim-4.1-Gamma1", "Gamma:4:1"),
        ("claim-4.2-Lambda0", "Lambda:4:0"),
        ("claim-4.3-A0", "A:4:0"),
        ("claim-4.3-A1", "A:4:1"),
        ("claim-4.4-B0", "B:4:0"),
        ("claim-4.4-B1", "B:4:1"),
        ("claim-4.5-C0", "C:4:0"),
        ("claim-4.5-C1", "C:4:1"),
        ("claim-4.6-D0", "D:4:0"),
        ("claim-4.6-D1", "D:4:1"),
    ];
    for (id, spec) in four {
        jobs.push(Box::new(move || {
            family_item(id, spec.parse().unwrap(), &c)
        }));
    }

    let three: [(&str, &str); 4] = [
        ("claim-5.1-Gamma0", "Gamma:3:0"),
        ("claim-5.2-A0", "A:3:0"),
        ("claim-5.3-Lambda0", "Lambda:3:0"),
        ("claim-5.4-LambdaTilde0", "LambdaTilde:3:0"),
    ];
    for (id, spec) in three {
        jobs.push(Box::new(move || {
            family_item(id, spec.parse().unwrap(), &c)
        }));
    }

    run_jobs(jobs)
}

// --- recurrences ------------------------------------------------------------

fn recurrences(cfg: &Config) -> Vec<VerifyItem> {
    let mut jobs: Vec<Box<dyn FnOnce() -> VerifyItem + Send>> = Vec::new();
    let c = *cfg;
    for m in [3u8, 4, 5] {
        for name in FamilyId::names_for(m) {
            let cap = c.scan_cap(m);
            jobs.push(Box::new(move || scan_family(name, m, cap, &c)));
        }
    }
    run_jobs(jobs)
}

/// Scans one family upward until the cap or the first over-budget instance,
/// folding the per-instance outcomes into a single aggregated item (the
/// first failure, if any, carries the detail).
///
/// A computed profile that contradicts the published prediction is a genuine
/// mismatch only when it is unexplained: instances in the verified-deviation
/// registry (where the computation must reproduce the registered truth) and
/// instances downstream of them report as known discrepancies instead.
fn scan_family(name: FamilyName, m: u8, cap: i64, cfg: &Config) -> VerifyItem {
    let min_n = if matches!(name, FamilyName::B | FamilyName::BTilde) && m == 5 {
        -1
    } else {
        0
    };
    let mut item = VerifyItem::new(
        format!("master-{name}-{m}"),
        format!("recurrence vs homology for {name} (height {m}), n = {min_n}..={cap}"),
    );
    let t0 = Instant::now();
    let registry = matchtop_core::recurrence::verified_deviations();
    let mut ev = Evaluator::new();
    let mut verified = 0;
    let mut deviations: Vec<String> = Vec::new();
    let mut skipped_at = None;
    for n in min_n..=cap {
        let fam = FamilyId::new(name, m, n).unwrap();
        let pred = ev.predict_family_checked(fam).expect("defined family");
        let profile = match profile_of_graph(&build(fam).unwrap(), &cfg.eval_options(false)) {
            Ok(p) => p,
            Err(e) if is_budget(&e) => {
                skipped_at = Some(n);
                break;
            }
            Err(e) => {
                item.status = Status::Mismatch;
                item.note = Some(format!("error at n = {n}: {e}"));
                item.wall_ms = Some(t0.elapsed().as_millis());
                return item;
            }
        };
        if pred.descriptor.matches_profile(&profile) {
            verified += 1;
            continue;
        }
        let registered = registry.iter().find(|(id, _)| *id == fam);
        let explained = match registered {
            Some((_, truth)) => truth.matches_profile(&profile),
            None => pred.tainted,
        };
        if explained {
            deviations.push(format!(
                "n = {n}: published {} but computed {}",
                pred.descriptor,
                profile.to_json()
            ));
        } else {
            item.status = Status::Mismatch;
            item.predicted = Some(pred.descriptor.to_string());
            item.computed = Some(profile.to_json());
            item.note = Some(format!("unexplained failure at n = {n}"));
            item.wall_ms = Some(t0.elapsed().as_millis());
            return item;
        }
    }
    item.status = if !deviations.is_empty() {
        Status::KnownDiscrepancy
    } else if skipped_at.is_some() && verified == 0 {
        Status::SkippedOverBudget
    } else {
        Status::Match
    };
    let mut notes = vec![format!("{verified} instances verified")];
    if let Some(n) = skipped_at {
        notes.push(format!("over budget from n = {n}"));
    }
    notes.extend(deviations);
    item.note = Some(notes.join("; "));
    item.wall_ms = Some(t0.elapsed().as_millis());
    item
}

// --- tables -----------------------------------------------------------------

fn tables(_cfg: &Config) -> Vec<VerifyItem> {
    let mut jobs: Vec<Box<dyn FnOnce() -> VerifyItem + Send>> = Vec::new();

    for m in [3u8, 4, 5] {
        for name in FamilyId::names_for(m) {
            jobs.push(Box::new(move || {
                let t0 = Instant::now();
                let mut item = VerifyItem::new(
                    format!("family-dims-{name}-{m}"),
                    format!("tabulated extremes vs recurrence for {name} (height {m}), n <= 60"),
                );
                let mut ev = Evaluator::new();
                let mut known = 0;
                for n in 0..=60i64 {
                    let id = FamilyId::new(name, m, n).unwrap();
                    let predicted = ev.predict_family(id).unwrap().dim_range();
                    let table = family_dims(id).unwrap();
                    if predicted == table {
                        continue;
                    }
                    if is_known_family_table_defect(id) {
                        known += 1;
                        continue;
                    }
                    item.status = Status::Mismatch;
                    item.predicted = Some(format!("{predicted:?}"));
                    item.computed = Some(format!("table {table:?}"));
                    item.note = Some(format!("at n = {n}"));
                    item.wall_ms = Some(t0.elapsed().as_millis());
                    return item;
                }
                if known > 0 {
                    item.status = Status::KnownDiscrepancy;
                    item.note = Some(format!(
                        "{known} cells at n ≡ 1 mod 5 (n ≥ 6) tabulate a minimum one below \
                         the recurrence value"
                    ));
                }
                item.wall_ms = Some(t0.elapsed().as_millis());
                item
            }));
        }
    }

    for m in [4u8, 5] {
        jobs.push(Box::new(move || {
            let t0 = Instant::now();
            let table_no = if m == 5 { 1 } else { 2 };
            let mut item = VerifyItem::new(
                format!("table-{table_no}-product-dims"),
                format!("product extreme dimensions for height {m}, n = 3..=60"),
            );
            let mut ev = Evaluator::new();
            for n in 3..=60usize {
                let predicted = ev.predict_matching(n, m).unwrap().dim_range();
                let table = closed_form_dims(n, m).unwrap();
                if predicted != table {
                    item.status = Status::Mismatch;
                    item.predicted = Some(format!("{predicted:?}"));
                    item.computed = Some(format!("table {table:?}"));
                    item.note = Some(format!("at n = {n}"));
                    break;
                }
            }
            item.wall_ms = Some(t0.elapsed().as_millis());
            item
        }));
        jobs.push(Box::new(move || {
            let table_no = if m == 5 { 1 } else { 2 };
            let mut item = VerifyItem::new(
                format!("table-{table_no}-n3-exception"),
                format!("published residue cell at n = 3, height {m}"),
            );
            item.status = Status::KnownDiscrepancy;
            item.note = known_product_table_exception(3, m).map(str::to_string);
            item
        }));
    }

    jobs.push(Box::new(move || {
        let t0 = Instant::now();
        let mut item = VerifyItem::new(
            "thm-PnxP3-closed-form",
            "three-row sphere count and dimension, n = 2..=60",
        );
        let mut ev = Evaluator::new();
        for n in 2..=60usize {
            let predicted = ev.predict_matching(n, 3).unwrap();
            let count = closed_form_count(n, 3).unwrap();
            let d = 2 * ((n as i32 - 2) / 2) + 1;
            let ok = predicted.total_spheres() == count && predicted.dim_range() == Some((d, d));
            if !ok {
                item.status = Status::Mismatch;
                item.predicted = Some(predicted.to_string());
                item.computed = Some(format!("count {count}, dimension {d}"));
                item.note = Some(format!("at n = {n}"));
                break;
            }
        }
        item.wall_ms = Some(t0.elapsed().as_millis());
        item
    }));

    run_jobs(jobs)
}

// --- rewrites ---------------------------------------------------------------

pub fn random_graph(rng: &mut StdRng, max_n: usize) -> Graph {
    let n = rng.random_range(0..=max_n);
    let labels: Vec<matchtop_core::VertexLabel> = (1..=n as u32)
        .map(matchtop_core::VertexLabel::int)
        .collect();
    let p = rng.random_range(0.15..0.75);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Graph::new(labels, &edges).unwrap()
}

/// Applies every applicable rewrite on `g` and checks the promised homology
/// relation for each. Returns (applications, first failure description).
pub fn check_rewrites_exhaustively(
    g: &Graph,
    opts: &EvalOptions,
) -> Result<usize, (usize, String)> {
    let mut applied = 0;
    let before = match profile_of_graph(g, opts) {
        Ok(p) => p,
        Err(e) => return Err((0, format!("base profile failed: {e}"))),
    };

    for (v, w) in find_folds(g) {
        let folded = apply_fold(g, &g.label(v).clone(), &g.label(w).clone()).unwrap();
        applied += 1;
        if profile_of_graph(&folded, opts).unwrap() != before {
            return Err((applied, format!("fold ({}, {})", g.label(v), g.label(w))));
        }
    }
    for t in find_edge_invariant_triplets(g) {
        let toggled = toggle_edge(g, &t.u, &t.v, &t.x).unwrap();
        applied += 1;
        if profile_of_graph(&toggled, opts).unwrap() != before {
            return Err((applied, format!("toggle [{},{};{}]", t.u, t.v, t.x)));
        }
        if &toggle_edge(&toggled, &t.u, &t.v, &t.x).unwrap() != g {
            return Err((
                applied,
                format!("toggle not involutive [{},{};{}]", t.u, t.v, t.x),
            ));
        }
    }
    for v in simplicial_vertices(g) {
        let (branches, _) = simplicial_split(g, &g.label(v).clone()).unwrap();
        applied += 1;
        let mut sum = HomologyProfile::contractible();
        for b in branches {
            sum = sum.wedge_sum(&profile_of_graph(&b, opts).unwrap().suspended(1));
        }
        if sum != before {
            return Err((applied, format!("simplicial split at {}", g.label(v))));
        }
    }
    for v in 0..g.n_vertices() {
        for u in 0..g.n_vertices() {
            if u == v {
                continue;
            }
            let lv = g.label(v).clone();
            let lu = g.label(u).clone();
            if let Ok((del, link, _)) = link_deletion_split(g, &lv, &lu) {
                applied += 1;
                let combined = profile_of_graph(&del, opts)
                    .unwrap()
                    .wedge_sum(&profile_of_graph(&link, opts).unwrap().suspended(1));
                if combined != before {
                    return Err((
                        applied,
                        format!("link/deletion split at {lv} witness {lu}"),
                    ));
                }
            }
        }
    }
    Ok(applied)
}

fn rewrites(cfg: &Config) -> Vec<VerifyItem> {
    let c = *cfg;
    let jobs: Vec<Box<dyn FnOnce() -> VerifyItem + Send>> = (0..5u64)
        .map(|chunk| {
            Box::new(move || {
                let t0 = Instant::now();
                let mut item = VerifyItem::new(
                    format!("rewrite-soundness-{chunk}"),
                    format!("rule soundness on random graphs, batch {chunk} of 5 x 100"),
                );
                let opts = c.eval_options(false);
                let mut total = 0;
                for i in 0..100u64 {
                    let mut rng = StdRng::seed_from_u64(0xfeed_0000 + chunk * 100 + i);
                    let g = random_graph(&mut rng, 10);
                    match check_rewrites_exhaustively(&g, &opts) {
                        Ok(n) => total += n,
                        Err((n, what)) => {
                            total += n;
                            item.status = Status::Mismatch;
                            item.note = Some(format!(
                                "graph seed {} failed at {what}",
                                0xfeed_0000u64 + chunk * 100 + i
                            ));
                            break;
                        }
                    }
                }
                if item.status == Status::Match {
                    item.note = Some(format!("{total} rule applications checked"));
                }
                item.wall_ms = Some(t0.elapsed().as_millis());
                item
            }) as Box<dyn FnOnce() -> VerifyItem + Send>
        })
        .collect();
    run_jobs(jobs)
}

// --- matching theorems --------------------------------------------------

fn matching(cfg: &Config) -> Vec<VerifyItem> {
    let mut jobs: Vec<Box<dyn FnOnce() -> VerifyItem + Send>> = Vec::new();
    let c = *cfg;

    // Direct verification of full matching complexes for the small products.
    for (n, m) in [(3usize, 3u8), (4, 3), (5, 3), (6, 3), (2, 4), (3, 4), (4, 4), (2, 5), (3, 5), (4, 5)] {
        jobs.push(Box::new(move || {
            let t0 = Instant::now();
            let mut item = VerifyItem::new(
                format!("matching-direct-{n}x{m}"),
                format!("M(P_{n} x P_{m}) computed from the full complex"),
            );
            let predicted = Evaluator::new().predict_matching(n, m).unwrap();
            item.predicted = Some(predicted.to_string());
            let g = Graph::path(n)
                .unwrap()
                .categorical_product(&Graph::path(m as usize).unwrap())
                .unwrap();
            let opts = c.eval_options(false);
            let result = matching_complex(&g, &opts.build)
                .map_err(ReduceError::from)
                .and_then(|cx| {
                    reduced_homology(&cx, None, c.max_matrix).map_err(ReduceError::from)
                });
            match result {
                Ok(p) => {
                    item.computed = Some(p.to_json());
                    item.status = if predicted.matches_profile(&p) {
                        Status::Match
                    } else {
                        Status::Mismatch
                    };
                }
                Err(e) if is_budget(&e) => {
                    item.status = Status::SkippedOverBudget;
                    item.note = Some(e.to_string());
                }
                Err(e) => {
                    item.status = Status::Mismatch;
                    item.note = Some(format!("error: {e}"));
                }
            }
            item.wall_ms = Some(t0.elapsed().as_millis());
            item
        }));
    }

    // Component route: direct homology per component, joined symbolically.
    for (n, m) in [(4usize, 3u8), (5, 3), (6, 3), (4, 4), (5, 4), (4, 5), (5, 5), (6, 5)] {
        jobs.push(Box::new(move || {
            let t0 = Instant::now();
            let mut item = VerifyItem::new(
                format!("matching-components-{n}x{m}"),
                format!("M(P_{n} x P_{m}) composed from component homology"),
            );
            let predicted = Evaluator::new().predict_matching(n, m).unwrap();
            item.predicted = Some(predicted.to_string());
            let comps = match components_of_product(n, m) {
                Ok(c) => c,
                Err(e) => {
                    item.status = Status::Mismatch;
                    item.note = Some(format!("component identification failed: {e}"));
                    return item;
                }
            };
            let opts = c.eval_options(false);
            let mut joined: Option<HomologyProfile> = None;
            for (comp, fam) in &comps {
                match profile_of_graph(comp, &opts) {
                    Ok(p) => {
                        // Also require each component to match its family
                        // prediction on the spot.
                        let fam_pred = Evaluator::new().predict_family(*fam).unwrap();
                        if !fam_pred.matches_profile(&p) {
                            item.status = Status::Mismatch;
                            item.note = Some(format!("component {fam} disagrees"));
                            return item;
                        }
                        joined = Some(match joined {
                            None => p,
                            Some(acc) => acc.join(&p).unwrap(),
                        });
                    }
                    Err(e) if is_budget(&e) => {
                        item.status = Status::SkippedOverBudget;
                        item.note = Some(e.to_string());
                        return item;
                    }
                    Err(e) => {
                        item.status = Status::Mismatch;
                        item.note = Some(format!("error: {e}"));
                        return item;
                    }
                }
            }
            let joined = joined.unwrap();
            item.computed = Some(joined.to_json());
            item.status = if predicted.matches_profile(&joined) {
                Status::Match
            } else {
                Status::Mismatch
            };
            item.wall_ms = Some(t0.elapsed().as_millis());
            item
        }));
    }

    run_jobs(jobs)
}

// --- components ---------------------------------------------------------

fn components(_cfg: &Config) -> Vec<VerifyItem> {
    let mut jobs: Vec<Box<dyn FnOnce() -> VerifyItem + Send>> = Vec::new();
    for n in 2..=9usize {
        for m in [3u8, 4, 5] {
            jobs.push(Box::new(move || {
                let t0 = Instant::now();
                let mut item = VerifyItem::new(
                    format!("components-{n}x{m}"),
                    format!("components of L(P_{n} x P_{m}) identified up to isomorphism"),
                );
                match components_of_product(n, m) {
                    Ok(comps) => {
                        item.computed = Some(
                            comps
                                .iter()
                                .map(|(_, id)| id.to_string())
                                .collect::<Vec<_>>()
                                .join(" | "),
                        );
                    }
                    Err(e) => {
                        item.status = Status::Mismatch;
                        item.note = Some(e.to_string());
                    }
                }
                item.wall_ms = Some(t0.elapsed().as_millis());
                item
            }));
        }
    }
    run_jobs(jobs)
}

// --- replay -------------------------------------------------------------

/// The fixture scripts encoding the published reduction sequences.
pub const FIXTURE_SCRIPTS: [(&str, &str, &str); 5] = [
    (
        "claim-3.9",
        "Gamma:5",
        include_str!("../fixtures/scripts/claim3_9.json"),
    ),
    (
        "claim-3.11",
        "B:5",
        include_str!("../fixtures/scripts/claim3_11.json"),
    ),
    (
        "claim-3.13",
        "D:5",
        include_str!("../fixtures/scripts/claim3_13.json"),
    ),
    (
        "claim-4.1",
        "Gamma:4",
        include_str!("../fixtures/scripts/claim4_1.json"),
    ),
    (
        "claim-5.2",
        "A:3",
        include_str!("../fixtures/scripts/claim5_2.json"),
    ),
];

pub const FOLD_SCRIPT_CTILDE0: &str = include_str!("../fixtures/scripts/ctilde0_fold.json");

fn replay(cfg: &Config) -> Vec<VerifyItem> {
    let mut jobs: Vec<Box<dyn FnOnce() -> VerifyItem + Send>> = Vec::new();
    let c = *cfg;

    for (claim, family_prefix, script_json) in FIXTURE_SCRIPTS {
        for n in 1..=c.replay_max_n {
            jobs.push(Box::new(move || {
                let t0 = Instant::now();
                let mut item = VerifyItem::new(
                    format!("replay-{claim}-n{n}"),
                    format!("scripted reduction for {claim} on index {n}"),
                );
                let fam: FamilyId = format!("{family_prefix}:{n}").parse().unwrap();
                let script = parse_script(script_json).expect("fixture parses");
                let g = build(fam).unwrap();
                match reduce::auto_reduce(&g, &Strategy::Script(script)) {
                    Ok(trace) => {
                        // Homology consistency: the initial complex against
                        // the terminal expression. Graphs are fold-reduced
                        // first; folds are themselves under test elsewhere.
                        match trace.check_homology(&c.eval_options(true)) {
                            Ok((lhs, rhs)) => {
                                item.predicted = Some(rhs.to_json());
                                item.computed = Some(lhs.to_json());
                                item.status = if lhs == rhs {
                                    Status::Match
                                } else {
                                    Status::Mismatch
                                };
                            }
                            Err(e) if is_budget(&e) => {
                                item.status = Status::SkippedOverBudget;
                                item.note = Some(e.to_string());
                            }
                            Err(e) => {
                                item.status = Status::Mismatch;
                                item.note = Some(format!("check failed: {e}"));
                            }
                        }
                    }
                    Err(e) => {
                        item.status = Status::Mismatch;
                        item.note = Some(format!("replay failed: {e}"));
                    }
                }
                item.wall_ms = Some(t0.elapsed().as_millis());
                item
            }));
        }
    }

    jobs.push(Box::new(move || {
        let t0 = Instant::now();
        let mut item = VerifyItem::new(
            "replay-ctilde0-fold",
            "fold script reduces the tilde C start graph to a 7-path",
        );
        let script = parse_script(FOLD_SCRIPT_CTILDE0).expect("fixture parses");
        let g = build("CTilde:5:0".parse().unwrap()).unwrap();
        match reduce::auto_reduce(&g, &Strategy::Script(script)) {
            Ok(trace) => {
                let leaf = trace.terminal_graph();
                let ok = matchtop_core::iso::is_isomorphic(&leaf, &Graph::path(7).unwrap());
                item.computed = Some(format!("{} vertices", leaf.n_vertices()));
                item.status = if ok { Status::Match } else { Status::Mismatch };
            }
            Err(e) => {
                item.status = Status::Mismatch;
                item.note = Some(format!("replay failed: {e}"));
            }
        }
        item.wall_ms = Some(t0.elapsed().as_millis());
        item
    }));

    run_jobs(jobs)
}
