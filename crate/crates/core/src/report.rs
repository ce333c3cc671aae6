//! Verification suites over a loaded geometry and the report they produce.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::counting::{replay_lemma, solve_counting_system, AffineSolutionFamily, CountingSystem, LemmaId};
use crate::design::{
    derived_design, design_from_partition, lambda_vector, multiplicity_spectrum, verify_t_design, Design,
};
use crate::error::ReportError;
use crate::geometry::{check_gq_axioms, GQParams, GQStructure};
use crate::srg::{
    adjacency_profile, derived_profile, local_partition, pair_law_check, point_graph, q54, refine,
    refined_counts_check, scan_triads, verify_srg, PointGraph, SrgParams, TriadScan, TriadSelection,
};

pub const SCHEMA: u32 = 1;

/// Witnesses kept per suite.
pub const MAX_WITNESSES: usize = 5;

pub const STRUCTURAL_SUITES: [&str; 12] = [
    "axioms",
    "srg",
    "coclique",
    "triads",
    "3-regularity",
    "design",
    "lambda",
    "multiplicity",
    "refined-counts",
    "pair-law",
    "profile-n5",
    "bprime-n0",
];

pub const SYSTEM_SUITES: [&str; 3] = ["system-star", "system-double-star", "system-triple-star"];

/// Every suite id, in run order.
pub fn all_suites() -> Vec<String> {
    STRUCTURAL_SUITES
        .iter()
        .chain(SYSTEM_SUITES.iter())
        .map(|s| s.to_string())
        .chain(LemmaId::ALL.iter().map(|id| format!("replay-{id}")))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub status: Status,
    /// Number of individual cases examined.
    pub checked: u64,
    pub witnesses: Vec<String>,
    pub wall_time_us: u64,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub overall: Status,
    pub entries: BTreeMap<String, SuiteResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let report: Self = serde_json::from_str(text).map_err(|e| ReportError::Json(e.to_string()))?;
        if report.schema != SCHEMA {
            return Err(ReportError::Json(format!("schema {} (expected {SCHEMA})", report.schema)));
        }
        Ok(report)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (id, entry) in &self.entries {
            let status = match entry.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let ms = entry.wall_time_us as f64 / 1000.0;
            writeln!(out, "{status}  {id:<20} checked {:>9}  {ms:>10.1} ms", entry.checked).unwrap();
            for w in &entry.witnesses {
                writeln!(out, "      {w}").unwrap();
            }
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "overall: {overall} ({} suites)", self.entries.len()).unwrap();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Suite ids to run; empty means all.
    pub suites: Vec<String>,
    /// Random triads instead of the exhaustive scan.
    pub triad_sample: Option<usize>,
    /// Extra non-edges (besides the canonical one) for per-non-edge suites.
    pub nonedge_sample: usize,
    pub seed: u64,
    /// Every non-edge for per-non-edge suites.
    pub deep: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { suites: Vec::new(), triad_sample: None, nonedge_sample: 50, seed: 0, deep: false }
    }
}

struct Outcome {
    ok: bool,
    checked: u64,
    witnesses: Vec<String>,
    details: Value,
}

impl Outcome {
    fn new(ok: bool, checked: u64, witnesses: Vec<String>, details: Value) -> Self {
        Self { ok: ok && witnesses.is_empty(), checked, witnesses, details }
    }
}

/// Collects up to `MAX_WITNESSES` failure strings, counting the rest.
#[derive(Default)]
struct Witnesses {
    kept: Vec<String>,
    total: u64,
}

impl Witnesses {
    fn add(&mut self, w: impl FnOnce() -> String) {
        if self.kept.len() < MAX_WITNESSES {
            self.kept.push(w());
        }
        self.total += 1;
    }

    fn extend(&mut self, other: Vec<String>) {
        for w in other {
            self.add(|| w);
        }
    }

    fn finish(mut self) -> Vec<String> {
        if self.total > self.kept.len() as u64 {
            self.kept.push(format!("... {} failures in total", self.total));
        }
        self.kept
    }
}

/// Per-(non-edge, r) measurements shared by the profile suites.
struct LocalRecord {
    pq: (usize, usize),
    r: usize,
    sizes_ok: bool,
    counts: Vec<usize>,
    b1_by_class: Vec<usize>,
    a2_b1_n0: Vec<(usize, usize)>,
    derived: Vec<(usize, Vec<usize>)>,
}

struct Context<'a> {
    s: &'a GQStructure,
    opts: &'a VerifyOptions,
    graph: Option<PointGraph>,
    selected: Option<Vec<(usize, usize)>>,
    triads: Option<TriadScan>,
    designs: Option<Vec<((usize, usize), Design)>>,
    locals: Option<Vec<LocalRecord>>,
}

impl<'a> Context<'a> {
    fn graph(&mut self) -> &PointGraph {
        self.graph.get_or_insert_with(|| point_graph(self.s))
    }

    /// Canonical non-edge first, then either every other non-edge or a
    /// seeded sample of them in ascending order.
    fn selected(&mut self) -> Vec<(usize, usize)> {
        if self.selected.is_none() {
            let opts = self.opts;
            let all: Vec<_> = self.graph().non_edges().collect();
            let chosen = if all.is_empty() {
                Vec::new()
            } else if opts.deep || opts.nonedge_sample + 1 >= all.len() {
                all
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                let mut picks = sample(&mut rng, all.len() - 1, opts.nonedge_sample).into_vec();
                picks.sort_unstable();
                std::iter::once(all[0]).chain(picks.into_iter().map(|i| all[i + 1])).collect()
            };
            self.selected = Some(chosen);
        }
        self.selected.clone().unwrap()
    }

    fn triads(&mut self) -> &TriadScan {
        if self.triads.is_none() {
            let selection = match self.opts.triad_sample {
                Some(count) => TriadSelection::Sample { count, seed: self.opts.seed },
                None => TriadSelection::Exhaustive,
            };
            let scan = scan_triads(self.graph(), selection);
            self.triads = Some(scan);
        }
        self.triads.as_ref().unwrap()
    }

    fn designs(&mut self) -> Result<&[((usize, usize), Design)], Vec<String>> {
        if self.designs.is_none() {
            let selected = self.selected();
            let g = self.graph();
            let built: Vec<Result<_, String>> = selected
                .par_iter()
                .map(|&(p, q)| {
                    let part = local_partition(g, p, q).map_err(|e| format!("non-edge ({p},{q}): {e}"))?;
                    let (d, _) = design_from_partition(g, &part).map_err(|e| format!("non-edge ({p},{q}): {e}"))?;
                    Ok(((p, q), d))
                })
                .collect();
            let errors: Vec<String> = built.iter().filter_map(|r| r.as_ref().err().cloned()).collect();
            if !errors.is_empty() {
                return Err(errors);
            }
            self.designs = Some(built.into_iter().map(Result::unwrap).collect());
        }
        Ok(self.designs.as_deref().unwrap())
    }

    fn locals(&mut self) -> Result<&[LocalRecord], Vec<String>> {
        if self.locals.is_none() {
            let selected = self.selected();
            let g = self.graph();
            let per_edge: Vec<Result<Vec<LocalRecord>, String>> = selected
                .par_iter()
                .map(|&(p, q)| {
                    let base = local_partition(g, p, q).map_err(|e| format!("non-edge ({p},{q}): {e}"))?;
                    base.b
                        .iter()
                        .map(|r| {
                            let part = refine(g, &base, r).map_err(|e| format!("({p},{q}), r = {r}: {e}"))?;
                            let prof = adjacency_profile(g, &part);
                            let refined = refined_counts_check(g, &part, &prof);
                            let derived = part
                                .a2
                                .iter()
                                .map(|a| {
                                    derived_profile(g, &part, &prof, a)
                                        .map(|d| (a, d.counts))
                                        .map_err(|e| format!("({p},{q}), r = {r}, a = {a}: {e}"))
                                })
                                .collect::<Result<Vec<_>, _>>()?;
                            let sizes_ok = part.a1.count() == q54::A1_SIZE
                                && part.a2.count() == q54::A2_SIZE
                                && part.b1.count() == q54::B1_SIZE
                                && part.b2.count() == q54::B2_SIZE
                                && part.c1.count() == q54::C1_SIZE
                                && part.d1.count() == q54::C1_SIZE;
                            Ok(LocalRecord {
                                pq: (p, q),
                                r,
                                sizes_ok,
                                counts: prof.counts,
                                b1_by_class: refined.b1_by_class,
                                a2_b1_n0: refined.a2_b1_n0,
                                derived,
                            })
                        })
                        .collect()
                })
                .collect();
            let errors: Vec<String> = per_edge.iter().filter_map(|r| r.as_ref().err().cloned()).collect();
            if !errors.is_empty() {
                return Err(errors);
            }
            self.locals = Some(per_edge.into_iter().flat_map(Result::unwrap).collect());
        }
        Ok(self.locals.as_deref().unwrap())
    }
}

/// Runs the selected suites. Unknown suite ids are rejected before any work.
pub fn run_verification(s: &GQStructure, opts: &VerifyOptions) -> Result<VerificationReport, ReportError> {
    let known = all_suites();
    let wanted: Vec<String> = if opts.suites.is_empty() {
        known.clone()
    } else {
        for id in &opts.suites {
            if !known.contains(id) {
                return Err(ReportError::UnknownSuite(id.clone()));
            }
        }
        known.iter().filter(|k| opts.suites.contains(k)).cloned().collect()
    };

    let mut ctx = Context { s, opts, graph: None, selected: None, triads: None, designs: None, locals: None };
    let mut entries = BTreeMap::new();
    for id in wanted {
        let start = Instant::now();
        let outcome = run_suite(&mut ctx, &id);
        let wall_time_us = start.elapsed().as_micros() as u64;
        entries.insert(
            id,
            SuiteResult {
                status: Status::from_bool(outcome.ok),
                checked: outcome.checked,
                witnesses: outcome.witnesses,
                wall_time_us,
                details: outcome.details,
            },
        );
    }
    let overall = Status::from_bool(entries.values().all(|e| e.status == Status::Pass));
    Ok(VerificationReport { schema: SCHEMA, overall, entries })
}

fn run_suite(ctx: &mut Context<'_>, id: &str) -> Outcome {
    match id {
        "axioms" => suite_axioms(ctx),
        "srg" => suite_srg(ctx),
        "coclique" => suite_coclique(ctx),
        "triads" => suite_triads(ctx),
        "3-regularity" => suite_regularity(ctx),
        "design" => suite_design(ctx),
        "lambda" => suite_lambda(ctx),
        "multiplicity" => suite_multiplicity(ctx),
        "refined-counts" => suite_refined_counts(ctx),
        "pair-law" => suite_pair_law(ctx),
        "profile-n5" => suite_profile_n5(ctx),
        "bprime-n0" => suite_bprime_n0(ctx),
        "system-star" => suite_system(SystemCase::star()),
        "system-double-star" => suite_system(SystemCase::double_star()),
        "system-triple-star" => suite_system(SystemCase::triple_star()),
        _ => {
            let lemma = id.strip_prefix("replay-").and_then(|l| l.parse::<LemmaId>().ok());
            suite_replay(lemma.expect("suite ids are validated up front"))
        }
    }
}

fn failed_to_build(errors: Vec<String>) -> Outcome {
    let mut w = Witnesses::default();
    w.extend(errors);
    Outcome::new(false, 0, w.finish(), Value::Null)
}

fn suite_axioms(ctx: &mut Context<'_>) -> Outcome {
    let params = GQParams::Q54;
    let report = check_gq_axioms(ctx.s, params);
    let mut w = Witnesses::default();
    if ctx.s.point_count() != params.point_count() {
        w.add(|| format!("{} points, expected {}", ctx.s.point_count(), params.point_count()));
    }
    if ctx.s.line_count() != params.line_count() {
        w.add(|| format!("{} lines, expected {}", ctx.s.line_count(), params.line_count()));
    }
    for status in [&report.incidence, &report.lines_meet_once, &report.alpha] {
        if let crate::geometry::AxiomStatus::Fail(f) = status {
            w.add(|| format!("{f:?}"));
        }
    }
    let details = json!({
        "points": ctx.s.point_count(),
        "lines": ctx.s.line_count(),
        "s": params.s,
        "t": params.t,
        "incidence": report.incidence.passed(),
        "lines_meet_once": report.lines_meet_once.passed(),
        "alpha": report.alpha.passed(),
    });
    Outcome::new(report.all_passed(), report.antiflags_checked as u64, w.finish(), details)
}

fn suite_srg(ctx: &mut Context<'_>) -> Outcome {
    let g = ctx.graph();
    let n = g.n() as u64;
    let pairs = n * n.saturating_sub(1) / 2;
    let edges = g.edge_count() as u64;
    match verify_srg(g) {
        Ok(p) => {
            let mut w = Witnesses::default();
            if p != SrgParams::Q54 {
                w.add(|| format!("parameters {p}, expected {}", SrgParams::Q54));
            }
            let details = json!({
                "v": p.v, "k": p.k, "lambda": p.lambda, "mu": p.mu,
                "edges": edges, "non_edges": pairs - edges,
            });
            Outcome::new(true, pairs, w.finish(), details)
        }
        Err(f) => Outcome::new(false, pairs, vec![f.to_string()], Value::Null),
    }
}

fn suite_coclique(ctx: &mut Context<'_>) -> Outcome {
    let g = ctx.graph();
    let non_edges: Vec<_> = g.non_edges().collect();
    let expected = [q54::A_SIZE, q54::B_SIZE, q54::C_SIZE, q54::C_SIZE];
    let failures: Vec<String> = non_edges
        .par_iter()
        .filter_map(|&(p, q)| match local_partition(g, p, q) {
            Ok(part) if part.sizes() == expected => None,
            Ok(part) => Some(format!("non-edge ({p},{q}): |A|,|B|,|C|,|D| = {:?}", part.sizes())),
            Err(e) => Some(format!("non-edge ({p},{q}): {e}")),
        })
        .collect();
    let mut w = Witnesses::default();
    w.extend(failures);
    let details = json!({ "non_edges": non_edges.len(), "sizes": expected });
    Outcome::new(!non_edges.is_empty(), non_edges.len() as u64, w.finish(), details)
}

fn histogram(h: &BTreeMap<usize, u64>) -> Value {
    Value::Object(h.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn triad_mode(opts: &VerifyOptions) -> Value {
    match opts.triad_sample {
        Some(count) => json!({ "sample": count, "seed": opts.seed }),
        None => json!("exhaustive"),
    }
}

fn suite_triads(ctx: &mut Context<'_>) -> Outcome {
    let mode = triad_mode(ctx.opts);
    let scan = ctx.triads();
    let mut w = Witnesses::default();
    for (&size, &count) in &scan.trace_sizes {
        if size != q54::TRIAD_TRACE {
            w.add(|| format!("{count} triads with trace size {size}"));
        }
    }
    let details = json!({ "mode": mode, "trace_sizes": histogram(&scan.trace_sizes) });
    Outcome::new(scan.uniform_trace(q54::TRIAD_TRACE), scan.triads, w.finish(), details)
}

fn suite_regularity(ctx: &mut Context<'_>) -> Outcome {
    let mode = triad_mode(ctx.opts);
    let scan = ctx.triads();
    let mut w = Witnesses::default();
    if let Some(t) = scan.first_irregular {
        w.add(|| format!("triad {t:?} is not 3-regular"));
    }
    if scan.closure_misses_triad > 0 {
        w.add(|| format!("{} triads outside their own closure", scan.closure_misses_triad));
    }
    for (&size, &count) in &scan.closure_sizes {
        if size > q54::TRIAD_TRACE {
            w.add(|| format!("{count} triads with |U| = {size} > {}", q54::TRIAD_TRACE));
        }
    }
    let details = json!({ "mode": mode, "closure_sizes": histogram(&scan.closure_sizes) });
    Outcome::new(scan.all_regular(), scan.triads, w.finish(), details)
}

fn suite_design(ctx: &mut Context<'_>) -> Outcome {
    let designs = match ctx.designs() {
        Ok(d) => d,
        Err(e) => return failed_to_build(e),
    };
    let failures: Vec<String> = designs
        .par_iter()
        .filter_map(|((p, q), d)| {
            let (ok, witness) = verify_t_design(d, 3, q54::A_SIZE, q54::TRIAD_TRACE, 3);
            if d.block_count() != q54::B_SIZE {
                Some(format!("non-edge ({p},{q}): {} blocks", d.block_count()))
            } else if !ok {
                Some(format!("non-edge ({p},{q}): not a 3-(17,5,3) design: {witness:?}"))
            } else {
                None
            }
        })
        .collect();
    let mut w = Witnesses::default();
    w.extend(failures);
    let details = json!({ "non_edges": designs.len(), "design": "3-(17,5,3)", "blocks": q54::B_SIZE });
    Outcome::new(!designs.is_empty(), designs.len() as u64, w.finish(), details)
}

fn suite_lambda(ctx: &mut Context<'_>) -> Outcome {
    let designs = match ctx.designs() {
        Ok(d) => d,
        Err(e) => return failed_to_build(e),
    };
    let expected: Vec<usize> = q54::LAMBDAS.iter().map(|&l| l as usize).collect();
    let expected_derived: Vec<usize> = q54::DERIVED_LAMBDAS.iter().map(|&l| l as usize).collect();
    let failures: Vec<Vec<String>> = designs
        .par_iter()
        .map(|((p, q), d)| {
            let mut out = Vec::new();
            match lambda_vector(d, 3) {
                Ok(Ok(l)) if l.0 == expected => {}
                other => out.push(format!("non-edge ({p},{q}): λ = {other:?}")),
            }
            for x in 0..d.v() {
                match derived_design(d, x).map(|dx| lambda_vector(&dx, 2)) {
                    Ok(Ok(Ok(l))) if l.0 == expected_derived => {}
                    other => out.push(format!("non-edge ({p},{q}), point {x}: derived λ = {other:?}")),
                }
            }
            out
        })
        .collect();
    let mut w = Witnesses::default();
    for f in failures {
        w.extend(f);
    }
    let checked = designs.iter().map(|(_, d)| 1 + d.v() as u64).sum();
    let details = json!({ "lambda": expected, "derived_lambda": expected_derived });
    Outcome::new(!designs.is_empty(), checked, w.finish(), details)
}

fn suite_multiplicity(ctx: &mut Context<'_>) -> Outcome {
    let designs = match ctx.designs() {
        Ok(d) => d,
        Err(e) => return failed_to_build(e),
    };
    let expected: BTreeMap<usize, usize> = [(3, 68)].into();
    let failures: Vec<String> = designs
        .par_iter()
        .filter_map(|((p, q), d)| {
            let spectrum = multiplicity_spectrum(d);
            if spectrum != expected {
                return Some(format!("non-edge ({p},{q}): spectrum {spectrum:?}"));
            }
            let (ok, witness) = verify_t_design(&d.support(), 3, q54::A_SIZE, q54::TRIAD_TRACE, 1);
            (!ok).then(|| format!("non-edge ({p},{q}): support is not a 3-(17,5,1) design: {witness:?}"))
        })
        .collect();
    let mut w = Witnesses::default();
    w.extend(failures);
    let details = json!({ "spectrum": { "3": 68 }, "support": "3-(17,5,1)" });
    Outcome::new(!designs.is_empty(), designs.len() as u64, w.finish(), details)
}

fn local_suite(ctx: &mut Context<'_>, check: impl Fn(&LocalRecord) -> Vec<String>, details: Value) -> Outcome {
    let non_edges = ctx.selected().len();
    let records = match ctx.locals() {
        Ok(r) => r,
        Err(e) => return failed_to_build(e),
    };
    let mut w = Witnesses::default();
    for rec in records {
        w.extend(check(rec));
    }
    let mut details = details;
    details["non_edges"] = json!(non_edges);
    Outcome::new(!records.is_empty(), records.len() as u64, w.finish(), details)
}

fn suite_refined_counts(ctx: &mut Context<'_>) -> Outcome {
    let expected = [q54::B1_N0, q54::B1_N1];
    local_suite(
        ctx,
        |rec| {
            let mut out = Vec::new();
            let (p, q) = rec.pq;
            if !rec.sizes_ok {
                out.push(format!("({p},{q}), r = {}: refined part sizes differ", rec.r));
            }
            let split_ok = rec.b1_by_class.len() >= 2
                && rec.b1_by_class[..2] == expected
                && rec.b1_by_class[2..].iter().all(|&c| c == 0);
            if !split_ok {
                out.push(format!("({p},{q}), r = {}: |B′∩Nᵢ| = {:?}", rec.r, rec.b1_by_class));
            }
            out
        },
        json!({ "b1_n0": q54::B1_N0, "b1_n1": q54::B1_N1 }),
    )
}

fn suite_bprime_n0(ctx: &mut Context<'_>) -> Outcome {
    local_suite(
        ctx,
        |rec| {
            let (p, q) = rec.pq;
            let mut out = Vec::new();
            if rec.a2_b1_n0.len() != q54::A2_SIZE {
                out.push(format!("({p},{q}), r = {}: |A″| = {}", rec.r, rec.a2_b1_n0.len()));
            }
            for &(a, c) in &rec.a2_b1_n0 {
                if c != q54::A2_B1_N0 {
                    out.push(format!("({p},{q}), r = {}, a = {a}: |Γ(a)∩B′∩N₀| = {c}", rec.r));
                }
            }
            out
        },
        json!({ "count": q54::A2_B1_N0 }),
    )
}

fn suite_profile_n5(ctx: &mut Context<'_>) -> Outcome {
    let adjacency = CountingSystem::adjacency();
    let derived = CountingSystem::derived();
    let star = solve_counting_system(&adjacency, &[0, 1]).expect("the (n₀, n₁) family is determined");
    local_suite(
        ctx,
        |rec| {
            let (p, q) = rec.pq;
            let r = rec.r;
            let mut out = Vec::new();
            let n: Vec<i64> = rec.counts.iter().map(|&c| c as i64).collect();
            if n.get(5) != Some(&3) {
                out.push(format!("({p},{q}), r = {r}: n = {n:?}"));
                return out;
            }
            if !adjacency.is_satisfied_by(&n) {
                out.push(format!("({p},{q}), r = {r}: n = {n:?} violates the counting equations"));
            }
            if star.evaluate_integers(&n[..2]).as_deref() != Some(&n[..]) {
                out.push(format!("({p},{q}), r = {r}: n = {n:?} is off the (n₀, n₁) family"));
            }
            for (a, m) in &rec.derived {
                let m: Vec<i64> = m.iter().map(|&c| c as i64).collect();
                if !derived.is_satisfied_by(&m) {
                    out.push(format!("({p},{q}), r = {r}, a = {a}: m = {m:?} violates the derived equations"));
                }
            }
            out
        },
        json!({ "n5": 3 }),
    )
}

fn suite_pair_law(ctx: &mut Context<'_>) -> Outcome {
    let selected = ctx.selected();
    let g = ctx.graph();
    let per_edge: Vec<(u64, Vec<String>, BTreeMap<usize, u64>)> = selected
        .par_iter()
        .map(|&(p, q)| {
            let mut failures = Vec::new();
            let mut ks = BTreeMap::new();
            let part = match local_partition(g, p, q) {
                Ok(part) => part,
                Err(e) => return (0, vec![format!("non-edge ({p},{q}): {e}")], ks),
            };
            let bs = part.b.to_vec();
            let mut checked = 0;
            for (i, &x) in bs.iter().enumerate() {
                for &y in &bs[i + 1..] {
                    if g.adjacent(x, y) {
                        continue;
                    }
                    checked += 1;
                    match pair_law_check(g, &part, x, y) {
                        Ok(law) if law.holds() => *ks.entry(law.k).or_default() += 1,
                        Ok(law) => failures.push(format!("({p},{q}): {law:?}")),
                        Err(e) => failures.push(format!("({p},{q}), x = {x}, y = {y}: {e}")),
                    }
                }
            }
            (checked, failures, ks)
        })
        .collect();
    let mut w = Witnesses::default();
    let mut checked = 0;
    let mut ks: BTreeMap<usize, u64> = BTreeMap::new();
    for (c, f, k) in per_edge {
        checked += c;
        w.extend(f);
        for (key, v) in k {
            *ks.entry(key).or_default() += v;
        }
    }
    let details = json!({ "non_edges": selected.len(), "k_histogram": histogram(&ks) });
    Outcome::new(checked > 0, checked, w.finish(), details)
}

/// A counting system, its free unknowns, and the family as displayed.
struct SystemCase {
    system: CountingSystem,
    free: Vec<usize>,
    particular: Vec<i64>,
    basis: Vec<Vec<i64>>,
}

impl SystemCase {
    fn star() -> Self {
        Self {
            system: CountingSystem::adjacency(),
            free: vec![0, 1],
            particular: vec![660, -990, 720, -186],
            basis: vec![vec![-10, 20, -15, 4], vec![-4, 6, -4, 1]],
        }
    }

    fn double_star() -> Self {
        Self {
            system: CountingSystem::adjacency().with_fixed(5, 1),
            free: vec![4],
            particular: vec![28, 75, 80, 20],
            basis: vec![vec![1, -4, 6, -4]],
        }
    }

    fn triple_star() -> Self {
        Self {
            system: CountingSystem::derived(),
            free: vec![3, 4],
            particular: vec![15, 15, 30],
            basis: vec![vec![-1, 3, -3], vec![-3, 8, -6]],
        }
    }
}

fn family_json(f: &AffineSolutionFamily) -> Value {
    let basis: BTreeMap<String, Value> = f
        .free
        .iter()
        .map(|&u| (u.to_string(), json!(f.basis_integers(u))))
        .collect();
    json!({ "bound": f.bound, "free": f.free, "particular": f.particular_integers(), "basis": basis })
}

fn suite_system(case: SystemCase) -> Outcome {
    let family = match solve_counting_system(&case.system, &case.free) {
        Ok(f) => f,
        Err(e) => return Outcome::new(false, 0, vec![e.to_string()], Value::Null),
    };
    let mut w = Witnesses::default();
    let mut checked = 0;
    let particular = family.particular_integers();
    checked += case.particular.len() as u64;
    if particular.as_ref() != Some(&case.particular) {
        w.add(|| format!("particular {particular:?}, expected {:?}", case.particular));
    }
    for (&u, expected) in case.free.iter().zip(&case.basis) {
        checked += expected.len() as u64;
        let got = family.basis_integers(u);
        if got.as_ref() != Some(expected) {
            w.add(|| format!("basis for unknown {u}: {got:?}, expected {expected:?}"));
        }
    }
    if !family.satisfies(&case.system) {
        w.add(|| "family does not satisfy its system identically".to_string());
    }
    Outcome::new(true, checked, w.finish(), family_json(&family))
}

fn suite_replay(id: LemmaId) -> Outcome {
    let trace = replay_lemma(id);
    let witnesses = trace.failures().map(|s| s.statement.clone()).collect();
    let details = json!({
        "arithmetic_steps": trace.arithmetic_steps(),
        "geometric_steps": trace.geometric_steps(),
        "trace": trace,
    });
    Outcome::new(trace.passes(), trace.checked_steps() as u64, witnesses, details)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_quadric_quadrangle;

    fn fast(suites: &[&str]) -> VerifyOptions {
        VerifyOptions {
            suites: suites.iter().map(|s| s.to_string()).collect(),
            triad_sample: Some(2000),
            nonedge_sample: 2,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn suite_ids_are_unique() {
        let ids = all_suites();
        let set: std::collections::BTreeSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
        assert!(ids.contains(&"replay-L3.4".to_string()));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let s = build_quadric_quadrangle();
        assert_eq!(
            run_verification(&s, &fast(&["nope"])).unwrap_err(),
            ReportError::UnknownSuite("nope".into())
        );
    }

    #[test]
    fn sampled_run_passes_and_round_trips() {
        let s = build_quadric_quadrangle();
        let report = run_verification(&s, &fast(&[])).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.entries.len(), all_suites().len());
        assert_eq!(report.entries["srg"].details["k"], 68);
        // canonical + 2 sampled non-edges, 204 choices of r each
        assert_eq!(report.entries["profile-n5"].checked, 3 * 204);
        let back = VerificationReport::from_json(&report.to_json()).unwrap();
        assert_eq!(back, report);
        let last = format!("overall: PASS ({} suites)\n", all_suites().len());
        assert!(report.render_text().ends_with(&last));
    }

    #[test]
    fn non_edge_sample_is_seeded() {
        let s = build_quadric_quadrangle();
        let opts = fast(&["design"]);
        let mut a = Context { s: &s, opts: &opts, graph: None, selected: None, triads: None, designs: None, locals: None };
        let mut b = Context { s: &s, opts: &opts, graph: None, selected: None, triads: None, designs: None, locals: None };
        let sa = a.selected();
        assert_eq!(sa, b.selected());
        assert_eq!(sa[0], (0, 52));
        assert_eq!(sa.len(), 3);
        let other = VerifyOptions { seed: 7, ..opts.clone() };
        let mut c = Context { s: &s, opts: &other, graph: None, selected: None, triads: None, designs: None, locals: None };
        assert_ne!(sa, c.selected());
    }

    #[test]
    fn broken_structure_fails_axioms_only_where_expected() {
        let s = build_quadric_quadrangle().without_line(0).unwrap();
        let report = run_verification(&s, &fast(&["axioms", "srg", "system-star"])).unwrap();
        assert!(!report.passed());
        assert_eq!(report.entries["axioms"].status, Status::Fail);
        assert_eq!(report.entries["srg"].status, Status::Fail);
        assert_eq!(report.entries["system-star"].status, Status::Pass);
        assert!(!report.entries["axioms"].witnesses.is_empty());
    }

    #[test]
    fn schema_mismatch_is_rejected() {
        let s = build_quadric_quadrangle();
        let report = run_verification(&s, &fast(&["system-star"])).unwrap();
        let json = report.to_json().replace("\"schema\": 1", "\"schema\": 2");
        assert!(VerificationReport::from_json(&json).is_err());
    }
}
