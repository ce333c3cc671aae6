use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PointGraph;
use crate::bitset::BitSet;
use crate::error::AnalysisError;

/// Split of `V ∖ {p, q}` around a non-edge `{p, q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPartition {
    pub p: usize,
    pub q: usize,
    /// `Γ(p) ∩ Γ(q)`
    pub a: BitSet,
    /// common non-neighbours of `p` and `q`
    pub b: BitSet,
    /// `Γ(p) ∖ Γ(q)`
    pub c: BitSet,
    /// `Γ(q) ∖ Γ(p)`
    pub d: BitSet,
}

impl LocalPartition {
    pub fn sizes(&self) -> [usize; 4] {
        [self.a.count(), self.b.count(), self.c.count(), self.d.count()]
    }
}

/// Rejects equal or adjacent `p, q`, and a non-coclique `A`.
pub fn local_partition(g: &PointGraph, p: usize, q: usize) -> Result<LocalPartition, AnalysisError> {
    g.check_vertex(p)?;
    g.check_vertex(q)?;
    if p == q {
        return Err(AnalysisError::NotDistinct(p));
    }
    if g.adjacent(p, q) {
        return Err(AnalysisError::Adjacent(p, q));
    }
    let (gp, gq) = (g.neighbours(p), g.neighbours(q));
    let a = gp.intersection(gq);
    let mut b = g.non_neighbours(p).intersection(&g.non_neighbours(q));
    b.remove(p);
    b.remove(q);
    let mut c = gp.difference(gq);
    c.remove(q);
    let mut d = gq.difference(gp);
    d.remove(p);

    for x in a.iter() {
        if let Some(y) = g.neighbours(x).intersection(&a).iter().next() {
            return Err(AnalysisError::NotCoclique(x.min(y), x.max(y)));
        }
    }
    Ok(LocalPartition { p, q, a, b, c, d })
}

/// `LocalPartition` refined by adjacency to a vertex `r ∈ B`: primed sets
/// are the neighbours of `r`, double-primed the non-neighbours other than `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedPartition {
    pub base: LocalPartition,
    pub r: usize,
    pub a1: BitSet,
    pub a2: BitSet,
    pub b1: BitSet,
    pub b2: BitSet,
    pub c1: BitSet,
    pub c2: BitSet,
    pub d1: BitSet,
    pub d2: BitSet,
}

pub fn refine(g: &PointGraph, base: &LocalPartition, r: usize) -> Result<RefinedPartition, AnalysisError> {
    g.check_vertex(r)?;
    if !base.b.contains(r) {
        return Err(AnalysisError::NotInSet { vertex: r, set: "B" });
    }
    let gr = g.neighbours(r);
    let split = |set: &BitSet| (set.intersection(gr), set.difference(gr));
    let (a1, a2) = split(&base.a);
    let (b1, mut b2) = split(&base.b);
    b2.remove(r);
    let (c1, c2) = split(&base.c);
    let (d1, d2) = split(&base.d);
    Ok(RefinedPartition { base: base.clone(), r, a1, a2, b1, b2, c1, c2, d1, d2 })
}

fn check_triad(g: &PointGraph, t: [usize; 3]) -> Result<(), AnalysisError> {
    for &v in &t {
        g.check_vertex(v)?;
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if t[i] == t[j] {
            return Err(AnalysisError::NotDistinct(t[i]));
        }
        if g.adjacent(t[i], t[j]) {
            return Err(AnalysisError::Adjacent(t[i], t[j]));
        }
    }
    Ok(())
}

/// `Γ(p) ∩ Γ(q) ∩ Γ(r)` for a triad, ascending.
pub fn triad_trace(g: &PointGraph, p: usize, q: usize, r: usize) -> Result<Vec<usize>, AnalysisError> {
    check_triad(g, [p, q, r])?;
    let mut t = g.neighbours(p).intersection(g.neighbours(q));
    t.intersect_with(g.neighbours(r));
    Ok(t.to_vec())
}

/// Trace `T` of a triad and its closure `U` = vertices adjacent to all of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCheck {
    pub trace: Vec<usize>,
    pub closure: Vec<usize>,
}

impl RegularityCheck {
    /// `|U| ≤ |T|`
    pub fn within_bound(&self) -> bool {
        self.closure.len() <= self.trace.len()
    }

    /// 3-regular: the closure attains `|T|` (= s + 1 when t = s²).
    pub fn is_regular(&self) -> bool {
        !self.trace.is_empty() && self.closure.len() == self.trace.len()
    }
}

pub fn check_3_regularity(g: &PointGraph, p: usize, q: usize, r: usize) -> Result<RegularityCheck, AnalysisError> {
    let trace = triad_trace(g, p, q, r)?;
    let mut u = BitSet::full(g.n());
    for &x in &trace {
        u.intersect_with(g.neighbours(x));
    }
    Ok(RegularityCheck { trace, closure: u.to_vec() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriadSelection {
    Exhaustive,
    /// Uniform random triads, drawn with replacement.
    Sample { count: usize, seed: u64 },
}

/// Histograms over a set of triads.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriadScan {
    pub triads: u64,
    /// `|T|` → number of triads
    pub trace_sizes: BTreeMap<usize, u64>,
    /// `|U|` → number of triads
    pub closure_sizes: BTreeMap<usize, u64>,
    /// Triads whose closure misses one of p, q, r.
    pub closure_misses_triad: u64,
    /// First triad (in scan order) that is not 3-regular or breaks `|U| ≤ |T|`.
    pub first_irregular: Option<[usize; 3]>,
}

impl TriadScan {
    fn record(&mut self, g: &PointGraph, t: [usize; 3]) {
        let rows = [g.neighbours(t[0]), g.neighbours(t[1]), g.neighbours(t[2])];
        let words = rows[0].words().len();
        let mut trace_words = vec![0u64; words];
        for (w, slot) in trace_words.iter_mut().enumerate() {
            *slot = rows[0].words()[w] & rows[1].words()[w] & rows[2].words()[w];
        }
        let trace: Vec<usize> = words_iter(&trace_words).collect();
        let mut closure = vec![u64::MAX; words];
        for &x in &trace {
            for (c, w) in closure.iter_mut().zip(g.neighbours(x).words()) {
                *c &= w;
            }
        }
        if trace.is_empty() {
            // Every vertex is in the closure of an empty trace.
            closure = BitSet::full(g.n()).words().to_vec();
        }
        let closure_size: usize = closure.iter().map(|w| w.count_ones() as usize).sum();
        let holds = |v: usize| closure[v / 64] & (1 << (v % 64)) != 0;

        self.triads += 1;
        *self.trace_sizes.entry(trace.len()).or_default() += 1;
        *self.closure_sizes.entry(closure_size).or_default() += 1;
        if !t.iter().all(|&v| holds(v)) {
            self.closure_misses_triad += 1;
        }
        if (closure_size != trace.len() || trace.is_empty()) && self.first_irregular.is_none() {
            self.first_irregular = Some(t);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.triads += other.triads;
        for (k, v) in other.trace_sizes {
            *self.trace_sizes.entry(k).or_default() += v;
        }
        for (k, v) in other.closure_sizes {
            *self.closure_sizes.entry(k).or_default() += v;
        }
        self.closure_misses_triad += other.closure_misses_triad;
        self.first_irregular = self.first_irregular.or(other.first_irregular);
        self
    }

    /// Every trace has exactly `size` vertices.
    pub fn uniform_trace(&self, size: usize) -> bool {
        self.triads > 0 && self.trace_sizes.len() == 1 && self.trace_sizes.contains_key(&size)
    }

    /// Every triad is 3-regular and contained in its closure.
    pub fn all_regular(&self) -> bool {
        self.triads > 0 && self.first_irregular.is_none() && self.closure_misses_triad == 0
    }
}

fn words_iter(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut bits = w;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(wi * 64 + tz)
        })
    })
}

/// Exhaustive scans visit triads `p < q < r` in lexicographic order
/// (work is split over `p`; merging keeps the first irregular triad in
/// that order).
pub fn scan_triads(g: &PointGraph, selection: TriadSelection) -> TriadScan {
    match selection {
        TriadSelection::Exhaustive => (0..g.n())
            .into_par_iter()
            .map(|p| {
                let mut scan = TriadScan::default();
                let np = g.non_neighbours(p);
                for q in np.iter().filter(|&q| q > p) {
                    let both = np.intersection(&g.non_neighbours(q));
                    for r in both.iter().filter(|&r| r > q) {
                        scan.record(g, [p, q, r]);
                    }
                }
                scan
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(TriadScan::default(), TriadScan::merge),
        TriadSelection::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut scan = TriadScan::default();
            let n = g.n();
            if n < 3 {
                return scan;
            }
            while (scan.triads as usize) < count {
                let p = rng.gen_range(0..n);
                let q = rng.gen_range(0..n);
                let r = rng.gen_range(0..n);
                if check_triad(g, [p, q, r]).is_ok() {
                    let mut t = [p, q, r];
                    t.sort_unstable();
                    scan.record(g, t);
                }
            }
            scan
        }
    }
}
