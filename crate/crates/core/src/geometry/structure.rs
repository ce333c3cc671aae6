use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ProjectivePoint;
use crate::bitset::BitSet;
use crate::error::GeometryError;

/// Order `(s, t)` and the partial-geometry constant `α` (1 for a GQ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GQParams {
    pub s: usize,
    pub t: usize,
    pub alpha: usize,
}

impl GQParams {
    /// GQ(4,16).
    pub const Q54: Self = Self { s: 4, t: 16, alpha: 1 };

    pub const fn new(s: usize, t: usize) -> Self {
        Self { s, t, alpha: 1 }
    }

    /// `(s+1)(st+1)`
    pub const fn point_count(&self) -> usize {
        (self.s + 1) * (self.s * self.t + 1)
    }

    /// `(t+1)(st+1)`
    pub const fn line_count(&self) -> usize {
        (self.t + 1) * (self.s * self.t + 1)
    }
}

/// Points with coordinates, lines as ascending point-index lists, and the
/// lines through each point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GQStructure {
    points: Vec<ProjectivePoint>,
    lines: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
}

impl GQStructure {
    /// Validates indices and uniform line size, sorts each line, and builds
    /// the incidence index. Lines keep the given order.
    pub fn new(points: Vec<ProjectivePoint>, lines: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        let n = points.len();
        let mut expected_size = None;
        let mut sorted_lines = Vec::with_capacity(lines.len());
        for (li, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            if line.len() < 2 {
                return Err(GeometryError::LineTooShort { line: li, size: line.len() });
            }
            if let Some(&bad) = line.iter().find(|&&p| p >= n) {
                return Err(GeometryError::PointOutOfRange { line: li, point: bad, points: n });
            }
            if let Some(w) = line.windows(2).find(|w| w[0] == w[1]) {
                return Err(GeometryError::RepeatedPoint { line: li, point: w[0] });
            }
            match expected_size {
                None => expected_size = Some(line.len()),
                Some(k) if k != line.len() => {
                    return Err(GeometryError::WrongLineSize { line: li, size: line.len(), expected: k });
                }
                Some(_) => {}
            }
            sorted_lines.push(line);
        }
        let mut point_lines = vec![Vec::new(); n];
        for (li, line) in sorted_lines.iter().enumerate() {
            for &p in line {
                point_lines[p].push(li);
            }
        }
        Ok(Self { points, lines: sorted_lines, point_lines })
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Line indices through `p`, ascending.
    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    /// Bit-set rows of the collinearity relation (irreflexive).
    pub fn collinearity_rows(&self) -> Vec<BitSet> {
        let n = self.points.len();
        let mut rows = vec![BitSet::new(n); n];
        for line in &self.lines {
            for &a in line {
                for &b in line {
                    if a != b {
                        rows[a].insert(b);
                    }
                }
            }
        }
        rows
    }

    /// Copy with line `index` removed.
    pub fn without_line(&self, index: usize) -> Result<Self, GeometryError> {
        let mut lines = self.lines.clone();
        lines.remove(index);
        Self::new(self.points.clone(), lines)
    }

    /// Copy with line `index` appended a second time.
    pub fn with_duplicated_line(&self, index: usize) -> Result<Self, GeometryError> {
        let mut lines = self.lines.clone();
        lines.push(self.lines[index].clone());
        Self::new(self.points.clone(), lines)
    }
}

/// The unique line through `p` and `q`, if they are collinear.
pub fn line_through(s: &GQStructure, p: usize, q: usize) -> Result<Option<usize>, GeometryError> {
    let n = s.point_count();
    if p >= n || q >= n {
        return Err(GeometryError::PointIndex { point: p.max(q), points: n });
    }
    if p == q {
        return Err(GeometryError::SamePoint(p));
    }
    let (a, b) = (s.lines_through(p), s.lines_through(q));
    // Both lists are ascending; merge-scan for a shared line.
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Ok(Some(a[i])),
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomFailure {
    LineSize { line: usize, size: usize, expected: usize },
    PointDegree { point: usize, lines: usize, expected: usize },
    LinesMeetTwice { first: usize, second: usize, shared: Vec<usize> },
    Alpha { point: usize, line: usize, collinear: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomStatus {
    Pass,
    Fail(AxiomFailure),
}

impl AxiomStatus {
    pub fn passed(&self) -> bool {
        matches!(self, Self::Pass)
    }
}

/// Per-axiom outcome; each failure carries one witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// (i) line sizes and point degrees
    pub incidence: AxiomStatus,
    /// (ii) two lines share at most one point
    pub lines_meet_once: AxiomStatus,
    /// (iii) exactly α points of a line are collinear with an outside point
    pub alpha: AxiomStatus,
    /// Number of (point, line) pairs examined for (iii).
    pub antiflags_checked: usize,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.incidence.passed() && self.lines_meet_once.passed() && self.alpha.passed()
    }
}

pub fn check_gq_axioms(s: &GQStructure, params: GQParams) -> AxiomReport {
    let incidence = check_incidence(s, params);
    let lines_meet_once = check_lines_meet_once(s);
    let (alpha, antiflags_checked) = check_alpha(s, params);
    AxiomReport { incidence, lines_meet_once, alpha, antiflags_checked }
}

fn check_incidence(s: &GQStructure, params: GQParams) -> AxiomStatus {
    for (li, line) in s.lines().iter().enumerate() {
        if line.len() != params.s + 1 {
            return AxiomStatus::Fail(AxiomFailure::LineSize {
                line: li,
                size: line.len(),
                expected: params.s + 1,
            });
        }
    }
    for p in 0..s.point_count() {
        let deg = s.lines_through(p).len();
        if deg != params.t + 1 {
            return AxiomStatus::Fail(AxiomFailure::PointDegree {
                point: p,
                lines: deg,
                expected: params.t + 1,
            });
        }
    }
    AxiomStatus::Pass
}

fn check_lines_meet_once(s: &GQStructure) -> AxiomStatus {
    // Two lines sharing two points would claim the same point pair.
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (li, line) in s.lines().iter().enumerate() {
        for (k, &a) in line.iter().enumerate() {
            for &b in &line[k + 1..] {
                if let Some(&prev) = owner.get(&(a, b)) {
                    let shared = s.lines()[prev]
                        .iter()
                        .copied()
                        .filter(|x| line.contains(x))
                        .collect();
                    return AxiomStatus::Fail(AxiomFailure::LinesMeetTwice { first: prev, second: li, shared });
                }
                owner.insert((a, b), li);
            }
        }
    }
    AxiomStatus::Pass
}

fn check_alpha(s: &GQStructure, params: GQParams) -> (AxiomStatus, usize) {
    let rows = s.collinearity_rows();
    let mut checked = 0;
    for (p, row) in rows.iter().enumerate() {
        for (li, line) in s.lines().iter().enumerate() {
            if line.contains(&p) {
                continue;
            }
            checked += 1;
            let collinear = line.iter().filter(|&&x| row.contains(x)).count();
            if collinear != params.alpha {
                return (
                    AxiomStatus::Fail(AxiomFailure::Alpha {
                        point: p,
                        line: li,
                        collinear,
                        expected: params.alpha,
                    }),
                    checked,
                );
            }
        }
    }
    (AxiomStatus::Pass, checked)
}
