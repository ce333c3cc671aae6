//! Step-by-step replays of the arithmetic nonexistence argument.
//!
//! Every constant a proof writes down is a named claim. Arithmetic steps
//! recompute the claim from the counting systems and the cited inputs and
//! compare; geometric steps only record their citation.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{enumerate_feasible_profiles, solve_counting_system, AffineSolutionFamily, Constraint, CountingSystem,
    SearchBox};
use crate::error::CountingError;

/// Per-unknown cap used by every enumeration box: no profile count exceeds `|B|`.
pub const BOX_BOUND: i64 = 204;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    #[serde(rename = "L3.4")]
    L3_4,
    #[serde(rename = "R3.5")]
    R3_5,
    #[serde(rename = "L3.12")]
    L3_12,
    #[serde(rename = "L3.13")]
    L3_13,
    #[serde(rename = "L3.14")]
    L3_14,
    #[serde(rename = "L3.15")]
    L3_15,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [Self::L3_4, Self::R3_5, Self::L3_12, Self::L3_13, Self::L3_14, Self::L3_15];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::L3_4 => "L3.4",
            Self::R3_5 => "R3.5",
            Self::L3_12 => "L3.12",
            Self::L3_13 => "L3.13",
            Self::L3_14 => "L3.14",
            Self::L3_15 => "L3.15",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Self::L3_4 => "n₅ ≠ 2 for every r ∈ B",
            Self::R3_5 => "n₅ ≠ 2 for every triad",
            Self::L3_12 => "m₄(a) ≤ 1 for every a ∈ A″",
            Self::L3_13 => "m₃(a) ≤ 2 for every a ∈ A″",
            Self::L3_14 => "n₄ > 0 for every r ∈ B",
            Self::L3_15 => "no r ∈ B has n₄ > 0",
        }
    }

    /// The constants as the proof states them.
    pub fn claims(self) -> Claims {
        use ClaimKind::{Cited, Derived};
        let list: &[(&'static str, i64, ClaimKind)] = match self {
            Self::L3_4 => &[
                ("n5", 2, Cited),
                ("4n0+n1", 188, Derived),
                ("n0 offset", 47, Derived),
                ("B'∩N0", 24, Cited),
                ("|B'|", 39, Cited),
                ("B'∩N1", 15, Derived),
                ("new N0 points", 12, Cited),
                ("n0 lower bound", 36, Derived),
                ("m upper bound", 11, Derived),
                ("n3 slope", 4, Derived),
                ("n3 offset", -50, Derived),
                ("m lower bound", 13, Derived),
                ("feasible profiles", 0, Derived),
            ],
            Self::R3_5 => &[],
            Self::L3_12 => &[
                ("trace", 5, Cited),
                ("∩A'", 3, Cited),
                ("∩A''", 1, Cited),
                ("k lower bound", 4, Derived),
                ("∩B lower bound", 11, Derived),
                ("∩B' upper bound", 2, Derived),
                ("∩B'' lower bound", 9, Derived),
                ("N1∪N2 cap", 2, Cited),
                ("∩B''∩N0 lower bound", 7, Derived),
                ("lines through x off A'", 16, Cited),
                ("of which in N1", 10, Cited),
                ("Γ(x)∩B''∩N0", 6, Derived),
                ("loose m4 cap", 5, Derived),
            ],
            Self::L3_13 => &[
                ("Γ(a)∩B'∩N0", 10, Cited),
                ("m0 constant", 15, Derived),
                ("m0 m3-coefficient", -1, Derived),
                ("m0 m4-coefficient", -3, Derived),
                ("B''∩M0 constant", 5, Derived),
                ("m3 maximum", 2, Derived),
            ],
            Self::L3_14 => &[
                ("n4", 0, Cited),
                ("n3", 20, Derived),
                ("trace", 5, Cited),
                ("A''-neighbours of x ∈ N3", 2, Derived),
                ("Σ m3", 40, Derived),
                ("|A''|", 12, Derived),
                ("m3 cap", 2, Cited),
                ("Σ m3 cap", 24, Derived),
            ],
            Self::L3_15 => &[
                ("Γ(s)∩B''∩N0", 6, Cited),
                ("B'∩N0", 24, Cited),
                ("n0 lower bound", 30, Derived),
                ("n0 constant", 28, Derived),
                ("n4 lower bound", 2, Derived),
                ("∩A'", 3, Cited),
                ("∩A''", 0, Cited),
                ("∩B'", 2, Cited),
                ("trace", 5, Cited),
                ("k", 3, Derived),
                ("∩B", 10, Derived),
                ("∩B''", 8, Derived),
                ("∩C", 2, Derived),
                ("meeting case", 7, Derived),
                ("disjoint case", 6, Derived),
                ("n4", 2, Derived),
                ("n0", 30, Derived),
                ("n3", 12, Derived),
                ("B''∩N0", 6, Derived),
                ("|A''|", 12, Derived),
                ("Σ m3", 24, Derived),
                ("m3(c)", 2, Derived),
                ("m4(c)", 1, Cited),
                ("Γ(c)∩B'∩N0", 10, Cited),
                ("B''∩M0(c)", 0, Derived),
            ],
        };
        Claims(list.iter().map(|&(key, value, kind)| Claim { key, value, kind }).collect())
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = CountingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| CountingError::UnknownLemma(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    /// Recomputed by the replay.
    Derived,
    /// Taken from a geometric lemma; feeds the recomputations.
    Cited,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub key: &'static str,
    pub value: i64,
    pub kind: ClaimKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claims(pub Vec<Claim>);

impl Claims {
    pub fn get(&self, key: &str) -> i64 {
        self.0
            .iter()
            .find(|c| c.key == key)
            .unwrap_or_else(|| panic!("no claim named {key:?}"))
            .value
    }

    /// Overwrite one constant; returns false if the key is unknown.
    pub fn set(&mut self, key: &str, value: i64) -> bool {
        match self.0.iter_mut().find(|c| c.key == key) {
            Some(c) => {
                c.value = value;
                true
            }
            None => false,
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().map(|c| c.key)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Arithmetic,
    Geometric,
    /// Replays another lemma and requires it to pass.
    Prior,
    Note,
    Conclusion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Assumed,
    Noted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub lemma: String,
    pub quote: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub statement: String,
    pub kind: StepKind,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<Citation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub lemma: LemmaId,
    pub statement: String,
    pub steps: Vec<Step>,
}

impl ProofTrace {
    /// Every arithmetic and prior step verified, and the trace ends in a
    /// conclusion.
    pub fn passes(&self) -> bool {
        self.steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Arithmetic | StepKind::Prior | StepKind::Conclusion))
            .all(|s| s.verdict == Verdict::Pass)
            && self.steps.last().is_some_and(|s| s.kind == StepKind::Conclusion)
    }

    /// Arithmetic and prior steps, i.e. everything the replay verifies itself.
    pub fn checked_steps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s.kind, StepKind::Arithmetic | StepKind::Prior)).count()
    }

    pub fn arithmetic_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Arithmetic).count()
    }

    pub fn geometric_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Geometric).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(|s| s.verdict == Verdict::Fail)
    }
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passes() { "PASS" } else { "FAIL" };
        writeln!(f, "{} [{verdict}] {}", self.lemma, self.statement)?;
        for (i, step) in self.steps.iter().enumerate() {
            let tag = match (step.kind, step.verdict) {
                (StepKind::Conclusion, _) => {
                    write!(f, "  => {}", step.statement)?;
                    if step.verdict == Verdict::Fail {
                        write!(f, " (not reached)")?;
                    }
                    if i + 1 < self.steps.len() {
                        writeln!(f)?;
                    }
                    continue;
                }
                (StepKind::Geometric, _) => "cited",
                (StepKind::Note, _) => "note",
                (_, Verdict::Pass) => "ok",
                _ => "FAIL",
            };
            write!(f, "  {:>2}. [{tag}] {}", i + 1, step.statement)?;
            if let Some(c) = &step.citation {
                write!(f, " ({}: \"{}\")", c.lemma, c.quote)?;
            }
            if let Some(d) = &step.detail {
                write!(f, " [{d}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn replay_lemma(id: LemmaId) -> ProofTrace {
    replay_lemma_with(id, &id.claims())
}

/// Replay against a possibly altered claim table.
pub fn replay_lemma_with(id: LemmaId, claims: &Claims) -> ProofTrace {
    let mut t = Tracer { claims, steps: Vec::new() };
    match id {
        LemmaId::L3_4 => lemma_n5_two(&mut t),
        LemmaId::R3_5 => remark_any_triad(&mut t),
        LemmaId::L3_12 => lemma_m4_cap(&mut t),
        LemmaId::L3_13 => lemma_m3_cap(&mut t),
        LemmaId::L3_14 => lemma_n4_positive(&mut t),
        LemmaId::L3_15 => lemma_n4_zero(&mut t),
    }
    ProofTrace { lemma: id, statement: id.statement().to_string(), steps: t.steps }
}

struct Tracer<'a> {
    claims: &'a Claims,
    steps: Vec<Step>,
}

impl Tracer<'_> {
    fn push(&mut self, statement: String, kind: StepKind, verdict: Verdict) -> &mut Step {
        self.steps.push(Step { statement, kind, verdict, citation: None, detail: None });
        self.steps.last_mut().unwrap()
    }

    fn note(&mut self, statement: impl Into<String>) {
        self.push(statement.into(), StepKind::Note, Verdict::Noted);
    }

    /// A cited input: recorded, and its claimed value returned for use.
    fn cite(&mut self, key: &str, statement: impl Into<String>, lemma: &str, quote: &str) -> i64 {
        let value = self.claims.get(key);
        let step = self.push(format!("{} = {value}", statement.into()), StepKind::Geometric, Verdict::Assumed);
        step.citation = Some(Citation { lemma: lemma.into(), quote: quote.into() });
        value
    }

    /// A cited fact with no numeric content.
    fn assume(&mut self, statement: impl Into<String>, lemma: &str, quote: &str) {
        let step = self.push(statement.into(), StepKind::Geometric, Verdict::Assumed);
        step.citation = Some(Citation { lemma: lemma.into(), quote: quote.into() });
    }

    /// Compares a claimed constant with its recomputation; returns the
    /// recomputed value so later steps never build on a claim.
    fn derive(&mut self, key: &str, statement: impl Into<String>, computed: i64) -> i64 {
        let claimed = self.claims.get(key);
        let ok = claimed == computed;
        let statement = statement.into();
        let sep = if statement.ends_with(['≥', '≤']) { "" } else { " =" };
        let step = self.push(
            format!("{statement}{sep} {claimed}"),
            StepKind::Arithmetic,
            if ok { Verdict::Pass } else { Verdict::Fail },
        );
        if !ok {
            step.detail = Some(format!("recomputed {computed}"));
        }
        computed
    }

    fn check(&mut self, statement: impl Into<String>, ok: bool) -> bool {
        self.push(statement.into(), StepKind::Arithmetic, if ok { Verdict::Pass } else { Verdict::Fail });
        ok
    }

    fn prior(&mut self, id: LemmaId) {
        let ok = replay_lemma(id).passes();
        self.push(
            format!("{id}: {}", id.statement()),
            StepKind::Prior,
            if ok { Verdict::Pass } else { Verdict::Fail },
        );
    }

    fn conclude(&mut self, statement: impl Into<String>) {
        let ok = self
            .steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Arithmetic | StepKind::Prior))
            .all(|s| s.verdict == Verdict::Pass);
        self.push(statement.into(), StepKind::Conclusion, if ok { Verdict::Pass } else { Verdict::Fail });
    }
}

fn star() -> AffineSolutionFamily {
    solve_counting_system(&CountingSystem::adjacency(), &[0, 1]).expect("the (n₀, n₁) family is determined")
}

fn double_star() -> AffineSolutionFamily {
    solve_counting_system(&CountingSystem::adjacency().with_fixed(5, 1), &[4]).expect("the n₄ family is determined")
}

fn triple_star() -> AffineSolutionFamily {
    solve_counting_system(&CountingSystem::derived(), &[3, 4]).expect("the (m₃, m₄) family is determined")
}

/// `(constant, coefficient per free unknown)` of a bound unknown, as integers.
fn integer_row(family: &AffineSolutionFamily, unknown: usize) -> (i64, Vec<i64>) {
    let (c, coeffs) = family.row(unknown).expect("unknown is bound in the family");
    let int = |v: &num_rational::BigRational| {
        assert!(v.is_integer(), "family has integer coefficients");
        v.to_integer().to_i64().expect("coefficient fits in i64")
    };
    (int(&c), coeffs.iter().map(int).collect())
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

fn box_note(t: &mut Tracer<'_>) {
    t.note(format!(
        "integer scans use the box [0, {BOX_BOUND}] per free unknown, since every count is at most |B| = {BOX_BOUND}"
    ));
}

fn lemma_n5_two(t: &mut Tracer<'_>) {
    let family = star();
    let n5 = t.cite("n5", "suppose n₅", "L3.1(2)", "n_5 = 1, 2 or 3");

    // n5 = c5 + a·n0 + b·n1
    let (c5, k5) = integer_row(&family, 5);
    let rhs = t.derive("4n0+n1", format!("(n₀, n₁) family, row n₅ with n₅ = {n5}: {}n₀ + {}n₁", k5[0], k5[1]), n5 - c5);
    let unit_n1 = t.check(format!("n₁ has coefficient 1 in that row (got {})", k5[1]), k5[1] == 1);
    let divisible = t.check(
        format!("{} divides {rhs}, so n₁ = {}m and n₀ = {}/{} − m", k5[0], k5[0], rhs, k5[0]),
        k5[0] != 0 && rhs % k5[0] == 0,
    );
    let offset = if unit_n1 && divisible { rhs / k5[0] } else { 0 };
    let offset = t.derive("n0 offset", "integer solutions (n₀, n₁) = (offset − m, 4m); offset", offset);

    let b1n0 = t.cite("B'∩N0", "|B′ ∩ N₀|", "L3.2", "each having sizes 24 and 15");
    let b1 = t.cite("|B'|", "|B′|", "L3.2", "|B′|=39=24+15");
    let b1n1 = t.derive("B'∩N1", "|B′ ∩ N₁| = |B′| − |B′ ∩ N₀|", b1 - b1n0);
    let fresh = t.cite(
        "new N0 points",
        "points of N₀ ∩ B″ on the lines through s disjoint from A′",
        "L3.4",
        "the 12 new points of N_0 occur apart from the 24 points of N_0",
    );
    let n0_min = t.derive("n0 lower bound", "n₀ ≥ |B′∩N₀| + new points", b1n0 + fresh);
    let m_max = t.derive("m upper bound", format!("n₀ = {offset} − m ≥ {n0_min} gives m ≤"), offset - n0_min);

    let (c3, k3) = integer_row(&family, 3);
    // n3 = c3 + k3[0]·(offset − m) + k3[1]·(k5[0]·m)
    let slope = t.derive("n3 slope", "(n₀, n₁) family, row n₃ after substitution: coefficient of m", k5[0] * k3[1] - k3[0]);
    let constant = t.derive("n3 offset", "(n₀, n₁) family, row n₃ after substitution: constant", c3 + k3[0] * offset);
    let m_min = t.derive("m lower bound", format!("n₃ = {slope}m + ({constant}) ≥ 0 gives m ≥"), ceil_div(-constant, slope));
    t.check(format!("m ≤ {m_max} and m ≥ {m_min} are incompatible"), m_min > m_max);

    box_note(t);
    let constraints = [
        Constraint::equals(6, 5, n5),
        Constraint::at_least(6, 0, n0_min),
        Constraint::at_least(6, 1, b1n1),
    ];
    let found = enumerate_feasible_profiles(&family, &constraints, &SearchBox::cube(2, BOX_BOUND))
        .map(|v| v.len() as i64)
        .unwrap_or(-1);
    t.derive(
        "feasible profiles",
        format!("exhaustive scan of the (n₀, n₁) family with n₅ = {n5}, n₀ ≥ {n0_min}, n₁ ≥ {b1n1}, all nᵢ ≥ 0: profiles found"),
        found,
    );
    t.conclude("contradiction: feasible set empty");
}

fn remark_any_triad(t: &mut Tracer<'_>) {
    t.prior(LemmaId::L3_4);
    t.note(
        "the argument only uses that {p, q, r} is a triad: p and q enter through A and B symmetrically, \
         and r through A′ = Γ(r) ∩ A, so any labelling of any triad gives the same trace",
    );
    t.conclude("n₅ ≠ 2 for every triad {p, q, r} and every choice of r");
}

fn lemma_m4_cap(t: &mut Tracer<'_>) {
    let trace = t.cite("trace", "|Γ(u) ∩ Γ(v) ∩ Γ(w)| for a triad", "L3.1(2)", "each triad has exactly five common neighbours");
    t.note("suppose m₄(a) ≥ 2 for some a ∈ A″, and take distinct x, y ∈ M₄(a) ⊆ N₄");
    let a1 = t.cite("∩A'", "|Γ(x) ∩ Γ(y) ∩ A′|", "L3.9", "|Γ(x)∩Γ(y)∩A′|=3");
    let a2 = t.cite("∩A''", "lower bound on |Γ(x) ∩ Γ(y) ∩ A″| (a is a common neighbour)", "L3.12", "|Γ(x)∩Γ(y)∩A″|=1");
    let k = t.derive("k lower bound", "k = |Γ(x) ∩ Γ(y) ∩ A| ≥ |·∩A′| + |·∩A″|", a1 + a2);
    let in_b = t.derive("∩B lower bound", "|Γ(x) ∩ Γ(y) ∩ B| = 7 + k ≥", 7 + k);
    let in_b1 = t.derive("∩B' upper bound", "|Γ(x) ∩ Γ(y) ∩ B′| ≤ |Γ(x)∩Γ(y)∩Γ(r)| − |·∩A′|", trace - a1);
    let in_b2 = t.derive("∩B'' lower bound", "|Γ(x) ∩ Γ(y) ∩ B″| ≥", in_b - in_b1);
    let cap = t.cite("N1∪N2 cap", "upper bound on |Γ(x) ∩ Γ(y) ∩ B″ ∩ (N₁ ∪ N₂)|", "L3.10", "1 if xa∩yb≠∅, 2 if xa∩yb=∅");
    let in_n0 = t.derive("∩B''∩N0 lower bound", "|Γ(x) ∩ Γ(y) ∩ B″ ∩ N₀| ≥", in_b2 - cap);
    let off = t.cite("lines through x off A'", "points of Γ(x) ∩ B″ on lines through x missing A′", "L3.7(1)", "2+2+2+10=16");
    let ones = t.cite("of which in N1", "of those, points in N₁", "L3.7(2)", "14-4=10");
    let six = t.derive("Γ(x)∩B''∩N0", "|Γ(x) ∩ B″ ∩ N₀| for x ∈ N₄", off - ones);
    t.check(format!("{in_n0} > {six} contradicts the cited count"), in_n0 > six);
    t.note("k ≥ 4 covers both |·∩A″| = 1 and |·∩A″| = 2, so the argument does not need the exact value");

    // Non-negativity of the (m₃, m₄) family alone only caps m4 at 5.
    let (c0, k0) = integer_row(&triple_star(), 0);
    let loose = t.derive("loose m4 cap", "m₀ = 15 − m₃ − 3m₄ ≥ 0 alone gives m₄ ≤", c0 / -k0[1]);
    t.check(format!("the geometric bound 1 is strictly below {loose}"), 1 < loose);
    t.conclude("m₄(a) ≤ 1 for every a ∈ A″");
}

fn lemma_m3_cap(t: &mut Tracer<'_>) {
    let family = triple_star();
    t.assume(
        "m₃(a) ≤ |B″ ∩ M₀(a)|: the line ax for x ∈ M₃(a) has at most one point of B″ ∩ N₀",
        "L3.13",
        "the line ax has at most one point of B″∩N_0",
    );
    let ten = t.cite("Γ(a)∩B'∩N0", "|Γ(a) ∩ B′ ∩ N₀|", "L3.13", "|Γ(a)∩B′∩N_0|=10");
    let (c0, k0) = integer_row(&family, 0);
    let c0 = t.derive("m0 constant", "(m₃, m₄) family, row m₀: constant", c0);
    let k3 = t.derive("m0 m3-coefficient", "(m₃, m₄) family, row m₀: coefficient of m₃", k0[0]);
    let k4 = t.derive("m0 m4-coefficient", "(m₃, m₄) family, row m₀: coefficient of m₄", k0[1]);
    let rest = t.derive("B''∩M0 constant", format!("|B″ ∩ M₀(a)| = m₀ − {ten} = c + ({k3})m₃ + ({k4})m₄ with c"), c0 - ten);

    box_note(t);
    // m3 ≤ rest + k3·m3 + k4·m4  ⇔  (1 − k3)·m3 − k4·m4 ≤ rest
    let constraint = Constraint::Linear {
        coeffs: vec![0, 0, 0, 1 - k3, -k4],
        relation: super::Relation::Le,
        rhs: rest,
    };
    let found = enumerate_feasible_profiles(&family, &[constraint], &SearchBox::cube(2, BOX_BOUND)).unwrap_or_default();
    let max = found.iter().map(|m| m[3]).max().unwrap_or(-1);
    t.derive("m3 maximum", "largest m₃ over non-negative integer solutions of the (m₃, m₄) family with m₃ ≤ |B″ ∩ M₀(a)|", max);
    t.conclude("m₃(a) ≤ 2 for every a ∈ A″");
}

fn lemma_n4_positive(t: &mut Tracer<'_>) {
    let family = double_star();
    let n4 = t.cite("n4", "suppose n₄", "L3.14", "n_4=0 for some r ∈ B");
    let (c3, k3) = integer_row(&family, 3);
    let n3 = t.derive("n3", format!("n₄ family, row n₃ at n₄ = {n4}: n₃"), c3 + k3[0] * n4);
    let trace = t.cite("trace", "|Γ(x) ∩ Γ(p) ∩ Γ(q)| = |Γ(x) ∩ A| for x ∈ N₃", "L3.1(2)", "each triad has exactly five common neighbours");
    let per = t.derive("A''-neighbours of x ∈ N3", "|Γ(x) ∩ A″| = |Γ(x) ∩ A| − 3", trace - 3);
    let total = t.derive("Σ m3", "Σ_{a∈A″} m₃(a) = n₃ · |Γ(x) ∩ A″|", n3 * per);
    let a2 = t.derive("|A''|", "|A″| = |A| − |A′| = 17 − 5", 17 - 5);
    t.prior(LemmaId::L3_13);
    let cap = t.cite("m3 cap", "m₃(a) ≤", "L3.13", "m_3 ≤ 2 for all a ∈ A″");
    let bound = t.derive("Σ m3 cap", "Σ_{a∈A″} m₃(a) ≤ |A″| · cap", a2 * cap);
    t.check(format!("{total} > {bound}"), total > bound);
    t.conclude("contradiction: n₄ > 0 for every r ∈ B");
}

fn lemma_n4_zero(t: &mut Tracer<'_>) {
    let family = double_star();
    t.note("suppose n₄ > 0 for some r ∈ B and take s ∈ N₄");
    let six = t.cite("Γ(s)∩B''∩N0", "|Γ(s) ∩ B″ ∩ N₀|", "L3.7(3)", "|Γ(s)∩B″∩N_0|=6");
    let b1n0 = t.cite("B'∩N0", "|B′ ∩ N₀|", "L3.2", "each having sizes 24 and 15");
    let n0_min = t.derive("n0 lower bound", "n₀ ≥ |B′∩N₀| + |Γ(s)∩B″∩N₀|", b1n0 + six);
    let (c0, k0) = integer_row(&family, 0);
    let c0 = t.derive("n0 constant", "n₄ family, row n₀: n₀ = c + n₄ with c", c0);
    t.check(format!("n₄ family, row n₀ has n₄-coefficient 1 (got {})", k0[0]), k0[0] == 1);
    let n4_min = t.derive("n4 lower bound", "n₄ = n₀ − c ≥", n0_min - c0);

    t.note("take t ∈ N₄ \\ {s}");
    let a1 = t.cite("∩A'", "|Γ(s) ∩ Γ(t) ∩ A′|", "L3.9", "|Γ(x)∩Γ(y)∩A′|=3");
    let a2 = t.cite("∩A''", "|Γ(s) ∩ Γ(t) ∩ A″|", "L3.11", "|Γ(x)∩Γ(y)∩A″|=1 or |Γ(x)∩Γ(y)∩B′|≤1");
    let b1 = t.cite("∩B'", "|Γ(s) ∩ Γ(t) ∩ B′|", "L3.11", "|Γ(x)∩Γ(y)∩A″|=1 or |Γ(x)∩Γ(y)∩B′|≤1");
    let trace = t.cite("trace", "|Γ(s) ∩ Γ(t) ∩ Γ(p)|", "L3.1(2)", "each triad has exactly five common neighbours");
    let k = t.derive("k", "k = |Γ(s) ∩ Γ(t) ∩ A|", a1 + a2);
    let in_b = t.derive("∩B", "|Γ(s) ∩ Γ(t) ∩ B| = 7 + k", 7 + k);
    let in_b2 = t.derive("∩B''", "|Γ(s) ∩ Γ(t) ∩ B″| = |·∩B| − |·∩B′|", in_b - b1);
    t.derive("∩C", "|Γ(s) ∩ Γ(t) ∩ C| = |Γ(s)∩Γ(t)∩Γ(p)| − k", trace - k);
    let meet = t.derive("meeting case", "|Γ(s) ∩ Γ(t) ∩ B″ ∩ N₀| if sa ∩ tb ≠ ∅", in_b2 - 1);
    let apart = t.derive("disjoint case", "|Γ(s) ∩ Γ(t) ∩ B″ ∩ N₀| if sa ∩ tb = ∅", in_b2 - 2);
    t.check(
        format!("only the disjoint case matches |Γ(s)∩B″∩N₀| = {six}"),
        apart == six && meet != six,
    );
    t.assume(
        "so Γ(s) ∩ B″ ∩ N₀ = Γ(x) ∩ B″ ∩ N₀ for every x ∈ N₄ \\ {s}",
        "L3.7(3)",
        "|Γ(s)∩B″∩N_0|=6",
    );
    t.check(
        format!("three points of N₄ would form a triad with trace ≥ {six} > {trace}"),
        six > trace,
    );
    let n4 = t.derive("n4", "hence n₄ ≤ 2, and with n₄ ≥ 2: n₄", n4_min);
    let n0 = t.derive("n0", "n₄ family, row n₀ at this n₄", c0 + k0[0] * n4);
    let (c3, k3) = integer_row(&family, 3);
    let n3 = t.derive("n3", "n₄ family, row n₃ at this n₄", c3 + k3[0] * n4);
    t.derive("B''∩N0", "|B″ ∩ N₀| = n₀ − |B′∩N₀|", n0 - b1n0);

    t.note(
        "the displayed sum is written Σ_{c∈A″} m₃(a); the summation variable is read as c, i.e. Σ_{c∈A″} m₃(c)",
    );
    let a2_size = t.derive("|A''|", "|A″| = 17 − 5", 17 - 5);
    let total = t.derive("Σ m3", "Σ_{c∈A″} m₃(c) = n₃ · 2", n3 * 2);
    t.prior(LemmaId::L3_13);
    t.check(
        format!("Σ m₃(c) = {total} equals |A″| · 2 = {}, so each m₃(c) sits at the cap", a2_size * 2),
        total == a2_size * 2,
    );
    let m3 = t.derive("m3(c)", "m₃(c) for every c ∈ A″", total / a2_size);

    t.prior(LemmaId::L3_12);
    let m4 = t.cite("m4(c)", "m₄(c) for {c} = Γ(s) ∩ A″ (s ∈ M₄(c))", "L3.15", "since m_4(c)=1");
    let ten = t.cite("Γ(c)∩B'∩N0", "|Γ(c) ∩ B′ ∩ N₀|", "L3.13", "|Γ(a)∩B′∩N_0|=10");
    let family3 = triple_star();
    let m0 = family3.evaluate_integers(&[m3, m4]).map(|m| m[0]).unwrap_or(i64::MIN);
    let left = t.derive("B''∩M0(c)", "|B″ ∩ M₀(c)| = m₀(c) − |Γ(c)∩B′∩N₀|, m₀ from the (m₃, m₄) family", m0 - ten);
    t.assume("the line sc carries a point of B″ ∩ N₀ ∩ Γ(c)", "L3.15", "the line sc necessarily has a point of B″∩N_0");
    t.check(format!("|B″ ∩ M₀(c)| = {left} leaves no such point"), left < 1);
    t.conclude("contradiction: no r ∈ B has n₄ > 0");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_replay_passes() {
        for id in LemmaId::ALL {
            let trace = replay_lemma(id);
            assert!(trace.passes(), "{trace}");
            assert_eq!(trace.steps.last().unwrap().kind, StepKind::Conclusion);
        }
    }

    #[test]
    fn n5_two_trace_ends_with_empty_feasible_set() {
        let trace = replay_lemma(LemmaId::L3_4);
        assert!(trace.to_string().trim_end().ends_with("feasible set empty"));
        assert!(trace.arithmetic_steps() >= 8);
        assert!(trace.geometric_steps() >= 3);
    }

    #[test]
    fn ids_parse_and_reject() {
        for id in LemmaId::ALL {
            assert_eq!(id.as_str().parse::<LemmaId>().unwrap(), id);
        }
        assert_eq!("l3.13".parse::<LemmaId>().unwrap(), LemmaId::L3_13);
        assert_eq!("L9.9".parse::<LemmaId>(), Err(CountingError::UnknownLemma("L9.9".into())));
    }

    #[test]
    fn tampering_any_single_constant_fails_the_replay() {
        for id in LemmaId::ALL {
            let claims = id.claims();
            for key in claims.keys() {
                for delta in [-1, 1] {
                    let mut altered = claims.clone();
                    assert!(altered.set(key, claims.get(key) + delta));
                    let trace = replay_lemma_with(id, &altered);
                    assert!(!trace.passes(), "{id}: {key} {delta:+} still passes\n{trace}");
                }
            }
        }
    }

    #[test]
    fn remark_depends_on_prior_replay() {
        let trace = replay_lemma(LemmaId::R3_5);
        assert!(trace.steps.iter().any(|s| s.kind == StepKind::Prior && s.verdict == Verdict::Pass));
        assert!(trace.steps.iter().any(|s| s.kind == StepKind::Note));
    }

    #[test]
    fn summation_variable_is_flagged() {
        let trace = replay_lemma(LemmaId::L3_15);
        assert!(trace.steps.iter().any(|s| s.kind == StepKind::Note && s.statement.contains("m₃(a)")));
    }

    #[test]
    fn trace_serde_round_trip() {
        let trace = replay_lemma(LemmaId::L3_15);
        let json = serde_json::to_string(&trace).unwrap();
        assert!(json.contains("\"lemma\":\"L3.15\""));
        assert_eq!(serde_json::from_str::<ProofTrace>(&json).unwrap(), trace);
    }

    #[test]
    fn unknown_claim_key_is_refused() {
        let mut claims = LemmaId::L3_4.claims();
        assert!(!claims.set("nope", 3));
    }
}
