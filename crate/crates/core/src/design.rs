//! Block designs with repeated blocks, and the design `𝒟` that a non-edge
//! `{p, q}` induces on `A = Γ(p) ∩ Γ(q)` with one block `Γ(r) ∩ A` per `r ∈ B`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::DesignError;
use crate::srg::{LocalPartition, PointGraph};

/// Blocks are held as `u64` masks during counting.
pub const MAX_POINTS: usize = 64;

/// Points are `0..v`; blocks are ascending point lists with multiplicities,
/// kept sorted and merged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Design {
    v: usize,
    k: usize,
    blocks: Vec<(Vec<usize>, usize)>,
}

impl Design {
    pub fn new(v: usize, k: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<Self, DesignError> {
        Self::with_multiplicities(v, k, blocks.into_iter().map(|b| (b, 1)))
    }

    pub fn with_multiplicities(
        v: usize,
        k: usize,
        blocks: impl IntoIterator<Item = (Vec<usize>, usize)>,
    ) -> Result<Self, DesignError> {
        if v > MAX_POINTS {
            return Err(DesignError::TooManyPoints { v });
        }
        let mut merged: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (bi, (mut block, m)) in blocks.into_iter().enumerate() {
            block.sort_unstable();
            if block.len() != k {
                return Err(DesignError::BlockSize { block: bi, size: block.len(), expected: k });
            }
            if let Some(&point) = block.iter().find(|&&x| x >= v) {
                return Err(DesignError::PointOutOfRange { block: bi, point, v });
            }
            if let Some(w) = block.windows(2).find(|w| w[0] == w[1]) {
                return Err(DesignError::RepeatedPoint { block: bi, point: w[0] });
            }
            if m > 0 {
                *merged.entry(block).or_default() += m;
            }
        }
        Ok(Self { v, k, blocks: merged.into_iter().collect() })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Distinct blocks with their multiplicities, in ascending block order.
    pub fn blocks(&self) -> &[(Vec<usize>, usize)] {
        &self.blocks
    }

    /// Number of blocks counted with multiplicity.
    pub fn block_count(&self) -> usize {
        self.blocks.iter().map(|(_, m)| m).sum()
    }

    pub fn distinct_block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The underlying simple design (every multiplicity set to 1).
    pub fn support(&self) -> Self {
        Self {
            v: self.v,
            k: self.k,
            blocks: self.blocks.iter().map(|(b, _)| (b.clone(), 1)).collect(),
        }
    }

    /// Copy with one occurrence of the `index`-th distinct block removed.
    pub fn without_one_block(&self, index: usize) -> Self {
        let mut blocks = self.blocks.clone();
        blocks[index].1 -= 1;
        blocks.retain(|(_, m)| *m > 0);
        Self { v: self.v, k: self.k, blocks }
    }

    fn masks(&self) -> Vec<(u64, usize)> {
        self.blocks
            .iter()
            .map(|(b, m)| (b.iter().fold(0u64, |acc, &x| acc | 1 << x), *m))
            .collect()
    }

    /// Blocks (with multiplicity) containing every point of `subset`.
    pub fn blocks_through(&self, subset: &[usize]) -> usize {
        let want = subset.iter().fold(0u64, |acc, &x| acc | 1 << x);
        self.masks()
            .iter()
            .filter(|(mask, _)| mask & want == want)
            .map(|(_, m)| m)
            .sum()
    }
}

/// Design on `A` (points relabelled `0..|A|` by ascending vertex index)
/// with one block `Γ(r) ∩ A` per `r ∈ B`. Returns the vertex labels too.
pub fn design_from_partition(g: &PointGraph, part: &LocalPartition) -> Result<(Design, Vec<usize>), DesignError> {
    let labels = part.a.to_vec();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &x) in labels.iter().enumerate() {
        local[x] = i;
    }
    let blocks: Vec<Vec<usize>> = part
        .b
        .iter()
        .map(|r| g.neighbours(r).intersection(&part.a).iter().map(|x| local[x]).collect())
        .collect();
    let k = blocks.first().map_or(0, Vec::len);
    Ok((Design::new(labels.len(), k, blocks)?, labels))
}

/// `λ_i` for `i = 0..=t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaVector(pub Vec<usize>);

/// First `i`-subset (in level then lexicographic order) whose block count
/// differs from that of the first `i`-subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonUniformSubset {
    pub subset: Vec<usize>,
    pub count: usize,
    pub expected: usize,
}

/// All `size`-subsets of `0..v` in lexicographic order.
pub(crate) fn subsets(v: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (size <= v).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = size;
        current = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < v - size + i {
                next[i] += 1;
                for j in i + 1..size {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(out)
    })
}

pub fn lambda_vector(d: &Design, t: usize) -> Result<Result<LambdaVector, NonUniformSubset>, DesignError> {
    if t > d.k && d.block_count() > 0 {
        return Err(DesignError::StrengthTooLarge { t, k: d.k });
    }
    let masks = d.masks();
    let count = |subset: &[usize]| -> usize {
        let want = subset.iter().fold(0u64, |acc, &x| acc | 1 << x);
        masks.iter().filter(|(m, _)| m & want == want).map(|(_, c)| c).sum()
    };
    let mut lambdas = Vec::with_capacity(t + 1);
    for level in 0..=t {
        let mut expected = None;
        for subset in subsets(d.v, level) {
            let c = count(&subset);
            match expected {
                None => expected = Some(c),
                Some(e) if e != c => return Ok(Err(NonUniformSubset { subset, count: c, expected: e })),
                Some(_) => {}
            }
        }
        lambdas.push(expected.unwrap_or(0));
    }
    Ok(Ok(LambdaVector(lambdas)))
}

/// Multiplicity → number of distinct blocks with that multiplicity.
pub fn multiplicity_spectrum(d: &Design) -> BTreeMap<usize, usize> {
    let mut spectrum = BTreeMap::new();
    for (_, m) in d.blocks() {
        *spectrum.entry(*m).or_default() += 1;
    }
    spectrum
}

pub fn is_simple(d: &Design) -> bool {
    d.blocks().iter().all(|(_, m)| *m == 1)
}

/// Blocks through `x` with `x` removed; points above `x` shift down by one.
pub fn derived_design(d: &Design, x: usize) -> Result<Design, DesignError> {
    if x >= d.v {
        return Err(DesignError::NotAPoint { point: x, v: d.v });
    }
    let blocks = d.blocks().iter().filter(|(b, _)| b.contains(&x)).map(|(b, m)| {
        let reduced = b
            .iter()
            .filter(|&&y| y != x)
            .map(|&y| if y > x { y - 1 } else { y })
            .collect();
        (reduced, *m)
    });
    Design::with_multiplicities(d.v - 1, d.k.saturating_sub(1), blocks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TDesignWitness {
    PointCount { found: usize },
    BlockSize { found: usize },
    Subset { subset: Vec<usize>, count: usize },
}

/// `true` iff `d` has `v` points, blocks of size `k`, and every `t`-subset
/// lies in exactly `lambda` blocks.
pub fn verify_t_design(d: &Design, t: usize, v: usize, k: usize, lambda: usize) -> (bool, Option<TDesignWitness>) {
    if d.v != v {
        return (false, Some(TDesignWitness::PointCount { found: d.v }));
    }
    if d.k != k {
        return (false, Some(TDesignWitness::BlockSize { found: d.k }));
    }
    for subset in subsets(v, t) {
        let count = d.blocks_through(&subset);
        if count != lambda {
            return (false, Some(TDesignWitness::Subset { subset, count }));
        }
    }
    (true, None)
}

/// `DESIGN v=<v> k=<k> b=<b>` followed by `<m> <p1> ... <pk>` per distinct block.
pub fn write_design(d: &Design) -> String {
    let mut out = format!("DESIGN v={} k={} b={}\n", d.v, d.k, d.block_count());
    for (block, m) in d.blocks() {
        write!(out, "{m}").unwrap();
        for p in block {
            write!(out, " {p}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_design(text: &str) -> Result<Design, DesignError> {
    let perr = |line: usize, message: String| DesignError::Parse { line, message };
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| perr(text.lines().count().max(1), "missing final newline".into()))?;
    let mut records = body.split('\n');
    let header = records.next().unwrap_or("");
    let fields: Vec<&str> = header.split(' ').collect();
    let field = |i: usize, key: &str| -> Result<usize, DesignError> {
        fields
            .get(i)
            .and_then(|f| f.strip_prefix(key))
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| perr(1, format!("bad header {header:?}")))
    };
    if fields.len() != 4 || fields[0] != "DESIGN" {
        return Err(perr(1, format!("bad header {header:?}")));
    }
    let (v, k, b) = (field(1, "v=")?, field(2, "k=")?, field(3, "b=")?);
    let mut blocks = Vec::new();
    for (i, rec) in records.enumerate() {
        let nums: Result<Vec<usize>, _> = rec.split(' ').map(str::parse).collect();
        let nums = nums.map_err(|_| perr(i + 2, format!("bad block record {rec:?}")))?;
        if nums.len() != k + 1 || nums[0] == 0 {
            return Err(perr(i + 2, format!("expected a positive multiplicity and {k} points")));
        }
        blocks.push((nums[1..].to_vec(), nums[0]));
    }
    let d = Design::with_multiplicities(v, k, blocks)?;
    if d.block_count() != b {
        return Err(perr(1, format!("header says b={b} but blocks total {}", d.block_count())));
    }
    Ok(d)
}
