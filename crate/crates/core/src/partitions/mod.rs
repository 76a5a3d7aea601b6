//! Partitions, cohomology weighted partitions and the Nakajima pairing.

mod descendent;
mod ring;

use std::cmp::{Ordering, Reverse};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{ExactError, Rational};

pub use descendent::{
    bar_transform, small_diagonal_pushforward, tau_bracket, ChernClasses, CorrEntry, CorrMatrix, CorrTerm,
    DescMonomial, DescendentSum,
};
pub use ring::{ring_from_name, ClassVec, GradedRing, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("sizes differ: {0} vs {1}")]
    SizeMismatch(u32, u32),
    #[error("the pairing on the basis is degenerate")]
    DegeneratePairing,
    #[error("class {0:?} has odd degree")]
    OddClass(String),
    #[error("invalid ring: {0}")]
    BadRing(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("invalid partition {0:?}")]
    BadPartition(String),
    #[error("no entry for ({alpha}, {alpha_hat}) and |{alpha}| exceeds the matrix size bound {max_size}")]
    MissingEntry { alpha: Partition, alpha_hat: Partition, max_size: u32 },
    #[error("entry ({alpha}, {alpha_hat}) must vanish because |α| < |α̂|")]
    SupportViolation { alpha: Partition, alpha_hat: Partition },
    #[error("{parts} parts but {classes} classes")]
    ArityMismatch { parts: usize, classes: usize },
    #[error("the slot count must be at least 1")]
    NoSlots,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// An integer partition, parts weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::BadPartition(format!("{parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parses `"2,1,1"`; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Self, PartitionError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::default());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| PartitionError::BadPartition(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// `|Aut| · ∏ parts` for an ordinary partition.
    pub fn z(&self) -> BigUint {
        z_of(self.parts.iter().map(|&a| (a, 0usize)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `∏ (multiplicity)! · ∏ a` over a sorted sequence of pairs.
fn z_of<T: PartialEq>(pairs: impl IntoIterator<Item = (u32, T)>) -> BigUint {
    let pairs: Vec<(u32, T)> = pairs.into_iter().collect();
    let mut z = BigUint::one();
    let mut run = 0usize;
    for i in 0..pairs.len() {
        z *= BigUint::from(pairs[i].0);
        run = if i > 0 && pairs[i] == pairs[i - 1] { run + 1 } else { 1 };
        z *= BigUint::from(run);
    }
    z
}

/// A multiset of `(part, label)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedPartition {
    pairs: Vec<(u32, Label)>,
}

fn pair_key(p: &(u32, Label)) -> (Reverse<u32>, Label) {
    (Reverse(p.0), p.1)
}

impl Ord for WeightedPartition {
    fn cmp(&self, o: &Self) -> Ordering {
        self.pairs.iter().map(pair_key).cmp(o.pairs.iter().map(pair_key))
    }
}

impl PartialOrd for WeightedPartition {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl WeightedPartition {
    /// Canonically sorts the pairs; zero parts are rejected.
    pub fn new(mut pairs: Vec<(u32, Label)>) -> Result<Self, PartitionError> {
        if pairs.iter().any(|p| p.0 == 0) {
            return Err(PartitionError::BadPartition(format!("{pairs:?}")));
        }
        pairs.sort_by_key(pair_key);
        Ok(WeightedPartition { pairs })
    }

    /// `(1, label)^r`.
    pub fn ones(label: Label, r: usize) -> Self {
        WeightedPartition { pairs: vec![(1, label); r] }
    }

    pub fn pairs(&self) -> &[(u32, Label)] {
        &self.pairs
    }

    pub fn size(&self) -> u32 {
        self.pairs.iter().map(|p| p.0).sum()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The underlying integer partition.
    pub fn shape(&self) -> Partition {
        Partition { parts: self.pairs.iter().map(|p| p.0).collect() }
    }

    /// `|Aut(η)| · ∏ aⱼ`.
    pub fn z(&self) -> BigUint {
        z_of(self.pairs.iter().copied())
    }

    pub fn dual(&self, ring: &GradedRing) -> Self {
        Self::new(self.pairs.iter().map(|&(a, l)| (a, ring.dual_label(l))).collect()).expect("parts unchanged")
    }

    /// `"2:h,1:pt"`; dual labels carry a trailing `^`.
    pub fn format(&self, ring: &GradedRing) -> String {
        self.pairs.iter().map(|&(a, l)| format!("{a}:{}", ring.label_name(l))).collect::<Vec<_>>().join(",")
    }

    /// Inverse of [`format`](Self::format).
    pub fn parse(s: &str, ring: &GradedRing) -> Result<Self, PartitionError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(WeightedPartition { pairs: Vec::new() });
        }
        let pairs = s
            .split(',')
            .map(|item| {
                let (a, l) = item.split_once(':').ok_or_else(|| PartitionError::BadPartition(s.to_string()))?;
                let a = a.trim().parse::<u32>().map_err(|_| PartitionError::BadPartition(s.to_string()))?;
                Ok((a, ring.parse_label(l)?))
            })
            .collect::<Result<Vec<_>, PartitionError>>()?;
        Self::new(pairs)
    }
}

/// `|Aut(η)| · ∏ aⱼ`.
pub fn z_factor(eta: &WeightedPartition) -> BigUint {
    eta.z()
}

pub fn dual(eta: &WeightedPartition, ring: &GradedRing) -> WeightedPartition {
    eta.dual(ring)
}

/// `∫ C_η ∪ C_ν` on the Hilbert scheme of `|η|` points.
pub fn nakajima_pairing(
    eta: &WeightedPartition,
    nu: &WeightedPartition,
    ring: &GradedRing,
) -> Result<Rational, PartitionError> {
    if eta.size() != nu.size() {
        return Err(PartitionError::SizeMismatch(eta.size(), nu.size()));
    }
    if *nu != eta.dual(ring) {
        return Ok(Rational::zero());
    }
    let sign = if (eta.size() as usize - eta.len()) % 2 == 0 { 1 } else { -1 };
    Ok(Rational::new(sign.into(), eta.z().into()))
}

/// Every weighted partition of `size` over the basis labels, in canonical order.
pub fn enumerate_weighted_partitions(size: u32, ring: &GradedRing) -> Vec<WeightedPartition> {
    let n = ring.dim();
    // pairs are emitted in nondecreasing key order: part descending, then label ascending
    fn rec(rest: u32, last: (u32, usize), n: usize, cur: &mut Vec<(u32, Label)>, out: &mut Vec<WeightedPartition>) {
        if rest == 0 {
            out.push(WeightedPartition { pairs: cur.clone() });
            return;
        }
        for a in (1..=rest.min(last.0)).rev() {
            let first_label = if a == last.0 { last.1 } else { 0 };
            for l in first_label..n {
                cur.push((a, Label::basis(l)));
                rec(rest - a, (a, l), n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(size, (size, 0), n, &mut Vec::new(), &mut out);
    out
}

/// All set partitions of `{0, …, r-1}`, blocks listed by smallest element.
pub fn set_partitions(r: usize) -> Vec<Vec<Vec<usize>>> {
    // restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[..i])
    fn rec(i: usize, r: usize, blocks: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == r {
            let mut p = vec![Vec::new(); blocks];
            for (j, &b) in a.iter().enumerate() {
                p[b].push(j);
            }
            out.push(p);
            return;
        }
        for b in 0..=blocks {
            a.push(b);
            rec(i + 1, r, blocks.max(b + 1), a, out);
            a.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, 0, &mut Vec::new(), &mut out);
    out
}
