//! Curve-class splittings, assembly of the GW and PT degeneration formulas,
//! the correspondence check under `−q = e^{iu}`, and a seeded synthetic harness.

use std::collections::BTreeMap;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chern::{base_change_degree, delpezzo3_chern, local_model_chern, weights_alpha, ChernTriple, DpLabel};
use crate::exact::{
    rat, substitute_exp, ExactError, GaussPoly, GaussianRational, LaurentSeries, Rational, RationalFunction, UniPoly, Var,
};
use crate::partitions::{enumerate_weighted_partitions, GradedRing, PartitionError, WeightedPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenError {
    #[error("class {0:?} is not declared")]
    UnknownClass(String),
    #[error("class {class:?} lives on the {found:?} side, expected {expected:?}")]
    WrongSide { class: String, expected: Side, found: Side },
    #[error("splitting {zero} + {infinity} of {total}: {what} is not additive")]
    NotAdditive { total: String, zero: String, infinity: String, what: &'static str },
    #[error("pushforward of {0:?} has the wrong rank")]
    PushforwardRank(String),
    #[error("no admissible splittings of {0:?}")]
    NoSplittings(String),
    #[error("missing relative entry {0:?}")]
    MissingEntry(String),
    #[error("entry {key:?} has the wrong kind: {why}")]
    EntryKind { key: String, why: &'static str },
    #[error("malformed table key {0:?}")]
    BadKey(String),
    #[error("c_beta = {0} is odd; the half power of (−q) is not a monomial")]
    OddCBeta(i64),
    #[error("GW side is known through u^{have}, the check needs u^{need}")]
    Truncation { have: i64, need: i64 },
    #[error("harness parameters out of range: {0}")]
    HarnessParams(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Which piece of the degeneration a class lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Total,
    Zero,
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub side: Side,
    #[serde(rename = "D_pairing")]
    pub d_pairing: i64,
    pub c_beta: i64,
    /// Coordinates of the image in the class group of the total space.
    pub pushforward: Vec<i64>,
    /// Declared splittings `[β₀, β_∞]`; only meaningful on the total side.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub summands: Vec<[String; 2]>,
    /// Pairing with a nef class; negative values are filtered out of splittings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nef_pairing: Option<i64>,
}

/// User-declared curve classes and their splittings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct CurveClassLattice {
    zero_component: String,
    infinity_component: String,
    classes: BTreeMap<String, ClassData>,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    zero_component: String,
    infinity_component: String,
    classes: BTreeMap<String, ClassData>,
}

impl TryFrom<LatticeRepr> for CurveClassLattice {
    type Error = DegenError;
    fn try_from(r: LatticeRepr) -> Result<Self, DegenError> {
        CurveClassLattice::new(r.zero_component, r.infinity_component, r.classes)
    }
}

impl From<CurveClassLattice> for LatticeRepr {
    fn from(l: CurveClassLattice) -> Self {
        LatticeRepr { zero_component: l.zero_component, infinity_component: l.infinity_component, classes: l.classes }
    }
}

/// A splitting `β₀ + β_∞` of an absolute class with `ρ = (D, β₀) = (D, β_∞)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Splitting {
    pub rho: u32,
    pub zero: String,
    pub infinity: String,
}

impl CurveClassLattice {
    /// Validates sides, pushforward ranks, and additivity of pushforwards and
    /// `c_β = c_{β₀} + c_{β_∞} − 2ρ` on every matching splitting.
    pub fn new(
        zero_component: String,
        infinity_component: String,
        classes: BTreeMap<String, ClassData>,
    ) -> Result<Self, DegenError> {
        let lattice = CurveClassLattice { zero_component, infinity_component, classes };
        let rank = lattice.classes.values().next().map_or(0, |c| c.pushforward.len());
        if let Some((id, _)) = lattice.classes.iter().find(|(_, c)| c.pushforward.len() != rank) {
            return Err(DegenError::PushforwardRank(id.clone()));
        }
        for (id, data) in &lattice.classes {
            if data.summands.is_empty() {
                continue;
            }
            if data.side != Side::Total {
                return Err(DegenError::WrongSide { class: id.clone(), expected: Side::Total, found: data.side });
            }
            for [z, i] in &data.summands {
                let zd = lattice.class_on(z, Side::Zero)?;
                let id_ = lattice.class_on(i, Side::Infinity)?;
                if zd.d_pairing != id_.d_pairing || zd.d_pairing < 0 {
                    continue;
                }
                let err = |what| DegenError::NotAdditive {
                    total: id.clone(),
                    zero: z.clone(),
                    infinity: i.clone(),
                    what,
                };
                let pushed: Vec<i64> = zd.pushforward.iter().zip(&id_.pushforward).map(|(a, b)| a + b).collect();
                if pushed != data.pushforward {
                    return Err(err("pushforward"));
                }
                if zd.c_beta + id_.c_beta - 2 * zd.d_pairing != data.c_beta {
                    return Err(err("c_beta"));
                }
            }
        }
        Ok(lattice)
    }

    pub fn zero_component(&self) -> &str {
        &self.zero_component
    }

    pub fn infinity_component(&self) -> &str {
        &self.infinity_component
    }

    pub fn classes(&self) -> &BTreeMap<String, ClassData> {
        &self.classes
    }

    pub fn class(&self, id: &str) -> Result<&ClassData, DegenError> {
        self.classes.get(id).ok_or_else(|| DegenError::UnknownClass(id.to_string()))
    }

    fn class_on(&self, id: &str, side: Side) -> Result<&ClassData, DegenError> {
        let c = self.class(id)?;
        if c.side != side {
            return Err(DegenError::WrongSide { class: id.to_string(), expected: side, found: c.side });
        }
        Ok(c)
    }

    pub fn component_name(&self, side: Side) -> &str {
        match side {
            Side::Zero => &self.zero_component,
            Side::Infinity => &self.infinity_component,
            Side::Total => "total",
        }
    }
}

/// Declared splittings of `beta` with equal divisor pairings `ρ ≥ 0`, passing
/// the nef filter, in canonical `(ρ, β₀, β_∞)` order.
pub fn enumerate_splittings(beta: &str, lattice: &CurveClassLattice) -> Result<Vec<Splitting>, DegenError> {
    let data = lattice.class_on(beta, Side::Total)?;
    let mut out = Vec::new();
    for [z, i] in &data.summands {
        let zd = lattice.class(z)?;
        let id = lattice.class(i)?;
        if zd.d_pairing != id.d_pairing || zd.d_pairing < 0 {
            continue;
        }
        if zd.nef_pairing.is_some_and(|n| n < 0) || id.nef_pairing.is_some_and(|n| n < 0) {
            continue;
        }
        out.push(Splitting { rho: zd.d_pairing as u32, zero: z.clone(), infinity: i.clone() });
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A relative partition function: a `u`- or `q`-series, or an exact rational function of `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelEntry {
    Rational(RationalFunction),
    Series(LaurentSeries),
}

/// Relative partition functions keyed by `"component|class|insertions|eta"`.
///
/// Insertions are comma-separated opaque tokens in sorted order; `eta` is a
/// weighted partition written as `"2:h,1:pt"`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelativeTable {
    entries: BTreeMap<String, RelEntry>,
}

impl RelativeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn key(component: &str, class: &str, insertions: &[String], eta: &WeightedPartition, ring: &GradedRing) -> String {
        let mut ins = insertions.to_vec();
        ins.sort();
        format!("{component}|{class}|{}|{}", ins.join(","), eta.format(ring))
    }

    /// Re-keys a table read from outside into canonical form.
    pub fn canonicalize(self, ring: &GradedRing) -> Result<Self, DegenError> {
        let mut out = Self::new();
        for (k, v) in self.entries {
            let parts: Vec<&str> = k.split('|').collect();
            let [component, class, ins, eta] = parts[..] else {
                return Err(DegenError::BadKey(k));
            };
            let ins: Vec<String> =
                ins.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
            let eta = WeightedPartition::parse(eta, ring)?;
            out.entries.insert(Self::key(component.trim(), class.trim(), &ins, &eta, ring), v);
        }
        Ok(out)
    }

    pub fn insert(&mut self, key: String, entry: RelEntry) {
        self.entries.insert(key, entry);
    }

    pub fn get(&self, key: &str) -> Result<&RelEntry, DegenError> {
        self.entries.get(key).ok_or_else(|| DegenError::MissingEntry(key.to_string()))
    }

    pub fn get_mut(&mut self, key: &str) -> Option<&mut RelEntry> {
        self.entries.get_mut(key)
    }

    pub fn entries(&self) -> &BTreeMap<String, RelEntry> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn gw_series(&self, key: &str) -> Result<LaurentSeries, DegenError> {
        match self.get(key)? {
            RelEntry::Series(s) if s.var() == Var::U => Ok(s.clone()),
            _ => Err(DegenError::EntryKind { key: key.to_string(), why: "GW entries are u-series" }),
        }
    }

    fn pt_series(&self, key: &str, trunc: i64) -> Result<LaurentSeries, DegenError> {
        match self.get(key)? {
            RelEntry::Series(s) if s.var() == Var::Q => Ok(s.clone()),
            RelEntry::Rational(f) => Ok(f.expand(Var::Q, trunc)),
            _ => Err(DegenError::EntryKind { key: key.to_string(), why: "PT entries are q-series or rational" }),
        }
    }

    fn pt_rational(&self, key: &str) -> Result<RationalFunction, DegenError> {
        match self.get(key)? {
            RelEntry::Rational(f) => Ok(f.clone()),
            _ => Err(DegenError::EntryKind { key: key.to_string(), why: "exact assembly needs rational PT entries" }),
        }
    }
}

/// One term of a degeneration formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssemblyIndex {
    pub splitting: Splitting,
    pub zero_insertions: Vec<String>,
    pub infinity_insertions: Vec<String>,
    pub eta: WeightedPartition,
}

impl AssemblyIndex {
    pub fn zero_key(&self, lattice: &CurveClassLattice, ring: &GradedRing) -> String {
        RelativeTable::key(lattice.zero_component(), &self.splitting.zero, &self.zero_insertions, &self.eta, ring)
    }

    pub fn infinity_key(&self, lattice: &CurveClassLattice, ring: &GradedRing) -> String {
        let dual = self.eta.dual(ring);
        RelativeTable::key(lattice.infinity_component(), &self.splitting.infinity, &self.infinity_insertions, &dual, ring)
    }
}

/// Every `(marking partition, η)` term for one splitting, shared by both assemblies.
pub fn splitting_index(splitting: &Splitting, insertions: &[String], ring: &GradedRing) -> Vec<AssemblyIndex> {
    let etas = enumerate_weighted_partitions(splitting.rho, ring);
    let k = insertions.len();
    let mut out = Vec::new();
    for mask in 0..(1u64 << k) {
        let (mut zero, mut inf) = (Vec::new(), Vec::new());
        for (j, g) in insertions.iter().enumerate() {
            if mask >> j & 1 == 1 {
                inf.push(g.clone());
            } else {
                zero.push(g.clone());
            }
        }
        zero.sort();
        inf.sort();
        for eta in &etas {
            out.push(AssemblyIndex {
                splitting: splitting.clone(),
                zero_insertions: zero.clone(),
                infinity_insertions: inf.clone(),
                eta: eta.clone(),
            });
        }
    }
    out
}

/// The full index set of the degeneration formula for `beta`.
pub fn assembly_index(
    beta: &str,
    insertions: &[String],
    lattice: &CurveClassLattice,
    ring: &GradedRing,
) -> Result<Vec<AssemblyIndex>, DegenError> {
    Ok(enumerate_splittings(beta, lattice)?.iter().flat_map(|s| splitting_index(s, insertions, ring)).collect())
}

fn z_real(eta: &WeightedPartition) -> GaussianRational {
    GaussianRational::real(Rational::from_integer(eta.z().into()))
}

/// `(−1)^{ℓ(η)} 𝔷(η) (−q)^{−|η|}` as `(coefficient, exponent)`.
fn pt_weight(eta: &WeightedPartition) -> (GaussianRational, i64) {
    let sign = if (eta.len() + eta.size() as usize) % 2 == 0 { 1 } else { -1 };
    (z_real(eta).scale(&rat(sign)), -(eta.size() as i64))
}

fn sum_series(parts: Vec<LaurentSeries>, beta: &str) -> Result<LaurentSeries, DegenError> {
    let mut it = parts.into_iter();
    let first = it.next().ok_or_else(|| DegenError::NoSplittings(beta.to_string()))?;
    Ok(it.fold(first, |acc, s| acc.add(&s)))
}

fn gw_splitting(
    s: &Splitting,
    insertions: &[String],
    tables: &RelativeTable,
    lattice: &CurveClassLattice,
    ring: &GradedRing,
) -> Result<LaurentSeries, DegenError> {
    let mut acc: Option<LaurentSeries> = None;
    for idx in splitting_index(s, insertions, ring) {
        let g0 = tables.gw_series(&idx.zero_key(lattice, ring))?;
        let g1 = tables.gw_series(&idx.infinity_key(lattice, ring))?;
        let term = g0.mul(&g1).mul_monomial(&z_real(&idx.eta), 2 * idx.eta.len() as i64);
        acc = Some(match acc {
            Some(a) => a.add(&term),
            None => term,
        });
    }
    Ok(acc.expect("every splitting has at least one term"))
}

fn pt_splitting(
    s: &Splitting,
    insertions: &[String],
    tables: &RelativeTable,
    lattice: &CurveClassLattice,
    ring: &GradedRing,
    trunc: i64,
) -> Result<LaurentSeries, DegenError> {
    let mut acc: Option<LaurentSeries> = None;
    for idx in splitting_index(s, insertions, ring) {
        let p0 = tables.pt_series(&idx.zero_key(lattice, ring), trunc)?;
        let p1 = tables.pt_series(&idx.infinity_key(lattice, ring), trunc)?;
        let (c, k) = pt_weight(&idx.eta);
        let term = p0.mul(&p1).mul_monomial(&c, k);
        acc = Some(match acc {
            Some(a) => a.add(&term),
            None => term,
        });
    }
    Ok(acc.expect("every splitting has at least one term"))
}

fn pt_splitting_rational(
    s: &Splitting,
    insertions: &[String],
    tables: &RelativeTable,
    lattice: &CurveClassLattice,
    ring: &GradedRing,
) -> Result<RationalFunction, DegenError> {
    let mut terms = Vec::new();
    for idx in splitting_index(s, insertions, ring) {
        let p0 = tables.pt_rational(&idx.zero_key(lattice, ring))?;
        let p1 = tables.pt_rational(&idx.infinity_key(lattice, ring))?;
        let (c, k) = pt_weight(&idx.eta);
        terms.push(p0.mul(&p1).mul_monomial(&c, k));
    }
    Ok(RationalFunction::sum(&terms))
}

/// Per-splitting GW contributions `Σ 𝔷(η) u^{2ℓ(η)} Z(M₀/D|η) Z(M_∞/D|η^∨)`.
pub fn assemble_gw_by_splitting(
    beta: &str,
    insertions: &[String],
    tables: &RelativeTable,
    lattice: &CurveClassLattice,
    ring: &GradedRing,
) -> Result<Vec<(Splitting, LaurentSeries)>, DegenError> {
    let splittings = enumerate_splittings(beta, lattice)?;
    splittings
        .par_iter()
        .map(|s| Ok((s.clone(), gw_splitting(s, insertions, tables, lattice, ring)?)))
        .collect()
}

/// Absolute GW partition function from the degeneration formula.
pub fn assemble_gw(
    beta: &str,
    insertions: &[String],
    tables: &RelativeTable,
    lattice: &CurveClassLattice,
    ring: &GradedRing,
) -> Result<LaurentSeries, DegenError> {
    let parts = assemble_gw_by_splitting(beta, insertions, tables, lattice, ring)?;
    sum_series(parts.into_iter().map(|p| p.1).collect(), beta)
}

/// Absolute PT partition function as a `q`-series; rational entries are
/// expanded to truncation `trunc`.
pub fn assemble_pt(
    beta: &str,
    insertions: &[String],
    tables: &RelativeTable,
    lattice: &CurveClassLattice,
    ring: &GradedRing,
    trunc: i64,
) -> Result<LaurentSeries, DegenError> {
    let splittings = enumerate_splittings(beta, lattice)?;
    let parts = splittings
        .par_iter()
        .map(|s| pt_splitting(s, insertions, tables, lattice, ring, trunc))
        .collect::<Result<Vec<_>, _>>()?;
    sum_series(parts, beta)
}

/// Per-splitting exact PT contributions; every entry must be rational.
pub fn assemble_pt_rational_by_splitting(
    beta: &str,
    insertions: &[String],
    tables: &RelativeTable,
    lattice: &CurveClassLattice,
    ring: &GradedRing,
) -> Result<Vec<(Splitting, RationalFunction)>, DegenError> {
    let splittings = enumerate_splittings(beta, lattice)?;
    splittings
        .par_iter()
        .map(|s| Ok((s.clone(), pt_splitting_rational(s, insertions, tables, lattice, ring)?)))
        .collect()
}

/// Absolute PT partition function as an exact rational function of `q`.
pub fn assemble_pt_rational(
    beta: &str,
    insertions: &[String],
    tables: &RelativeTable,
    lattice: &CurveClassLattice,
    ring: &GradedRing,
) -> Result<RationalFunction, DegenError> {
    let parts = assemble_pt_rational_by_splitting(beta, insertions, tables, lattice, ring)?;
    if parts.is_empty() {
        return Err(DegenError::NoSplittings(beta.to_string()));
    }
    Ok(RationalFunction::sum(parts.iter().map(|p| &p.1)))
}

/// `(−q)^{−c/2}` for even `c`, as a rational function.
fn minus_q_half_power(f: &RationalFunction, c_beta: i64) -> Result<RationalFunction, DegenError> {
    if c_beta % 2 != 0 {
        return Err(DegenError::OddCBeta(c_beta));
    }
    let h = -c_beta / 2;
    let sign = if h % 2 == 0 { 1 } else { -1 };
    Ok(f.mul_monomial(&GaussianRational::from_int(sign), h))
}

/// `(−iu)^k · g`.
fn times_minus_iu_power(g: &LaurentSeries, k: i64) -> LaurentSeries {
    g.mul_monomial(&(-GaussianRational::i()).powi(k), k)
}

/// Exponents `n ≤ order` where `(−q)^{−c/2} Z_PT` and `(−iu)^{c+e} Z_GW` differ
/// after `−q = e^{iu}`; `e` is `ℓ(η) − |η|` in the relative setting and 0 otherwise.
pub fn correspondence_mismatches(
    zpt: &RationalFunction,
    zgw: &LaurentSeries,
    c_beta: i64,
    ell_minus_size: i64,
    order: i64,
) -> Result<Vec<i64>, DegenError> {
    let lhs = substitute_exp(&minus_q_half_power(zpt, c_beta)?, order)?;
    let rhs = times_minus_iu_power(&zgw.with_var(Var::U), c_beta + ell_minus_size);
    if rhs.trunc() <= order {
        return Err(DegenError::Truncation { have: rhs.trunc() - 1, need: order });
    }
    Ok(lhs.differences_through(&rhs, order))
}

/// Whether the GW/PT correspondence holds through `u^order`.
pub fn correspondence_check(
    zpt: &RationalFunction,
    zgw: &LaurentSeries,
    c_beta: i64,
    ell_minus_size: i64,
    order: i64,
) -> Result<bool, DegenError> {
    Ok(correspondence_mismatches(zpt, zgw, c_beta, ell_minus_size, order)?.is_empty())
}

/// Relative GW entry matching a PT entry by the relative correspondence:
/// `(−iu)^{−(c + ℓ − |η|)} · [(−q)^{−c/2} Z_PT]_{−q = e^{iu}}`.
pub fn gw_from_pt(
    pt: &RationalFunction,
    c_beta: i64,
    eta: &WeightedPartition,
    order: i64,
) -> Result<LaurentSeries, DegenError> {
    let e = c_beta + eta.len() as i64 - eta.size() as i64;
    let s = substitute_exp(&minus_q_half_power(pt, c_beta)?, order)?;
    Ok(times_minus_iu_power(&s, -e))
}

/// Harness outcome for one splitting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingOutcome {
    pub splitting: Splitting,
    pub terms: usize,
    pub passed: bool,
    pub mismatches: Vec<i64>,
}

/// The relative GW entry altered in a control run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corruption {
    pub splitting: Splitting,
    pub key: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub seed: u64,
    pub ring: Vec<String>,
    pub c_beta: i64,
    pub insertions: Vec<String>,
    pub order: i64,
    pub splittings: Vec<SplittingOutcome>,
    pub passed: bool,
    pub corrupted: Option<Corruption>,
}

impl HarnessReport {
    pub fn failing(&self) -> Vec<&Splitting> {
        self.splittings.iter().filter(|s| !s.passed).map(|s| &s.splitting).collect()
    }

    /// A control run localizes its fault when exactly the corrupted splitting fails.
    pub fn localizes_fault(&self) -> bool {
        match &self.corrupted {
            Some(c) => self.failing() == vec![&c.splitting],
            None => false,
        }
    }
}

const MAX_POLE: u32 = 2;
const HARNESS_BETA: &str = "beta";

struct HarnessSetup {
    ring: GradedRing,
    lattice: CurveClassLattice,
    c_beta: i64,
    insertions: Vec<String>,
    gw: RelativeTable,
    pt: RelativeTable,
}

fn random_pt_entry(rng: &mut ChaCha8Rng) -> RationalFunction {
    let deg = rng.gen_range(0..=2usize);
    let mut num: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
    if num.iter().all(|&c| c == 0) {
        num[0] = 1;
    }
    let mut den = UniPoly::from_ints(&[1, 1]).to_gauss().pow(rng.gen_range(0..=MAX_POLE));
    if rng.gen_bool(0.5) {
        // A factor 1 + a q with a ≠ 1 keeps the pole order at q = −1 unchanged.
        let choices = [(-1, 2), (2, 1), (1, 3), (-2, 1), (3, 2)];
        let (p, r) = *choices.choose(rng).expect("nonempty");
        let lin = GaussPoly::new(vec![GaussianRational::one(), GaussianRational::real(rat(p) / rat(r))]);
        den = &den * &lin;
    }
    let f = RationalFunction::new(UniPoly::from_ints(&num).to_gauss(), den).expect("nonzero denominator");
    f.mul_monomial(&GaussianRational::one(), rng.gen_range(-1..=1))
}

fn harness_setup(seed: u64, max_rho: u32, n_insertions: usize, order: i64) -> Result<HarnessSetup, DegenError> {
    if max_rho > 3 || n_insertions > 2 || order < 0 {
        return Err(DegenError::HarnessParams(format!(
            "max_rho = {max_rho} (≤ 3), insertions = {n_insertions} (≤ 2), order = {order} (≥ 0)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = match rng.gen_range(0..3) {
        0 => GradedRing::point(),
        1 => GradedRing::curve(),
        _ => GradedRing::p2(),
    };
    let c_beta = 2 * rng.gen_range(-2..=2i64);
    let mut rhos: Vec<u32> = (0..=max_rho).collect();
    rhos.shuffle(&mut rng);
    rhos.truncate(rng.gen_range(1..=rhos.len().min(3)));
    let insertions: Vec<String> = (1..=n_insertions).map(|j| format!("g{j}")).collect();

    let total_push = vec![1, rng.gen_range(-2..=2)];
    let mut classes = BTreeMap::new();
    let mut summands = Vec::new();
    for (j, &rho) in rhos.iter().enumerate() {
        let c0 = 2 * rng.gen_range(-2..=2i64);
        let c1 = c_beta + 2 * rho as i64 - c0;
        let p0 = vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        let p1: Vec<i64> = total_push.iter().zip(&p0).map(|(t, a)| t - a).collect();
        let (z, i) = (format!("b0_{j}"), format!("binf_{j}"));
        let data = |side: Side, c: i64, p: Vec<i64>| ClassData {
            side,
            d_pairing: rho as i64,
            c_beta: c,
            pushforward: p,
            summands: Vec::new(),
            nef_pairing: None,
        };
        classes.insert(z.clone(), data(Side::Zero, c0, p0));
        classes.insert(i.clone(), data(Side::Infinity, c1, p1));
        summands.push([z, i]);
    }
    classes.insert(
        HARNESS_BETA.to_string(),
        ClassData { side: Side::Total, d_pairing: 0, c_beta, pushforward: total_push, summands, nef_pairing: None },
    );
    let lattice = CurveClassLattice::new("M0".into(), "Minf".into(), classes)?;

    let sub_order = order + MAX_POLE as i64;
    let mut gw = RelativeTable::new();
    let mut pt = RelativeTable::new();
    for idx in assembly_index(HARNESS_BETA, &insertions, &lattice, &ring)? {
        let sides = [
            (idx.zero_key(&lattice, &ring), &idx.splitting.zero, idx.eta.clone()),
            (idx.infinity_key(&lattice, &ring), &idx.splitting.infinity, idx.eta.dual(&ring)),
        ];
        for (key, class, eta) in sides {
            if pt.entries.contains_key(&key) {
                continue;
            }
            let f = random_pt_entry(&mut rng);
            let c = lattice.class(class)?.c_beta;
            gw.insert(key.clone(), RelEntry::Series(gw_from_pt(&f, c, &eta, sub_order)?));
            pt.insert(key, RelEntry::Rational(f));
        }
    }
    Ok(HarnessSetup { ring, lattice, c_beta, insertions, gw, pt })
}

fn harness_evaluate(
    seed: u64,
    setup: &HarnessSetup,
    order: i64,
    corrupted: Option<Corruption>,
) -> Result<HarnessReport, DegenError> {
    let HarnessSetup { ring, lattice, c_beta, insertions, gw, pt } = setup;
    let gw_parts = assemble_gw_by_splitting(HARNESS_BETA, insertions, gw, lattice, ring)?;
    let pt_parts = assemble_pt_rational_by_splitting(HARNESS_BETA, insertions, pt, lattice, ring)?;
    let mut splittings = Vec::new();
    for ((s, g), (_, p)) in gw_parts.iter().zip(&pt_parts) {
        let mismatches = correspondence_mismatches(p, g, *c_beta, 0, order)?;
        splittings.push(SplittingOutcome {
            splitting: s.clone(),
            terms: splitting_index(s, insertions, ring).len(),
            passed: mismatches.is_empty(),
            mismatches,
        });
    }
    let total_gw = sum_series(gw_parts.into_iter().map(|p| p.1).collect(), HARNESS_BETA)?;
    let total_pt = RationalFunction::sum(pt_parts.iter().map(|p| &p.1));
    let passed = correspondence_check(&total_pt, &total_gw, *c_beta, 0, order)?;
    Ok(HarnessReport {
        seed,
        ring: ring.labels().to_vec(),
        c_beta: *c_beta,
        insertions: insertions.clone(),
        order,
        splittings,
        passed,
        corrupted,
    })
}

/// One seeded run: random rational relative PT tables, GW tables defined from
/// them by the relative correspondence, and the absolute check per splitting.
pub fn synthetic_harness(seed: u64, max_rho: u32, insertions: usize, order: i64) -> Result<HarnessReport, DegenError> {
    let setup = harness_setup(seed, max_rho, insertions, order)?;
    harness_evaluate(seed, &setup, order, None)
}

/// As [`synthetic_harness`], with one relative GW entry of a random splitting
/// shifted by `1` in its lowest stored coefficient.
pub fn synthetic_harness_corrupted(
    seed: u64,
    max_rho: u32,
    insertions: usize,
    order: i64,
) -> Result<HarnessReport, DegenError> {
    let mut setup = harness_setup(seed, max_rho, insertions, order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let index = assembly_index(HARNESS_BETA, &setup.insertions, &setup.lattice, &setup.ring)?;
    let target = index.choose(&mut rng).expect("index is never empty");
    let key = target.zero_key(&setup.lattice, &setup.ring);
    if let Some(RelEntry::Series(s)) = setup.gw.get_mut(&key) {
        let bump = LaurentSeries::monomial(Var::U, GaussianRational::one(), s.valuation(), s.trunc());
        *s = s.add(&bump);
    }
    let corruption = Corruption { splitting: target.splitting.clone(), key };
    harness_evaluate(seed, &setup, order, Some(corruption))
}

/// Shape of a double point degeneration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// `Y ⇝ Y ∪_E Y_d`, the deformation to the normal cone.
    Kahler,
    /// `X ⇝ Y ∪_E X_d`, the semistable reduction of the smoothing.
    Complex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub name: String,
    pub description: String,
    pub chern: Option<ChernTriple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioTemplate {
    pub label: DpLabel,
    pub shape: Shape,
    pub total: String,
    pub components: [ComponentInfo; 2],
    pub divisor: String,
    pub insertion_side: String,
    pub weight_alpha: Vec<u32>,
    pub base_change_degree: u32,
}

fn xd_description(label: DpLabel) -> &'static str {
    match label {
        DpLabel::D1 => "hypersurface of degree 6 in P(3,2,1,1,1)",
        DpLabel::D2 => "double cover of P^3 branched along a quartic surface",
        DpLabel::D3 => "cubic hypersurface in P^4",
        DpLabel::D4 => "complete intersection of two quadrics in P^5",
        DpLabel::D5 => "codimension 3 linear section of Gr(2,5) in P^9",
        DpLabel::D6I => "divisor of bidegree (1,1) in P^2 x P^2",
        DpLabel::D6II => "P^1 x P^1 x P^1",
        DpLabel::D7 => "blow-up of P^3 at a point",
        DpLabel::D8 => "P^3 with O(1) = O_{P^3}(2)",
    }
}

fn yd_name(label: DpLabel) -> String {
    format!("Y_{}", label.degree())
}

/// Both degeneration shapes for a catalog transition, Kähler first.
pub fn transition_scenario(label: DpLabel) -> [ScenarioTemplate; 2] {
    let y = ComponentInfo { name: "Y".into(), description: "global threefold containing E".into(), chern: None };
    let yd = ComponentInfo {
        name: yd_name(label),
        description: "P_E(K_E + O) over the del Pezzo surface E".into(),
        chern: Some(local_model_chern(label)),
    };
    let xd = ComponentInfo {
        name: format!("X_{}", label.as_str()),
        description: xd_description(label).into(),
        chern: Some(delpezzo3_chern(label)),
    };
    let template = |shape, total: &str, other: ComponentInfo, n| ScenarioTemplate {
        label,
        shape,
        total: total.into(),
        components: [y.clone(), other],
        divisor: "E".into(),
        insertion_side: "Y".into(),
        weight_alpha: weights_alpha(label),
        base_change_degree: n,
    };
    [template(Shape::Kahler, "Y", yd, 1), template(Shape::Complex, "X", xd, base_change_degree(label))]
}
