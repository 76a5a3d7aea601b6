//! Formal descendent sums, small-diagonal pushforwards and the bar transform.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::ring::{ClassVec, GradedRing};
use super::{set_partitions, Partition, PartitionError};
use crate::exact::{GaussianRational, LaurentSeries, Rational, Var};

/// Sorted multiset of `(descendent index k, basis index j)`, read as `∏ τ_k(θ_j)`.
pub type DescMonomial = Vec<(u32, usize)>;

/// Coefficients a [`DescendentSum`] can carry.
pub trait DescCoeff: Clone + PartialEq + std::fmt::Debug {
    fn c_add(&self, o: &Self) -> Self;
    fn c_mul(&self, o: &Self) -> Self;
    fn c_is_zero(&self) -> bool;
}

impl DescCoeff for Rational {
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl DescCoeff for LaurentSeries {
    fn c_add(&self, o: &Self) -> Self {
        LaurentSeries::add(self, o)
    }
    fn c_mul(&self, o: &Self) -> Self {
        LaurentSeries::mul(self, o)
    }
    fn c_is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
}

/// Finite sum of descendent monomials; zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DescendentSum<C> {
    terms: BTreeMap<DescMonomial, C>,
}

impl<C: DescCoeff> DescendentSum<C> {
    pub fn zero() -> Self {
        DescendentSum { terms: BTreeMap::new() }
    }

    /// The empty monomial with coefficient `one`.
    pub fn unit(one: C) -> Self {
        let mut s = Self::zero();
        s.add_term(Vec::new(), one);
        s
    }

    pub fn terms(&self) -> &BTreeMap<DescMonomial, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, m: &[(u32, usize)]) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, mut m: DescMonomial, c: C) {
        if c.c_is_zero() {
            return;
        }
        m.sort_unstable();
        let merged = match self.terms.remove(&m) {
            Some(old) => old.c_add(&c),
            None => c,
        };
        if !merged.c_is_zero() {
            self.terms.insert(m, merged);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, c1.c_mul(c2));
            }
        }
        out
    }

    pub fn map<D: DescCoeff>(&self, f: impl Fn(&C) -> D) -> DescendentSum<D> {
        let mut out = DescendentSum::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// `τ1(h)·τ0(pt)` style rendering of a monomial; the empty monomial is `1`.
    pub fn format_monomial(m: &[(u32, usize)], ring: &GradedRing) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter().map(|&(k, j)| format!("τ{k}({})", ring.labels()[j])).collect::<Vec<_>>().join("·")
    }
}

fn rscale(s: &LaurentSeries, r: &Rational) -> LaurentSeries {
    s.scale(&GaussianRational::real(r.clone()))
}

fn check_class(ring: &GradedRing, gamma: &[Rational]) -> Result<(), PartitionError> {
    if gamma.len() != ring.dim() {
        return Err(PartitionError::BadRing(format!("class has {} coordinates, ring has {}", gamma.len(), ring.dim())));
    }
    Ok(())
}

/// Coefficients of `ι_*γ = Σ c_j θ_{j1} ⊗ ⋯ ⊗ θ_{jℓ}` for the small diagonal in `M^ℓ`.
///
/// `c_j = Σ_k (∫ γ θ_{k1}⋯θ_{kℓ}) ∏_s G⁻¹[k_s][j_s]`; zero coefficients are omitted.
pub fn small_diagonal_pushforward(
    ring: &GradedRing,
    gamma: &[Rational],
    slots: usize,
) -> Result<BTreeMap<Vec<usize>, Rational>, PartitionError> {
    if slots == 0 {
        return Err(PartitionError::NoSlots);
    }
    check_class(ring, gamma)?;
    let n = ring.dim();
    let size = n.pow(slots as u32);
    // Dense tensor, slot 0 most significant.
    let mut t = vec![Rational::zero(); size];
    let mut prefix: Vec<ClassVec> = vec![gamma.to_vec()];
    fill_integrals(ring, slots, 0, &mut prefix, &mut t);
    let ginv = ring.gram_inverse();
    for s in 0..slots {
        let stride = n.pow((slots - 1 - s) as u32);
        let mut next = vec![Rational::zero(); size];
        for (idx, v) in t.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let k = (idx / stride) % n;
            let base = idx - k * stride;
            for (j, g) in ginv[k].iter().enumerate() {
                if !g.is_zero() {
                    next[base + j * stride] += v * g;
                }
            }
        }
        t = next;
    }
    let mut out = BTreeMap::new();
    for (idx, v) in t.into_iter().enumerate() {
        if !v.is_zero() {
            let mut key = vec![0usize; slots];
            let mut r = idx;
            for s in (0..slots).rev() {
                key[s] = r % n;
                r /= n;
            }
            out.insert(key, v);
        }
    }
    Ok(out)
}

fn fill_integrals(ring: &GradedRing, slots: usize, offset: usize, prefix: &mut Vec<ClassVec>, t: &mut [Rational]) {
    let depth = prefix.len() - 1;
    let acc = prefix.last().expect("prefix starts with γ").clone();
    if depth == slots {
        t[offset] = ring.integrate(&acc);
        return;
    }
    if acc.iter().all(Zero::is_zero) {
        return;
    }
    let n = ring.dim();
    for k in 0..n {
        prefix.push(ring.mul(&acc, &ring.basis(k)));
        fill_integrals(ring, slots, offset * n + k, prefix, t);
        prefix.pop();
    }
}

/// `τ_{[α̂]}(γ) = Σ c_j τ_{α̂₁−1}(θ_{j1}) ⋯ τ_{α̂ℓ−1}(θ_{jℓ})`.
pub fn tau_bracket(
    alpha_hat: &Partition,
    gamma: &[Rational],
    ring: &GradedRing,
) -> Result<DescendentSum<Rational>, PartitionError> {
    let c = small_diagonal_pushforward(ring, gamma, alpha_hat.len())?;
    let mut out = DescendentSum::zero();
    for (js, v) in c {
        let m = alpha_hat.parts().iter().zip(js).map(|(&a, j)| (a - 1, j)).collect();
        out.add_term(m, v);
    }
    Ok(out)
}

/// Total Chern classes `c₁, c₂, c₃` of the threefold, pulled back to the ring.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernClasses {
    pub c1: ClassVec,
    pub c2: ClassVec,
    pub c3: ClassVec,
}

impl ChernClasses {
    pub fn zero(ring: &GradedRing) -> Self {
        ChernClasses { c1: ring.zero(), c2: ring.zero(), c3: ring.zero() }
    }

    /// Classes of a `Pⁿ` tangent bundle: `c_k = C(n+1, k) h^k`, truncated at `k = 3`.
    pub fn projective_space(n: usize) -> Self {
        let ring = GradedRing::projective_space(n);
        let mut cs = Vec::new();
        for k in 1..=3usize {
            let mut c = ring.zero();
            if k <= n {
                c[k] = Rational::from_integer(binomial(n as u64 + 1, k as u64).into());
            }
            cs.push(c);
        }
        let c3 = cs.pop().expect("three classes");
        let c2 = cs.pop().expect("three classes");
        let c1 = cs.pop().expect("three classes");
        ChernClasses { c1, c2, c3 }
    }

    fn power(&self, ring: &GradedRing, e: [u32; 3]) -> ClassVec {
        let mut acc = ring.unit();
        for (c, k) in [&self.c1, &self.c2, &self.c3].into_iter().zip(e) {
            for _ in 0..k {
                acc = ring.mul(&acc, c);
            }
        }
        acc
    }
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// One summand `series · class · c₁^{e1} c₂^{e2} c₃^{e3}` of a correspondence entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrTerm {
    /// Basis label; absent means the unit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default)]
    pub chern: [u32; 3],
    pub series: LaurentSeries,
}

impl CorrTerm {
    pub fn unit(series: LaurentSeries) -> Self {
        CorrTerm { class: None, chern: [0; 3], series }
    }
}

/// A cohomology-valued `u`-series: the sum of its terms.
pub type CorrEntry = Vec<CorrTerm>;

/// Correspondence matrix entries `K̃_{α,α̂}`.
///
/// Entries absent from the table are zero when `|α| ≤ max_size`; beyond that
/// bound a required entry is reported missing.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrMatrix {
    max_size: u32,
    trunc: i64,
    entries: BTreeMap<(Partition, Partition), CorrEntry>,
}

impl CorrMatrix {
    pub fn new(max_size: u32, trunc: i64) -> Self {
        CorrMatrix { max_size, trunc, entries: BTreeMap::new() }
    }

    /// `K̃_{(1),(1)} = 1` and every other entry zero, for all sizes.
    pub fn identity(trunc: i64) -> Self {
        let mut k = Self::new(u32::MAX, trunc);
        let one = Partition::new(vec![1]).expect("valid");
        k.insert(one.clone(), one, vec![CorrTerm::unit(LaurentSeries::one(Var::U, trunc))])
            .expect("support holds");
        k
    }

    pub fn max_size(&self) -> u32 {
        self.max_size
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn entries(&self) -> &BTreeMap<(Partition, Partition), CorrEntry> {
        &self.entries
    }

    pub fn insert(&mut self, alpha: Partition, alpha_hat: Partition, entry: CorrEntry) -> Result<(), PartitionError> {
        if alpha.size() < alpha_hat.size() {
            return Err(PartitionError::SupportViolation { alpha, alpha_hat });
        }
        self.entries.insert((alpha, alpha_hat), entry);
        Ok(())
    }

    /// `None` for an entry that is zero by omission.
    pub fn entry(&self, alpha: &Partition, alpha_hat: &Partition) -> Result<Option<&CorrEntry>, PartitionError> {
        match self.entries.get(&(alpha.clone(), alpha_hat.clone())) {
            Some(e) => Ok(Some(e)),
            None if alpha.size() <= self.max_size => Ok(None),
            None => Err(PartitionError::MissingEntry {
                alpha: alpha.clone(),
                alpha_hat: alpha_hat.clone(),
                max_size: self.max_size,
            }),
        }
    }

    /// Per-basis-coordinate series of an entry.
    pub fn resolve(
        entry: &CorrEntry,
        ring: &GradedRing,
        chern: &ChernClasses,
        trunc: i64,
    ) -> Result<Vec<LaurentSeries>, PartitionError> {
        let mut out = vec![LaurentSeries::zero(Var::U, trunc); ring.dim()];
        for term in entry {
            let base = match &term.class {
                Some(name) => ring.basis(ring.index_of(name)?),
                None => ring.unit(),
            };
            let class = ring.mul(&base, &chern.power(ring, term.chern));
            for (k, x) in class.iter().enumerate() {
                if !x.is_zero() {
                    out[k] = out[k].add(&rscale(&term.series, x));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct CorrRepr {
    max_size: u32,
    trunc: i64,
    entries: BTreeMap<String, CorrEntry>,
}

impl Serialize for CorrMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let key = |p: &Partition| p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let entries = self.entries.iter().map(|((a, b), e)| (format!("{}|{}", key(a), key(b)), e.clone())).collect();
        CorrRepr { max_size: self.max_size, trunc: self.trunc, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CorrMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = CorrRepr::deserialize(d)?;
        let mut k = CorrMatrix::new(repr.max_size, repr.trunc);
        for (key, e) in repr.entries {
            let (a, b) = key.split_once('|').ok_or_else(|| D::Error::custom(format!("entry key {key:?} needs α|α̂")))?;
            let a = Partition::parse(a).map_err(D::Error::custom)?;
            let b = Partition::parse(b).map_err(D::Error::custom)?;
            if a.is_empty() || b.is_empty() {
                return Err(D::Error::custom(format!("entry key {key:?} has an empty partition")));
            }
            k.insert(a, b, e).map_err(D::Error::custom)?;
        }
        Ok(k)
    }
}

/// `bar(τ_{α₁−1}(γ₁)⋯τ_{αℓ−1}(γℓ)) = Σ_P ∏_{S∈P} Σ_{0<|α̂|≤|α_S|} τ_{[α̂]}(K̃_{α_S,α̂} · γ_S)`.
///
/// `alpha[j]` is paired with `gammas[j]`.
pub fn bar_transform(
    alpha: &[u32],
    gammas: &[ClassVec],
    ring: &GradedRing,
    k: &CorrMatrix,
    chern: &ChernClasses,
) -> Result<DescendentSum<LaurentSeries>, PartitionError> {
    if alpha.len() != gammas.len() {
        return Err(PartitionError::ArityMismatch { parts: alpha.len(), classes: gammas.len() });
    }
    for g in gammas {
        check_class(ring, g)?;
    }
    let trunc = k.trunc();
    let one = LaurentSeries::one(Var::U, trunc);
    let mut block_cache: BTreeMap<Vec<usize>, DescendentSum<LaurentSeries>> = BTreeMap::new();
    let mut total = DescendentSum::zero();
    for p in set_partitions(alpha.len()) {
        let mut acc = DescendentSum::unit(one.clone());
        for block in &p {
            if !block_cache.contains_key(block) {
                let value = block_sum(block, alpha, gammas, ring, k, chern)?;
                block_cache.insert(block.clone(), value);
            }
            acc = acc.mul(&block_cache[block]);
            if acc.is_empty() {
                break;
            }
        }
        total = total.add(&acc);
    }
    Ok(total)
}

fn block_sum(
    block: &[usize],
    alpha: &[u32],
    gammas: &[ClassVec],
    ring: &GradedRing,
    k: &CorrMatrix,
    chern: &ChernClasses,
) -> Result<DescendentSum<LaurentSeries>, PartitionError> {
    let alpha_s = Partition::new(block.iter().map(|&j| alpha[j]).collect())?;
    let gamma_s = ring.product_of(&block.iter().map(|&j| gammas[j].clone()).collect::<Vec<_>>());
    let mut out = DescendentSum::zero();
    for size in 1..=alpha_s.size() {
        for alpha_hat in Partition::all_of(size) {
            let Some(entry) = k.entry(&alpha_s, &alpha_hat)? else {
                continue;
            };
            let kvec = CorrMatrix::resolve(entry, ring, chern, k.trunc())?;
            // K̃ · γ_S = Σ_i s_i (θ_i γ_S), spread over basis coordinates.
            let mut coords = vec![LaurentSeries::zero(Var::U, k.trunc()); ring.dim()];
            for (i, s) in kvec.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let prod = ring.mul(&ring.basis(i), &gamma_s);
                for (c, x) in prod.iter().enumerate() {
                    if !x.is_zero() {
                        coords[c] = coords[c].add(&rscale(s, x));
                    }
                }
            }
            for (c, s) in coords.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let tau = tau_bracket(&alpha_hat, &ring.basis(c), ring)?;
                out = out.add(&tau.map(|r| rscale(s, r)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn pushforward_single_slot_is_the_class() {
        let r = GradedRing::p2();
        let g = r.parse_class("2*h - 1/3*pt + 5").unwrap();
        let c = small_diagonal_pushforward(&r, &g, 1).unwrap();
        for (j, x) in g.iter().enumerate() {
            assert_eq!(c.get(&vec![j]).cloned().unwrap_or_else(Rational::zero), *x);
        }
        assert_eq!(small_diagonal_pushforward(&r, &g, 0), Err(PartitionError::NoSlots));
    }

    #[test]
    fn diagonal_of_p3() {
        let r = GradedRing::projective_space(3);
        let c = small_diagonal_pushforward(&r, &r.unit(), 2).unwrap();
        let expected: BTreeMap<Vec<usize>, Rational> = (0..4).map(|i| (vec![i, 3 - i], rat(1))).collect();
        assert_eq!(c, expected);
    }

    #[test]
    fn point_class_lands_on_points() {
        let r = GradedRing::p1xp1();
        let pt = r.basis(3);
        for l in 1..=4 {
            let c = small_diagonal_pushforward(&r, &pt, l).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(c.get(&vec![3; l]), Some(&rat(1)));
        }
    }

    #[test]
    fn tau_bracket_examples() {
        let r = GradedRing::p2();
        let g = r.parse_class("h + 2").unwrap();
        let t = tau_bracket(&part(&[3]), &g, &r).unwrap();
        let mut e = DescendentSum::zero();
        e.add_term(vec![(2, 1)], rat(1));
        e.add_term(vec![(2, 0)], rat(2));
        assert_eq!(t, e);
        let t = tau_bracket(&part(&[2, 1, 1]), &r.basis(2), &r).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(&[(0, 2), (0, 2), (1, 2)]), Some(&rat(1)));
        assert!(tau_bracket(&part(&[2]), &r.zero(), &r).unwrap().is_empty());
    }

    #[test]
    fn empty_insertion_gives_unit() {
        let r = GradedRing::p2();
        let k = CorrMatrix::identity(4);
        let b = bar_transform(&[], &[], &r, &k, &ChernClasses::zero(&r)).unwrap();
        assert_eq!(b, DescendentSum::unit(LaurentSeries::one(Var::U, 4)));
    }

    #[test]
    fn single_insertion_hand_expansion() {
        let r = GradedRing::p2();
        let trunc = 6;
        let c = rat(7) / rat(3);
        let mut k = CorrMatrix::new(2, trunc);
        let diag = LaurentSeries::from_real(Var::U, 0, &[rat(1), rat(0), rat(-1)], trunc);
        k.insert(part(&[2]), part(&[2]), vec![CorrTerm::unit(diag.clone())]).unwrap();
        let off = LaurentSeries::monomial(Var::U, GaussianRational::real(c), 1, trunc);
        k.insert(part(&[2]), part(&[1]), vec![CorrTerm::unit(off.clone())]).unwrap();
        let g = r.parse_class("h - 4*pt").unwrap();
        let b = bar_transform(&[2], &[g.clone()], &r, &k, &ChernClasses::zero(&r)).unwrap();
        let mut e = DescendentSum::zero();
        for (j, x) in g.iter().enumerate() {
            e.add_term(vec![(1, j)], rscale(&diag, x));
            e.add_term(vec![(0, j)], rscale(&off, x));
        }
        assert_eq!(b, e);
    }

    #[test]
    fn chern_terms_act_by_cup_product() {
        let r = GradedRing::p2();
        let chern = ChernClasses::projective_space(2);
        assert_eq!(chern.c1, r.parse_class("3*h").unwrap());
        assert_eq!(chern.c2, r.parse_class("3*pt").unwrap());
        let mut k = CorrMatrix::new(1, 3);
        let s = LaurentSeries::one(Var::U, 3);
        k.insert(part(&[1]), part(&[1]), vec![CorrTerm { class: None, chern: [1, 0, 0], series: s.clone() }]).unwrap();
        let b = bar_transform(&[1], &[r.basis(1)], &r, &k, &chern).unwrap();
        let mut e = DescendentSum::zero();
        e.add_term(vec![(0, 2)], rscale(&s, &rat(3)));
        assert_eq!(b, e);
    }

    #[test]
    fn missing_and_unsupported_entries() {
        let r = GradedRing::p2();
        let mut k = CorrMatrix::new(1, 3);
        assert!(matches!(
            k.insert(part(&[1]), part(&[2]), Vec::new()),
            Err(PartitionError::SupportViolation { .. })
        ));
        k.insert(part(&[1]), part(&[1]), vec![CorrTerm::unit(LaurentSeries::one(Var::U, 3))]).unwrap();
        let err = bar_transform(&[2], &[r.unit()], &r, &k, &ChernClasses::zero(&r)).unwrap_err();
        assert!(matches!(err, PartitionError::MissingEntry { max_size: 1, .. }));
        let err = bar_transform(&[1, 1], &[r.unit()], &r, &k, &ChernClasses::zero(&r)).unwrap_err();
        assert_eq!(err, PartitionError::ArityMismatch { parts: 2, classes: 1 });
    }

    #[test]
    fn corr_matrix_json_round_trip() {
        let mut k = CorrMatrix::new(2, 4);
        let s = LaurentSeries::from_real(Var::U, -1, &[rat(1), rat(0), rat(2) / rat(5)], 4);
        k.insert(part(&[1, 1]), part(&[2]), vec![CorrTerm { class: Some("h".into()), chern: [0, 1, 0], series: s }])
            .unwrap();
        let json = serde_json::to_value(&k).unwrap();
        assert!(json["entries"]["1,1|2"].is_array());
        let back: CorrMatrix = serde_json::from_value(json).unwrap();
        assert_eq!(back, k);
        let bad = serde_json::json!({"max_size": 2, "trunc": 4, "entries": {"1|2": []}});
        assert!(serde_json::from_value::<CorrMatrix>(bad).is_err());
    }

    fn arb_class(n: usize) -> impl Strategy<Value = ClassVec> {
        proptest::collection::vec((-5i64..=5, 1i64..=3), n)
            .prop_map(|v| v.into_iter().map(|(a, b)| rat(a) / rat(b)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn identity_corr_preserves_primary_products(gs in proptest::collection::vec(arb_class(4), 0..4)) {
            let r = GradedRing::p1xp1();
            let k = CorrMatrix::identity(5);
            let alpha = vec![1; gs.len()];
            let b = bar_transform(&alpha, &gs, &r, &k, &ChernClasses::zero(&r)).unwrap();
            let one = LaurentSeries::one(Var::U, 5);
            let mut e = DescendentSum::unit(one.clone());
            for g in &gs {
                let t = tau_bracket(&part(&[1]), g, &r).unwrap();
                e = e.mul(&t.map(|x| rscale(&one, x)));
            }
            prop_assert_eq!(b, e);
        }

        #[test]
        fn pushforward_pairs_correctly(g in arb_class(4), slots in 1usize..=3) {
            let r = GradedRing::p1xp1();
            let c = small_diagonal_pushforward(&r, &g, slots).unwrap();
            let gram = r.gram();
            // Every basis tensor θ_{k1}⊗⋯⊗θ_{kℓ}, paired slotwise against c, gives ∫ γ ∏ θ_{ks}.
            let n = r.dim();
            for idx in 0..n.pow(slots as u32) {
                let ks: Vec<usize> = (0..slots).map(|s| (idx / n.pow(s as u32)) % n).collect();
                let lhs: Rational = c
                    .iter()
                    .map(|(js, v)| js.iter().zip(&ks).fold(v.clone(), |acc, (&j, &k)| acc * &gram[j][k]))
                    .sum();
                let mut prod = g.clone();
                for &k in &ks {
                    prod = r.mul(&prod, &r.basis(k));
                }
                prop_assert_eq!(lhs, r.integrate(&prod));
            }
        }
    }
}
