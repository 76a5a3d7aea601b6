//! Finite-dimensional graded cohomology rings given by structure constants.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PartitionError;
use crate::exact::{invert_matrix, rat, rational_serde, Rational};

/// Coefficient vector over a ring basis.
pub type ClassVec = Vec<Rational>;

/// A basis element or, when its Poincaré dual is not itself a basis
/// element, the dual of one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub index: usize,
    pub dual: bool,
}

impl Label {
    pub fn basis(index: usize) -> Self {
        Label { index, dual: false }
    }
}

/// Even-degree cohomology with a chosen basis.
///
/// `mult[i][j][k]` is the coefficient of `θ_k` in `θ_i · θ_j`; degrees are
/// real cohomological degrees.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedRing {
    labels: Vec<String>,
    degrees: Vec<u32>,
    mult: Vec<Vec<ClassVec>>,
    unit: usize,
    integral: ClassVec,
    gram_inv: Vec<ClassVec>,
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedRing{:?}", self.labels)
    }
}

impl GradedRing {
    /// Builds and validates a ring. Products with the unit are implied;
    /// listed products are mirrored, so each unordered pair needs one entry.
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<u32>,
        unit: usize,
        products: &[(usize, usize, usize, Rational)],
        integral: ClassVec,
    ) -> Result<Self, PartitionError> {
        let n = labels.len();
        let bad = |m: String| Err(PartitionError::BadRing(m));
        if n == 0 || degrees.len() != n || integral.len() != n {
            return bad(format!("{} labels, {} degrees, {} integrals", n, degrees.len(), integral.len()));
        }
        if let Some(i) = degrees.iter().position(|d| d % 2 == 1) {
            return Err(PartitionError::OddClass(labels[i].clone()));
        }
        if unit >= n || degrees[unit] != 0 {
            return bad("the unit must be a degree-0 basis element".into());
        }
        let mut mult = vec![vec![vec![Rational::zero(); n]; n]; n];
        for j in 0..n {
            mult[unit][j][j] = Rational::one();
            mult[j][unit][j] = Rational::one();
        }
        for (i, j, k, v) in products {
            if *i >= n || *j >= n || *k >= n {
                return bad(format!("product ({i}, {j}, {k}) out of range"));
            }
            if !v.is_zero() && degrees[*i] + degrees[*j] != degrees[*k] {
                return bad(format!("product {}·{} -> {} breaks the grading", labels[*i], labels[*j], labels[*k]));
            }
            mult[*i][*j][*k] = v.clone();
            mult[*j][*i][*k] = v.clone();
        }
        let mut ring = GradedRing { labels, degrees, mult, unit, integral, gram_inv: Vec::new() };
        ring.check_associative()?;
        ring.gram_inv = invert_matrix(&ring.gram()).ok_or(PartitionError::DegeneratePairing)?;
        Ok(ring)
    }

    fn check_associative(&self) -> Result<(), PartitionError> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.mul(&self.mul(&self.basis(a), &self.basis(b)), &self.basis(c));
                    let right = self.mul(&self.basis(a), &self.mul(&self.basis(b), &self.basis(c)));
                    if left != right {
                        return Err(PartitionError::BadRing(format!(
                            "product is not associative on ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The point: a single class `1`.
    pub fn point() -> Self {
        Self::projective_space(0)
    }

    /// `P¹` with basis `{1, pt}`.
    pub fn curve() -> Self {
        Self::projective_space(1)
    }

    /// `P²` with basis `{1, h, pt}`.
    pub fn p2() -> Self {
        Self::projective_space(2)
    }

    /// `Pⁿ` with basis `1, h, …, hⁿ`; the top class is named `pt`.
    pub fn projective_space(n: usize) -> Self {
        let labels = (0..=n)
            .map(|k| match k {
                0 => "1".to_string(),
                _ if k == n => "pt".to_string(),
                1 => "h".to_string(),
                _ => format!("h{k}"),
            })
            .collect();
        let degrees = (0..=n as u32).map(|k| 2 * k).collect();
        let mut products = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                if i + j <= n {
                    products.push((i, j, i + j, rat(1)));
                }
            }
        }
        let mut integral = vec![Rational::zero(); n + 1];
        integral[n] = rat(1);
        Self::new(labels, degrees, 0, &products, integral).expect("projective space is a valid ring")
    }

    /// `P¹ × P¹` with basis `{1, a, b, pt}`.
    pub fn p1xp1() -> Self {
        let labels = ["1", "a", "b", "pt"].map(String::from).to_vec();
        Self::new(labels, vec![0, 2, 2, 4], 0, &[(1, 2, 3, rat(1))], vec![rat(0), rat(0), rat(0), rat(1)])
            .expect("quadric surface is a valid ring")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PartitionError> {
        self.labels.iter().position(|l| l == name).ok_or_else(|| PartitionError::UnknownLabel(name.to_string()))
    }

    pub fn basis(&self, i: usize) -> ClassVec {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn unit(&self) -> ClassVec {
        self.basis(self.unit)
    }

    pub fn zero(&self) -> ClassVec {
        vec![Rational::zero(); self.dim()]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> ClassVec {
        let n = self.dim();
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for k in 0..n {
                    let c = &self.mult[i][j][k];
                    if !c.is_zero() {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        out
    }

    pub fn product_of(&self, classes: &[ClassVec]) -> ClassVec {
        classes.iter().fold(self.unit(), |acc, c| self.mul(&acc, c))
    }

    pub fn integrate(&self, a: &[Rational]) -> Rational {
        a.iter().zip(&self.integral).map(|(x, w)| x * w).sum()
    }

    /// `G_ij = ∫ θ_i θ_j`.
    pub fn gram(&self) -> Vec<ClassVec> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.integrate(&self.mult[i][j])).collect())
            .collect()
    }

    /// `G⁻¹`; column `i` holds the coordinates of the dual class `θ_i^∨`.
    pub fn gram_inverse(&self) -> &[ClassVec] {
        &self.gram_inv
    }

    /// The class `θ_i^∨` with `∫ θ_j θ_i^∨ = δ_ij`.
    pub fn dual_class(&self, i: usize) -> ClassVec {
        (0..self.dim()).map(|j| self.gram_inv[j][i].clone()).collect()
    }

    /// The class a label stands for.
    pub fn label_class(&self, l: Label) -> ClassVec {
        if l.dual {
            self.dual_class(l.index)
        } else {
            self.basis(l.index)
        }
    }

    /// Dual label, written as a basis label whenever the dual class is one.
    pub fn dual_label(&self, l: Label) -> Label {
        if l.dual {
            return Label::basis(l.index);
        }
        let c = self.dual_class(l.index);
        let nonzero: Vec<usize> = (0..self.dim()).filter(|&k| !c[k].is_zero()).collect();
        if let [k] = nonzero[..] {
            if c[k].is_one() {
                return Label::basis(k);
            }
        }
        Label { index: l.index, dual: true }
    }

    pub fn label_name(&self, l: Label) -> String {
        let name = &self.labels[l.index];
        if l.dual {
            format!("{name}^")
        } else {
            name.clone()
        }
    }

    /// Parses `name` or `name^` (dual).
    pub fn parse_label(&self, s: &str) -> Result<Label, PartitionError> {
        let s = s.trim();
        match s.strip_suffix('^') {
            Some(base) => Ok(Label { index: self.index_of(base)?, dual: true }),
            None => Ok(Label::basis(self.index_of(s)?)),
        }
    }

    /// Parses a class written as `"2*h + 1/2*pt - 1"` style sums of basis labels.
    pub fn parse_class(&self, s: &str) -> Result<ClassVec, PartitionError> {
        let mut out = self.zero();
        let normalized = s.replace('-', "+-");
        for raw in normalized.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                continue;
            }
            let (neg, term) = match term.strip_prefix('-') {
                Some(t) => (true, t.trim()),
                None => (false, term),
            };
            let (coef, name) = match term.split_once('*') {
                Some((c, n)) => (crate::exact::parse_rational(c.trim())?, n.trim()),
                None => match self.index_of(term) {
                    Ok(_) => (Rational::one(), term),
                    Err(_) => (crate::exact::parse_rational(term)?, self.labels[self.unit].as_str()),
                },
            };
            let i = self.index_of(name)?;
            out[i] += if neg { -coef } else { coef };
        }
        Ok(out)
    }

    /// `Σ cᵢ θᵢ` in the ring's own label names.
    pub fn format_class(&self, c: &[Rational]) -> String {
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| format!("{}*{}", crate::exact::rational_to_string(x), self.labels[i]))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RingRepr {
    labels: Vec<String>,
    degrees: Vec<u32>,
    unit: String,
    /// `(i, j, k, value)`: `θ_i · θ_j` has coefficient `value` on `θ_k`.
    products: Vec<(usize, usize, usize, ProductValue)>,
    #[serde(with = "crate::exact::rational_vec_serde")]
    integral: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct ProductValue(#[serde(with = "rational_serde")] Rational);

impl Serialize for GradedRing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in i..n {
                if i == self.unit || j == self.unit {
                    continue;
                }
                for k in 0..n {
                    if !self.mult[i][j][k].is_zero() {
                        products.push((i, j, k, ProductValue(self.mult[i][j][k].clone())));
                    }
                }
            }
        }
        RingRepr {
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            unit: self.labels[self.unit].clone(),
            products,
            integral: self.integral.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RingRepr::deserialize(d)?;
        let unit = r
            .labels
            .iter()
            .position(|l| *l == r.unit)
            .ok_or_else(|| serde::de::Error::custom(format!("unit {:?} is not a label", r.unit)))?;
        let products: Vec<_> = r.products.into_iter().map(|(i, j, k, v)| (i, j, k, v.0)).collect();
        GradedRing::new(r.labels, r.degrees, unit, &products, r.integral).map_err(serde::de::Error::custom)
    }
}

/// Reads a preset name (`point`, `curve`, `p2`, `p1xp1`, `pN`) or a JSON ring.
pub fn ring_from_name(name: &str) -> Result<GradedRing, PartitionError> {
    match name.trim().to_ascii_lowercase().as_str() {
        "point" => Ok(GradedRing::point()),
        "curve" | "p1" => Ok(GradedRing::curve()),
        "surface" | "p2" => Ok(GradedRing::p2()),
        "p1xp1" => Ok(GradedRing::p1xp1()),
        other => match other.strip_prefix('p').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) => Ok(GradedRing::projective_space(n)),
            None => serde_json::from_str(name).map_err(|e| PartitionError::BadRing(e.to_string())),
        },
    }
}
