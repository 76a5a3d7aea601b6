//! General-position certificates for eight points of the projective plane
//! whose coordinates are polynomials in a parameter `t`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{poly_det, rational_to_string, ExactError, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("expected {expected} points, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("all three coordinates are zero")]
    ZeroPoint,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Homogeneous coordinates `[x : y : z]`, each a polynomial in `t`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PointRepr", into = "PointRepr")]
pub struct PlanePoint {
    coords: [UniPoly; 3],
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    coords: [UniPoly; 3],
}

impl TryFrom<PointRepr> for PlanePoint {
    type Error = PlaneError;
    fn try_from(r: PointRepr) -> Result<Self, PlaneError> {
        let [x, y, z] = r.coords;
        PlanePoint::new(x, y, z)
    }
}

impl From<PlanePoint> for PointRepr {
    fn from(p: PlanePoint) -> Self {
        PointRepr { coords: p.coords }
    }
}

impl std::fmt::Debug for PlanePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "[{} : {} : {}]", x.display_in("t"), y.display_in("t"), z.display_in("t"))
    }
}

impl PlanePoint {
    pub fn new(x: UniPoly, y: UniPoly, z: UniPoly) -> Result<Self, PlaneError> {
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(PlaneError::ZeroPoint);
        }
        Ok(PlanePoint { coords: [x, y, z] })
    }

    /// A point with constant integer coordinates.
    pub fn constant(x: i64, y: i64, z: i64) -> Result<Self, PlaneError> {
        Self::new(UniPoly::from_ints(&[x]), UniPoly::from_ints(&[y]), UniPoly::from_ints(&[z]))
    }

    pub fn coords(&self) -> &[UniPoly; 3] {
        &self.coords
    }

    pub fn scale(&self, c: &UniPoly) -> Result<Self, PlaneError> {
        let [x, y, z] = &self.coords;
        Self::new(x * c, y * c, z * c)
    }

    /// Image under the linear map with the given rational matrix.
    pub fn transform(&self, m: &[[Rational; 3]; 3]) -> Result<Self, PlaneError> {
        let row = |r: &[Rational; 3]| {
            (0..3).fold(UniPoly::zero(), |acc, j| &acc + &self.coords[j].scale(&r[j]))
        };
        Self::new(row(&m[0]), row(&m[1]), row(&m[2]))
    }

    pub fn eval(&self, t: &Rational) -> [Rational; 3] {
        [self.coords[0].eval(t), self.coords[1].eval(t), self.coords[2].eval(t)]
    }
}

/// `c · t^k` as a coordinate.
fn term(c: i64, k: usize) -> UniPoly {
    UniPoly::monomial(Rational::from_integer(c.into()), k)
}

/// The eight points of the degeneration argument, `σ₁ … σ₈` in order.
pub fn sigma_points() -> Vec<PlanePoint> {
    let one = || term(1, 0);
    let zero = UniPoly::zero;
    [
        (one(), term(1, 5), zero()),
        (term(1, 5), one(), zero()),
        (zero(), zero(), one()),
        (one(), term(1, 2), term(1, 1)),
        (term(1, 2), one(), term(1, 1)),
        (term(1, 1), term(1, 2), one()),
        (one(), term(1, 3), term(2, 1)),
        (term(1, 4), one(), term(2, 1)),
    ]
    .into_iter()
    .map(|(x, y, z)| PlanePoint::new(x, y, z).expect("nonzero coordinates"))
    .collect()
}

fn det(rows: Vec<Vec<UniPoly>>) -> UniPoly {
    poly_det(&rows).expect("square matrix")
}

/// Determinant of the three coordinate rows.
pub fn collinearity_poly(p: &PlanePoint, q: &PlanePoint, r: &PlanePoint) -> UniPoly {
    det([p, q, r].iter().map(|pt| pt.coords.to_vec()).collect())
}

fn check_arity(points: &[PlanePoint], expected: usize) -> Result<(), PlaneError> {
    if points.len() != expected {
        return Err(PlaneError::Arity { expected, got: points.len() });
    }
    Ok(())
}

/// Products `x^a y^b z^c` over a list of exponent triples.
fn monomials(p: &PlanePoint, exps: &[[u32; 3]]) -> Vec<UniPoly> {
    let [x, y, z] = &p.coords;
    exps.iter().map(|[a, b, c]| &(&x.pow(*a) * &y.pow(*b)) * &z.pow(*c)).collect()
}

const CONIC: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];

const CUBIC: [[u32; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// Determinant of the Veronese rows `(x², xy, y², xz, yz, z²)` of six points.
pub fn conic_poly(six: &[PlanePoint]) -> Result<UniPoly, PlaneError> {
    check_arity(six, 6)?;
    Ok(det(six.iter().map(|p| monomials(p, &CONIC)).collect()))
}

/// Row of `∂/∂x_var` applied to each cubic monomial, evaluated at `p`.
fn cubic_partial_row(p: &PlanePoint, var: usize) -> Vec<UniPoly> {
    CUBIC
        .iter()
        .map(|e| {
            if e[var] == 0 {
                return UniPoly::zero();
            }
            let mut lowered = *e;
            lowered[var] -= 1;
            let c = Rational::from_integer(e[var].into());
            monomials(p, &[lowered])[0].scale(&c)
        })
        .collect()
}

/// Determinant of the system "the cubic is singular at point `i` and passes
/// through the other seven".
pub fn cubic_double_point_poly(eight: &[PlanePoint], i: usize) -> Result<UniPoly, PlaneError> {
    check_arity(eight, 8)?;
    if i >= 8 {
        return Err(PlaneError::IndexOutOfRange { index: i, len: 8 });
    }
    let mut rows: Vec<Vec<UniPoly>> = (0..3).map(|v| cubic_partial_row(&eight[i], v)).collect();
    rows.extend(eight.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| monomials(p, &CUBIC)));
    Ok(det(rows))
}

/// Where a single certificate determinant came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Collinear([usize; 3]),
    Conic([usize; 6]),
    CubicDouble(usize),
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |ix: &[usize]| ix.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Condition::Collinear(ix) => write!(f, "collinear[{}]", join(ix)),
            Condition::Conic(ix) => write!(f, "conic[{}]", join(ix)),
            Condition::CubicDouble(i) => write!(f, "cubic_double[{i}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleCheck {
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    pub passed: bool,
    /// Conditions whose determinant vanishes at `t`.
    #[serde(serialize_with = "ser_conditions")]
    pub vanishing: Vec<Condition>,
}

/// The 92 genericity polynomials of an eight-point configuration.
///
/// Point indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenPosReport {
    #[serde(serialize_with = "ser_sparse_map")]
    pub collinearity: BTreeMap<[usize; 3], UniPoly>,
    #[serde(serialize_with = "ser_sparse_map")]
    pub conic: BTreeMap<[usize; 6], UniPoly>,
    #[serde(serialize_with = "ser_sparse_map")]
    pub cubic_double: BTreeMap<usize, UniPoly>,
    pub all_generic: bool,
    /// Conditions whose polynomial is identically zero.
    #[serde(serialize_with = "ser_conditions")]
    pub violations: Vec<Condition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleCheck>,
}

trait IndexKey {
    fn key(&self) -> String;
}

impl<const N: usize> IndexKey for [usize; N] {
    fn key(&self) -> String {
        self.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl IndexKey for usize {
    fn key(&self) -> String {
        self.to_string()
    }
}

fn ser_sparse_map<K: IndexKey, S: Serializer>(m: &BTreeMap<K, UniPoly>, s: S) -> Result<S::Ok, S::Error> {
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, p) in m {
        out.serialize_entry(&k.key(), &p.sparse_terms())?;
    }
    out.end()
}

fn ser_conditions<S: Serializer>(c: &[Condition], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|c| c.to_string()))
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(r))
}

fn subsets<const K: usize>(n: usize) -> Vec<[usize; K]> {
    let mut out = Vec::new();
    let mut cur = [0usize; K];
    fn rec<const K: usize>(start: usize, depth: usize, n: usize, cur: &mut [usize; K], out: &mut Vec<[usize; K]>) {
        if depth == K {
            out.push(*cur);
            return;
        }
        for i in start..n {
            cur[depth] = i;
            rec(i + 1, depth + 1, n, cur, out);
        }
    }
    rec(0, 0, n, &mut cur, &mut out);
    out
}

impl GenPosReport {
    pub fn determinant_count(&self) -> usize {
        self.collinearity.len() + self.conic.len() + self.cubic_double.len()
    }

    pub fn polynomials(&self) -> impl Iterator<Item = (Condition, &UniPoly)> {
        let a = self.collinearity.iter().map(|(k, p)| (Condition::Collinear(*k), p));
        let b = self.conic.iter().map(|(k, p)| (Condition::Conic(*k), p));
        let c = self.cubic_double.iter().map(|(k, p)| (Condition::CubicDouble(*k), p));
        a.chain(b).chain(c)
    }

    /// Evaluates every determinant at `t`.
    pub fn check_sample(&self, t: &Rational) -> SampleCheck {
        let vanishing: Vec<Condition> =
            self.polynomials().filter(|(_, p)| p.eval(t).is_zero()).map(|(c, _)| c).collect();
        SampleCheck { t: t.clone(), passed: vanishing.is_empty(), vanishing }
    }
}

/// Computes all 56 + 28 + 8 determinants, in parallel.
pub fn general_position_certificate(
    points: &[PlanePoint],
    sample_t: Option<&Rational>,
) -> Result<GenPosReport, PlaneError> {
    check_arity(points, 8)?;
    let mut conditions: Vec<Condition> = subsets::<3>(8).into_iter().map(Condition::Collinear).collect();
    conditions.extend(subsets::<6>(8).into_iter().map(Condition::Conic));
    conditions.extend((0..8).map(Condition::CubicDouble));
    let polys: Vec<Result<UniPoly, PlaneError>> = conditions
        .par_iter()
        .map(|c| match c {
            Condition::Collinear([a, b, d]) => Ok(collinearity_poly(&points[*a], &points[*b], &points[*d])),
            Condition::Conic(ix) => conic_poly(&ix.map(|i| points[i].clone())),
            Condition::CubicDouble(i) => cubic_double_point_poly(points, *i),
        })
        .collect();
    let mut report = GenPosReport {
        collinearity: BTreeMap::new(),
        conic: BTreeMap::new(),
        cubic_double: BTreeMap::new(),
        all_generic: true,
        violations: Vec::new(),
        sample: None,
    };
    for (c, p) in conditions.into_iter().zip(polys) {
        let p = p?;
        if p.is_zero() {
            report.violations.push(c);
        }
        match c {
            Condition::Collinear(k) => report.collinearity.insert(k, p),
            Condition::Conic(k) => report.conic.insert(k, p),
            Condition::CubicDouble(k) => report.cubic_double.insert(k, p),
        };
    }
    report.all_generic = report.violations.is_empty();
    report.sample = sample_t.map(|t| report.check_sample(t));
    Ok(report)
}

/// Smallest positive integer `t <= max` at which every determinant is nonzero.
pub fn first_good_sample(report: &GenPosReport, max: i64) -> Option<Rational> {
    (1..=max).map(|t| Rational::from_integer(t.into())).find(|t| report.check_sample(t).passed)
}
