use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gaussian::GaussLiteral;
use super::{ExactError, GaussPoly, GaussianRational, Rational};

/// Name of a series variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    /// The stable-pairs variable.
    Q,
    /// The genus variable.
    U,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Q => "q",
            Var::U => "u",
        })
    }
}

/// A Laurent series `Σ_{n ≥ valuation} c_n x^n` known for `n < trunc`.
///
/// Storage is dense: `coeffs[k]` is the coefficient of `x^(valuation + k)` and
/// there are exactly `trunc - valuation` of them. The coefficient at the
/// valuation is nonzero; a series that vanishes up to its truncation order has
/// `valuation == trunc` and no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    var: Var,
    valuation: i64,
    coeffs: Vec<GaussianRational>,
    trunc: i64,
}

impl LaurentSeries {
    /// Builds `Σ_k coeffs[k] x^(start + k) + O(x^trunc)`; coefficients at or
    /// beyond `trunc` are dropped and missing ones below it are zero.
    pub fn new(var: Var, start: i64, coeffs: Vec<GaussianRational>, trunc: i64) -> Self {
        let mut s = LaurentSeries { var, valuation: start, coeffs, trunc };
        s.normalize();
        s
    }

    pub fn from_real(var: Var, start: i64, coeffs: &[Rational], trunc: i64) -> Self {
        Self::new(var, start, coeffs.iter().cloned().map(GaussianRational::real).collect(), trunc)
    }

    pub fn zero(var: Var, trunc: i64) -> Self {
        LaurentSeries { var, valuation: trunc, coeffs: Vec::new(), trunc }
    }

    pub fn one(var: Var, trunc: i64) -> Self {
        Self::monomial(var, GaussianRational::one(), 0, trunc)
    }

    /// `c · x^k + O(x^trunc)`.
    pub fn monomial(var: Var, c: GaussianRational, k: i64, trunc: i64) -> Self {
        Self::new(var, k, vec![c], trunc)
    }

    pub fn from_poly(var: Var, p: &GaussPoly, trunc: i64) -> Self {
        Self::new(var, 0, p.coeffs().to_vec(), trunc)
    }

    fn normalize(&mut self) {
        if self.valuation > self.trunc {
            self.valuation = self.trunc;
            self.coeffs.clear();
            return;
        }
        let want = (self.trunc - self.valuation) as usize;
        self.coeffs.resize(want, GaussianRational::zero());
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Lowest exponent with a nonzero coefficient (equals `trunc` for zero).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Exclusive upper bound of the known exponents.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// `trunc - valuation`: how many coefficients are known past the leading one.
    pub fn precision(&self) -> i64 {
        self.trunc - self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `x^n`, `None` when `n` is at or beyond the truncation order.
    pub fn get(&self, n: i64) -> Option<GaussianRational> {
        if n >= self.trunc {
            return None;
        }
        if n < self.valuation {
            return Some(GaussianRational::zero());
        }
        Some(self.coeffs[(n - self.valuation) as usize].clone())
    }

    /// Coefficient of `x^n`; panics when `n >= trunc`.
    pub fn coeff(&self, n: i64) -> GaussianRational {
        self.get(n)
            .unwrap_or_else(|| panic!("coefficient of {}^{n} is beyond truncation order {}", self.var, self.trunc))
    }

    fn coeff_ref(&self, n: i64) -> Option<&GaussianRational> {
        if n < self.valuation || n >= self.trunc {
            None
        } else {
            Some(&self.coeffs[(n - self.valuation) as usize])
        }
    }

    /// Drops everything at or above `trunc` (no-op if already shorter).
    pub fn truncate(&self, trunc: i64) -> Self {
        if trunc >= self.trunc {
            return self.clone();
        }
        Self::new(self.var, self.valuation, self.coeffs.clone(), trunc)
    }

    /// Same coefficients, different variable name.
    pub fn with_var(&self, var: Var) -> Self {
        LaurentSeries { var, ..self.clone() }
    }

    fn same_var(&self, o: &Self) {
        assert_eq!(self.var, o.var, "series in different variables");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_var(o);
        let trunc = self.trunc.min(o.trunc);
        let start = self.valuation.min(o.valuation).min(trunc);
        let coeffs = (start..trunc)
            .map(|n| match (self.coeff_ref(n), o.coeff_ref(n)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => GaussianRational::zero(),
            })
            .collect();
        Self::new(self.var, start, coeffs, trunc)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var, self.trunc);
        }
        LaurentSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect(), ..self.clone() }
    }

    /// Multiply by the exact monomial `c · x^k`.
    pub fn mul_monomial(&self, c: &GaussianRational, k: i64) -> Self {
        let s = self.scale(c);
        if s.is_zero() {
            return Self::zero(self.var, self.trunc + k);
        }
        LaurentSeries { valuation: s.valuation + k, trunc: s.trunc + k, ..s }
    }

    /// Adds an exact constant without changing the truncation order.
    pub fn add_scalar(&self, c: &GaussianRational) -> Self {
        if self.trunc <= 0 || c.is_zero() {
            return self.clone();
        }
        self.add(&Self::monomial(self.var, c.clone(), 0, self.trunc))
    }

    /// Cauchy product. A factor `x^v (a_0 + … + O(x^p))` contributes relative
    /// precision `p`, so the product is known below
    /// `min(v_a + t_b, v_b + t_a)`.
    pub fn mul(&self, o: &Self) -> Self {
        self.same_var(o);
        let trunc = (self.valuation + o.trunc).min(o.valuation + self.trunc);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.var, trunc);
        }
        let start = self.valuation + o.valuation;
        if start >= trunc {
            return Self::zero(self.var, trunc);
        }
        let len = (trunc - start) as usize;
        let mut out = vec![GaussianRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(self.var, start, out, trunc)
    }

    /// Multiplicative inverse; the result has valuation `-valuation` and the
    /// same relative precision.
    pub fn invert(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroSeries { trunc: self.trunc });
        }
        let p = self.coeffs.len();
        let a0_inv = self.coeffs[0].inv().expect("leading coefficient is nonzero");
        let mut b: Vec<GaussianRational> = Vec::with_capacity(p);
        b.push(a0_inv.clone());
        for n in 1..p {
            let mut acc = GaussianRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &(&self.coeffs[k] * &b[n - k]);
                }
            }
            b.push(-(&acc * &a0_inv));
        }
        let v = -self.valuation;
        Ok(Self::new(self.var, v, b, v + p as i64))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&o.invert()?))
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    pub fn pow(&self, k: i64) -> Result<Self, ExactError> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        if k == 0 {
            if self.is_zero() {
                return Err(ExactError::ZeroSeries { trunc: self.trunc });
            }
            return Ok(Self::one(self.var, self.precision()));
        }
        let mut e = k.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&b),
                    None => b.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc.expect("exponent is nonzero"))
    }

    /// Substitutes `x -> -x`.
    pub fn negate_var(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if (self.valuation + k as i64).rem_euclid(2) == 1 { -c } else { c.clone() })
            .collect();
        LaurentSeries { coeffs, ..self.clone() }
    }

    /// The composite `self(inner)`, a series in `inner`'s variable.
    ///
    /// `inner` must have positive valuation. Negative powers of the outer
    /// variable are realized through powers of `inner`'s inverse.
    pub fn compose(&self, inner: &Self) -> Result<Self, ExactError> {
        if inner.is_zero() || inner.valuation < 1 {
            return Err(ExactError::ZeroSeries { trunc: inner.trunc });
        }
        let var = inner.var;
        if self.is_zero() {
            return Ok(Self::zero(var, self.trunc * inner.valuation));
        }
        let p = self.precision();
        // P(y) = Σ_{j<p} c_{v+j} y^j evaluated at inner by Horner
        let mut acc = Self::zero(var, p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).truncate(p);
            if !c.is_zero() {
                acc = acc.add(&Self::monomial(var, c.clone(), 0, acc.trunc));
            }
        }
        if self.valuation == 0 {
            return Ok(acc);
        }
        let head = inner.pow(self.valuation)?;
        Ok(head.mul(&acc))
    }

    /// True when both series agree at every exponent `<= order`; both must be
    /// known that far.
    pub fn agrees_through(&self, o: &Self, order: i64) -> bool {
        if self.var != o.var || self.trunc <= order || o.trunc <= order {
            return false;
        }
        let lo = self.valuation.min(o.valuation);
        (lo..=order).all(|n| self.coeff(n) == o.coeff(n))
    }

    /// Exponents `<= order` where the two series differ.
    pub fn differences_through(&self, o: &Self, order: i64) -> Vec<i64> {
        let lo = self.valuation.min(o.valuation).min(order + 1);
        (lo..=order)
            .filter(|&n| match (self.get(n), o.get(n)) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            })
            .collect()
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.valuation + k as i64;
            let cs = if c.is_real() || c.re.is_zero() { c.to_string() } else { format!("({c})") };
            terms.push(match n {
                0 => cs,
                1 => format!("{cs}*{}", self.var),
                _ => format!("{cs}*{}^{n}", self.var),
            });
        }
        terms.push(format!("O({}^{})", self.var, self.trunc));
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Serialize)]
struct SeriesOut<'a> {
    var: Var,
    valuation: i64,
    coeffs: &'a [GaussianRational],
    trunc: i64,
}

#[derive(Deserialize)]
struct SeriesIn {
    var: Var,
    valuation: i64,
    coeffs: Vec<GaussLiteral>,
    trunc: i64,
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesOut { var: self.var, valuation: self.valuation, coeffs: &self.coeffs, trunc: self.trunc }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SeriesIn::deserialize(d)?;
        if raw.valuation > raw.trunc {
            return Err(serde::de::Error::custom("valuation exceeds truncation order"));
        }
        if raw.coeffs.len() as i64 > raw.trunc - raw.valuation {
            return Err(serde::de::Error::custom("more coefficients than the truncation order allows"));
        }
        let coeffs = raw
            .coeffs
            .into_iter()
            .map(|c| c.into_gauss().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentSeries::new(raw.var, raw.valuation, coeffs, raw.trunc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use proptest::prelude::*;

    fn s(start: i64, cs: &[i64], trunc: i64) -> LaurentSeries {
        LaurentSeries::from_real(Var::Q, start, &cs.iter().map(|&c| rat(c)).collect::<Vec<_>>(), trunc)
    }

    #[test]
    fn normalization_strips_leading_zeros() {
        let a = s(-2, &[0, 0, 3, 1], 5);
        assert_eq!(a.valuation(), 0);
        assert_eq!(a.coeffs().len(), 5);
        let z = s(0, &[0, 0], 4);
        assert!(z.is_zero());
        assert_eq!(z.valuation(), 4);
    }

    #[test]
    fn geometric_series_inverse() {
        let inv = s(0, &[1, -1], 8).invert().unwrap();
        assert_eq!(inv, s(0, &[1; 8], 8));
    }

    #[test]
    fn constant_inverse() {
        let inv = s(0, &[2], 3).invert().unwrap();
        assert_eq!(inv.coeff(0), GaussianRational::real(ratio(1, 2)));
        assert!(s(0, &[], 3).invert().is_err());
    }

    #[test]
    fn sine_square_inverse() {
        // u^2 - u^4/12 + O(u^6): leading terms of (2 sin(u/2))^2
        let a = LaurentSeries::from_real(Var::U, 2, &[rat(1), rat(0), ratio(-1, 12)], 6);
        let inv = a.invert().unwrap();
        assert_eq!(inv.valuation(), -2);
        assert_eq!(inv.trunc(), 2);
        assert_eq!(inv.coeff(-2), GaussianRational::one());
        assert_eq!(inv.coeff(-1), GaussianRational::zero());
        assert_eq!(inv.coeff(0), GaussianRational::real(ratio(1, 12)));
    }

    #[test]
    fn truncation_is_tracked() {
        let a = s(0, &[1, 1, 1], 3);
        let b = s(0, &[1, 1, 1, 1, 1], 5);
        assert_eq!(a.add(&b).trunc(), 3);
        assert_eq!(a.mul(&b).trunc(), 3);
        let c = s(2, &[1], 4);
        assert_eq!(c.mul(&b).trunc(), 4);
        assert_eq!(s(-1, &[1, 1], 1).mul(&b).trunc(), 1);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = s(0, &[1, 2, -1], 7);
        assert_eq!(a.pow(3).unwrap(), a.mul(&a).mul(&a));
        assert_eq!(a.pow(-2).unwrap(), a.invert().unwrap().mul(&a.invert().unwrap()));
        assert_eq!(a.pow(0).unwrap(), LaurentSeries::one(Var::Q, 7));
    }

    #[test]
    fn compose_with_shifted_inner() {
        // 1/(1-x) at x = u + u^2 (composition into a positive-valuation inner series)
        let outer = s(0, &[1; 6], 6);
        let inner = LaurentSeries::from_real(Var::U, 1, &[rat(1), rat(1)], 6);
        let got = outer.compose(&inner).unwrap();
        // 1/(1 - u - u^2): Fibonacci numbers
        let fib = [1, 1, 2, 3, 5, 8];
        for (n, f) in fib.iter().enumerate() {
            assert_eq!(got.coeff(n as i64), GaussianRational::from_int(*f));
        }
        // pole: 1/x at x = u + u^2 is u^-1 (1 - u + u^2 - ...)
        let pole = s(-1, &[1], 3);
        let got = pole.compose(&inner).unwrap();
        assert_eq!(got.valuation(), -1);
        assert_eq!(got.coeff(0), GaussianRational::from_int(-1));
        assert_eq!(got.coeff(1), GaussianRational::from_int(1));
    }

    #[test]
    fn json_round_trip() {
        let a = s(-1, &[1, 0, 3], 4);
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v["var"], "q");
        assert_eq!(v["valuation"], -1);
        assert_eq!(v["trunc"], 4);
        let back: LaurentSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, a);
        let plain: LaurentSeries =
            serde_json::from_str(r#"{"var":"u","valuation":0,"coeffs":["1","1/2"],"trunc":3}"#).unwrap();
        assert_eq!(plain.coeff(1), GaussianRational::real(ratio(1, 2)));
    }

    fn arb_series() -> impl Strategy<Value = LaurentSeries> {
        (-3i64..3, proptest::collection::vec(-6i64..7, 1..8), 0usize..4).prop_map(|(v, mut cs, extra)| {
            if cs[0] == 0 {
                cs[0] = 1;
            }
            let trunc = v + cs.len() as i64 + extra as i64;
            s(v, &cs, trunc)
        })
    }

    proptest! {
        #[test]
        fn inverse_times_self_is_one(a in arb_series()) {
            let prod = a.mul(&a.invert().unwrap());
            prop_assert_eq!(prod.trunc(), a.precision());
            prop_assert_eq!(prod, LaurentSeries::one(Var::Q, a.precision()));
        }

        #[test]
        fn product_commutes_and_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            let lhs = a.mul(&b.add(&c));
            let rhs = a.mul(&b).add(&a.mul(&c));
            let t = lhs.trunc().min(rhs.trunc());
            prop_assert_eq!(lhs.truncate(t), rhs.truncate(t));
        }
    }
}
