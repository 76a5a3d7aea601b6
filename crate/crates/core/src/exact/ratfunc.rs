use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactError, GaussPoly, GaussianRational, LaurentSeries, Rational, Var};

/// A quotient of polynomials over Q(i) in one variable.
///
/// Always stored reduced: numerator and denominator are coprime and the
/// denominator is monic. The zero function is `0 / 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: GaussPoly,
    den: GaussPoly,
}

impl RationalFunction {
    pub fn new(num: GaussPoly, den: GaussPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = GaussianRational::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_real(num: &[Rational], den: &[Rational]) -> Result<Self, ExactError> {
        Self::new(GaussPoly::from_real(num), GaussPoly::from_real(den))
    }

    pub fn polynomial(p: GaussPoly) -> Self {
        RationalFunction { num: p, den: GaussPoly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::polynomial(GaussPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::polynomial(GaussPoly::zero())
    }

    pub fn one() -> Self {
        Self::polynomial(GaussPoly::one())
    }

    pub fn num(&self) -> &GaussPoly {
        &self.num
    }

    pub fn den(&self) -> &GaussPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(num, &self.den * &o.den).expect("product of nonzero denominators")
    }

    /// Sum over the least common denominator, reduced once at the end.
    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a Self>) -> Self {
        let terms: Vec<&Self> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let mut lcm = GaussPoly::one();
        for t in &terms {
            let g = lcm.gcd(&t.den);
            lcm = &lcm * &t.den.div_exact(&g).expect("gcd divides");
        }
        let mut num = GaussPoly::zero();
        for t in &terms {
            num = &num + &(&t.num * &lcm.div_exact(&t.den).expect("denominator divides the lcm"));
        }
        Self::new(num, lcm).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("product of nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        if o.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }

    /// Multiply by `c · x^k` for any integer `k`.
    pub fn mul_monomial(&self, c: &GaussianRational, k: i64) -> Self {
        let (num, den) = if k >= 0 {
            (self.num.shift(k as usize).scale(c), self.den.clone())
        } else {
            (self.num.scale(c), self.den.shift(k.unsigned_abs() as usize))
        };
        Self::new(num, den).expect("denominator stays nonzero")
    }

    pub fn eval(&self, x: &GaussianRational) -> Option<GaussianRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Laurent expansion around `x = 0`, known below `trunc`.
    pub fn expand(&self, var: Var, trunc: i64) -> LaurentSeries {
        if self.is_zero() {
            return LaurentSeries::zero(var, trunc);
        }
        let m = self.den.low_degree().expect("nonzero denominator") as i64;
        // num / (x^m · d̃) with d̃(0) ≠ 0; the quotient num/d̃ is a power series
        let d_tilde = self.den.unshift(m as usize);
        let need = (trunc + m).max(0);
        let n = LaurentSeries::from_poly(var, &self.num, need);
        let d = LaurentSeries::from_poly(var, &d_tilde, need);
        let q = n.div(&d).expect("unit constant term");
        q.mul_monomial(&GaussianRational::one(), -m).truncate(trunc)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_constant() {
            return self.num.display_in(var);
        }
        format!("({}) / ({})", self.num.display_in(var), self.den.display_in(var))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("q"))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionRepr {
    num: GaussPoly,
    den: GaussPoly,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalFunctionRepr { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RationalFunctionRepr::deserialize(d)?;
        RationalFunction::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}
