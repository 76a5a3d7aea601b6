use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{rat, rational_serde, Rational};

/// An element `re + im·i` of the field Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianRational {
    #[serde(with = "rational_serde")]
    pub re: Rational,
    #[serde(with = "rational_serde", default = "Rational::zero")]
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat(n))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }

    /// `self^k` for any integer `k`; panics on `0^k` with `k < 0`.
    pub fn powi(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }
}

/// Either a plain rational literal or a `{"re", "im"}` object.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum GaussLiteral {
    Text(String),
    Int(i64),
    Obj(GaussianRational),
}

impl GaussLiteral {
    pub(crate) fn into_gauss(self) -> Result<GaussianRational, super::ExactError> {
        match self {
            GaussLiteral::Text(s) => super::parse_rational(&s).map(GaussianRational::real),
            GaussLiteral::Int(n) => Ok(GaussianRational::from_int(n)),
            GaussLiteral::Obj(g) => Ok(g),
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = super::rational_to_string(&self.re);
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im_abs = super::rational_to_string(&num_traits::Signed::abs(&self.im));
        let sign = if self.im < Rational::zero() { "-" } else { "+" };
        if self.re.is_zero() {
            let s = if sign == "-" { "-" } else { "" };
            write!(f, "{s}{im_abs}i")
        } else {
            write!(f, "{re}{sign}{im_abs}i")
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: Rational::one(), im: Rational::zero() }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        // skip products with a zero factor; coefficients are often purely real or imaginary
        let prod = |x: &Rational, y: &Rational| if x.is_zero() || y.is_zero() { Rational::zero() } else { x * y };
        GaussianRational {
            re: prod(&self.re, &o.re) - prod(&self.im, &o.im),
            im: prod(&self.re, &o.im) + prod(&self.im, &o.re),
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        if o.im.is_zero() {
            return GaussianRational { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use proptest::prelude::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::new(ratio(a, b), ratio(c, d))
    }

    fn arb_g() -> impl Strategy<Value = GaussianRational> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| g(a, b, c, d))
    }

    #[test]
    fn unit_squares_to_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        assert_eq!(i.powi(4), GaussianRational::one());
        assert_eq!(i.powi(-1), -GaussianRational::i());
    }

    #[test]
    fn display_forms() {
        assert_eq!(g(1, 2, 0, 1).to_string(), "1/2");
        assert_eq!(g(0, 1, -1, 1).to_string(), "-1i");
        assert_eq!(g(3, 1, -2, 3).to_string(), "3-2/3i");
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(g(1, 2, -3, 4)).unwrap();
        assert_eq!(v, serde_json::json!({"re": "1/2", "im": "-3/4"}));
        let back: GaussianRational = serde_json::from_value(v).unwrap();
        assert_eq!(back, g(1, 2, -3, 4));
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_g(), b in arb_g(), c in arb_g()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
                prop_assert_eq!(&(&b / &a) * &a, b.clone());
            }
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn rational_field_axioms(a in -30i64..30, b in 1i64..12, c in -30i64..30, d in 1i64..12) {
            let x = ratio(a, b);
            let y = ratio(c, d);
            prop_assert_eq!(&x * &(&y + &x), &x * &y + &x * &x);
            if !x.is_zero() {
                prop_assert_eq!(&(&y / &x) * &x, y.clone());
            }
            prop_assert!(x.denom() > &num_bigint::BigInt::zero());
        }
    }
}
