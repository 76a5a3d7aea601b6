use num_traits::Zero;

use super::{rat, LaurentSeries, Rational, Var};

/// `∏_{n ≥ 1} (1 - q^n)^{-n}` through `q^order`.
///
/// Uses `k·m_k = Σ_{j=1}^{k} σ₂(j) m_{k-j}`, the logarithmic derivative of the
/// product, where `σ₂(j)` is the sum of squares of the divisors of `j`.
pub fn macmahon(order: i64) -> LaurentSeries {
    let n = order.max(0) as usize;
    let sigma2: Vec<Rational> = (0..=n)
        .map(|j| {
            if j == 0 {
                return Rational::zero();
            }
            rat((1..=j).filter(|d| j % d == 0).map(|d| (d * d) as i64).sum())
        })
        .collect();
    let mut m: Vec<Rational> = Vec::with_capacity(n + 1);
    m.push(rat(1));
    for k in 1..=n {
        let s: Rational = (1..=k).map(|j| &sigma2[j] * &m[k - j]).sum();
        m.push(s / rat(k as i64));
    }
    LaurentSeries::from_real(Var::Q, 0, &m, n as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational;

    /// Expands the product factor by factor with integer arithmetic.
    fn product_oracle(order: usize) -> Vec<i64> {
        let mut acc = vec![0i64; order + 1];
        acc[0] = 1;
        for n in 1..=order {
            // multiply n times by 1/(1 - q^n) = Σ q^{kn}
            for _ in 0..n {
                for e in n..=order {
                    acc[e] += acc[e - n];
                }
            }
        }
        acc
    }

    #[test]
    fn first_coefficients() {
        let m = macmahon(6);
        let got: Vec<GaussianRational> = (0..=6).map(|k| m.coeff(k)).collect();
        let want: Vec<GaussianRational> = [1, 1, 3, 6, 13, 24, 48].iter().map(|&c| GaussianRational::from_int(c)).collect();
        assert_eq!(got, want);
        assert_eq!(m.trunc(), 7);
    }

    #[test]
    fn order_zero_is_one() {
        assert_eq!(macmahon(0), LaurentSeries::one(Var::Q, 1));
    }

    #[test]
    fn matches_direct_product() {
        let m = macmahon(25);
        for (k, c) in product_oracle(25).into_iter().enumerate() {
            assert_eq!(m.coeff(k as i64), GaussianRational::from_int(c), "q^{k}");
        }
    }
}
