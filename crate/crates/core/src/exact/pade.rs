//! Rational reconstruction from a truncated Laurent series.

use num_traits::Zero;

use super::{nullspace, ExactError, GaussPoly, GaussianRational, LaurentSeries, RationalFunction};

/// Finds `P/Q` with `deg P <= max_num_degree`, `deg Q <= max_den_degree`
/// whose expansion agrees with `s` below its truncation order.
///
/// The smallest admissible denominator degree wins; the answer is reduced with
/// a monic denominator, so it is unique whenever one exists.
pub fn pade_reconstruct(
    s: &LaurentSeries,
    max_num_degree: usize,
    max_den_degree: usize,
) -> Result<RationalFunction, ExactError> {
    if s.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let need = (max_num_degree + max_den_degree + 2) as i64;
    if s.precision() < need {
        return Err(ExactError::InsufficientTerms { have: s.precision(), need });
    }
    let failure = ExactError::ReconstructionFailure { num_degree: max_num_degree, den_degree: max_den_degree };
    // a pole of order w at 0 uses up w degrees of the denominator
    let w = (-s.valuation()).max(0) as usize;
    if w > max_den_degree {
        return Err(failure);
    }
    let f = s.mul_monomial(&num_traits::One::one(), w as i64);
    let n = max_num_degree;
    let known = f.trunc() as usize;
    let coeff = |k: usize| f.coeff(k as i64);
    for m in 0..=max_den_degree - w {
        // Σ_{j ≤ m} Q_j f_{k-j} = 0 for n < k < known
        let rows: Vec<Vec<GaussianRational>> = (n + 1..known)
            .map(|k| (0..=m).map(|j| if j <= k { coeff(k - j) } else { GaussianRational::zero() }).collect())
            .collect();
        for qv in nullspace(&rows, m + 1) {
            let q = GaussPoly::new(qv);
            let full = LaurentSeries::from_poly(f.var(), &q, known as i64).mul(&f);
            let p = GaussPoly::new((0..=n.min(known - 1)).map(|k| full.coeff(k as i64)).collect());
            let Ok(candidate) = RationalFunction::new(p, q.shift(w)) else {
                continue;
            };
            if candidate.expand(s.var(), s.trunc()) == *s {
                return Ok(candidate);
            }
        }
    }
    Err(failure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rational, Var};
    use proptest::prelude::*;

    fn series(start: i64, cs: &[i64], trunc: i64) -> LaurentSeries {
        let v: Vec<Rational> = cs.iter().map(|&c| rat(c)).collect();
        LaurentSeries::from_real(Var::Q, start, &v, trunc)
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        let n: Vec<Rational> = num.iter().map(|&c| rat(c)).collect();
        let d: Vec<Rational> = den.iter().map(|&c| rat(c)).collect();
        RationalFunction::from_real(&n, &d).unwrap()
    }

    #[test]
    fn naturals_come_from_derivative_of_geometric() {
        let cs: Vec<i64> = (0..12).collect();
        let got = pade_reconstruct(&series(0, &cs, 12), 2, 2).unwrap();
        assert_eq!(got, rf(&[0, 1], &[1, -2, 1]));
    }

    #[test]
    fn alternating_naturals() {
        let cs: Vec<i64> = (0..12).map(|n| if n % 2 == 0 { -n } else { n }).collect();
        let got = pade_reconstruct(&series(0, &cs, 12), 2, 2).unwrap();
        assert_eq!(got, rf(&[0, 1], &[1, 2, 1]));
    }

    #[test]
    fn constant_and_zero() {
        assert_eq!(pade_reconstruct(&series(0, &[5], 6), 1, 1).unwrap(), rf(&[5], &[1]));
        assert!(pade_reconstruct(&series(0, &[], 6), 1, 1).unwrap().is_zero());
    }

    #[test]
    fn pole_at_origin() {
        let f = rf(&[1, 3], &[0, 0, 1, -1]);
        let s = f.expand(Var::Q, 10);
        assert_eq!(pade_reconstruct(&s, 2, 3).unwrap(), f);
    }

    #[test]
    fn too_few_terms_and_no_solution() {
        let cs: Vec<i64> = (1..6).collect();
        assert!(matches!(
            pade_reconstruct(&series(0, &cs, 5), 2, 2),
            Err(ExactError::InsufficientTerms { have: 5, need: 6 })
        ));
        // 1/(1-q)^3 needs a cubic denominator
        let s = rf(&[1], &[1, -3, 3, -1]).expand(Var::Q, 14);
        assert!(matches!(pade_reconstruct(&s, 1, 2), Err(ExactError::ReconstructionFailure { .. })));
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction> {
        (
            proptest::collection::vec(-6i64..7, 0..=7),
            proptest::collection::vec(-6i64..7, 0..=6),
            0u32..2,
        )
            .prop_filter_map("nonzero denominator", |(num, den_tail, pole)| {
                // denominator 1 + … keeps most cases regular at 0; `pole` adds q^pole
                let mut den = vec![1i64];
                den.extend(den_tail);
                let mut den_shifted = vec![0i64; pole as usize];
                den_shifted.extend(den);
                if den_shifted.len() > 7 {
                    return None;
                }
                let n: Vec<Rational> = num.iter().map(|&c| rat(c)).collect();
                let d: Vec<Rational> = den_shifted.iter().map(|&c| rat(c)).collect();
                RationalFunction::from_real(&n, &d).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn reconstructs_expansions(f in arb_rf()) {
            let s = f.expand(Var::Q, 22);
            prop_assume!(s.precision() >= 14);
            prop_assert_eq!(pade_reconstruct(&s, 6, 6).unwrap(), f);
        }
    }
}
