//! The change of variables `-q = e^{iu}`.

use num_traits::{One, Zero};

use super::{ExactError, GaussPoly, GaussianRational, LaurentSeries, Rational, RationalFunction, Var};

/// `e^{iu} - 1 = Σ_{k ≥ 1} (iu)^k / k!`, known below `u^trunc`.
pub fn exp_iu_minus_one(trunc: i64) -> LaurentSeries {
    let mut coeffs = Vec::new();
    let mut term = GaussianRational::one();
    for k in 1..trunc.max(1) {
        term = &(&term * &GaussianRational::i()) / &GaussianRational::from_int(k);
        coeffs.push(term.clone());
    }
    LaurentSeries::new(Var::U, 1, coeffs, trunc.max(1))
}

/// Coefficients of `p(-e^{iu})` below `u^len`: the `u^j` coefficient is
/// `i^j / j! · Σ_k p_k (-1)^k k^j`.
fn exp_image(p: &GaussPoly, len: usize) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); len];
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let signed = if k % 2 == 1 { -c.clone() } else { c.clone() };
        // k^j / j!
        let mut w = Rational::one();
        for (j, slot) in out.iter_mut().enumerate() {
            if j > 0 {
                w = w * Rational::from_integer((k as i64).into()) / Rational::from_integer((j as i64).into());
                if w.is_zero() {
                    break;
                }
            }
            *slot += &signed.scale(&w);
        }
    }
    let mut ipow = GaussianRational::one();
    for slot in out.iter_mut() {
        *slot = &*slot * &ipow;
        ipow = &ipow * &GaussianRational::i();
    }
    out
}

/// Laurent expansion of `f(-e^{iu})` around `u = 0`, exact through `u^order`.
///
/// Numerator and denominator are mapped separately in closed form; the
/// denominator's valuation is the multiplicity of the root `q = -1`.
pub fn substitute_exp(f: &RationalFunction, order: i64) -> Result<LaurentSeries, ExactError> {
    let trunc = order + 1;
    if f.is_zero() {
        return Ok(LaurentSeries::zero(Var::U, trunc));
    }
    let m = root_multiplicity_at_minus_one(f.den()) as i64;
    let num_len = (trunc + m).max(0) as usize;
    if f.num().coeffs().iter().chain(f.den().coeffs()).all(GaussianRational::is_real) {
        return Ok(substitute_real(f, m, num_len, trunc));
    }
    let num = LaurentSeries::new(Var::U, 0, exp_image(f.num(), num_len), trunc + m);
    let den = LaurentSeries::new(Var::U, 0, exp_image(f.den(), num_len + m as usize), trunc + 2 * m);
    debug_assert_eq!(den.valuation(), m);
    Ok(num.div(&den)?.truncate(trunc))
}

/// Real coefficients: expand in `w = iu` over Q, then attach `i^j` to each `w^j`.
fn substitute_real(f: &RationalFunction, m: i64, num_len: usize, trunc: i64) -> LaurentSeries {
    let real = |p: &GaussPoly, len: usize| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.re.is_zero() {
                continue;
            }
            let signed = if k % 2 == 1 { -c.re.clone() } else { c.re.clone() };
            let kk = Rational::from_integer((k as i64).into());
            let mut w = signed;
            for (j, slot) in out.iter_mut().enumerate() {
                if j > 0 {
                    w = w * &kk / Rational::from_integer((j as i64).into());
                    if w.is_zero() {
                        break;
                    }
                }
                *slot += &w;
            }
        }
        out
    };
    let num = real(f.num(), num_len);
    let den = real(f.den(), num_len + m as usize);
    let den = &den[m as usize..];
    // num / (w^m · den) over Q, coefficients of w^{j-m}
    let inv0 = Rational::one() / &den[0];
    let mut q: Vec<Rational> = Vec::with_capacity(num_len);
    for n in 0..num_len {
        let mut acc = num[n].clone();
        for k in 1..=n {
            if !den[k].is_zero() && !q[n - k].is_zero() {
                acc -= &den[k] * &q[n - k];
            }
        }
        q.push(acc * &inv0);
    }
    let i_pow = [
        GaussianRational::one(),
        GaussianRational::i(),
        GaussianRational::from_int(-1),
        -GaussianRational::i(),
    ];
    let coeffs = q
        .into_iter()
        .enumerate()
        .map(|(j, c)| i_pow[(j as i64 - m).rem_euclid(4) as usize].scale(&c))
        .collect();
    LaurentSeries::new(Var::U, -m, coeffs, trunc)
}

fn root_multiplicity_at_minus_one(p: &GaussPoly) -> usize {
    let x_plus_one = GaussPoly::new(vec![GaussianRational::one(), GaussianRational::one()]);
    let mut p = p.clone();
    let mut m = 0;
    while !p.is_zero() {
        let (q, r) = p.div_rem(&x_plus_one);
        if !r.is_zero() {
            break;
        }
        p = q;
        m += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio, Rational};

    fn g(re: Rational, im: Rational) -> GaussianRational {
        GaussianRational::new(re, im)
    }

    #[test]
    fn constant_is_unchanged() {
        let s = substitute_exp(&RationalFunction::one(), 5).unwrap();
        assert_eq!(s, LaurentSeries::one(Var::U, 6));
    }

    #[test]
    fn q_becomes_minus_exponential() {
        let q = RationalFunction::from_real(&[rat(0), rat(1)], &[rat(1)]).unwrap();
        let s = substitute_exp(&q, 4).unwrap();
        // -e^{iu} = -1 - iu + u²/2 + iu³/6 - u⁴/24
        assert_eq!(s.coeff(0), g(rat(-1), rat(0)));
        assert_eq!(s.coeff(1), g(rat(0), rat(-1)));
        assert_eq!(s.coeff(2), g(ratio(1, 2), rat(0)));
        assert_eq!(s.coeff(3), g(rat(0), ratio(1, 6)));
        assert_eq!(s.coeff(4), g(ratio(-1, 24), rat(0)));
        assert_eq!(s.trunc(), 5);
    }

    #[test]
    fn pole_at_minus_one_sets_valuation() {
        // 1/(1+q)^3 has a triple pole at q = -1
        let f = RationalFunction::from_real(&[rat(1)], &[rat(1), rat(3), rat(3), rat(1)]).unwrap();
        let s = substitute_exp(&f, 2).unwrap();
        assert_eq!(s.valuation(), -3);
        assert_eq!(s.trunc(), 3);
        // (1 - e^{iu})^{-3} = (-iu)^{-3} (1 + ...) so the leading coefficient is (-i)^{-3} = -i
        assert_eq!(s.coeff(-3), g(rat(0), rat(-1)));
    }

    #[test]
    fn inverse_sine_square_leading_terms() {
        let f = RationalFunction::from_real(&[rat(0), rat(1)], &[rat(1), rat(2), rat(1)]).unwrap();
        let s = substitute_exp(&f, 2).unwrap();
        assert_eq!(s.valuation(), -2);
        assert_eq!(s.coeff(-2), GaussianRational::one());
        assert_eq!(s.coeff(-1), GaussianRational::zero());
        assert_eq!(s.coeff(0), GaussianRational::real(ratio(1, 12)));
        assert_eq!(s.coeff(1), GaussianRational::zero());
        assert_eq!(s.coeff(2), GaussianRational::real(ratio(1, 240)));
    }

    /// Second route: re-centre at `q = -1` and compose with `1 - e^{iu}`.
    fn substitute_by_composition(f: &RationalFunction, order: i64) -> LaurentSeries {
        let trunc = order + 1;
        let minus_one = GaussianRational::from_int(-1);
        let num = f.num().taylor_shift(&minus_one);
        let den = f.den().taylor_shift(&minus_one);
        let in_x = RationalFunction::new(num, den).unwrap().expand(Var::Q, trunc);
        let x_of_u = exp_iu_minus_one(trunc + 1 + (-in_x.valuation()).max(0)).neg();
        in_x.compose(&x_of_u).unwrap().truncate(trunc)
    }

    #[test]
    fn gaussian_coefficients_match_composition() {
        let num = GaussPoly::new(vec![g(rat(1), rat(2)), g(rat(0), rat(-1)), g(ratio(1, 3), rat(0))]);
        let den = GaussPoly::new(vec![g(rat(1), rat(0)), g(rat(1), rat(1)), g(rat(0), rat(1))]);
        let f = RationalFunction::new(num, den).unwrap();
        for order in 0..6 {
            assert_eq!(substitute_exp(&f, order).unwrap(), substitute_by_composition(&f, order));
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

        #[test]
        fn closed_form_matches_composition(
            num in proptest::collection::vec(-4i64..=4, 1..4),
            den in proptest::collection::vec(-3i64..=3, 1..4),
            pole in 0u32..3,
            order in 0i64..7,
        ) {
            let den_poly = crate::exact::UniPoly::from_ints(&den);
            proptest::prop_assume!(!den_poly.is_zero());
            let lift = crate::exact::UniPoly::from_ints(&[1, 1]).pow(pole);
            let f = RationalFunction::new(
                crate::exact::UniPoly::from_ints(&num).to_gauss(),
                (&den_poly * &lift).to_gauss(),
            ).unwrap();
            proptest::prop_assert_eq!(substitute_exp(&f, order).unwrap(), substitute_by_composition(&f, order));
        }
    }
}
