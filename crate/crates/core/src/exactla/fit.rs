use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::poly::graded_lex_cmp;
use super::{rational_to_string, MatrixQ, MultiPolyQ, Rational, UniPolyQ};
use crate::{Error, Result};

/// The unique polynomial of degree `< points.len()` through `points`
/// (Newton divided differences).
pub fn interpolate_univariate(points: &[(Rational, Rational)]) -> Result<UniPolyQ> {
    let mut seen = BTreeSet::new();
    for (x, _) in points {
        if !seen.insert(x) {
            return Err(Error::DuplicateAbscissa(rational_to_string(x)));
        }
    }
    let n = points.len();
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Horner on the Newton form: p = dd0 + (x-x0)(dd1 + (x-x1)(dd2 + ...)).
    let mut coeffs: Vec<Rational> = Vec::new();
    for i in (0..n).rev() {
        // coeffs := coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    Ok(UniPolyQ::new(coeffs))
}

/// All exponent vectors of total degree `≤ max_degree` in `nvars` variables,
/// graded lexicographic.
pub fn graded_lex_monomials(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_degree, &mut vec![0; nvars], &mut out);
    out.sort_by(|a, b| graded_lex_cmp(a, b));
    out
}

/// Exact polynomial fit of total degree `≤ max_degree`.
///
/// `Ok(None)` means the samples are not the values of any such polynomial;
/// an underdetermined system is an error.
pub fn fit_poly<S: AsRef<str>>(
    samples: &[(Vec<Rational>, Rational)],
    vars: &[S],
    max_degree: u32,
) -> Result<Option<MultiPolyQ>> {
    let monomials = graded_lex_monomials(vars.len(), max_degree);
    fit_with_monomials(samples, vars, &monomials)
}

/// Exact fit over an explicit monomial support.
pub fn fit_with_monomials<S: AsRef<str>>(
    samples: &[(Vec<Rational>, Rational)],
    vars: &[S],
    monomials: &[Vec<u32>],
) -> Result<Option<MultiPolyQ>> {
    let unknowns = monomials.len();
    if samples.len() < unknowns {
        return Err(Error::Underdetermined {
            samples: samples.len(),
            rank: samples.len(),
            unknowns,
        });
    }
    let mut rows = Vec::with_capacity(samples.len());
    let mut rhs = Vec::with_capacity(samples.len());
    for (point, value) in samples {
        assert_eq!(point.len(), vars.len(), "sample dimension mismatch");
        rows.push(
            monomials
                .iter()
                .map(|e| {
                    point.iter().zip(e).fold(Rational::one(), |mut acc, (x, &k)| {
                        for _ in 0..k {
                            acc *= x;
                        }
                        acc
                    })
                })
                .collect(),
        );
        rhs.push(value.clone());
    }
    let system = MatrixQ::from_rows(rows).augment(&rhs);
    let r = system.rref();
    if r.pivots.last() == Some(&unknowns) {
        return Ok(None);
    }
    if r.rank < unknowns {
        return Err(Error::Underdetermined {
            samples: samples.len(),
            rank: r.rank,
            unknowns,
        });
    }
    let terms = monomials
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), r.matrix[(i, unknowns)].clone()));
    Ok(Some(MultiPolyQ::from_terms(vars, terms)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, q};
    use proptest::prelude::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        v.iter().map(|&(x, y)| (q(x), q(y))).collect()
    }

    #[test]
    fn interpolation_examples() {
        let p = interpolate_univariate(&pts(&[(1, 2), (2, 3)])).unwrap();
        assert_eq!(p, UniPolyQ::new(vec![q(1), q(1)]));
        let p = interpolate_univariate(&pts(&[(0, 1), (1, 1), (2, 1)])).unwrap();
        assert_eq!(p, UniPolyQ::constant(q(1)));
        let p = interpolate_univariate(&pts(&[(1, 2), (2, 5), (3, 10)])).unwrap();
        assert_eq!(p, UniPolyQ::new(vec![q(1), q(0), q(1)]));
        assert!(interpolate_univariate(&[]).unwrap().is_zero());
    }

    #[test]
    fn duplicate_abscissa_is_rejected() {
        let err = interpolate_univariate(&pts(&[(1, 2), (1, 3)])).unwrap_err();
        assert_eq!(err, Error::DuplicateAbscissa("1".into()));
    }

    #[test]
    fn graded_lex_order() {
        let m = graded_lex_monomials(2, 2);
        assert_eq!(
            m,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
        assert_eq!(graded_lex_monomials(3, 3).len(), 20);
    }

    #[test]
    fn fit_constant() {
        let samples: Vec<_> = (0..4).map(|i| (vec![q(i), q(2 * i)], q(7))).collect();
        let p = fit_poly(&samples, &["x", "y"], 0).unwrap().unwrap();
        assert_eq!(p.to_string(), "7");
    }

    #[test]
    fn fit_affine_form_on_generic_points() {
        // 1 + ν2 − ν3 over three variables.
        let vars = ["ν1", "ν2", "ν3"];
        let truth = MultiPolyQ::parse(&vars, "1 + ν2 - ν3").unwrap();
        let samples: Vec<_> = (0..20i64)
            .map(|i| {
                let p = vec![q(i * 7 % 11), q(i * i % 13), q(3 * i % 5)];
                let v = truth.eval(&p);
                (p, v)
            })
            .collect();
        let p = fit_poly(&samples, &vars, 1).unwrap().unwrap();
        assert_eq!(p, truth);
    }

    #[test]
    fn quadratic_data_is_inconsistent_at_degree_one() {
        let samples: Vec<_> = (0..6).map(|i| (vec![q(i)], q(i * i))).collect();
        assert_eq!(fit_poly(&samples, &["x"], 1).unwrap(), None);
    }

    #[test]
    fn underdetermined_is_an_error() {
        let samples = vec![(vec![q(1), q(1)], q(1))];
        assert!(matches!(
            fit_poly(&samples, &["x", "y"], 1),
            Err(Error::Underdetermined { .. })
        ));
        // Enough samples but all on the line x = y.
        let samples: Vec<_> = (0..5).map(|i| (vec![q(i), q(i)], q(i))).collect();
        assert!(matches!(
            fit_poly(&samples, &["x", "y"], 1),
            Err(Error::Underdetermined { rank: 2, .. })
        ));
    }

    proptest! {
        #[test]
        fn interpolation_reproduces_points(
            ys in proptest::collection::vec(-20i64..20, 1..7),
            shift in -5i64..5,
        ) {
            let points: Vec<_> = ys.iter().enumerate()
                .map(|(i, &y)| (frac(2 * i as i64 + shift, 3), q(y)))
                .collect();
            let p = interpolate_univariate(&points).unwrap();
            prop_assert!(p.degree().is_none_or(|d| d < points.len()));
            for (x, y) in &points {
                prop_assert_eq!(&p.eval(x), y);
            }
        }

        #[test]
        fn fit_reproduces_samples(
            coeffs in proptest::collection::vec(-5i64..6, 6),
            xs in proptest::collection::vec((-6i64..7, -6i64..7), 10..16),
        ) {
            let vars = ["x", "y"];
            let truth = MultiPolyQ::from_terms(
                &vars,
                graded_lex_monomials(2, 2).into_iter().zip(coeffs.iter().map(|&c| q(c))),
            );
            let samples: Vec<_> = xs.iter()
                .map(|&(a, b)| { let p = vec![q(a), q(b)]; let v = truth.eval(&p); (p, v) })
                .collect();
            if let Ok(Some(fit)) = fit_poly(&samples, &vars, 2) {
                for (p, v) in &samples {
                    prop_assert_eq!(&fit.eval(p), v);
                }
                prop_assert_eq!(fit, truth);
            }
        }
    }
}
