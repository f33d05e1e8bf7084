use itertools::Itertools;
use num_traits::Zero;

use super::{is_nonnegative, MatrixQ, Rational};

/// Finds `x ≥ 0` with `columns · x = target`, if one exists.
///
/// Only basic solutions are searched: by Carathéodory a feasible target is a
/// nonnegative combination of some linearly independent set of columns, and
/// every such set extends to one of size `rank(columns)`.
pub fn solve_nonneg_combination(columns: &MatrixQ, target: &[Rational]) -> Option<Vec<Rational>> {
    assert!(columns.cols() > 0, "no generators");
    assert_eq!(target.len(), columns.rows(), "target length mismatch");
    let n = columns.cols();
    let rank = columns.rank();
    if rank == 0 {
        return target
            .iter()
            .all(Zero::is_zero)
            .then(|| vec![Rational::zero(); n]);
    }
    for subset in (0..n).combinations(rank) {
        let sub = columns.select_columns(&subset);
        // solve_unique rejects dependent subsets and inconsistent targets.
        let Some(coeffs) = sub.solve_unique(target) else {
            continue;
        };
        if coeffs.iter().all(is_nonnegative) {
            let mut x = vec![Rational::zero(); n];
            for (&j, c) in subset.iter().zip(coeffs) {
                x[j] = c;
            }
            return Some(x);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;
    use proptest::prelude::*;

    #[test]
    fn unit_vectors() {
        let m = MatrixQ::from_int_rows(&[[1, 0], [0, 1]]);
        assert_eq!(
            solve_nonneg_combination(&m, &[q(2), q(3)]),
            Some(vec![q(2), q(3)])
        );
        assert_eq!(solve_nonneg_combination(&m, &[q(-1), q(0)]), None);
    }

    #[test]
    fn redundant_generators() {
        // (1,1) is reachable from (2,0),(0,2) and also directly from (1,1).
        let m = MatrixQ::from_int_rows(&[[2, 0, 1], [0, 2, 1]]);
        let x = solve_nonneg_combination(&m, &[q(1), q(1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1), q(1)]);
        assert_eq!(solve_nonneg_combination(&m, &[q(1), q(-1)]), None);
    }

    #[test]
    fn zero_generators() {
        let m = MatrixQ::zeros(2, 3);
        assert!(solve_nonneg_combination(&m, &[q(0), q(0)]).is_some());
        assert!(solve_nonneg_combination(&m, &[q(0), q(1)]).is_none());
    }

    /// Brute force over nonnegative integer combinations, used as an oracle
    /// for integral targets in a small box.
    fn brute_force_integer(cols: &[Vec<i64>], target: &[i64], bound: i64) -> bool {
        let n = cols.len();
        let mut x = vec![0i64; n];
        loop {
            let ok = (0..target.len())
                .all(|i| (0..n).map(|j| cols[j][i] * x[j]).sum::<i64>() == target[i]);
            if ok {
                return true;
            }
            let mut j = 0;
            while j < n && x[j] == bound {
                x[j] = 0;
                j += 1;
            }
            if j == n {
                return false;
            }
            x[j] += 1;
        }
    }

    proptest! {
        #[test]
        fn feasible_solutions_are_exact_and_nonnegative(
            cols in proptest::collection::vec(proptest::collection::vec(-2i64..3, 3), 1..5),
            target in proptest::collection::vec(-4i64..5, 3),
        ) {
            let m = MatrixQ::from_columns(3, &cols.iter().map(|c| c.iter().map(|&v| q(v)).collect()).collect::<Vec<_>>());
            let t: Vec<Rational> = target.iter().map(|&v| q(v)).collect();
            if let Some(x) = solve_nonneg_combination(&m, &t) {
                prop_assert_eq!(m.mul_vec(&x), t.clone());
                prop_assert!(x.iter().all(is_nonnegative));
            }
            // Integer feasibility implies rational feasibility.
            if brute_force_integer(&cols, &target, 4) {
                prop_assert!(solve_nonneg_combination(&m, &t).is_some());
            }
        }
    }
}
