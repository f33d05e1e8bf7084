//! Kostant partition function of `A_n`, the positive-root matrix `M_{A_n}`,
//! unimodularity, wall normals, and chamber polynomials for `n ≤ 3`.

use std::collections::HashMap;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{fit_poly, q, solve_nonneg_combination, to_i64, MatrixQ, MultiPolyQ, Rational};
use crate::typea::{conjugates_of_fundamental_weights, Weight};
use crate::{binomial, Error, Result};

/// Number of ways to write `v` (length `k`, coordinate sum zero) as a
/// nonnegative integer combination of the positive roots `e_i - e_j`.
pub fn kostant_count(k: usize, v: &Weight) -> Result<u64> {
    if v.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            got: v.len(),
        });
    }
    if !v.sum().is_zero() {
        return Err(Error::NonzeroSum(v.to_string()));
    }
    let Some(ints) = v.coords.iter().map(to_i64).collect::<Option<Vec<_>>>() else {
        return Ok(0);
    };
    Ok(kostant_count_int(&ints))
}

/// [`kostant_count`] on an integer vector whose coordinates sum to zero.
///
/// Coordinates are processed left to right. Once all roots starting before
/// `i` are fixed, the roots `e_i - e_j` (`j > i`) must together supply
/// exactly `v_i` plus whatever earlier roots removed from coordinate `i`;
/// that amount is split over the remaining targets. The last two
/// coordinates are settled in closed form.
pub fn kostant_count_int(v: &[i64]) -> u64 {
    debug_assert_eq!(v.iter().sum::<i64>(), 0);
    let k = v.len();
    if k <= 1 {
        return u64::from(v.iter().all(|&x| x == 0));
    }
    let mut incoming = vec![0i64; k];
    level(v, 0, &mut incoming)
}

fn level(v: &[i64], i: usize, incoming: &mut [i64]) -> u64 {
    let k = v.len();
    let need = v[i] + incoming[i];
    if need < 0 {
        return 0;
    }
    if i + 2 == k {
        // Only e_{k-2} - e_{k-1} is left and the zero sum fixes the rest.
        return 1;
    }
    if i + 3 == k {
        // x copies of e_i - e_{i+1}, need - x copies of e_i - e_{i+2};
        // coordinate i+1 then needs v_{i+1} + incoming + x ≥ 0.
        let lo = (-(v[i + 1] + incoming[i + 1])).max(0);
        return (need - lo + 1).max(0) as u64;
    }
    let mut total = 0;
    distribute(v, i, i + 1, need, incoming, &mut total);
    total
}

fn distribute(v: &[i64], i: usize, j: usize, left: i64, incoming: &mut [i64], total: &mut u64) {
    let k = v.len();
    if j == k - 1 {
        incoming[j] += left;
        *total += level(v, i + 1, incoming);
        incoming[j] -= left;
        return;
    }
    for x in 0..=left {
        incoming[j] += x;
        distribute(v, i, j + 1, left - x, incoming, total);
        incoming[j] -= x;
    }
}

/// `φ_M(b)`: nonnegative integer solutions of `M x = b` for a matrix given
/// by its columns, each nonzero with nonnegative entries. Memoized over
/// (column index, residual).
pub fn vector_partition_function(columns: &[Vec<i64>], b: &[i64]) -> u64 {
    assert!(
        columns
            .iter()
            .all(|c| c.len() == b.len() && c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0)),
        "columns must be nonzero and nonnegative"
    );
    fn go(
        columns: &[Vec<i64>],
        j: usize,
        b: &mut Vec<i64>,
        memo: &mut HashMap<(usize, Vec<i64>), u64>,
    ) -> u64 {
        if b.iter().any(|&x| x < 0) {
            return 0;
        }
        if j == columns.len() {
            return u64::from(b.iter().all(|&x| x == 0));
        }
        if let Some(&c) = memo.get(&(j, b.clone())) {
            return c;
        }
        let key = b.clone();
        let mut total = 0;
        let mut t = 0;
        while b.iter().all(|&x| x >= 0) {
            total += go(columns, j + 1, b, memo);
            for (x, c) in b.iter_mut().zip(&columns[j]) {
                *x -= c;
            }
            t += 1;
        }
        for (x, c) in b.iter_mut().zip(&columns[j]) {
            *x += t * c;
        }
        memo.insert((j, key), total);
        total
    }
    go(columns, 0, &mut b.to_vec(), &mut HashMap::new())
}

/// `M_{A_n}`: the positive roots of `A_n` in the simple-root basis, as
/// columns ordered by `(i, j)` for `e_i - e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMatrix {
    pub n: usize,
    pub matrix: MatrixQ,
}

impl RootMatrix {
    pub fn integer_columns(&self) -> Vec<Vec<i64>> {
        (0..self.matrix.cols())
            .map(|j| self.matrix.column(j).iter().map(|x| to_i64(x).unwrap()).collect())
            .collect()
    }
}

pub fn build_root_matrix(n: usize) -> RootMatrix {
    let columns: Vec<Vec<Rational>> = (0..=n)
        .tuple_combinations()
        .map(|(i, j)| (0..n).map(|r| q(i64::from(i <= r && r < j))).collect())
        .collect();
    RootMatrix {
        n,
        matrix: MatrixQ::from_columns(n, &columns),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularityReport {
    pub unimodular: bool,
    /// Zero-based column indices of a nonsingular maximal minor whose
    /// determinant is not `±1`.
    pub witness: Option<Vec<usize>>,
}

/// Checks every maximal square submatrix.
pub fn check_unimodular(m: &MatrixQ) -> Result<UnimodularityReport> {
    let rank = m.rank();
    if rank < m.rows() {
        return Err(Error::RankDeficient {
            rank,
            rows: m.rows(),
        });
    }
    for cols in (0..m.cols()).combinations(m.rows()) {
        let d = m.select_columns(&cols).determinant();
        if !d.is_zero() && d.abs() != q(1) {
            return Ok(UnimodularityReport {
                unimodular: false,
                witness: Some(cols),
            });
        }
    }
    Ok(UnimodularityReport {
        unimodular: true,
        witness: None,
    })
}

/// Conjugates of the fundamental weights of `sl_{n+1}`, expressed as linear
/// forms on simple-root coordinates: `w ↦ (⟨α_i, w⟩)_i`. The entries are
/// integers in `{0, ±1}`.
pub fn wall_normals(n: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = conjugates_of_fundamental_weights(n + 1)
        .iter()
        .map(|w| {
            (0..n)
                .map(|i| to_i64(&(&w.coords[i] - &w.coords[i + 1])).expect("integral pairing"))
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// One representative per hyperplane: the first nonzero coordinate is positive.
pub fn wall_hyperplanes(n: usize) -> Vec<Vec<i64>> {
    wall_normals(n)
        .into_iter()
        .filter(|u| u.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect()
}

/// Column subsets of `M_{A_n}` forming a basis; each spans a simplicial
/// base cone.
pub fn base_cones(n: usize) -> Vec<Vec<usize>> {
    let m = build_root_matrix(n).matrix;
    (0..m.cols())
        .combinations(n)
        .filter(|c| !m.select_columns(c).determinant().is_zero())
        .collect()
}

/// Inner facet normals of the simplicial cone spanned by `generators`
/// (which must be linearly independent): for each generator, the linear form
/// vanishing on the others and positive on it.
pub fn facet_normals(generators: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..generators.len())
        .map(|drop| {
            let others: Vec<Vec<Rational>> = generators
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, g)| g.clone())
                .collect();
            let dim = generators[drop].len();
            let ns = if others.is_empty() {
                MatrixQ::zeros(1, dim).null_space()
            } else {
                MatrixQ::from_rows(others).null_space()
            };
            assert_eq!(ns.len(), 1, "generators are not independent");
            let u = ns.into_iter().next().unwrap();
            let s: Rational = u.iter().zip(&generators[drop]).map(|(a, b)| a * b).sum();
            if s.is_negative() {
                u.into_iter().map(|x| -x).collect()
            } else {
                u
            }
        })
        .collect()
}

/// Whether `u = c·w` for some nonzero rational `c`.
pub fn parallel(u: &[Rational], w: &[i64]) -> bool {
    let Some(p) = w.iter().position(|&x| x != 0) else {
        return false;
    };
    let c = &u[p] / q(w[p]);
    !c.is_zero() && u.iter().zip(w).all(|(a, &b)| *a == &c * q(b))
}

/// A region of `pos(M_{A_n})` cut out by all wall hyperplanes, with the
/// Kostant partition function's polynomial on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberPoly {
    /// Primitive integer extreme rays in simple-root coordinates.
    pub rays: Vec<Vec<i64>>,
    /// Oriented normals `u` with `⟨u, c⟩ ≥ 0` on the region.
    pub inequalities: Vec<Vec<i64>>,
    /// Polynomial in `v1, …, vn` (simple-root coordinates).
    pub polynomial: MultiPolyQ,
}

impl ChamberPoly {
    pub fn contains(&self, c: &[i64]) -> bool {
        self.inequalities.iter().all(|u| dot(u, c) >= 0)
    }

    pub fn contains_in_interior(&self, c: &[i64]) -> bool {
        self.inequalities.iter().all(|u| dot(u, c) > 0)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: &[Rational]) -> Vec<i64> {
    let l = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_i64().expect("small ray")).collect()
}

pub fn variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// Regions of `pos(M_{A_n})` under the full wall arrangement, each with its
/// fitted polynomial of degree `≤ C(n, 2)`. The regions refine the chamber
/// complex, so each lies inside one chamber.
pub fn kostant_chambers(n: usize) -> Result<Vec<ChamberPoly>> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidRank {
            got: n,
            expected: "1 <= n <= 3",
        });
    }
    let hyperplanes = wall_hyperplanes(n);
    let m = build_root_matrix(n).matrix;
    let vars = variable_names(n);
    let degree = binomial(n, 2) as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6f7374);
    let mut out = Vec::new();
    for signs in 0u32..1 << hyperplanes.len() {
        let inequalities: Vec<Vec<i64>> = hyperplanes
            .iter()
            .enumerate()
            .map(|(h, u)| {
                if signs >> h & 1 == 0 {
                    u.clone()
                } else {
                    u.iter().map(|x| -x).collect()
                }
            })
            .collect();
        let Some(rays) = extreme_rays(n, &inequalities) else {
            continue;
        };
        let inside = rays.iter().all(|r| {
            let target: Vec<Rational> = r.iter().map(|&x| q(x)).collect();
            solve_nonneg_combination(&m, &target).is_some()
        });
        if !inside {
            continue;
        }
        let samples = interior_samples(&rays, degree, &mut rng);
        let data: Vec<(Vec<Rational>, Rational)> = samples
            .iter()
            .map(|c| {
                let w = Weight::from_simple_root_coords(&c.iter().map(|&x| q(x)).collect::<Vec<_>>());
                let count = kostant_count(n + 1, &w).expect("zero-sum by construction");
                (c.iter().map(|&x| q(x)).collect(), q(count as i64))
            })
            .collect();
        let polynomial = fit_poly(&data, &vars, degree)?
            .ok_or_else(|| Error::FitFailed(format!("region with rays {rays:?}")))?;
        out.push(ChamberPoly {
            rays,
            inequalities,
            polynomial,
        });
    }
    Ok(out)
}

/// Extreme rays of the pointed cone `{c : ⟨u, c⟩ ≥ 0 for all u}` if it is
/// full-dimensional, else `None`.
fn extreme_rays(n: usize, inequalities: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let mut rays: Vec<Vec<i64>> = Vec::new();
    if n == 1 {
        for r in [vec![1], vec![-1]] {
            if inequalities.iter().all(|u| dot(u, &r) >= 0) {
                rays.push(r);
            }
        }
    } else {
        for tight in inequalities.iter().combinations(n - 1) {
            let rows: Vec<Vec<Rational>> = tight.iter().map(|u| u.iter().map(|&x| q(x)).collect()).collect();
            let ns = MatrixQ::from_rows(rows).null_space();
            if ns.len() != 1 {
                continue;
            }
            let r = primitive(&ns[0]);
            for cand in [r.clone(), r.iter().map(|x| -x).collect()] {
                if inequalities.iter().all(|u| dot(u, &cand) >= 0) && !rays.contains(&cand) {
                    rays.push(cand);
                }
            }
        }
    }
    rays.sort();
    let as_rows: Vec<Vec<Rational>> = rays.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    (!rays.is_empty() && MatrixQ::from_rows(as_rows).rank() == n).then_some(rays)
}

/// Lattice points in the interior: multiples of the sum of all rays, then
/// combinations with every coefficient in `1..=5`.
fn interior_samples(rays: &[Vec<i64>], degree: u32, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let n = rays[0].len();
    let monomials = binomial(n + degree as usize, n);
    let wanted = 2 * monomials + 4;
    let sum: Vec<i64> = (0..n).map(|i| rays.iter().map(|r| r[i]).sum()).collect();
    let mut out: Vec<Vec<i64>> = (1..=3).map(|t| sum.iter().map(|x| t * x).collect()).collect();
    for _ in 0..50 * wanted {
        if out.len() >= wanted {
            break;
        }
        let coeffs: Vec<i64> = rays.iter().map(|_| rng.gen_range(1..=5)).collect();
        let p: Vec<i64> = (0..n)
            .map(|i| rays.iter().zip(&coeffs).map(|(r, c)| r[i] * c).sum())
            .collect();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    // Low-dimensional regions can run out of distinct combinations.
    let mut t = 4;
    while out.len() < wanted {
        out.push(sum.iter().map(|x| t * x).collect());
        t += 1;
    }
    out
}
