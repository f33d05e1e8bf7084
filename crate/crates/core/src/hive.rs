//! Integral hives, their rhombus inequalities, and the linear system
//! `E_k x = B_k (λ, μ, ν)` whose nonnegative integer solutions are the
//! hives with boundary `(λ, μ, ν)`.
//!
//! A `k`-hive is a triangular array `a_{ij}`, `i + j ≤ k`. The boundary
//! reads
//!
//! ```text
//! a_{0j}       = λ_1 + … + λ_j
//! a_{i0}       = ν_1 + … + ν_i
//! a_{m,k-m}    = |λ| + μ_1 + … + μ_m        (1 ≤ m ≤ k-1)
//! ```
//!
//! so `μ_k` never enters (it is fixed by `|λ| + |μ| = |ν|`).

use serde_json::{json, Value};

use crate::exactla::{q, to_i64, MatrixQ, Rational};
use crate::typea::Partition;
use crate::{binomial, Error, Result};

/// `(λ, μ, ν)` padded to `k` parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HiveBoundary {
    pub k: usize,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
}

impl HiveBoundary {
    pub fn new(k: usize, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Self> {
        Ok(HiveBoundary {
            k,
            lambda: lambda.padded(k)?,
            mu: mu.padded(k)?,
            nu: nu.padded(k)?,
        })
    }

    /// Uses the smallest `k ≥ 1` that fits all three partitions.
    pub fn minimal(lambda: &Partition, mu: &Partition, nu: &Partition) -> Self {
        let k = lambda.length().max(mu.length()).max(nu.length()).max(1);
        Self::new(k, lambda, mu, nu).expect("k fits by construction")
    }

    pub fn sums_match(&self) -> bool {
        self.lambda.iter().sum::<i64>() + self.mu.iter().sum::<i64>() == self.nu.iter().sum::<i64>()
    }

    /// The concatenation `(λ | μ | ν)`.
    pub fn coordinates(&self) -> Vec<i64> {
        [&self.lambda[..], &self.mu, &self.nu].concat()
    }

    /// The boundary entry at `(i, j)`, or `None` for interior positions.
    pub fn entry(&self, i: usize, j: usize) -> Option<i64> {
        let k = self.k;
        if i == 0 {
            Some(self.lambda[..j].iter().sum())
        } else if j == 0 {
            Some(self.nu[..i].iter().sum())
        } else if i + j == k {
            Some(self.lambda.iter().sum::<i64>() + self.mu[..i].iter().sum::<i64>())
        } else {
            None
        }
    }
}

/// Position of a hive entry on the boundary, as a linear form in the `3k`
/// coordinates `(λ | μ | ν)`; `None` for interior positions.
fn boundary_form(k: usize, i: usize, j: usize) -> Option<Vec<i64>> {
    let mut f = vec![0; 3 * k];
    if i == 0 {
        f[..j].fill(1);
    } else if j == 0 {
        f[2 * k..2 * k + i].fill(1);
    } else if i + j == k {
        f[..k].fill(1);
        f[k..k + i].fill(1);
    } else {
        return None;
    }
    Some(f)
}

/// Interior positions `(i, j)`, `i, j ≥ 1`, `i + j ≤ k - 1`, row-major.
pub fn interior_positions(k: usize) -> Vec<(usize, usize)> {
    (1..k)
        .flat_map(|i| (1..k.saturating_sub(i)).map(move |j| (i, j)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `a_{i+1,j} + a_{i,j+1} ≥ a_{ij} + a_{i+1,j+1}`
    Square,
    /// `a_{i,j+1} + a_{i+1,j+1} ≥ a_{i+1,j} + a_{i,j+2}`
    ColumnPair,
    /// `a_{i+1,j} + a_{i+1,j+1} ≥ a_{i+2,j} + a_{i,j+1}`
    RowPair,
}

/// One rhombus inequality: the two `larger` entries sum to at least the two
/// `smaller` ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HiveInequality {
    pub family: Family,
    pub i: usize,
    pub j: usize,
}

impl HiveInequality {
    pub fn larger(&self) -> [(usize, usize); 2] {
        let (i, j) = (self.i, self.j);
        match self.family {
            Family::Square => [(i + 1, j), (i, j + 1)],
            Family::ColumnPair => [(i, j + 1), (i + 1, j + 1)],
            Family::RowPair => [(i + 1, j), (i + 1, j + 1)],
        }
    }

    pub fn smaller(&self) -> [(usize, usize); 2] {
        let (i, j) = (self.i, self.j);
        match self.family {
            Family::Square => [(i, j), (i + 1, j + 1)],
            Family::ColumnPair => [(i + 1, j), (i, j + 2)],
            Family::RowPair => [(i + 2, j), (i, j + 1)],
        }
    }

    pub fn label(&self) -> String {
        let name = match self.family {
            Family::Square => "square",
            Family::ColumnPair => "column_pair",
            Family::RowPair => "row_pair",
        };
        format!("{name}({},{})", self.i, self.j)
    }
}

/// All `3·C(k, 2)` inequalities: squares, then column pairs, then row pairs,
/// each row-major over `i + j ≤ k - 2`.
pub fn inequalities(k: usize) -> Vec<HiveInequality> {
    let base: Vec<(usize, usize)> = (0..k.saturating_sub(1))
        .flat_map(|i| (0..k - 1 - i).map(move |j| (i, j)))
        .collect();
    [Family::Square, Family::ColumnPair, Family::RowPair]
        .into_iter()
        .flat_map(|family| base.iter().map(move |&(i, j)| HiveInequality { family, i, j }))
        .collect()
}

/// A complete triangular array, `entries[i][j]` for `i + j ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hive {
    pub k: usize,
    pub entries: Vec<Vec<i64>>,
}

impl Hive {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn satisfies_rhombus_inequalities(&self) -> bool {
        inequalities(self.k).iter().all(|ineq| {
            let s = |ps: [(usize, usize); 2]| ps.iter().map(|&(i, j)| self.get(i, j)).sum::<i64>();
            s(ineq.larger()) >= s(ineq.smaller())
        })
    }

    pub fn matches_boundary(&self, b: &HiveBoundary) -> bool {
        self.k == b.k
            && (0..=self.k).all(|i| {
                (0..=self.k - i).all(|j| b.entry(i, j).is_none_or(|v| v == self.get(i, j)))
            })
    }
}

/// Inequalities rewritten for backtracking over interior entries in
/// row-major order: each is attached to the last interior entry it mentions.
struct Plan {
    k: usize,
    interior: Vec<(usize, usize)>,
    /// `constraints[v]`: `(coefficient of v, other interior terms, boundary terms)`,
    /// read as `coef·x_v + Σ c·x + Σ c·a ≥ 0`.
    constraints: Vec<Vec<Constraint>>,
    /// Inequalities that involve only boundary entries.
    boundary_only: Vec<Vec<(i64, (usize, usize))>>,
}

struct Constraint {
    coef: i64,
    interior: Vec<(i64, usize)>,
    boundary: Vec<(i64, (usize, usize))>,
}

impl Plan {
    fn new(k: usize) -> Self {
        let interior = interior_positions(k);
        let index = |p: (usize, usize)| interior.iter().position(|&q| q == p);
        let mut constraints: Vec<Vec<Constraint>> = (0..interior.len()).map(|_| Vec::new()).collect();
        let mut boundary_only = Vec::new();
        for ineq in inequalities(k) {
            let terms = ineq
                .larger()
                .into_iter()
                .map(|p| (1, p))
                .chain(ineq.smaller().into_iter().map(|p| (-1, p)));
            let mut int: Vec<(i64, usize)> = Vec::new();
            let mut bdy = Vec::new();
            for (c, p) in terms {
                match index(p) {
                    Some(v) => int.push((c, v)),
                    None => bdy.push((c, p)),
                }
            }
            match int.iter().map(|&(_, v)| v).max() {
                None => boundary_only.push(bdy),
                Some(last) => {
                    let coef = int.iter().filter(|&&(_, v)| v == last).map(|&(c, _)| c).sum();
                    let others = int.into_iter().filter(|&(_, v)| v != last).collect();
                    constraints[last].push(Constraint {
                        coef,
                        interior: others,
                        boundary: bdy,
                    });
                }
            }
        }
        Plan {
            k,
            interior,
            constraints,
            boundary_only,
        }
    }
}

struct Search<'a> {
    plan: &'a Plan,
    boundary: &'a HiveBoundary,
    values: Vec<i64>,
}

impl Search<'_> {
    fn bdy(&self, terms: &[(i64, (usize, usize))]) -> i64 {
        terms
            .iter()
            .map(|&(c, (i, j))| c * self.boundary.entry(i, j).expect("boundary position"))
            .sum()
    }

    /// Integer interval for interior entry `v` given entries `0..v`.
    fn interval(&self, v: usize) -> (i64, i64) {
        let (mut lo, mut hi) = (i64::MIN, i64::MAX);
        for c in &self.plan.constraints[v] {
            let rest = self.bdy(&c.boundary)
                + c.interior.iter().map(|&(a, u)| a * self.values[u]).sum::<i64>();
            match c.coef {
                // x + rest ≥ 0
                1 => lo = lo.max(-rest),
                // -x + rest ≥ 0
                -1 => hi = hi.min(rest),
                0 if rest < 0 => return (1, 0),
                0 => {}
                _ => unreachable!("rhombus coefficients are ±1"),
            }
        }
        assert!(lo > i64::MIN && hi < i64::MAX, "hive entry without a two-sided bound");
        (lo, hi)
    }

    fn count(&mut self, v: usize) -> u64 {
        if v == self.values.len() {
            return 1;
        }
        let (lo, hi) = self.interval(v);
        if lo > hi {
            return 0;
        }
        if v + 1 == self.values.len() {
            return (hi - lo + 1) as u64;
        }
        let mut total = 0;
        for x in lo..=hi {
            self.values[v] = x;
            total += self.count(v + 1);
        }
        total
    }

    fn collect(&mut self, v: usize, out: &mut Vec<Vec<i64>>) {
        if v == self.values.len() {
            out.push(self.values.clone());
            return;
        }
        let (lo, hi) = self.interval(v);
        for x in lo..=hi {
            self.values[v] = x;
            self.collect(v + 1, out);
        }
    }
}

fn boundary_feasible(plan: &Plan, b: &HiveBoundary) -> bool {
    let s = Search {
        plan,
        boundary: b,
        values: Vec::new(),
    };
    plan.boundary_only.iter().all(|t| s.bdy(t) >= 0)
}

/// Each interior entry needs a lower and an upper bound from earlier
/// entries. That holds for every `k`: the square below-left of an entry
/// bounds it above and the column pair to its left bounds it below.
pub fn hive_count(b: &HiveBoundary) -> u64 {
    if !b.sums_match() {
        return 0;
    }
    let plan = Plan::new(b.k);
    if !boundary_feasible(&plan, b) {
        return 0;
    }
    let mut s = Search {
        values: vec![0; plan.interior.len()],
        plan: &plan,
        boundary: b,
    };
    s.count(0)
}

/// `c_{λμ}^ν` by hive counting with the smallest fitting `k`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    hive_count(&HiveBoundary::minimal(lambda, mu, nu))
}

/// All integral hives with the given boundary, each re-verified against
/// every rhombus inequality and the boundary.
pub fn enumerate_hives(b: &HiveBoundary) -> Vec<Hive> {
    if !b.sums_match() {
        return Vec::new();
    }
    let plan = Plan::new(b.k);
    if !boundary_feasible(&plan, b) {
        return Vec::new();
    }
    let mut s = Search {
        values: vec![0; plan.interior.len()],
        plan: &plan,
        boundary: b,
    };
    let mut raw = Vec::new();
    s.collect(0, &mut raw);
    raw.into_iter()
        .map(|values| {
            let k = plan.k;
            let mut entries: Vec<Vec<i64>> = (0..=k)
                .map(|i| (0..=k - i).map(|j| b.entry(i, j).unwrap_or(0)).collect())
                .collect();
            for (&(i, j), x) in plan.interior.iter().zip(values) {
                entries[i][j] = x;
            }
            let h = Hive { k, entries };
            assert!(h.satisfies_rhombus_inequalities() && h.matches_boundary(b));
            h
        })
        .collect()
}

/// `E_k` (interior variables, then one slack per inequality) and `B_k`
/// (columns `λ_1..λ_k, μ_1..μ_k, ν_1..ν_k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiveSystem {
    pub k: usize,
    pub e: MatrixQ,
    pub b: MatrixQ,
    pub inequality_order: Vec<HiveInequality>,
}

impl HiveSystem {
    pub fn interior_count(&self) -> usize {
        self.e.cols() - self.e.rows()
    }

    pub fn to_json(&self) -> Value {
        let ints = |m: &MatrixQ| -> Vec<Vec<i64>> {
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(|x| to_i64(x).expect("integer matrix")).collect())
                .collect()
        };
        json!({
            "k": self.k,
            "E": ints(&self.e),
            "B": ints(&self.b),
            "inequality_order": self.inequality_order.iter().map(HiveInequality::label).collect::<Vec<_>>(),
        })
    }
}

/// Each inequality `larger ≥ smaller` becomes
/// `(smaller - larger)|interior + s = (larger - smaller)|boundary`.
pub fn build_system(k: usize) -> Result<HiveSystem> {
    if k < 2 {
        return Err(Error::InvalidRank {
            got: k,
            expected: "k >= 2",
        });
    }
    let interior = interior_positions(k);
    let order = inequalities(k);
    let n = order.len();
    debug_assert_eq!(n, 3 * binomial(k, 2));
    let mut e = MatrixQ::zeros(n, interior.len() + n);
    let mut b = MatrixQ::zeros(n, 3 * k);
    for (row, ineq) in order.iter().enumerate() {
        e[(row, interior.len() + row)] = q(1);
        let terms = ineq
            .smaller()
            .into_iter()
            .map(|p| (1, p))
            .chain(ineq.larger().into_iter().map(|p| (-1, p)));
        for (c, p) in terms {
            if let Some(v) = interior.iter().position(|&x| x == p) {
                e[(row, v)] += q(c);
            } else {
                let form = boundary_form(k, p.0, p.1).expect("boundary position");
                for (col, f) in form.into_iter().enumerate() {
                    b[(row, col)] -= q(c * f);
                }
            }
        }
    }
    Ok(HiveSystem {
        k,
        e,
        b,
        inequality_order: order,
    })
}

/// `φ_E(B·(λ, μ, ν))` by backtracking over the non-slack variables. Each
/// variable is bounded by the rows in which it is the last non-slack
/// variable; the slack of a row is checked once all its variables are set.
pub fn count_via_system(s: &HiveSystem, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let k = s.k;
    let coords: Vec<Rational> = [lambda.padded(k)?, mu.padded(k)?, nu.padded(k)?]
        .concat()
        .into_iter()
        .map(q)
        .collect();
    let (l, m, n) = (lambda.size(), mu.size(), nu.size());
    if l + m != n {
        return Err(Error::SumMismatch { lhs: l + m, rhs: n });
    }
    let rhs = s
        .b
        .mul_vec(&coords)
        .iter()
        .map(to_i64)
        .collect::<Option<Vec<i64>>>()
        .ok_or(Error::NonIntegral)?;
    let vars = s.interior_count();
    let rows: Vec<Vec<i64>> = (0..s.e.rows())
        .map(|r| {
            s.e.row(r)[..vars]
                .iter()
                .map(|x| to_i64(x).ok_or(Error::NonIntegral))
                .collect()
        })
        .collect::<Result<_>>()?;
    // Rows are attached to their last nonzero variable; rows with none are
    // checked up front.
    let mut attached: Vec<Vec<usize>> = vec![Vec::new(); vars];
    for (r, row) in rows.iter().enumerate() {
        match row.iter().rposition(|&c| c != 0) {
            Some(v) => attached[v].push(r),
            None if rhs[r] < 0 => return Ok(0),
            None => {}
        }
    }
    for (v, rs) in attached.iter().enumerate() {
        if !rs.iter().any(|&r| rows[r][v] > 0) {
            return Err(Error::Unbounded(v));
        }
    }
    let mut x = vec![0i64; vars];
    Ok(solve(&rows, &rhs, &attached, &mut x, 0))
}

fn solve(rows: &[Vec<i64>], rhs: &[i64], attached: &[Vec<usize>], x: &mut [i64], v: usize) -> u64 {
    if v == x.len() {
        return 1;
    }
    // slack_r = rhs_r - Σ_u E_ru x_u ≥ 0 with x_v the only unknown.
    let (mut lo, mut hi) = (0i64, i64::MAX);
    for &r in &attached[v] {
        let rest = rhs[r] - (0..v).map(|u| rows[r][u] * x[u]).sum::<i64>();
        let c = rows[r][v];
        if c > 0 {
            hi = hi.min(rest.div_euclid(c));
        } else {
            lo = lo.max((-rest + (-c) - 1).div_euclid(-c));
        }
    }
    if lo > hi {
        return 0;
    }
    if v + 1 == x.len() {
        return (hi - lo + 1) as u64;
    }
    let mut total = 0;
    for t in lo..=hi {
        x[v] = t;
        total += solve(rows, rhs, attached, x, v + 1);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn count(l: &str, m: &str, n: &str) -> u64 {
        lr_coefficient(&p(l), &p(m), &p(n))
    }

    #[test]
    fn hive_count_examples() {
        assert_eq!(count("2,1,0", "2,1,0", "3,2,1"), 2);
        assert_eq!(count("4,2,1", "", "4,2,1"), 1);
        assert_eq!(count("1", "1", "3"), 0);
        assert_eq!(count("1", "1", "2"), 1);
        assert_eq!(count("1", "1", "1,1"), 1);
        assert_eq!(count("2,1", "1", "2,2"), 1);
        assert_eq!(count("2", "1", "1,1,1"), 0);
    }

    #[test]
    fn interior_interval_for_the_standard_example() {
        let b = HiveBoundary::new(3, &p("2,1"), &p("2,1"), &p("3,2,1")).unwrap();
        let hives = enumerate_hives(&b);
        let mut a11: Vec<i64> = hives.iter().map(|h| h.get(1, 1)).collect();
        a11.sort_unstable();
        assert_eq!(a11, vec![4, 5]);
    }

    #[test]
    fn system_shapes() {
        let s = build_system(3).unwrap();
        assert_eq!((s.e.rows(), s.e.cols()), (9, 10));
        assert_eq!((s.b.rows(), s.b.cols()), (9, 9));
        for r in 0..9 {
            for c in 0..9 {
                assert_eq!(s.e[(r, c + 1)], q(i64::from(r == c)));
            }
        }
        // a_11 ≤ ν_1 + λ_1
        assert_eq!(s.e[(0, 0)], q(1));
        assert_eq!(s.b.row(0).iter().map(|x| to_i64(x).unwrap()).collect::<Vec<_>>(), vec![1, 0, 0, 0, 0, 0, 1, 0, 0]);

        let s2 = build_system(2).unwrap();
        assert_eq!(s2.interior_count(), 0);
        assert_eq!(s2.e, MatrixQ::identity(3));
        assert_eq!(build_system(4).unwrap().e.rows(), 18);
        assert!(build_system(1).is_err());
    }

    #[test]
    fn mu_k_column_vanishes() {
        for k in 2..=5 {
            let s = build_system(k).unwrap();
            assert!(s.b.column(2 * k - 1).iter().all(|x| *x == q(0)), "k={k}");
        }
    }

    #[test]
    fn system_count_examples() {
        let s = build_system(3).unwrap();
        assert_eq!(count_via_system(&s, &p("2,1"), &p("2,1"), &p("3,2,1")).unwrap(), 2);
        assert_eq!(count_via_system(&s, &p("3,1"), &p(""), &p("3,1")).unwrap(), 1);
        // λ ⊄ ν
        assert_eq!(count_via_system(&s, &p("3"), &p("1"), &p("2,2")).unwrap(), 0);
        assert!(count_via_system(&s, &p("1"), &p("1"), &p("3")).is_err());
    }

    #[test]
    fn k1_and_k2_edge_cases() {
        assert_eq!(count("3", "2", "5"), 1);
        assert_eq!(count("", "", ""), 1);
        let s = build_system(2).unwrap();
        assert_eq!(count_via_system(&s, &p("2"), &p("1"), &p("2,1")).unwrap(), 1);
        assert!(count_via_system(&s, &p("2"), &p("1"), &p("1,1,1")).is_err());
    }

    fn partition(k: usize, max: u32) -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0..=max, k).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    fn triple() -> impl Strategy<Value = (Partition, Partition, Partition)> {
        (partition(3, 4), partition(3, 4)).prop_flat_map(|(l, m)| {
            let total = l.size() + m.size();
            (Just(l), Just(m), partition(3, 8)).prop_map(move |(l, m, n)| {
                // Push ν towards the right size so most cases are nontrivial.
                let mut parts: Vec<u32> = n.padded(3).unwrap().iter().map(|&x| x as u32).collect();
                let diff = total - n.size();
                if diff > 0 {
                    parts[0] += diff as u32;
                }
                (l, m, Partition::new(parts).unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn hives_and_system_agree((l, m, n) in triple()) {
            let b = HiveBoundary::new(3, &l, &m, &n).unwrap();
            let hc = hive_count(&b);
            if b.sums_match() {
                prop_assert_eq!(hc, count_via_system(&build_system(3).unwrap(), &l, &m, &n).unwrap());
            } else {
                prop_assert_eq!(hc, 0);
            }
            prop_assert_eq!(enumerate_hives(&b).len() as u64, hc);
        }

        #[test]
        fn lambda_mu_symmetry((l, m, n) in triple()) {
            prop_assert_eq!(count(&l.to_string(), &m.to_string(), &n.to_string()),
                            count(&m.to_string(), &l.to_string(), &n.to_string()));
        }

        #[test]
        fn padding_does_not_change_counts((l, m, n) in triple(), extra in 1usize..3) {
            let b3 = HiveBoundary::new(3, &l, &m, &n).unwrap();
            let bk = HiveBoundary::new(3 + extra, &l, &m, &n).unwrap();
            prop_assert_eq!(hive_count(&b3), hive_count(&bk));
        }
    }
}
