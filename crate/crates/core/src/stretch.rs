//! Stretching polynomials `N ↦ c_{Nλ,Nμ}^{Nν}`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::exactla::{fit_with_monomials, interpolate_univariate, q, rational_to_string, MultiPolyQ, Rational, UniPolyQ};
use crate::hive::{build_system, count_via_system, hive_count, HiveBoundary};
use crate::steinberg::{is_generic, steinberg_count};
use crate::tableaux::lr_rule_count;
use crate::typea::Partition;
use crate::{binomial, count_to_json, lr3, Error, Result};

/// Which independent method computes `c_{λμ}^ν`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Counter {
    #[default]
    Hive,
    Steinberg,
    Tableaux,
    System,
}

impl Counter {
    pub const ALL: [Counter; 4] = [Counter::Hive, Counter::Steinberg, Counter::Tableaux, Counter::System];

    pub fn name(&self) -> &'static str {
        match self {
            Counter::Hive => "hive",
            Counter::Steinberg => "steinberg",
            Counter::Tableaux => "tableaux",
            Counter::System => "system",
        }
    }

    /// `c_{λμ}^ν` with `k` the largest of the three lengths; zero when
    /// `|λ| + |μ| ≠ |ν|`.
    pub fn count(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
        if lambda.size() + mu.size() != nu.size() {
            return Ok(0);
        }
        let k = lambda.length().max(mu.length()).max(nu.length()).max(1);
        match self {
            Counter::Hive => Ok(hive_count(&HiveBoundary::new(k, lambda, mu, nu)?)),
            Counter::Steinberg => {
                let c = steinberg_count(lambda, mu, nu, k)?;
                u64::try_from(c).map_err(|_| Error::FitFailed(format!("negative Steinberg sum {c}")))
            }
            Counter::Tableaux => Ok(lr_rule_count(lambda, mu, nu)),
            Counter::System => {
                // The hive system needs k ≥ 2; padding never changes the count.
                let s = build_system(k.max(2))?;
                count_via_system(&s, lambda, mu, nu)
            }
        }
    }
}

impl FromStr for Counter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Counter::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

impl fmt::Display for Counter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationPoint {
    pub n: u64,
    pub expected: u64,
    pub got: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StretchResult {
    pub polynomial: UniPolyQ,
    pub degree_bound: usize,
    pub method: Counter,
    /// Counts at `N = 1, …, D + 1` used for interpolation.
    pub samples: Vec<u64>,
    pub verification: Vec<VerificationPoint>,
    pub p0: Rational,
    pub coefficients_nonnegative: bool,
}

impl StretchResult {
    pub fn to_json(&self) -> Value {
        json!({
            "method": self.method.name(),
            "polynomial": self.polynomial.to_string(),
            "coefficients": self.polynomial.coefficients().iter().map(rational_to_string).collect::<Vec<_>>(),
            "degree_bound": self.degree_bound,
            "samples": self.samples.iter().map(|&c| count_to_json(c)).collect::<Vec<_>>(),
            "verification": self.verification.iter().map(|v| json!({
                "N": v.n,
                "expected": count_to_json(v.expected),
                "got": rational_to_string(&v.got),
            })).collect::<Vec<_>>(),
            "p0": rational_to_string(&self.p0),
            "coefficients_nonnegative": self.coefficients_nonnegative,
        })
    }
}

fn length3(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    lambda.length().max(mu.length()).max(nu.length())
}

/// `3·C(k-1, 2)` for the lengths of the triple.
pub fn degree_bound(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    let k = length3(lambda, mu, nu).max(1);
    3 * binomial(k - 1, 2)
}

/// Interpolates at `N = 1..=D+1` and checks `N = D+2..=D+4`.
pub fn stretch_poly(lambda: &Partition, mu: &Partition, nu: &Partition, counter: Counter) -> Result<StretchResult> {
    let d = degree_bound(lambda, mu, nu);
    let at = |n: u64| counter.count(&lambda.scaled(n as u32), &mu.scaled(n as u32), &nu.scaled(n as u32));
    let samples = (1..=d as u64 + 1).map(at).collect::<Result<Vec<_>>>()?;
    let points: Vec<(Rational, Rational)> = samples
        .iter()
        .enumerate()
        .map(|(i, &c)| (q(i as i64 + 1), q(c as i64)))
        .collect();
    let polynomial = interpolate_univariate(&points)?;
    let mut verification = Vec::new();
    for n in d as u64 + 2..=d as u64 + 4 {
        let expected = at(n)?;
        let got = polynomial.eval(&q(n as i64));
        if got != q(expected as i64) {
            return Err(Error::PolynomialityViolated {
                n,
                expected: expected.to_string(),
                got: rational_to_string(&got),
            });
        }
        verification.push(VerificationPoint { n, expected, got });
    }
    Ok(StretchResult {
        p0: polynomial.eval(&Rational::zero()),
        coefficients_nonnegative: polynomial.coefficients_nonnegative(),
        polynomial,
        degree_bound: d,
        method: counter,
        samples,
        verification,
    })
}

/// Observations about the stretching polynomial; nothing here is asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KttReport {
    pub coefficient: u64,
    pub polynomial: UniPolyQ,
    pub p0_is_one: bool,
    pub coefficients_nonnegative: bool,
}

impl KttReport {
    pub fn to_json(&self) -> Value {
        json!({
            "coefficient": count_to_json(self.coefficient),
            "polynomial": self.polynomial.to_string(),
            "p0_is_one": self.p0_is_one,
            "coefficients_nonnegative": self.coefficients_nonnegative,
        })
    }
}

pub fn check_ktt(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<KttReport> {
    let c = Counter::Hive.count(lambda, mu, nu)?;
    if c == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let s = stretch_poly(lambda, mu, nu, Counter::Hive)?;
    Ok(KttReport {
        coefficient: c,
        p0_is_one: s.p0.is_one(),
        coefficients_nonnegative: s.coefficients_nonnegative,
        polynomial: s.polynomial,
    })
}

/// Whether the stretching polynomial is `1 + N(c - 1)`; only defined for
/// at most three parts.
pub fn check_linear_k3(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<bool> {
    let k = length3(lambda, mu, nu);
    if k > 3 {
        return Err(Error::InvalidRank {
            got: k,
            expected: "at most 3 parts",
        });
    }
    let c = Counter::Hive.count(lambda, mu, nu)?;
    if c == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let s = stretch_poly(lambda, mu, nu, Counter::Hive)?;
    Ok(s.polynomial == UniPolyQ::new(vec![q(1), q(c as i64 - 1)]))
}

/// Perturbations `ν + a(e_1 - e_2) + b(e_2 - e_3)`.
pub const STABLE_PERTURBATIONS: [(i64, i64); 5] = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableStretchReport {
    /// Cones of the `k = 3` complex containing every perturbed triple.
    pub common_cones: Vec<String>,
    /// Joint fit in `a`, `b`, `t`, if one exists.
    pub polynomial: Option<MultiPolyQ>,
}

impl StableStretchReport {
    pub fn holds(&self) -> bool {
        !self.common_cones.is_empty() && self.polynomial.is_some()
    }
}

/// For a generic triple with at most three parts, samples
/// `c(tλ, tμ, t(ν + aα_1 + bα_2))` over the five perturbations and
/// `t = 1..=7`, and fits one polynomial with degree `≤ 1` in `(a, b)` and
/// `≤ 3` in `t`.
pub fn check_stable_stretching(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<StableStretchReport> {
    let k = 3;
    if length3(lambda, mu, nu) > k {
        return Err(Error::InvalidRank {
            got: length3(lambda, mu, nu),
            expected: "at most 3 parts",
        });
    }
    if !is_generic(lambda, mu, nu, k)? {
        return Err(Error::NotGeneric);
    }
    let base = [lambda.padded(k)?, mu.padded(k)?, nu.padded(k)?].concat();
    let data = lr3::load_k3();
    let mut common: Option<Vec<String>> = None;
    let mut triples = Vec::new();
    for &(a, b) in &STABLE_PERTURBATIONS {
        let mut x = base.clone();
        x[6] += a;
        x[7] += b - a;
        x[8] -= b;
        let names = data.locate(&x)?;
        common = Some(match common {
            None => names,
            Some(prev) => prev.into_iter().filter(|n| names.contains(n)).collect(),
        });
        triples.push((a, b, x));
    }
    let vars = ["a", "b", "t"];
    let monomials: Vec<Vec<u32>> = [[0, 0], [1, 0], [0, 1]]
        .iter()
        .flat_map(|ab| (0..=3).map(move |m| vec![ab[0], ab[1], m]))
        .collect();
    let mut samples = Vec::new();
    for (a, b, x) in &triples {
        if !lr3::is_partition_triple(x) {
            return Err(Error::Parse(format!("perturbation ({a},{b}) leaves the partitions")));
        }
        for t in 1..=7i64 {
            let part = |s: &[i64]| Partition::new(s.iter().map(|&v| (v * t) as u32).collect()).expect("checked");
            let c = hive_count(&HiveBoundary::new(k, &part(&x[..3]), &part(&x[3..6]), &part(&x[6..]))?);
            samples.push((vec![q(*a), q(*b), q(t)], q(c as i64)));
        }
    }
    Ok(StableStretchReport {
        common_cones: common.unwrap_or_default(),
        polynomial: fit_with_monomials(&samples, &vars, &monomials)?,
    })
}
