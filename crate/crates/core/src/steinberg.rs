//! Steinberg's formula
//!
//! ```text
//! c_{λμ}^ν = Σ_{σ,τ ∈ 𝔖_k} (-1)^{inv(στ)} K(σ(λ+δ) + τ(μ+δ) - (ν+2δ))
//! ```
//!
//! together with the hyperplane arrangement on which its terms change
//! chamber, region fingerprints, and per-region polynomial recovery.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use crate::exactla::{fit_poly, frac, q, MatrixQ, MultiPolyQ, Rational};
use crate::hive::{hive_count, HiveBoundary};
use crate::kostant::{kostant_count, kostant_count_int, ChamberPoly};
use crate::typea::{self, act, bar, conjugates_of_fundamental_weights, Partition, Permutation, Weight};
use crate::{binomial, Error, Result};

fn check_sums(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<()> {
    let (l, m, n) = (lambda.size(), mu.size(), nu.size());
    if l + m != n {
        return Err(Error::SumMismatch { lhs: l + m, rhs: n });
    }
    Ok(())
}

/// `2δ = (k-1, k-3, …, 1-k)`, integral for every `k`.
fn two_delta(k: usize) -> Vec<i64> {
    (0..k).map(|i| k as i64 - 1 - 2 * i as i64).collect()
}

/// The Kostant arguments `σ(λ+δ) + τ(μ+δ) - (ν+2δ)` for all `(σ, τ)` in
/// lexicographic order, with their signs. The points are integral even when
/// `δ` is not.
fn steinberg_points(lambda: &[i64], mu: &[i64], nu: &[i64]) -> Vec<(i64, Vec<i64>)> {
    let k = lambda.len();
    let d2 = two_delta(k);
    let perms = Permutation::all(k);
    let mut out = Vec::with_capacity(perms.len() * perms.len());
    for s in &perms {
        let sl: Vec<i64> = s.apply(&lambda.iter().zip(&d2).map(|(a, d)| 2 * a + d).collect::<Vec<_>>());
        for t in &perms {
            let tm = t.apply(&mu.iter().zip(&d2).map(|(a, d)| 2 * a + d).collect::<Vec<_>>());
            let p: Vec<i64> = (0..k)
                .map(|i| {
                    let twice = sl[i] + tm[i] - 2 * nu[i] - 2 * d2[i];
                    debug_assert_eq!(twice % 2, 0);
                    twice / 2
                })
                .collect();
            out.push((s.sign() * t.sign(), p));
        }
    }
    out
}

/// `c_{λμ}^ν` from Steinberg's formula with integer weights.
pub fn steinberg_count(lambda: &Partition, mu: &Partition, nu: &Partition, k: usize) -> Result<i64> {
    check_sums(lambda, mu, nu)?;
    let (l, m, n) = (lambda.padded(k)?, mu.padded(k)?, nu.padded(k)?);
    Ok(steinberg_points(&l, &m, &n)
        .into_iter()
        .map(|(sign, p)| sign * kostant_count_int(&p) as i64)
        .sum())
}

/// The same double sum over the barred (`sl_k`) weights, evaluated with
/// rational arithmetic and the Weyl action on [`Weight`]s.
pub fn steinberg_count_sl(lambda: &Partition, mu: &Partition, nu: &Partition, k: usize) -> Result<i64> {
    check_sums(lambda, mu, nu)?;
    let delta = typea::delta(k);
    let two = q(2);
    let lb = bar(lambda, k)?.add(&delta);
    let mb = bar(mu, k)?.add(&delta);
    let nb = bar(nu, k)?.add(&delta.scale(&two));
    let perms = Permutation::all(k);
    let mut total = 0i64;
    for s in &perms {
        let sl = act(s, &lb)?;
        for t in &perms {
            let point = sl.add(&act(t, &mb)?).sub(&nb);
            let sign = if (s.compose(t)).inversions() % 2 == 0 { 1 } else { -1 };
            total += sign * kostant_count(k, &point)? as i64;
        }
    }
    Ok(total)
}

/// `⟨σ(λ) + τ(μ) - ν, θ(ω_j)⟩ = ⟨2δ - σ(δ) - τ(δ), θ(ω_j)⟩`.
///
/// The normal is written on the `3k` coordinates `(λ | μ | ν)`; it is
/// orthogonal to `(𝟏 | 𝟏 | -𝟏)`, so it is also its own restriction to the
/// subspace `|λ| + |μ| = |ν|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergHyperplane {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub theta: Permutation,
    /// Fundamental-weight index, `1 ≤ j ≤ k - 1`.
    pub j: usize,
    pub normal: Vec<Rational>,
    pub shift: Rational,
}

impl SteinbergHyperplane {
    /// Divides normal and shift by the first nonzero normal coefficient.
    pub fn normalized(&self) -> (Vec<Rational>, Rational) {
        let lead = self
            .normal
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .unwrap_or_else(Rational::one);
        (self.normal.iter().map(|x| x / &lead).collect(), &self.shift / &lead)
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        let lhs: Rational = self.normal.iter().zip(point).map(|(a, b)| a * b).sum();
        lhs == self.shift
    }
}

/// All tuples `(σ, τ, θ, j)` without deduplication.
pub fn all_hyperplanes(k: usize) -> Vec<SteinbergHyperplane> {
    let perms = Permutation::all(k);
    let delta = typea::delta(k);
    let two_delta = delta.scale(&q(2));
    let mut out = Vec::new();
    for sigma in &perms {
        let sd = act(sigma, &delta).expect("length k");
        for tau in &perms {
            let td = act(tau, &delta).expect("length k");
            let offset = two_delta.sub(&sd).sub(&td);
            for theta in &perms {
                for j in 1..k {
                    let w = act(theta, &typea::fundamental_weight(k, j)).expect("length k");
                    let mut normal = Vec::with_capacity(3 * k);
                    normal.extend((0..k).map(|m| w.coords[sigma.image(m)].clone()));
                    normal.extend((0..k).map(|m| w.coords[tau.image(m)].clone()));
                    normal.extend(w.coords.iter().map(|x| -x));
                    out.push(SteinbergHyperplane {
                        sigma: sigma.clone(),
                        tau: tau.clone(),
                        theta: theta.clone(),
                        j,
                        normal,
                        shift: offset.dot(&w),
                    });
                }
            }
        }
    }
    out
}

/// Distinct hyperplanes of the arrangement, first representative kept.
pub fn enumerate_hyperplanes(k: usize) -> Vec<SteinbergHyperplane> {
    let mut seen = HashSet::new();
    all_hyperplanes(k)
        .into_iter()
        .filter(|h| seen.insert(h.normalized()))
        .collect()
}

/// `|⟨2δ - σδ - τδ, w⟩| ≤ ‖2δ - σδ - τδ‖₁ · max|w_i| ≤ 4‖δ‖₁ · (k-1)/k`.
pub fn shift_bound(k: usize) -> Rational {
    let l1: Rational = typea::delta(k).coords.iter().map(|x| x.abs()).sum();
    l1 * q(4) * frac(k as i64 - 1, k as i64)
}

/// Subsets `S` with `w = 𝟏_S - (|S|/k)𝟏` for each wall normal `w`, in the
/// sorted order of [`conjugates_of_fundamental_weights`]. On zero-sum
/// vectors `⟨P, w⟩` is the subset sum of `P` over `S`.
pub fn wall_subsets(k: usize) -> Vec<Vec<usize>> {
    conjugates_of_fundamental_weights(k)
        .iter()
        .map(|w| (0..k).filter(|&i| w.coords[i].is_positive()).collect())
        .collect()
}

fn raw_signs(lambda: &[i64], mu: &[i64], nu: &[i64], subsets: &[Vec<usize>]) -> Vec<i8> {
    steinberg_points(lambda, mu, nu)
        .iter()
        .flat_map(|(_, p)| {
            subsets.iter().map(move |s| {
                let v: i64 = s.iter().map(|&i| p[i]).sum();
                v.signum() as i8
            })
        })
        .collect()
}

/// No Steinberg point lies on a wall.
pub fn is_generic(lambda: &Partition, mu: &Partition, nu: &Partition, k: usize) -> Result<bool> {
    let (l, m, n) = (lambda.padded(k)?, mu.padded(k)?, nu.padded(k)?);
    Ok(raw_signs(&l, &m, &n, &wall_subsets(k)).iter().all(|&s| s != 0))
}

/// Signs of `⟨σ(λ+δ) + τ(μ+δ) - (ν+2δ), w⟩` indexed by `(σ, τ, w)` with
/// permutations in lexicographic order and walls sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeSignature {
    pub k: usize,
    pub signs: Vec<i8>,
}

impl TypeSignature {
    fn walls(&self) -> usize {
        (1usize << self.k) - 2
    }

    fn perms(&self) -> usize {
        (1..=self.k).product()
    }

    pub fn entry(&self, sigma: usize, tau: usize, wall: usize) -> i8 {
        self.signs[(sigma * self.perms() + tau) * self.walls() + wall]
    }

    /// The signature of `(μ, λ, ν)`.
    pub fn swapped(&self) -> TypeSignature {
        let (p, w) = (self.perms(), self.walls());
        let mut signs = Vec::with_capacity(self.signs.len());
        for s in 0..p {
            for t in 0..p {
                signs.extend((0..w).map(|x| self.entry(t, s, x)));
            }
        }
        TypeSignature { k: self.k, signs }
    }

    /// Sign characters `+`, `-`, `0` concatenated.
    pub fn text(&self) -> String {
        self.signs
            .iter()
            .map(|s| match s {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }

    /// Lowercase hex SHA-256 of [`TypeSignature::text`].
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.text().as_bytes()))
    }
}

pub fn type_signature(lambda: &Partition, mu: &Partition, nu: &Partition, k: usize) -> Result<TypeSignature> {
    check_sums(lambda, mu, nu)?;
    let (l, m, n) = (lambda.padded(k)?, mu.padded(k)?, nu.padded(k)?);
    let signs = raw_signs(&l, &m, &n, &wall_subsets(k));
    if signs.contains(&0) {
        return Err(Error::NotGeneric);
    }
    Ok(TypeSignature { k, signs })
}

/// `λ1..λk, μ1..μk, ν1..νk`.
pub fn coordinate_names(k: usize) -> Vec<String> {
    ["λ", "μ", "ν"]
        .iter()
        .flat_map(|s| (1..=k).map(move |i| format!("{s}{i}")))
        .collect()
}

/// The coordinates with `μ_k` dropped; polynomials on `|λ| + |μ| = |ν|` are
/// written in these.
pub fn chart_names(k: usize) -> Vec<String> {
    let mut names = coordinate_names(k);
    names.remove(2 * k - 1);
    names
}

/// Each of the `3k` coordinates as an affine polynomial in the chart, with
/// `μ_k = Σν - Σλ - Σ_{t<k} μ_t`.
pub fn coordinates_in_chart(k: usize) -> Vec<MultiPolyQ> {
    let vars = chart_names(k);
    let var = |i: usize| MultiPolyQ::variable(&vars, i);
    (0..3 * k)
        .map(|c| match c {
            c if c < 2 * k - 1 => var(c),
            c if c == 2 * k - 1 => {
                let coeffs: Vec<Rational> = (0..3 * k - 1)
                    .map(|v| if v >= 2 * k - 1 { q(1) } else { q(-1) })
                    .collect();
                MultiPolyQ::affine(&vars, q(0), &coeffs)
            }
            c => var(c - 1),
        })
        .collect()
}

/// Rewrites a polynomial in the `3k` coordinates into the chart.
pub fn to_chart(p: &MultiPolyQ, k: usize) -> MultiPolyQ {
    p.compose(&coordinates_in_chart(k))
}

fn chart_point(x: &[i64], k: usize) -> Vec<Rational> {
    x.iter()
        .enumerate()
        .filter(|&(i, _)| i != 2 * k - 1)
        .map(|(_, &v)| q(v))
        .collect()
}

fn is_partition_triple(x: &[i64], k: usize) -> bool {
    x.chunks(k)
        .all(|b| b.iter().all(|&v| v >= 0) && b.windows(2).all(|w| w[0] >= w[1]))
}

fn to_partitions(x: &[i64], k: usize) -> (Partition, Partition, Partition) {
    let p = |b: &[i64]| Partition::new(b.iter().map(|&v| v as u32).collect()).expect("checked");
    (p(&x[..k]), p(&x[k..2 * k]), p(&x[2 * k..]))
}

/// Unit moves preserving `|λ| + |μ| - |ν|`: `e_a - e_b` inside one side,
/// `±(e_a + e_b)` across the `(λ, μ)` and `ν` sides.
fn unit_moves(k: usize) -> Vec<Vec<i64>> {
    let n = 3 * k;
    let side = |a: usize| a < 2 * k;
    let mut moves = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut v = vec![0; n];
            if side(a) == side(b) {
                v[a] = 1;
                v[b] = -1;
                moves.push(v);
            } else if a < b {
                v[a] = 1;
                v[b] = 1;
                moves.push(v.clone());
                moves.push(v.iter().map(|x| -x).collect());
            }
        }
    }
    moves
}

/// Lattice triples with the seed's signature, nearest first.
pub fn same_region_neighbours(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    k: usize,
    wanted: usize,
) -> Result<Vec<Vec<i64>>> {
    let seed_sig = type_signature(lambda, mu, nu, k)?;
    let subsets = wall_subsets(k);
    let seed = [lambda.padded(k)?, mu.padded(k)?, nu.padded(k)?].concat();
    let moves = unit_moves(k);
    let mut queue = VecDeque::from([seed.clone()]);
    let mut seen = HashSet::from([seed]);
    let mut found = Vec::new();
    let budget = 400 * wanted.max(1);
    while let Some(x) = queue.pop_front() {
        found.push(x.clone());
        if found.len() == wanted {
            return Ok(found);
        }
        for m in &moves {
            let y: Vec<i64> = x.iter().zip(m).map(|(a, b)| a + b).collect();
            if seen.len() >= budget || !is_partition_triple(&y, k) || !seen.insert(y.clone()) {
                continue;
            }
            let signs = raw_signs(&y[..k], &y[k..2 * k], &y[2 * k..], &subsets);
            if signs == seed_sig.signs {
                queue.push_back(y);
            }
        }
    }
    Err(Error::InsufficientSamples {
        found: found.len(),
        needed: wanted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionFit {
    /// Polynomial in [`chart_names`].
    pub polynomial: MultiPolyQ,
    pub verified: bool,
    pub fit_points: usize,
    pub held_out: usize,
    pub signature_digest: String,
}

/// Collects `samples` lattice triples sharing the seed's signature, fits a
/// polynomial of degree `≤ C(k-1, 2)` on part of them and checks it
/// against hive counts on the rest.
pub fn verify_region_polynomial(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    k: usize,
    samples: usize,
) -> Result<RegionFit> {
    let degree = binomial(k - 1, 2) as u32;
    let vars = chart_names(k);
    let monomials = binomial(vars.len() + degree as usize, degree as usize);
    let points = spanning_first(same_region_neighbours(lambda, mu, nu, k, samples)?);
    let fit_points = (samples / 2).max(monomials + 2);
    if fit_points >= points.len() {
        return Err(Error::InsufficientSamples {
            found: points.len(),
            needed: fit_points + 1,
        });
    }
    let count = |x: &[i64]| {
        let (l, m, n) = to_partitions(x, k);
        q(hive_count(&HiveBoundary::new(k, &l, &m, &n).expect("k parts")) as i64)
    };
    let data: Vec<(Vec<Rational>, Rational)> = points[..fit_points]
        .iter()
        .map(|x| (chart_point(x, k), count(x)))
        .collect();
    let polynomial = fit_poly(&data, &vars, degree)?
        .ok_or_else(|| Error::FitFailed(format!("no degree-{degree} polynomial on the region of {lambda}|{mu}|{nu}")))?;
    let verified = points[fit_points..]
        .iter()
        .all(|x| polynomial.eval(&chart_point(x, k)) == count(x));
    Ok(RegionFit {
        polynomial,
        verified,
        fit_points,
        held_out: points.len() - fit_points,
        signature_digest: type_signature(lambda, mu, nu, k)?.digest(),
    })
}

/// Reorders points so that an affinely independent subset of maximal size
/// comes first. Breadth-first neighbours can sit on a hyperplane for a
/// while before the search reaches the region's remaining direction.
fn spanning_first(points: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let lift = |x: &[i64]| x.iter().map(|&v| q(v)).chain([q(1)]).collect::<Vec<_>>();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let (mut head, mut tail) = (Vec::new(), Vec::new());
    for x in points {
        basis.push(lift(&x));
        if MatrixQ::from_rows(basis.clone()).rank() == basis.len() {
            head.push(x);
        } else {
            basis.pop();
            tail.push(x);
        }
    }
    head.extend(tail);
    head
}

/// The region polynomial assembled term by term: each Steinberg point is
/// located in a Kostant region at the seed, and that region's polynomial is
/// pulled back along the affine map `(λ, μ, ν) ↦ σ(λ+δ) + τ(μ+δ) - (ν+2δ)`.
/// `chambers` must come from `kostant_chambers(k - 1)`.
pub fn assemble_region_polynomial(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    k: usize,
    chambers: &[ChamberPoly],
) -> Result<MultiPolyQ> {
    if !is_generic(lambda, mu, nu, k)? {
        return Err(Error::NotGeneric);
    }
    let (l, m, n) = (lambda.padded(k)?, mu.padded(k)?, nu.padded(k)?);
    let vars = chart_names(k);
    let coords = coordinates_in_chart(k);
    let (lc, rest) = coords.split_at(k);
    let (mc, nc) = rest.split_at(k);
    let d2 = two_delta(k);
    let perms = Permutation::all(k);
    let mut total = MultiPolyQ::zero(&vars);
    let mut points = steinberg_points(&l, &m, &n).into_iter();
    for s in &perms {
        let (si, sd) = (s.inverse(), s.apply(&d2));
        for t in &perms {
            let (sign, p) = points.next().expect("one point per pair");
            let c: Vec<i64> = p
                .iter()
                .scan(0, |acc, x| {
                    *acc += x;
                    Some(*acc)
                })
                .take(k - 1)
                .collect();
            if c.iter().any(|&x| x < 0) {
                continue;
            }
            let chamber = chambers
                .iter()
                .find(|ch| ch.contains_in_interior(&c))
                .ok_or(Error::NotGeneric)?;
            let (ti, td) = (t.inverse(), t.apply(&d2));
            let affine: Vec<MultiPolyQ> = (0..k)
                .map(|i| {
                    let shift = frac(sd[i] + td[i] - 2 * d2[i], 2);
                    lc[si.image(i)]
                        .add(&mc[ti.image(i)])
                        .sub(&nc[i])
                        .add(&MultiPolyQ::constant(&vars, shift))
                })
                .collect();
            let simple: Vec<MultiPolyQ> = (0..k - 1)
                .map(|i| affine[..=i].iter().fold(MultiPolyQ::zero(&vars), |acc, a| acc.add(a)))
                .collect();
            total = total.add(&chamber.polynomial.compose(&simple).scale(&q(sign)));
        }
    }
    Ok(total)
}

/// Convenience: the Steinberg points of a triple as weights.
pub fn kostant_arguments(lambda: &Partition, mu: &Partition, nu: &Partition, k: usize) -> Result<Vec<(i64, Weight)>> {
    let (l, m, n) = (lambda.padded(k)?, mu.padded(k)?, nu.padded(k)?);
    Ok(steinberg_points(&l, &m, &n)
        .into_iter()
        .map(|(s, p)| (s, Weight::from_ints(&p)))
        .collect())
}
