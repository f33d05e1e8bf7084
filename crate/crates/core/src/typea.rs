//! Type-A root data: partitions, weights in `e_i` coordinates, the
//! symmetric-group action, fundamental weights and `δ`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::exactla::{frac, q, Rational};
use crate::{Error, Result};

/// A partition. Trailing zeros are dropped on construction, so equality is
/// taken modulo trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`
    pub fn size(&self) -> i64 {
        self.parts.iter().map(|&p| i64::from(p)).sum()
    }

    /// `l(λ)`, the number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// The parts padded with zeros to length `k`.
    pub fn padded(&self, k: usize) -> Result<Vec<i64>> {
        if self.length() > k {
            return Err(Error::TooManyParts {
                partition: self.to_string(),
                k,
            });
        }
        let mut v: Vec<i64> = self.parts.iter().map(|&p| i64::from(p)).collect();
        v.resize(k, 0);
        Ok(v)
    }

    /// Whether the Young diagram of `self` lies inside that of `outer`.
    pub fn is_contained_in(&self, outer: &Partition) -> bool {
        self.length() <= outer.length() && self.parts.iter().zip(&outer.parts).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, n: u32) -> Partition {
        Partition {
            parts: if n == 0 {
                Vec::new()
            } else {
                self.parts.iter().map(|&p| p * n).collect()
            },
        }
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=first)
                .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        }
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"2,1,0"`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().join(","))
    }
}

/// Smallest `k` that fits all the given partitions.
pub fn common_length(ps: &[&Partition]) -> usize {
    ps.iter().map(|p| p.length()).max().unwrap_or(0)
}

/// A vector of rationals in `e_i` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight::new(v.iter().map(|&x| q(x)).collect())
    }

    pub fn zero(k: usize) -> Self {
        Weight::new(vec![Rational::zero(); k])
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn sum(&self) -> Rational {
        self.coords.iter().sum()
    }

    pub fn dot(&self, other: &Weight) -> Rational {
        assert_eq!(self.len(), other.len(), "length mismatch");
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.len(), other.len(), "length mismatch");
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.len(), other.len(), "length mismatch");
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight::new(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(&-Rational::one())
    }

    /// Coordinates in the simple-root basis: `c_i = w_1 + … + w_i`, for
    /// `i < k`. Only meaningful when the coordinate sum is zero.
    pub fn to_simple_root_coords(&self) -> Vec<Rational> {
        let mut acc = Rational::zero();
        self.coords[..self.len().saturating_sub(1)]
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }

    /// Inverse of [`Weight::to_simple_root_coords`].
    pub fn from_simple_root_coords(c: &[Rational]) -> Weight {
        let k = c.len() + 1;
        let zero = Rational::zero();
        Weight::new(
            (0..k)
                .map(|i| {
                    let cur = c.get(i).unwrap_or(&zero);
                    let prev = if i == 0 { &zero } else { &c[i - 1] };
                    cur - prev
                })
                .collect(),
        )
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(crate::exactla::rational_to_string).collect();
        write!(f, "({})", c.join(","))
    }
}

/// A permutation of `{0, …, k-1}` in one-line form (`p[i]` is the image of `i`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (0..k).collect(),
        }
    }

    /// From zero-based one-line form.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(images));
            }
        }
        Ok(Permutation { images })
    }

    /// From the usual one-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(one_based: &[usize]) -> Result<Self> {
        if one_based.contains(&0) {
            return Err(Error::InvalidPermutation(one_based.to_vec()));
        }
        Self::new(one_based.iter().map(|&i| i - 1).collect())
    }

    /// All of `𝔖_k`, lexicographic on one-line forms.
    pub fn all(k: usize) -> Vec<Permutation> {
        (0..k)
            .permutations(k)
            .map(|images| Permutation { images })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Permutation { images: inv }
    }

    pub fn inversions(&self) -> usize {
        self.images
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| a > b)
            .count()
    }

    /// `(-1)^inv`
    pub fn sign(&self) -> i64 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Applies the permutation to a slice so that `e_i ↦ e_{p(i)}`:
    /// `result[p(i)] = v[i]`.
    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.len());
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.images[i]] = x.clone();
        }
        out
    }
}

/// `p · w` with `e_i ↦ e_{p(i)}`.
pub fn act(p: &Permutation, w: &Weight) -> Result<Weight> {
    if p.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: w.len(),
        });
    }
    Ok(Weight::new(p.apply(&w.coords)))
}

pub fn inversions(p: &Permutation) -> usize {
    p.inversions()
}

/// Root data of `sl_k` (type `A_{k-1}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub k: usize,
    pub simple_roots: Vec<Weight>,
    /// `e_i - e_j` for `i < j`, ordered by `(i, j)`.
    pub positive_roots: Vec<Weight>,
    pub fundamental_weights: Vec<Weight>,
    pub delta: Weight,
}

fn unit_difference(k: usize, i: usize, j: usize) -> Weight {
    let mut v = vec![Rational::zero(); k];
    v[i] = Rational::one();
    v[j] = -Rational::one();
    Weight::new(v)
}

/// `ω_i = (1/k)(k-i, …, k-i, -i, …, -i)` with `i` leading entries (1-based `i`).
pub fn fundamental_weight(k: usize, i: usize) -> Weight {
    let (k_, i_) = (k as i64, i as i64);
    Weight::new(
        (0..k)
            .map(|t| if t < i { frac(k_ - i_, k_) } else { frac(-i_, k_) })
            .collect(),
    )
}

/// `δ = ½(k-1, k-3, …, -(k-1))`; also defined for `k = 1`.
pub fn delta(k: usize) -> Weight {
    Weight::new(
        (0..k)
            .map(|t| frac(k as i64 - 1 - 2 * t as i64, 2))
            .collect(),
    )
}

pub fn build(k: usize) -> Result<RootSystemData> {
    if k < 2 {
        return Err(Error::InvalidRank {
            got: k,
            expected: "k >= 2",
        });
    }
    let simple_roots = (0..k - 1).map(|i| unit_difference(k, i, i + 1)).collect();
    let positive_roots = (0..k)
        .tuple_combinations()
        .map(|(i, j)| unit_difference(k, i, j))
        .collect();
    let fundamental_weights = (1..k).map(|i| fundamental_weight(k, i)).collect();
    Ok(RootSystemData {
        k,
        simple_roots,
        positive_roots,
        fundamental_weights,
        delta: delta(k),
    })
}

/// `λ̄ = λ - (|λ|/k)·𝟏_k`.
pub fn bar(lambda: &Partition, k: usize) -> Result<Weight> {
    let v = lambda.padded(k)?;
    let mean = frac(lambda.size(), k as i64);
    Ok(Weight::new(v.iter().map(|&x| q(x) - &mean).collect()))
}

/// The union of the `𝔖_k`-orbits of `ω_1, …, ω_{k-1}`, sorted and deduplicated.
pub fn conjugates_of_fundamental_weights(k: usize) -> Vec<Weight> {
    let mut set = BTreeSet::new();
    let perms = Permutation::all(k);
    for i in 1..k {
        let w = fundamental_weight(k, i);
        for p in &perms {
            set.insert(Weight::new(p.apply(&w.coords)));
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k3_delta_and_first_fundamental_weight() {
        let r = build(3).unwrap();
        assert_eq!(r.delta, Weight::from_ints(&[1, 0, -1]));
        assert_eq!(
            r.fundamental_weights[0],
            Weight::new(vec![frac(2, 3), frac(-1, 3), frac(-1, 3)])
        );
        assert_eq!(r.positive_roots.len(), 3);
    }

    #[test]
    fn k2_positive_roots() {
        let r = build(2).unwrap();
        assert_eq!(r.positive_roots, vec![Weight::from_ints(&[1, -1])]);
        assert!(build(1).is_err());
    }

    #[test]
    fn root_data_invariants_up_to_k6() {
        for k in 2..=6 {
            let r = build(k).unwrap();
            for (i, a) in r.simple_roots.iter().enumerate() {
                for (j, w) in r.fundamental_weights.iter().enumerate() {
                    let expect = if i == j { Rational::one() } else { Rational::zero() };
                    assert_eq!(a.dot(w), expect, "k={k} i={i} j={j}");
                }
            }
            let half_sum = r
                .positive_roots
                .iter()
                .fold(Weight::zero(k), |acc, a| acc.add(a))
                .scale(&frac(1, 2));
            assert_eq!(half_sum, r.delta);
            let omega_sum = r
                .fundamental_weights
                .iter()
                .fold(Weight::zero(k), |acc, w| acc.add(w));
            assert_eq!(omega_sum, r.delta);
            assert!(r.positive_roots.iter().all(|a| a.sum().is_zero()));
            assert_eq!(r.positive_roots.len(), k * (k - 1) / 2);
        }
    }

    #[test]
    fn bar_examples() {
        let p: Partition = "2,1,0".parse().unwrap();
        assert_eq!(bar(&p, 3).unwrap(), Weight::from_ints(&[1, 0, -1]));
        assert_eq!(bar(&Partition::empty(), 2).unwrap(), Weight::from_ints(&[0, 0]));
        let p: Partition = "3,3,3".parse().unwrap();
        assert_eq!(bar(&p, 3).unwrap(), Weight::from_ints(&[0, 0, 0]));
        let p: Partition = "1,1,1,1".parse().unwrap();
        assert!(matches!(bar(&p, 3), Err(Error::TooManyParts { .. })));
    }

    #[test]
    fn action_examples() {
        let w = Weight::from_ints(&[1, 0, -1]);
        assert_eq!(act(&Permutation::identity(3), &w).unwrap(), w);
        let swap = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        assert_eq!(act(&swap, &w).unwrap(), Weight::from_ints(&[0, 1, -1]));
        assert!(act(&swap, &Weight::from_ints(&[1, 2])).is_err());
        // e_1 ↦ e_{p(1)}
        let cyc = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(
            act(&cyc, &Weight::from_ints(&[1, 0, 0])).unwrap(),
            Weight::from_ints(&[0, 1, 0])
        );
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(Permutation::identity(4).inversions(), 0);
        assert_eq!(Permutation::from_one_line(&[3, 2, 1]).unwrap().inversions(), 3);
        assert_eq!(Permutation::from_one_line(&[2, 1, 3]).unwrap().inversions(), 1);
        assert!(Permutation::from_one_line(&[1, 1, 2]).is_err());
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(3)[0], Permutation::identity(3));
    }

    #[test]
    fn conjugates_small_k() {
        let c2 = conjugates_of_fundamental_weights(2);
        assert_eq!(
            c2,
            vec![
                Weight::new(vec![frac(-1, 2), frac(1, 2)]),
                Weight::new(vec![frac(1, 2), frac(-1, 2)]),
            ]
        );
        let c3 = conjugates_of_fundamental_weights(3);
        assert_eq!(c3.len(), 6);
        assert!(c3.iter().all(|w| w.sum().is_zero()));
        // 2^k - 2 nonempty proper subsets in general
        assert_eq!(conjugates_of_fundamental_weights(4).len(), 14);
    }

    #[test]
    fn partition_parsing_and_equality() {
        let a: Partition = "2,1,0".parse().unwrap();
        let b: Partition = "2,1".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "2,1");
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("1,-1".parse::<Partition>().is_err());
        assert_eq!(a.padded(4).unwrap(), vec![2, 1, 0, 0]);
        assert_eq!(a.conjugate(), b);
        let c: Partition = "3,1".parse().unwrap();
        assert_eq!(c.conjugate(), "2,1,1".parse().unwrap());
        assert!(b.is_contained_in(&c));
        assert!(!c.is_contained_in(&b));
    }

    #[test]
    fn simple_root_coordinates_round_trip() {
        let w = Weight::from_ints(&[2, -1, 0, -1]);
        let c = w.to_simple_root_coords();
        assert_eq!(c, vec![q(2), q(1), q(1)]);
        assert_eq!(Weight::from_simple_root_coords(&c), w);
    }

    fn perm(k: usize) -> impl Strategy<Value = Permutation> {
        Just((0..k).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn action_is_a_left_action(
            (p, r, w) in (1usize..6).prop_flat_map(|k| (
                perm(k),
                perm(k),
                proptest::collection::vec(-5i64..6, k),
            ))
        ) {
            let w = Weight::from_ints(&w);
            let lhs = act(&p, &act(&r, &w).unwrap()).unwrap();
            let rhs = act(&p.compose(&r), &w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bar_has_zero_sum(parts in proptest::collection::vec(0u32..9, 0..6), extra in 0usize..3) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let p = Partition::new(parts).unwrap();
            let k = p.length().max(1) + extra;
            prop_assert!(bar(&p, k).unwrap().sum().is_zero());
        }

        #[test]
        fn action_preserves_multiset((p, w) in (1usize..6).prop_flat_map(|k| (perm(k), proptest::collection::vec(-5i64..6, k)))) {
            let w = Weight::from_ints(&w);
            let mut a = act(&p, &w).unwrap().coords;
            let mut b = w.coords.clone();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }
}
