//! The chamber complex of `c_{λμ}^ν` for partitions with at most three
//! parts: eleven rays, eighteen simplicial cones (in the eight-dimensional
//! space `|λ| + |μ| = |ν|`), and an affine polynomial on each.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::exactla::{q, rational_to_string, solve_nonneg_combination, MatrixQ, MultiPolyQ, Rational};
use crate::hive::{hive_count, HiveBoundary};
use crate::steinberg::{coordinate_names, steinberg_count};
use crate::typea::Partition;
use crate::{Error, Result};

/// Coordinates are `(λ1 λ2 λ3 | μ1 μ2 μ3 | ν1 ν2 ν3)`.
pub type Point = [i64; 9];

const RAYS: [(&str, Point); 11] = [
    ("a1", [1, 1, 1, 0, 0, 0, 1, 1, 1]),
    ("a2", [0, 0, 0, 1, 1, 1, 1, 1, 1]),
    ("b", [2, 1, 0, 2, 1, 0, 3, 2, 1]),
    ("c", [1, 1, 0, 1, 1, 0, 2, 1, 1]),
    ("d1", [1, 1, 0, 1, 0, 0, 1, 1, 1]),
    ("d2", [1, 0, 0, 1, 1, 0, 1, 1, 1]),
    ("e1", [1, 1, 0, 0, 0, 0, 1, 1, 0]),
    ("e2", [0, 0, 0, 1, 1, 0, 1, 1, 0]),
    ("f", [1, 0, 0, 1, 0, 0, 1, 1, 0]),
    ("g1", [1, 0, 0, 0, 0, 0, 1, 0, 0]),
    ("g2", [0, 0, 0, 1, 0, 0, 1, 0, 0]),
];

const CONES: [(&str, [&str; 8], &str); 18] = [
    ("κ1", ["a1", "a2", "b", "c", "d1", "d2", "e1", "e2"], "1 - λ2 - μ2 + ν1"),
    ("κ2", ["a1", "a2", "b", "c", "d1", "d2", "g1", "g2"], "1 + ν2 - ν3"),
    ("κ3", ["a1", "a2", "b", "c", "e1", "e2", "g1", "g2"], "1 + λ1 + μ1 - ν1"),
    ("κ4", ["a1", "a2", "b", "d1", "d2", "e1", "e2", "f"], "1 + ν1 - ν2"),
    ("κ5", ["a1", "a2", "b", "d1", "d2", "f", "g1", "g2"], "1 + λ2 + μ2 - ν3"),
    ("κ6", ["a1", "a2", "b", "e1", "e2", "f", "g1", "g2"], "1 - λ3 - μ3 + ν3"),
    ("κ7", ["a1", "a2", "b", "c", "d1", "d2", "e1", "g1"], "1 + λ3 + μ1 - ν3"),
    ("κ8", ["a1", "a2", "b", "c", "d1", "d2", "e2", "g2"], "1 + λ1 + μ3 - ν3"),
    ("κ9", ["a1", "a2", "b", "c", "d1", "e1", "e2", "g2"], "1 + λ1 - λ2"),
    ("κ10", ["a1", "a2", "b", "c", "d2", "e1", "e2", "g1"], "1 + μ1 - μ2"),
    ("κ11", ["a1", "a2", "b", "c", "d1", "e1", "g1", "g2"], "1 - λ2 - μ3 + ν2"),
    ("κ12", ["a1", "a2", "b", "c", "d2", "e2", "g1", "g2"], "1 - λ3 - μ2 + ν2"),
    ("κ13", ["a1", "a2", "b", "d1", "d2", "e1", "f", "g1"], "1 - λ1 - μ3 + ν1"),
    ("κ14", ["a1", "a2", "b", "d1", "d2", "e2", "f", "g2"], "1 - λ3 - μ1 + ν1"),
    ("κ15", ["a1", "a2", "b", "d1", "e1", "f", "g1", "g2"], "1 + μ2 - μ3"),
    ("κ16", ["a1", "a2", "b", "d2", "e2", "f", "g1", "g2"], "1 + λ2 - λ3"),
    ("κ17", ["a1", "a2", "b", "d1", "e1", "e2", "f", "g2"], "1 + λ1 + μ2 - ν2"),
    ("κ18", ["a1", "a2", "b", "d2", "e1", "e2", "f", "g1"], "1 + λ2 + μ1 - ν2"),
];

/// Rows κ13 and κ14 circulate with `ν3` where `ν1` belongs. That form
/// vanishes at `b`, which lies in every cone and has coefficient 2, and
/// disagrees with hive counts throughout both cones. The table above holds
/// the corrected rows; this keeps the other form for comparison.
pub const ERRATA: [(&str, &str); 2] = [("κ13", "1 - λ1 - μ3 + ν3"), ("κ14", "1 - λ3 - μ1 + ν3")];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayK3 {
    pub name: &'static str,
    pub coords: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeK3 {
    pub name: &'static str,
    pub generators: [&'static str; 8],
    /// Affine polynomial in `λ1..λ3, μ1..μ3, ν1..ν3`.
    pub polynomial: MultiPolyQ,
}

/// The two ambient cones every valid triple lies in: containment with the
/// size condition, and the partition inequalities.
#[derive(Clone, Copy, Debug, Default)]
pub struct ValidityCones;

impl ValidityCones {
    /// `λ_i ≤ ν_i`, `μ_i ≤ ν_i`, `|λ| + |μ| = |ν|`.
    pub fn contains_first(&self, x: &Point) -> bool {
        (0..3).all(|i| x[i] <= x[6 + i] && x[3 + i] <= x[6 + i]) && sums_match(x)
    }

    /// Each block weakly decreasing and nonnegative.
    pub fn contains_second(&self, x: &Point) -> bool {
        is_partition_triple(x)
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.contains_first(x) && self.contains_second(x)
    }
}

pub fn sums_match(x: &[i64]) -> bool {
    x[..6].iter().sum::<i64>() == x[6..].iter().sum::<i64>()
}

pub fn is_partition_triple(x: &[i64]) -> bool {
    x.chunks(3).all(|b| b[2] >= 0 && b[0] >= b[1] && b[1] >= b[2])
}

/// `(λ | μ | ν) ↦ (μ | λ | ν)`.
pub fn swap_point(x: &Point) -> Point {
    let mut y = *x;
    y[..3].copy_from_slice(&x[3..6]);
    y[3..6].copy_from_slice(&x[..3]);
    y
}

pub fn swap_polynomial(p: &MultiPolyQ) -> MultiPolyQ {
    let vars = p.vars().to_vec();
    let subs: Vec<MultiPolyQ> = (0..9)
        .map(|i| MultiPolyQ::variable(&vars, swap_index(i)))
        .collect();
    p.compose(&subs)
}

fn swap_index(i: usize) -> usize {
    match i {
        0..=2 => i + 3,
        3..=5 => i - 3,
        _ => i,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Complex {
    pub rays: Vec<RayK3>,
    pub cones: Vec<ConeK3>,
}

/// The embedded complex.
pub fn load_k3() -> K3Complex {
    let vars = coordinate_names(3);
    K3Complex {
        rays: RAYS.iter().map(|&(name, coords)| RayK3 { name, coords }).collect(),
        cones: CONES
            .iter()
            .map(|&(name, generators, poly)| ConeK3 {
                name,
                generators,
                polynomial: MultiPolyQ::parse(&vars, poly).expect("embedded polynomial"),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub point: Point,
    pub polynomial: Rational,
    pub hive: u64,
    pub steinberg: i64,
    /// Other cones containing the point whose polynomial disagrees.
    pub conflicting_cones: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeVerification {
    pub cone: String,
    pub points_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl ConeVerification {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl K3Complex {
    pub fn ray(&self, name: &str) -> Option<&RayK3> {
        self.rays.iter().find(|r| r.name == name)
    }

    pub fn cone(&self, name: &str) -> Option<&ConeK3> {
        self.cones.iter().find(|c| c.name == name)
    }

    pub fn generators(&self, cone: &ConeK3) -> Vec<Point> {
        cone.generators
            .iter()
            .map(|g| self.ray(g).expect("known ray").coords)
            .collect()
    }

    fn generator_matrix(&self, cone: &ConeK3) -> MatrixQ {
        let cols: Vec<Vec<Rational>> = self
            .generators(cone)
            .iter()
            .map(|g| g.iter().map(|&x| q(x)).collect())
            .collect();
        MatrixQ::from_columns(9, &cols)
    }

    /// Load-time checks: ray sums, eight independent generators per cone,
    /// affine polynomials with integer coefficients and constant term one.
    pub fn validate(&self) -> Result<()> {
        let names: BTreeSet<&str> = self.rays.iter().map(|r| r.name).collect();
        if names.len() != self.rays.len() {
            return Err(Error::Parse("duplicate ray name".into()));
        }
        for r in &self.rays {
            if !sums_match(&r.coords) || !ValidityCones.contains(&r.coords) {
                return Err(Error::Parse(format!("ray {} is not a valid triple", r.name)));
            }
        }
        for c in &self.cones {
            if c.generators.iter().any(|g| !names.contains(g)) {
                return Err(Error::Parse(format!("cone {} names an unknown ray", c.name)));
            }
            let rank = self.generator_matrix(c).rank();
            if rank != 8 {
                return Err(Error::RankDeficient { rank, rows: 8 });
            }
            let (constant, linear) = c
                .polynomial
                .affine_parts()
                .ok_or_else(|| Error::Parse(format!("polynomial of {} is not affine", c.name)))?;
            if constant != q(1) || linear.iter().any(|x| !x.is_integer()) {
                return Err(Error::Parse(format!("polynomial of {} has unexpected coefficients", c.name)));
            }
        }
        Ok(())
    }

    /// Whether `point` lies in the closed cone (and in both validity cones).
    pub fn membership(&self, point: &Point, cone: &ConeK3) -> Result<bool> {
        if !sums_match(point) {
            let lhs = point[..6].iter().sum();
            return Err(Error::SumMismatch {
                lhs,
                rhs: point[6..].iter().sum(),
            });
        }
        if !ValidityCones.contains(point) {
            return Ok(false);
        }
        let target: Vec<Rational> = point.iter().map(|&x| q(x)).collect();
        Ok(solve_nonneg_combination(&self.generator_matrix(cone), &target).is_some())
    }

    /// Names of all cones containing the point.
    pub fn locate(&self, point: &[i64]) -> Result<Vec<String>> {
        let point: Point = point
            .try_into()
            .map_err(|_| Error::LengthMismatch { expected: 9, got: point.len() })?;
        let mut out = Vec::new();
        for c in &self.cones {
            if self.membership(&point, c)? {
                out.push(c.name.to_string());
            }
        }
        Ok(out)
    }

    /// The sum of all generators followed by random combinations with
    /// coefficients in `1..=5`.
    pub fn interior_points(&self, cone: &ConeK3, samples: usize, seed: u64) -> Vec<Point> {
        let gens = self.generators(cone);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let combine = |coeffs: &[i64]| -> Point {
            let mut p = [0; 9];
            for (g, c) in gens.iter().zip(coeffs) {
                for i in 0..9 {
                    p[i] += c * g[i];
                }
            }
            p
        };
        let mut out = vec![combine(&[1; 8])];
        while out.len() < samples {
            let coeffs: Vec<i64> = (0..8).map(|_| rng.gen_range(1..=5)).collect();
            out.push(combine(&coeffs));
        }
        out.truncate(samples.max(1));
        out
    }

    /// Compares the cone's polynomial with hive and Steinberg counts on
    /// interior lattice points, and with every other cone that also
    /// contains the point.
    pub fn verify_cone(&self, cone: &ConeK3, samples: usize, seed: u64) -> Result<ConeVerification> {
        let index = self.cones.iter().position(|c| c.name == cone.name).unwrap_or(0) as u64;
        let points = self.interior_points(cone, samples, seed.wrapping_mul(0x9e37_79b9).wrapping_add(index));
        let mut counterexamples = Vec::new();
        for point in &points {
            let value = cone.polynomial.eval_i64(point);
            let part = |s: &[i64]| Partition::new(s.iter().map(|&v| v as u32).collect()).expect("valid triple");
            let (l, m, n) = (part(&point[..3]), part(&point[3..6]), part(&point[6..]));
            let hive = hive_count(&HiveBoundary::new(3, &l, &m, &n)?);
            let steinberg = steinberg_count(&l, &m, &n, 3)?;
            let conflicting_cones: Vec<String> = self
                .locate(point)?
                .into_iter()
                .filter(|name| self.cone(name).expect("known cone").polynomial.eval_i64(point) != value)
                .collect();
            if value != q(hive as i64) || value != q(steinberg) || !conflicting_cones.is_empty() {
                counterexamples.push(Counterexample {
                    point: *point,
                    polynomial: value,
                    hive,
                    steinberg,
                    conflicting_cones,
                });
            }
        }
        Ok(ConeVerification {
            cone: cone.name.to_string(),
            points_checked: points.len(),
            counterexamples,
        })
    }

    /// Ray pairs under `λ ↔ μ`.
    pub fn ray_swap(&self) -> Result<Vec<(&'static str, &'static str)>> {
        self.rays
            .iter()
            .map(|r| {
                let image = swap_point(&r.coords);
                self.rays
                    .iter()
                    .find(|s| s.coords == image)
                    .map(|s| (r.name, s.name))
                    .ok_or_else(|| Error::Parse(format!("swap of {} is not a ray", r.name)))
            })
            .collect()
    }

    /// Cone pairs under `λ ↔ μ`; each image cone must carry the swapped
    /// polynomial.
    pub fn cone_swap(&self) -> Result<Vec<(&'static str, &'static str)>> {
        let rays = self.ray_swap()?;
        let image_of = |g: &str| rays.iter().find(|(a, _)| *a == g).map(|&(_, b)| b).expect("ray");
        self.cones
            .iter()
            .map(|c| {
                let image: BTreeSet<&str> = c.generators.iter().map(|g| image_of(g)).collect();
                let target = self
                    .cones
                    .iter()
                    .find(|d| d.generators.iter().copied().collect::<BTreeSet<_>>() == image)
                    .ok_or_else(|| Error::Parse(format!("swap of {} is not a cone", c.name)))?;
                if swap_polynomial(&c.polynomial) != target.polynomial {
                    return Err(Error::Parse(format!(
                        "swap of {} carries the wrong polynomial",
                        c.name
                    )));
                }
                Ok((c.name, target.name))
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variables": coordinate_names(3),
            "rays": self.rays.iter().map(|r| json!({"name": r.name, "coords": r.coords})).collect::<Vec<_>>(),
            "cones": self.cones.iter().map(|c| json!({
                "name": c.name,
                "generators": c.generators,
                "polynomial": c.polynomial.to_string_map(),
                "polynomial_text": c.polynomial.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl ConeVerification {
    pub fn to_json(&self) -> Value {
        json!({
            "cone": self.cone,
            "passed": self.passed(),
            "points_checked": self.points_checked,
            "counterexamples": self.counterexamples.iter().map(|c| json!({
                "point": c.point,
                "polynomial": rational_to_string(&c.polynomial),
                "hive": c.hive,
                "steinberg": c.steinberg,
                "conflicting_cones": c.conflicting_cones,
            })).collect::<Vec<_>>(),
        })
    }
}
