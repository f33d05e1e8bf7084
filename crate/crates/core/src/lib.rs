//! Exact computation of Littlewood-Richardson coefficients.
//!
//! The coefficients `c_{λμ}^ν` are computed four ways (integral hives, the
//! hive system read as a vector partition function, Steinberg's formula over
//! the Kostant partition function, and the classical Littlewood-Richardson
//! rule). On top of the counters sit the polynomiality tools: stretching
//! polynomials `N ↦ c_{Nλ,Nμ}^{Nν}`, Kostant chamber polynomials for small
//! rank, the Steinberg hyperplane arrangement, and the complete chamber
//! complex for partitions with at most three parts.
//!
//! All arithmetic on the public surface is exact.

pub mod error;
pub mod exactla;
pub mod hive;
pub mod kostant;
pub mod lr3;
pub mod steinberg;
pub mod stretch;
pub mod tableaux;
pub mod typea;

pub use error::{Error, Result};
pub use exactla::{MatrixQ, MultiPolyQ, Rational, UniPolyQ};
pub use typea::{Partition, Permutation, Weight};

/// Counts as JSON numbers while they are exactly representable as doubles
/// (`≤ 2^53`), decimal strings beyond that.
pub fn count_to_json(c: u64) -> serde_json::Value {
    if c <= 1 << 53 {
        serde_json::Value::from(c)
    } else {
        serde_json::Value::from(c.to_string())
    }
}

/// Binomial coefficient `C(n, r)` for small arguments, zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
