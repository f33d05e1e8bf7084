use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{parse_rational, rational_to_string, Rational};
use crate::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The coefficient vector is empty for the zero polynomial and otherwise ends
/// in a nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPolyQ {
    coeffs: Vec<Rational>,
}

impl UniPolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPolyQ { coeffs }
    }

    pub fn zero() -> Self {
        UniPolyQ { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn coefficients_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn format_with(&self, var: &str) -> String {
        let terms: Vec<(Rational, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| {
                let mono = match d {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{d}"),
                };
                (c.clone(), mono)
            })
            .collect();
        join_terms(&terms, "")
    }
}

impl fmt::Display for UniPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("N"))
    }
}

/// Sparse multivariate polynomial over a declared, ordered variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPolyQ {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Graded lexicographic comparison: lower total degree first, then the
/// exponent of the first variable decides (higher first).
pub(crate) fn graded_lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

impl MultiPolyQ {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        MultiPolyQ {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn variable<S: AsRef<str>>(vars: &[S], index: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; p.vars.len()];
        e[index] = 1;
        p.add_term(e, Rational::one());
        p
    }

    /// Affine form `constant + Σ coeffs[i]·x_i`.
    pub fn affine<S: AsRef<str>>(vars: &[S], constant: Rational, coeffs: &[Rational]) -> Self {
        assert_eq!(coeffs.len(), vars.len());
        let mut p = Self::constant(vars, constant);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> Vec<(&[u32], &Rational)> {
        let mut t: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        t.sort_by(|a, b| graded_lex_cmp(a.0, b.0));
        t
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.vars.len(), "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "point dimension mismatch");
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc + t
        })
    }

    pub fn eval_i64(&self, point: &[i64]) -> Rational {
        let p: Vec<Rational> = point.iter().map(|&x| super::q(x)).collect();
        self.eval(&p)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(e, v)| (e.clone(), v * c)),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        let mut p = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(&self.vars, Rational::one()), |acc, _| {
            acc.mul(self)
        })
    }

    /// Substitutes `subs[i]` for the `i`-th variable. The result lives over
    /// the variable list shared by all substitutes.
    pub fn compose(&self, subs: &[MultiPolyQ]) -> MultiPolyQ {
        assert_eq!(subs.len(), self.vars.len(), "one substitute per variable");
        let Some(target_vars) = subs.first().map(|s| s.vars.clone()) else {
            return Self::constant::<String>(&[], self.constant_term());
        };
        let mut out = MultiPolyQ::zero(&target_vars);
        for (e, c) in &self.terms {
            let mut t = MultiPolyQ::constant(&target_vars, c.clone());
            for (s, &k) in subs.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&s.pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Renames variables positionally; the count must not change.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        MultiPolyQ {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: self.terms.clone(),
        }
    }

    /// Coefficients of an affine polynomial: `(constant, linear coefficients)`.
    /// `None` if any term has degree above one.
    pub fn affine_parts(&self) -> Option<(Rational, Vec<Rational>)> {
        if self.total_degree().unwrap_or(0) > 1 {
            return None;
        }
        let n = self.vars.len();
        let lin = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                self.coefficient(&e)
            })
            .collect();
        Some((self.constant_term(), lin))
    }

    /// Monomial text → coefficient text, with the constant monomial as `"1"`.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m = self.monomial_text(e);
                let key = if m.is_empty() { "1".to_string() } else { m };
                (key, rational_to_string(c))
            })
            .collect()
    }

    fn monomial_text(&self, e: &[u32]) -> String {
        e.iter()
            .zip(&self.vars)
            .filter(|(k, _)| **k > 0)
            .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses sums of monomials such as `1 - λ2 - μ2 + ν1` or `2/3*x^2*y`.
    pub fn parse<S: AsRef<str>>(vars: &[S], text: &str) -> Result<Self> {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        for piece in pieces {
            let (negative, body) = match piece.chars().next() {
                Some('-') => (true, &piece[1..]),
                Some('+') => (false, &piece[1..]),
                _ => (false, piece.as_str()),
            };
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; n];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("malformed term {piece:?}")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor)?;
                    continue;
                }
                let (name, k) = match factor.split_once('^') {
                    Some((v, k)) => (
                        v,
                        k.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let idx = p
                    .var_index(name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                exps[idx] += k;
            }
            if negative {
                coeff = -coeff;
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, String)> = self
            .terms()
            .into_iter()
            .map(|(e, c)| (c.clone(), self.monomial_text(e)))
            .collect();
        f.write_str(&join_terms(&terms, " "))
    }
}

/// Joins `(coefficient, monomial)` pairs; `pad` goes around the +/- signs.
fn join_terms(terms: &[(Rational, String)], pad: &str) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(pad);
            out.push(if neg { '-' } else { '+' });
            out.push_str(pad);
        }
        if mono.is_empty() {
            out.push_str(&rational_to_string(&mag));
        } else if mag.is_one() {
            out.push_str(mono);
        } else {
            out.push_str(&rational_to_string(&mag));
            out.push('*');
            out.push_str(mono);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, q};

    #[test]
    fn univariate_display_and_eval() {
        let p = UniPolyQ::new(vec![q(1), q(1)]);
        assert_eq!(p.to_string(), "N+1");
        assert_eq!(p.eval(&q(4)), q(5));
        let p = UniPolyQ::new(vec![q(1), q(0), q(-2), q(0)]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "-2*N^2+1");
        assert_eq!(UniPolyQ::new(vec![q(0)]).to_string(), "0");
        assert_eq!(UniPolyQ::new(vec![frac(1, 2), frac(-3, 4)]).to_string(), "-3/4*N+1/2");
    }

    #[test]
    fn multivariate_arithmetic() {
        let vars = ["x", "y"];
        let x = MultiPolyQ::variable(&vars, 0);
        let y = MultiPolyQ::variable(&vars, 1);
        let one = MultiPolyQ::constant(&vars, q(1));
        let p = x.add(&y).add(&one); // x + y + 1
        let sq = p.mul(&p);
        assert_eq!(sq.total_degree(), Some(2));
        assert_eq!(sq.eval(&[q(2), q(3)]), q(36));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.to_string(), "1 + x + y");
        assert_eq!(sq.to_string(), "1 + 2*x + 2*y + x^2 + 2*x*y + y^2");
    }

    #[test]
    fn parse_matches_display() {
        let vars = ["λ1", "λ2", "μ2", "ν1"];
        let p = MultiPolyQ::parse(&vars, "1 - λ2 - μ2 + ν1").unwrap();
        assert_eq!(p.to_string(), "1 - λ2 - μ2 + ν1");
        assert_eq!(p.eval_i64(&[2, 1, 1, 3]), q(2));
        let r = MultiPolyQ::parse(&vars, "2/3*λ1^2*ν1 - 4").unwrap();
        assert_eq!(r.coefficient(&[2, 0, 0, 1]), frac(2, 3));
        assert!(MultiPolyQ::parse(&vars, "1 + z").is_err());
        assert!(MultiPolyQ::parse(&vars, "").is_err());
    }

    #[test]
    fn compose_substitutes_affine_forms() {
        // p(u, v) = u*v + 1 with u = x + 1, v = x - y
        let uv = ["u", "v"];
        let p = MultiPolyQ::parse(&uv, "u*v + 1").unwrap();
        let xy = ["x", "y"];
        let u = MultiPolyQ::parse(&xy, "x + 1").unwrap();
        let v = MultiPolyQ::parse(&xy, "x - y").unwrap();
        let c = p.compose(&[u, v]);
        for (a, b) in [(0, 0), (2, 5), (-3, 4)] {
            let direct = q((a + 1) * (a - b) + 1);
            assert_eq!(c.eval_i64(&[a, b]), direct);
        }
    }

    #[test]
    fn string_map_uses_one_for_constant() {
        let p = MultiPolyQ::parse(&["a", "b"], "1 + a - 2*b").unwrap();
        let m = p.to_string_map();
        assert_eq!(m["1"], "1");
        assert_eq!(m["a"], "1");
        assert_eq!(m["b"], "-2");
    }
}
