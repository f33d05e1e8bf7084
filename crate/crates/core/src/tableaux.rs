//! The Littlewood-Richardson rule: `c_{λμ}^ν` counts semistandard fillings
//! of the skew shape `ν/λ` with content `μ` whose reverse reading word is a
//! lattice word.

use crate::typea::Partition;

/// A skew shape `ν/λ` and a filling of its cells, row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewTableau {
    pub outer: Partition,
    pub inner: Partition,
    /// `rows[r]` holds the entries of row `r` from left to right.
    pub rows: Vec<Vec<u32>>,
}

impl SkewTableau {
    /// Checks semistandardness, content and the lattice condition from
    /// scratch.
    pub fn is_lr_tableau(&self, content: &Partition) -> bool {
        let inner = |r: usize| self.inner.parts().get(r).copied().unwrap_or(0) as usize;
        let cell = |r: usize, c: usize| -> Option<u32> {
            let start = inner(r);
            (c >= start).then(|| self.rows.get(r)?.get(c - start).copied()).flatten()
        };
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() + inner(r) != self.outer.parts()[r] as usize {
                return false;
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            for (i, &x) in row.iter().enumerate() {
                if r > 0 {
                    if let Some(above) = cell(r - 1, inner(r) + i) {
                        if above >= x {
                            return false;
                        }
                    }
                }
            }
        }
        let m = content.length();
        let mut seen = vec![0u32; m + 1];
        for x in self.rows.iter().flat_map(|row| row.iter().rev()) {
            let x = *x as usize;
            if x == 0 || x > m {
                return false;
            }
            seen[x] += 1;
            if x > 1 && seen[x] > seen[x - 1] {
                return false;
            }
        }
        (1..=m).all(|i| seen[i] == content.parts()[i - 1])
    }
}

struct Filler<'a> {
    inner: Vec<usize>,
    outer: Vec<usize>,
    content: &'a [u32],
    rows: Vec<Vec<u32>>,
    used: Vec<u32>,
}

impl Filler<'_> {
    /// Entry above cell `(r, c)` when that cell is part of the skew shape.
    fn above(&self, r: usize, c: usize) -> Option<u32> {
        if r == 0 || c < self.inner[r - 1] {
            return None;
        }
        Some(self.rows[r - 1][c - self.inner[r - 1]])
    }

    /// Fills row `r` from right to left, so the reading word is produced in
    /// order and the lattice condition can be checked at every step.
    fn fill(&mut self, r: usize, c: usize, out: &mut dyn FnMut(&[Vec<u32>])) {
        if r == self.outer.len() {
            out(&self.rows);
            return;
        }
        if c == self.inner[r] {
            self.rows[r].reverse();
            let next = r + 1;
            let start = self.outer.get(next).copied().unwrap_or(0);
            self.fill(next, start, out);
            self.rows[r].reverse();
            return;
        }
        let col = c - 1;
        // rows[r] is temporarily right-to-left, so its last element is the
        // right neighbour.
        let max = self.rows[r].last().copied().unwrap_or(self.content.len() as u32);
        let min = self.above(r, col).map_or(1, |a| a + 1);
        for x in min..=max {
            let i = x as usize;
            if self.used[i] == self.content[i - 1] {
                continue;
            }
            if i > 1 && self.used[i] + 1 > self.used[i - 1] {
                continue;
            }
            self.used[i] += 1;
            self.rows[r].push(x);
            self.fill(r, col, out);
            self.rows[r].pop();
            self.used[i] -= 1;
        }
    }
}

fn visit(lambda: &Partition, mu: &Partition, nu: &Partition, out: &mut dyn FnMut(&[Vec<u32>])) {
    if !lambda.is_contained_in(nu) || lambda.size() + mu.size() != nu.size() {
        return;
    }
    let rows = nu.length();
    let inner: Vec<usize> = (0..rows)
        .map(|r| lambda.parts().get(r).copied().unwrap_or(0) as usize)
        .collect();
    let outer: Vec<usize> = nu.parts().iter().map(|&x| x as usize).collect();
    let mut f = Filler {
        inner,
        content: mu.parts(),
        rows: vec![Vec::new(); rows],
        used: vec![0; mu.length() + 1],
        outer,
    };
    if rows == 0 {
        out(&[]);
        return;
    }
    let start = f.outer[0];
    f.fill(0, start, out);
}

/// Number of Littlewood-Richardson tableaux of shape `ν/λ` and content `μ`.
pub fn lr_rule_count(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let mut n = 0;
    visit(lambda, mu, nu, &mut |_| n += 1);
    n
}

pub fn lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> Vec<SkewTableau> {
    let mut out = Vec::new();
    visit(lambda, mu, nu, &mut |rows| {
        out.push(SkewTableau {
            outer: nu.clone(),
            inner: lambda.clone(),
            rows: rows.to_vec(),
        })
    });
    out
}
