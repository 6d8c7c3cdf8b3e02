//! Brute-force references that share no code with the library paths they check.

use std::collections::{BTreeMap, BTreeSet};

/// Fields of an arrangement computed by the cubic per-pair method on integer points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleStats {
    pub n: u64,
    pub s: BTreeMap<u64, u64>,
    pub lines: u64,
    pub incidences: u64,
    pub edges: u64,
    pub l_max: u64,
    pub degrees: Vec<u64>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

/// For each pair, the set of all points on its line; distinct sets are the lines.
pub fn arrangement(points: &[(i64, i64)]) -> OracleStats {
    let n = points.len();
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let on: Vec<usize> = (0..n).filter(|&k| cross(points[i], points[j], points[k]) == 0).collect();
            lines.insert(on);
        }
    }
    let mut s = BTreeMap::new();
    let mut degrees = vec![0u64; n];
    for line in &lines {
        *s.entry(line.len() as u64).or_insert(0) += 1;
        for &p in line {
            degrees[p] += 1;
        }
    }
    OracleStats {
        n: n as u64,
        lines: lines.len() as u64,
        incidences: lines.iter().map(|l| l.len() as u64).sum(),
        edges: lines.iter().map(|l| l.len() as u64 - 1).sum(),
        l_max: lines.iter().map(|l| l.len() as u64).max().unwrap_or(0),
        s,
        degrees,
    }
}

pub fn max_degree(o: &OracleStats) -> (usize, u64) {
    let best = *o.degrees.iter().max().unwrap_or(&0);
    (o.degrees.iter().position(|&d| d == best).unwrap_or(0), best)
}

/// `sum_{i>=c} (i+1)/i^3` by direct summation to `m` plus an Euler-Maclaurin
/// remainder (three Bernoulli corrections) in f64. Accurate to ~1e-15 for m >= 100.
pub fn tail_f64(c: u64) -> f64 {
    let m = c.max(200);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in c..m {
        let x = i as f64;
        let y = (x + 1.0) / (x * x * x) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let x = m as f64;
    let f = 1.0 / (x * x) + 1.0 / (x * x * x);
    let integral = 1.0 / x + 1.0 / (2.0 * x * x);
    let d1 = -2.0 / x.powi(3) - 3.0 / x.powi(4);
    let d3 = -24.0 / x.powi(5) - 60.0 / x.powi(6);
    let d5 = -720.0 / x.powi(7) - 2520.0 / x.powi(8);
    sum + integral + f / 2.0 - d1 / 12.0 + d3 / 720.0 - d5 / 30240.0
}

/// Delta straight from the closed formula in f64.
pub fn delta_f64(c: u64, eps: f64, alpha: f64, beta: f64) -> f64 {
    let c = c as f64;
    let h = c * (c - 2.0) / (5.0 * c - 18.0);
    let mid = (c - h - 2.0) * (c + 1.0) / (c * c * c);
    (1.0 - eps * alpha - beta / 2.0 * (mid + tail_f64(c as u64))) / (h + 1.0)
}
