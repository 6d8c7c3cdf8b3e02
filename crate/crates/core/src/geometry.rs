//! Exact arrangement statistics of finite rational point sets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{map_indices, Execution};
use crate::rational::{choose2, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

/// An ordered collection of pairwise distinct points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some((first, second)) = find_duplicate(&points) {
            return Err(Error::DuplicatePoints { first, second });
        }
        Ok(PointSet { points })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        PointSet::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Parses the text point format: one `x y` pair per line, each field an
    /// integer or `p/q`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected 2 fields, found {}", fields.len()),
                });
            }
            let coord = |s: &str| {
                parse_coordinate(s).map_err(|message| Error::Parse { line: idx + 1, message })
            };
            points.push(Point::new(coord(fields[0])?, coord(fields[1])?));
        }
        PointSet::new(points)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

fn parse_coordinate(s: &str) -> std::result::Result<Rational, String> {
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("coordinate {s:?} must be an integer or p/q"));
    }
    parse_rational(s)
}

fn find_duplicate(points: &[Point]) -> Option<(usize, usize)> {
    let mut seen: HashMap<&Point, usize> = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            return Some((j, i));
        }
        seen.insert(p, i);
    }
    None
}

/// A line `a x + b y + c = 0` with coprime integer coefficients and
/// `a > 0`, or `a = 0` and `b > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Exact orientation test: `(q - p) x (r - p) == 0`.
pub fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    det.is_zero()
}

pub fn canonical_line(p: &Point, q: &Point) -> Result<Line> {
    if p == q {
        return Err(Error::IdenticalPoints);
    }
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = &q.x * &p.y - &p.x * &q.y;
    let scale = a.denom().lcm(b.denom()).lcm(c.denom());
    let mut ai = a.numer() * (&scale / a.denom());
    let mut bi = b.numer() * (&scale / b.denom());
    let mut ci = c.numer() * (&scale / c.denom());
    let g = ai.gcd(&bi).gcd(&ci);
    ai /= &g;
    bi /= &g;
    ci /= &g;
    if ai.is_negative() || (ai.is_zero() && bi.is_negative()) {
        ai = -ai;
        bi = -bi;
        ci = -ci;
    }
    Ok(Line { a: ai, b: bi, c: ci })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrangementStats {
    pub n: u64,
    /// `s[i]` is the number of lines with exactly `i` points; zero entries are omitted.
    #[serde(serialize_with = "serialize_histogram")]
    pub s: BTreeMap<u64, u64>,
    /// Number of determined lines.
    pub lines: u64,
    /// Point-line incidences.
    pub incidences: u64,
    /// Visibility-graph edges.
    pub edges: u64,
    pub l_max: u64,
    pub dirac_degree: u64,
    pub dirac_witness: Option<usize>,
}

fn serialize_histogram<S: serde::Serializer>(
    s: &BTreeMap<u64, u64>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = ser.serialize_map(Some(s.len()))?;
    for (i, count) in s {
        map.serialize_entry(&i.to_string(), count)?;
    }
    map.end()
}

impl ArrangementStats {
    pub fn empty(n: u64) -> Self {
        ArrangementStats {
            n,
            s: BTreeMap::new(),
            lines: 0,
            incidences: 0,
            edges: 0,
            l_max: 0,
            dirac_degree: 0,
            dirac_witness: None,
        }
    }

    /// Number of `i`-lines (zero when absent).
    pub fn s(&self, i: u64) -> u64 {
        self.s.get(&i).copied().unwrap_or(0)
    }

    /// Whether the set determines at least two lines.
    pub fn is_non_collinear(&self) -> bool {
        self.lines >= 2
    }

    /// Rebuilds the totals from a histogram.
    pub fn from_histogram(n: u64, s: BTreeMap<u64, u64>, dirac: Option<(usize, u64)>) -> Self {
        let s: BTreeMap<u64, u64> = s.into_iter().filter(|&(_, c)| c > 0).collect();
        let lines = s.values().sum();
        let incidences = s.iter().map(|(i, c)| i * c).sum();
        let edges = s.iter().map(|(i, c)| (i - 1) * c).sum();
        let l_max = s.keys().next_back().copied().unwrap_or(0);
        let (dirac_witness, dirac_degree) = match dirac {
            Some((w, d)) => (Some(w), d),
            None => (None, 0),
        };
        ArrangementStats { n, s, lines, incidences, edges, l_max, dirac_degree, dirac_witness }
    }
}

/// Primitive integer direction from `p` to `q`, sign-normalized like [`Line`].
/// Through a fixed point, lines and directions are in bijection.
fn direction(p: &Point, q: &Point) -> (BigInt, BigInt) {
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    let scale = dx.denom().lcm(dy.denom());
    let mut a = dx.numer() * (&scale / dx.denom());
    let mut b = dy.numer() * (&scale / dy.denom());
    let g = a.gcd(&b);
    a /= &g;
    b /= &g;
    if a.is_negative() || (a.is_zero() && b.is_negative()) {
        a = -a;
        b = -b;
    }
    (a, b)
}

/// Lines through one point: for each determined line, the number of points on it.
fn lines_through(points: &[Point], idx: usize) -> Vec<u64> {
    let p = &points[idx];
    let mut groups: HashMap<(BigInt, BigInt), u64> = HashMap::new();
    for (j, q) in points.iter().enumerate() {
        if j != idx {
            *groups.entry(direction(p, q)).or_insert(1) += 1;
        }
    }
    groups.into_values().collect()
}

pub fn compute_arrangement(ps: &PointSet) -> ArrangementStats {
    compute_arrangement_with(ps, Execution::default())
}

/// Groups every pair by the line it spans. Each point contributes the
/// lines through it, so an `i`-line is seen `i` times; per-point work is
/// independent and the merge is a histogram sum, hence identical for every
/// execution policy.
pub fn compute_arrangement_with(ps: &PointSet, exec: Execution) -> ArrangementStats {
    let points = ps.points();
    let n = points.len() as u64;
    if n < 2 {
        return ArrangementStats::empty(n);
    }
    let per_point: Vec<Vec<u64>> = map_indices(points.len(), exec, |i| lines_through(points, i));

    let mut seen: BTreeMap<u64, u64> = BTreeMap::new();
    let mut best: Option<(usize, u64)> = None;
    for (idx, sizes) in per_point.iter().enumerate() {
        for &size in sizes {
            *seen.entry(size).or_insert(0) += 1;
        }
        let deg = sizes.len() as u64;
        if best.is_none_or(|(_, d)| deg > d) {
            best = Some((idx, deg));
        }
    }
    let s = seen.into_iter().map(|(i, count)| (i, count / i)).collect();
    ArrangementStats::from_histogram(n, s, best)
}

/// Point of maximum determined-line degree, lowest index on ties.
pub fn dirac_degree(ps: &PointSet) -> Result<(usize, u64)> {
    let stats = compute_arrangement(ps);
    dirac_from_stats(&stats)
}

pub fn dirac_from_stats(stats: &ArrangementStats) -> Result<(usize, u64)> {
    if stats.n < 3 || !stats.is_non_collinear() {
        return Err(Error::CollinearInput);
    }
    let w = stats.dirac_witness.ok_or(Error::CollinearInput)?;
    Ok((w, stats.dirac_degree))
}

/// `|E(G_i)| = sum over j >= i of (j - 1) s_j`.
pub fn subgraph_edge_count(stats: &ArrangementStats, i: u64) -> u64 {
    stats.s.range(i.max(2)..).map(|(j, c)| (j - 1) * c).sum()
}

/// Lines with at least `i` points.
pub fn lines_at_least(stats: &ArrangementStats, i: u64) -> u64 {
    stats.s.range(i.max(2)..).map(|(_, c)| c).sum()
}

/// Pairs of points lying on `i`-lines for `lo <= i <= hi`.
pub fn pair_tally(stats: &ArrangementStats, lo: u64, hi: u64) -> u64 {
    if lo > hi {
        return 0;
    }
    stats.s.range(lo..=hi).map(|(&i, c)| choose2(i) * c).sum()
}

/// Incidences on `i`-lines for `lo <= i <= hi`.
pub fn incidence_tally(stats: &ArrangementStats, lo: u64, hi: u64) -> u64 {
    if lo > hi {
        return 0;
    }
    stats.s.range(lo..=hi).map(|(&i, c)| i * c).sum()
}
