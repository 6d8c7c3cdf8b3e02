//! Certified evaluation of the incidence-density constant
//!
//! ```text
//! delta = 1/(h+1) * (1 - eps*alpha - beta/2 * ((c-h-2)(c+1)/c^3 + sum_{i>=c} (i+1)/i^3))
//! ```
//!
//! with `h = c(c-2)/(5c-18)`. Everything is exact except the infinite tail,
//! which is enclosed by a partial sum plus integral bounds on the remainder.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::par::{map_indices, Execution};
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineParams {
    /// Edge-density threshold of the crossing lemma (`m >= alpha n`).
    #[serde(serialize_with = "crate::rational::serialize")]
    pub alpha: Rational,
    /// Denominator constant of the crossing lemma (`cr >= m^3 / (beta n^2)`).
    #[serde(serialize_with = "crate::rational::serialize")]
    pub beta: Rational,
    /// Width budget for the enclosure of the zeta tail.
    #[serde(serialize_with = "crate::rational::serialize")]
    pub tail_width: Rational,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            alpha: ratio(103, 16),
            beta: ratio(31827, 1024),
            tail_width: ratio(1, 1_000_000_000),
        }
    }
}

impl PipelineParams {
    pub fn new(alpha: Rational, beta: Rational, tail_width: Rational) -> Result<Self> {
        if alpha <= Rational::zero() || beta <= Rational::zero() {
            return Err(Error::InvalidParameter("alpha and beta must be positive".into()));
        }
        if tail_width <= Rational::zero() {
            return Err(Error::InvalidParameter("tail width must be positive".into()));
        }
        Ok(PipelineParams { alpha, beta, tail_width })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `eps = delta(eps)`.
    Dirac,
    /// `eps = (2/3) delta(eps)`, i.e. `eps/2 = delta/3`.
    Beck,
}

impl Mode {
    fn lambda(self) -> Rational {
        match self {
            Mode::Dirac => int(1),
            Mode::Beck => ratio(2, 3),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Dirac => "dirac",
            Mode::Beck => "beck",
        })
    }
}

fn check_cutoff(c: i64) -> Result<()> {
    if c < 8 {
        return Err(Error::BadCutoff(c));
    }
    Ok(())
}

pub fn h_of(c: i64) -> Result<Rational> {
    check_cutoff(c)?;
    Ok(ratio(c * (c - 2), 5 * c - 18))
}

/// Coefficient of `i s_i` contributed by an `i`-line with `5 <= i <= c`:
/// `(i-1)/2 - 2h + 9h/i`, as an unreduced fraction over `2qi` for `h = p/q`.
fn line_coefficient(i: i128, p: i128, q: i128) -> (i128, i128) {
    ((i - 1) * q * i - 4 * p * i + 18 * p, 2 * q * i)
}

/// The small-pair multiplier: the maximum of `(h+1)/2`, `(h+4)/4`, `3/2`
/// and the per-line coefficients for `5 <= i <= c`. The optimal choice of
/// `h` makes the first branch the maximum; any other outcome is reported
/// as `ClaimViolated`.
pub fn x_of(c: i64) -> Result<Rational> {
    let h = h_of(c)?;
    let first = (&h + int(1)) / int(2);
    // numerators stay below c^4, so i128 cross products are exact far beyond any useful c
    let (p, q) = match (i128::try_from(h.numer()), i128::try_from(h.denom())) {
        (Ok(p), Ok(q)) if c < 1_000_000 => (p, q),
        _ => return Err(Error::InvalidParameter(format!("cutoff {c} is too large"))),
    };
    let (mut num, mut den) = line_coefficient(5, p, q);
    for i in 6..=c as i128 {
        let (n2, d2) = line_coefficient(i, p, q);
        if n2 * den > num * d2 {
            (num, den) = (n2, d2);
        }
    }
    let inner = Rational::new(BigInt::from(num), BigInt::from(den));
    let branches = [first.clone(), (&h + int(4)) / int(4), ratio(3, 2), inner];
    let top = branches.iter().max().cloned().expect("non-empty");
    if top != first {
        return Err(Error::ClaimViolated(format!(
            "at c = {c} the maximum branch is {top}, not (h+1)/2 = {first}"
        )));
    }
    let (nc, dc) = line_coefficient(c as i128, p, q);
    let at_c = Rational::new(BigInt::from(nc), BigInt::from(dc));
    if at_c != first {
        return Err(Error::ClaimViolated(format!(
            "at c = {c} the coefficient at i = c is {at_c}, not (h+1)/2 = {first}"
        )));
    }
    Ok(first)
}

/// `1/N + 1/(2N^2)`: the integral of `1/x^2 + 1/x^3` over `[N, inf)`.
fn integral_from(n: u64) -> Rational {
    let n = BigInt::from(n);
    Rational::new(BigInt::one(), n.clone()) + Rational::new(BigInt::one(), BigInt::from(2) * &n * &n)
}

fn remainder_width(n: u64) -> Rational {
    integral_from(n - 1) - integral_from(n)
}

/// Smallest `N >= start` whose remainder enclosure is at most `budget` wide.
fn choose_terms(start: u64, budget: &Rational) -> u64 {
    let mut hi = start;
    while &remainder_width(hi) > budget {
        hi = hi.checked_mul(2).expect("tail width budget too small");
    }
    let mut lo = start;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if &remainder_width(mid) <= budget {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    hi
}

/// Floor and ceiling of `sum_{i=from}^{to-1} (i+1) 2^shift / i^3`.
fn scaled_partial_sum(from: u64, to: u64, shift: u32) -> (BigUint, BigUint) {
    if shift <= 96 && to < (1u64 << 31) {
        let mut lo: u128 = 0;
        let mut carries: u128 = 0;
        for i in from..to {
            let i = i as u128;
            let num = (i + 1) << shift;
            let den = i * i * i;
            lo += num / den;
            carries += u128::from(num % den != 0);
        }
        return (BigUint::from(lo), BigUint::from(lo + carries));
    }
    let mut lo = BigUint::zero();
    let mut carries = BigUint::zero();
    for i in from..to {
        let num = BigUint::from(i + 1) << shift;
        let den = BigUint::from(i).pow(3);
        let (q, r) = num.div_rem(&den);
        lo += q;
        if !r.is_zero() {
            carries += 1u32;
        }
    }
    let hi = &lo + carries;
    (lo, hi)
}

/// Certified enclosure of `sum_{i>=c} (i+1)/i^3` no wider than `width_bound`.
///
/// Terms `c..N-1` are summed as directed-rounded multiples of `2^-shift`;
/// the remainder from `N` on lies between the integrals of `1/x^2 + 1/x^3`
/// over `[N, inf)` and `[N-1, inf)`. Half the budget goes to each source of
/// width.
pub fn tail_sum(c: u64, width_bound: &Rational) -> Interval {
    assert!(c >= 2, "tail_sum needs c >= 2");
    assert!(width_bound > &Rational::zero(), "width bound must be positive");
    let half = width_bound / int(2);
    let n = choose_terms(c, &half);
    let terms = n - c;
    let mut shift: u32 = 96;
    while Rational::new(BigInt::from(terms), BigInt::one() << shift) > half {
        shift += 8;
    }
    let (lo_sum, hi_sum) = scaled_partial_sum(c, n, shift);
    let unit = BigInt::one() << shift;
    let lo = Rational::new(lo_sum.into(), unit.clone()) + integral_from(n);
    let hi = Rational::new(hi_sum.into(), unit) + integral_from(n - 1);
    Interval::new(lo, hi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaBreakdown {
    pub c: i64,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub h: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub x: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub y: Rational,
    pub tail: Interval,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub mid_term: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub eps: Rational,
    pub delta: Interval,
}

pub fn delta_of(c: i64, eps: &Rational, params: &PipelineParams) -> Result<DeltaBreakdown> {
    check_cutoff(c)?;
    if eps <= &Rational::zero() || eps >= &ratio(1, 2) {
        return Err(Error::BadEps(eps.to_string()));
    }
    let tail = tail_sum(c as u64, &params.tail_width);
    Ok(delta_with_tail(c, eps, params, tail))
}

fn delta_with_tail(c: i64, eps: &Rational, params: &PipelineParams, tail: Interval) -> DeltaBreakdown {
    let h = h_of(c).expect("cutoff checked");
    let x = x_of(c).expect("the small-pair multiplier is (h+1)/2 for every c >= 8");
    let y = int(c - 1) - &x * int(2);
    debug_assert_eq!(y, int(c - 2) - &h);
    let mid_term = &y * ratio(c + 1, c * c * c);
    let scale = int(1) / (&h + int(1));
    let half_beta = &params.beta / int(2);
    // delta is decreasing in the tail, so the low end uses tail.hi
    let base = int(1) - eps * &params.alpha - &half_beta * &mid_term;
    let delta = Interval::new(
        (&base - &half_beta * &tail.hi) * &scale,
        (&base - &half_beta * &tail.lo) * &scale,
    );
    DeltaBreakdown { c, h, x, y, tail, mid_term, eps: eps.clone(), delta }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub mode: Mode,
    /// Certified parameter: the solution computed with the tail's upper end,
    /// so `delta.lo * lambda == eps` exactly.
    #[serde(serialize_with = "crate::rational::serialize")]
    pub eps: Rational,
    pub delta: Interval,
    pub breakdown: DeltaBreakdown,
}

/// Solves `eps = lambda * delta(eps)`. Since `delta(eps) = B (1 - alpha eps - (beta/2) C)`
/// is affine in `eps` with `B = 1/(h+1)`, the solution is
/// `eps = lambda B (1 - (beta/2) C) / (1 + lambda alpha B)`.
pub fn solve_fixed_point(c: i64, params: &PipelineParams, mode: Mode) -> Result<FixedPoint> {
    check_cutoff(c)?;
    let tail = tail_sum(c as u64, &params.tail_width);
    solve_with_tail(c, params, mode, tail)
}

fn solve_with_tail(c: i64, params: &PipelineParams, mode: Mode, tail: Interval) -> Result<FixedPoint> {
    let h = h_of(c)?;
    let b = int(1) / (&h + int(1));
    let y = int(c - 2) - &h;
    let mid_term = &y * ratio(c + 1, c * c * c);
    let c_hi = &mid_term + &tail.hi;
    let free = int(1) - &params.beta / int(2) * &c_hi;
    if free <= Rational::zero() {
        return Err(Error::NoSolution(c));
    }
    let lambda = mode.lambda();
    let eps = &lambda * &b * &free / (int(1) + &lambda * &params.alpha * &b);
    let breakdown = delta_with_tail(c, &eps, params, tail);
    Ok(FixedPoint { mode, eps, delta: breakdown.delta.clone(), breakdown })
}

/// Per-line coefficient valid in both cases of the line-count argument:
/// `min(eps/2, delta/3)`.
pub fn beck_from_fixed_point(fp: &FixedPoint) -> Interval {
    let half_eps = &fp.eps / int(2);
    let lo = (&fp.delta.lo / int(3)).min(half_eps.clone());
    let hi = (&fp.delta.hi / int(3)).min(half_eps);
    Interval::new(lo, hi)
}

pub fn beck_constant(c: i64, params: &PipelineParams) -> Result<Interval> {
    let fp = solve_fixed_point(c, params, Mode::Beck)?;
    Ok(beck_from_fixed_point(&fp))
}

fn objective(fp: &FixedPoint) -> Rational {
    match fp.mode {
        Mode::Dirac => fp.delta.lo.clone(),
        Mode::Beck => beck_from_fixed_point(fp).lo,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub c: i64,
    /// Certified objective (`delta.lo` in dirac mode, the line coefficient in
    /// beck mode); `None` where no positive fixed point exists.
    #[serde(serialize_with = "serialize_opt")]
    pub objective: Option<Rational>,
}

fn serialize_opt<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sweep {
    pub best_c: i64,
    pub best: FixedPoint,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub best_objective: Rational,
    pub entries: Vec<SweepEntry>,
}

pub fn optimize_c(c_min: i64, c_max: i64, params: &PipelineParams, mode: Mode) -> Result<Sweep> {
    optimize_c_with(c_min, c_max, params, mode, Execution::default())
}

/// Exhaustive sweep over `c_min..=c_max` maximizing the certified objective.
/// Cutoffs without a positive fixed point are recorded and skipped; ties go
/// to the smaller `c`.
pub fn optimize_c_with(
    c_min: i64,
    c_max: i64,
    params: &PipelineParams,
    mode: Mode,
    exec: Execution,
) -> Result<Sweep> {
    check_cutoff(c_min)?;
    if c_max < c_min {
        return Err(Error::InvalidParameter(format!("empty range {c_min}..={c_max}")));
    }
    let count = (c_max - c_min + 1) as usize;
    let results: Vec<Result<FixedPoint>> =
        map_indices(count, exec, |k| solve_fixed_point(c_min + k as i64, params, mode));

    let mut entries = Vec::with_capacity(count);
    let mut best: Option<(FixedPoint, Rational)> = None;
    let mut first_err = None;
    for (k, r) in results.into_iter().enumerate() {
        let c = c_min + k as i64;
        match r {
            Ok(fp) => {
                let obj = objective(&fp);
                entries.push(SweepEntry { c, objective: Some(obj.clone()) });
                if best.as_ref().is_none_or(|(_, b)| &obj > b) {
                    best = Some((fp, obj));
                }
            }
            Err(e @ Error::NoSolution(_)) => {
                entries.push(SweepEntry { c, objective: None });
                first_err.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    match best {
        Some((fp, obj)) => Ok(Sweep { best_c: fp.breakdown.c, best: fp, best_objective: obj, entries }),
        None => Err(first_err.unwrap_or(Error::NoSolution(c_min))),
    }
}
