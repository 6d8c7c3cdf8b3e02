//! Closed rational intervals. Endpoints are exact, so every operation is
//! trivially outward-rounded; inexactness enters only where a caller
//! encloses an irrational quantity.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::rational::{decimal_preview, Rational, Rounding};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "crate::rational::serialize")]
    pub lo: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn add_scalar(&self, v: &Rational) -> Interval {
        Interval::new(&self.lo + v, &self.hi + v)
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Interval::new(b, a)
        } else {
            Interval::new(a, b)
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo > Rational::zero()
    }

    pub fn preview(&self, digits: usize) -> (String, String) {
        (
            decimal_preview(&self.lo, digits, Rounding::Down),
            decimal_preview(&self.hi, digits, Rounding::Up),
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.preview(12);
        write!(f, "[{lo}, {hi}]")
    }
}
