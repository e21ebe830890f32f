use std::cmp::Ordering;
use std::fmt;

use super::table::ClassicalDistribution;
use crate::algebra::{rat, Rational};
use crate::superop::DensityMatrix;

/// Slack applied to floating-point probability ranges.
pub const RANGE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
    Ambiguous,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
            Decision::Ambiguous => "ambiguous",
        })
    }
}

/// The consistent state a verdict was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Distribution(ClassicalDistribution),
    State(DensityMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub decision: Decision,
    /// Acceptance probability at the canonical consistent state.
    pub exact_accept_probability: Rational,
    /// `(min, max)` acceptance probability over every consistent state (or
    /// just the canonical one when `certified` is false).
    pub probability_range: (f64, f64),
    pub witness: Witness,
    /// The canonical probability compared against 1/2.
    pub compare_to_half: Ordering,
    /// Whether the range covers all consistent states.
    pub certified: bool,
    pub notes: Vec<String>,
}

/// Bounded-error thresholds: accept when every consistent state accepts
/// with probability at least 2/3, reject when every one accepts with at
/// most 1/3.
pub fn threshold_decision(p: &Rational, range: (f64, f64)) -> Decision {
    if *p >= rat(2, 3) && range.0 >= 2.0 / 3.0 - RANGE_TOLERANCE {
        Decision::Accept
    } else if *p <= rat(1, 3) && range.1 <= 1.0 / 3.0 + RANGE_TOLERANCE {
        Decision::Reject
    } else {
        Decision::Ambiguous
    }
}

pub fn compare_to_half(p: &Rational) -> Ordering {
    p.cmp(&rat(1, 2))
}
