use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

/// Edge weight: a positive integer or the reserved infinite value.
///
/// `INF` compares greater than every finite value, and addition saturates at
/// `INF`, so a sum of finite weights can never reach it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Weight(u64);

impl Weight {
    pub const INF: Weight = Weight(u64::MAX);
    pub const ZERO: Weight = Weight(0);
    pub const ONE: Weight = Weight(1);

    /// Largest finite value that may be stored. Sums above it saturate to INF.
    pub const MAX_FINITE: u64 = u64::MAX / 4;

    pub fn finite(value: u64) -> Weight {
        assert!(value <= Self::MAX_FINITE, "weight {value} is too large");
        Weight(value)
    }

    pub fn is_inf(self) -> bool {
        self.0 == u64::MAX
    }

    pub fn is_finite(self) -> bool {
        !self.is_inf()
    }

    /// The finite value, or `None` for INF.
    pub fn value(self) -> Option<u64> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        if self.is_inf() || rhs.is_inf() {
            return Weight::INF;
        }
        match self.0.checked_add(rhs.0) {
            Some(v) if v <= Self::MAX_FINITE => Weight(v),
            _ => Weight::INF,
        }
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |a, b| a + b)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl FromStr for Weight {
    type Err = String;

    fn from_str(s: &str) -> Result<Weight, String> {
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Weight::INF);
        }
        let v: u64 = s.parse().map_err(|_| format!("invalid weight `{s}`"))?;
        if v == 0 {
            return Err("edge weights must be positive".to_string());
        }
        if v > Self::MAX_FINITE {
            return Err(format!("weight `{s}` is too large"));
        }
        Ok(Weight(v))
    }
}
