use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An element of `Q/Z`, standing for the root of unity `exp(2πi·num/den)`.
///
/// Always reduced: `gcd(num, den) = 1` and `0 <= num < den`, with zero as `0/1`.
/// Serialized as the string `"num/den"`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QmodZ {
    num: u64,
    den: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as num/den")]
pub struct ParseQmodZError(String);

impl QmodZ {
    pub const ZERO: QmodZ = QmodZ { num: 0, den: 1 };
    pub const HALF: QmodZ = QmodZ { num: 1, den: 2 };

    /// `num/den mod 1`. Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let d = den as i128;
        let r = (num as i128).rem_euclid(d);
        let g = num_integer::gcd(r, d);
        QmodZ {
            num: (r / g) as u64,
            den: (d / g) as u64,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Multiplicative order of the root of unity.
    pub fn order(self) -> u64 {
        self.den
    }

    /// `k·self`.
    pub fn scale(self, k: i64) -> Self {
        let r = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        QmodZ::new(r as i64, self.den)
    }

    /// The representative `self/m` with numerator below `den`: the
    /// smallest-exponent `m`-th root.
    pub fn divide(self, m: u64) -> Self {
        QmodZ::new(self.num as i64, self.den * m)
    }
}

impl Default for QmodZ {
    fn default() -> Self {
        QmodZ::ZERO
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        let l = num_integer::lcm(self.den, rhs.den);
        let n = (self.num * (l / self.den) + rhs.num * (l / rhs.den)) % l;
        QmodZ::new(n as i64, l)
    }
}

impl AddAssign for QmodZ {
    fn add_assign(&mut self, rhs: QmodZ) {
        *self = *self + rhs;
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        if self.num == 0 {
            self
        } else {
            QmodZ {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        self + (-rhs)
    }
}

impl Sum for QmodZ {
    fn sum<I: Iterator<Item = QmodZ>>(iter: I) -> QmodZ {
        iter.fold(QmodZ::ZERO, Add::add)
    }
}

impl Ord for QmodZ {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for QmodZ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QmodZ {
    type Err = ParseQmodZError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQmodZError(s.to_string());
        let (n, d) = s.split_once('/').ok_or_else(err)?;
        let n: i64 = n.trim().parse().map_err(|_| err())?;
        let d: u64 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        Ok(QmodZ::new(n, d))
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
