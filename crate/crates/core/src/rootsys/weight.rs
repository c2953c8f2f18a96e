use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An integral weight written in the fundamental-weight basis.
///
/// Every element of the weight lattice has integral coordinates here, so the
/// type never needs rationals. Root-basis coordinates are available through
/// [`RootSystem::root_coords`](crate::RootSystem::root_coords).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The `i`-th fundamental weight, zero-indexed.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Weight(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&c| c * k).collect())
    }

    /// True when every coordinate is divisible by `k`.
    pub fn divisible_by(&self, k: i64) -> bool {
        self.0.iter().all(|&c| c % k == 0)
    }

    /// Exact coordinatewise quotient; `None` unless [`Self::divisible_by`].
    pub fn div_exact(&self, k: i64) -> Option<Weight> {
        self.divisible_by(k).then(|| Weight(self.0.iter().map(|&c| c / k).collect()))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Parses comma-separated coordinates, e.g. `1,0,2`. Surrounding parentheses
/// are accepted.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Err(Error::InvalidInput(format!("empty weight {s:?}")));
        }
        body.split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("bad weight coordinate {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Weight = "1, 0,-2".parse().unwrap();
        assert_eq!(w.coords(), &[1, 0, -2]);
        assert_eq!(w.to_string(), "(1,0,-2)");
        assert_eq!("(1,0,-2)".parse::<Weight>().unwrap(), w);
        assert!("1,x".parse::<Weight>().is_err());
        assert!("".parse::<Weight>().is_err());
    }

    #[test]
    fn divisibility() {
        let w = Weight::new(vec![6, -3, 0]);
        assert!(w.divisible_by(3));
        assert!(!w.divisible_by(2));
        assert_eq!(w.div_exact(3), Some(Weight::new(vec![2, -1, 0])));
        assert_eq!(w.div_exact(2), None);
    }
}
