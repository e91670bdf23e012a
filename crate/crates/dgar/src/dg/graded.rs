use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// An extended integer bound for cohomological support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    NegInfinity,
    Finite(i32),
    PosInfinity,
}

impl Bound {
    pub fn finite(&self) -> Option<i32> {
        match self {
            Bound::Finite(x) => Some(*x),
            _ => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInfinity => write!(f, "-inf"),
            Bound::Finite(x) => write!(f, "{x}"),
            Bound::PosInfinity => write!(f, "+inf"),
        }
    }
}

/// Infimum, supremum and amplitude of cohomology, with the zero module
/// mapped to (+inf, -inf, -inf).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfSupAmp {
    pub inf: Bound,
    pub sup: Bound,
    pub amp: Bound,
}

/// Finitely supported degree -> dimension table; zero entries are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedDims(pub BTreeMap<i32, usize>);

impl GradedDims {
    pub fn from_pairs(pairs: &[(i32, usize)]) -> GradedDims {
        let mut m = BTreeMap::new();
        for &(d, n) in pairs {
            if n > 0 {
                *m.entry(d).or_insert(0) += n;
            }
        }
        GradedDims(m)
    }

    pub fn from_degrees(degrees: &[i32]) -> GradedDims {
        let mut m = BTreeMap::new();
        for &d in degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        GradedDims(m)
    }

    pub fn get(&self, d: i32) -> usize {
        self.0.get(&d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inf(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn sup(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    pub fn inf_sup_amp(&self) -> InfSupAmp {
        match (self.inf(), self.sup()) {
            (Some(i), Some(s)) => InfSupAmp {
                inf: Bound::Finite(i),
                sup: Bound::Finite(s),
                amp: Bound::Finite(s - i),
            },
            _ => InfSupAmp { inf: Bound::PosInfinity, sup: Bound::NegInfinity, amp: Bound::NegInfinity },
        }
    }

    /// Dimensions of the n-fold suspension: degree i moves to i - n.
    pub fn suspended(&self, n: i32) -> GradedDims {
        GradedDims(self.0.iter().map(|(&d, &k)| (d - n, k)).collect())
    }

    pub fn negated(&self) -> GradedDims {
        GradedDims(self.0.iter().map(|(&d, &k)| (-d, k)).collect())
    }

    pub fn sum(&self, other: &GradedDims) -> GradedDims {
        let mut m = self.0.clone();
        for (&d, &k) in &other.0 {
            *m.entry(d).or_insert(0) += k;
        }
        GradedDims(m)
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(d, k)| format!("{d}:{k}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn sign_odd(x: i32) -> bool {
    x.rem_euclid(2) == 1
}

/// Indices of the basis elements sitting in degree `d`.
pub fn indices_in(degrees: &[i32], d: i32) -> Vec<usize> {
    degrees.iter().enumerate().filter(|(_, &x)| x == d).map(|(i, _)| i).collect()
}

pub fn degree_set(degrees: &[i32]) -> Vec<i32> {
    let mut v: Vec<i32> = degrees.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}
