//! Base rings of characteristic zero, seen only through their roots of unity.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::arith::{divisors, euler_phi, lcm};
use crate::error::ClusterError;

/// Upper bound on a root order accepted in a custom field description.
const MAX_ROOT_ORDER: u64 = 1 << 20;

/// The set of `d` for which a field contains a primitive `d`-th root of unity.
///
/// Always contains 1 and 2, and is closed under divisors and lcm (the roots
/// of unity of a field form a locally cyclic group, and `-zeta` is a
/// primitive `2d`-th root whenever `zeta` is a primitive `d`-th root with
/// `d` odd).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootOrders(BTreeSet<u64>);

impl RootOrders {
    pub fn new<I: IntoIterator<Item = u64>>(orders: I) -> Result<Self, ClusterError> {
        let mut set: BTreeSet<u64> = [1, 2].into_iter().collect();
        for d in orders {
            if d == 0 || d > MAX_ROOT_ORDER {
                return Err(ClusterError::InvalidRing(format!("root order {d}")));
            }
            set.insert(d);
        }
        // Close under lcm (which also realizes odd d -> 2d), then divisors.
        loop {
            let current: Vec<u64> = set.iter().copied().collect();
            let mut grew = false;
            for (idx, &a) in current.iter().enumerate() {
                for &b in &current[idx..] {
                    let l = lcm(a, b);
                    if l > MAX_ROOT_ORDER {
                        return Err(ClusterError::InvalidRing(format!("root order {l}")));
                    }
                    grew |= set.insert(l);
                }
            }
            for d in current {
                for e in divisors(d) {
                    grew |= set.insert(e);
                }
            }
            if !grew {
                break;
            }
        }
        Ok(RootOrders(set))
    }

    pub fn contains(&self, d: u64) -> bool {
        self.0.contains(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    /// The largest order; every other order divides it.
    pub fn maximal(&self) -> u64 {
        *self.0.iter().next_back().expect("root orders are never empty")
    }
}

/// Base ring `K` of a cluster algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    Rationals,
    AlgebraicallyClosed,
    CustomField(RootOrders),
}

impl BaseRing {
    pub fn custom<I: IntoIterator<Item = u64>>(orders: I) -> Result<Self, ClusterError> {
        Ok(BaseRing::CustomField(RootOrders::new(orders)?))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, BaseRing::Integers)
    }

    /// Whether `K` contains a primitive `d`-th root of unity.
    pub fn has_primitive_root(&self, d: u64) -> bool {
        match self {
            BaseRing::Integers | BaseRing::Rationals => d <= 2,
            BaseRing::AlgebraicallyClosed => d >= 1,
            BaseRing::CustomField(orders) => orders.contains(d),
        }
    }

    /// Number of irreducible factors of the `d`-th cyclotomic polynomial over `K`.
    pub fn nu(&self, d: u64) -> u64 {
        assert!(d >= 1, "cyclotomic index must be positive");
        if self.has_primitive_root(d) {
            euler_phi(d)
        } else {
            1
        }
    }
}

/// Free-function form of [`BaseRing::nu`].
pub fn nu(ring: &BaseRing, d: u64) -> u64 {
    ring.nu(d)
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => f.write_str("Z"),
            BaseRing::Rationals => f.write_str("Q"),
            BaseRing::AlgebraicallyClosed => f.write_str("algclosed"),
            BaseRing::CustomField(orders) => write!(f, "custom:{}", orders.maximal()),
        }
    }
}

impl FromStr for BaseRing {
    type Err = ClusterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" => Ok(BaseRing::Integers),
            "Q" => Ok(BaseRing::Rationals),
            "algclosed" => Ok(BaseRing::AlgebraicallyClosed),
            other => {
                let list = other
                    .strip_prefix("custom:")
                    .ok_or_else(|| ClusterError::InvalidRing(s.to_string()))?;
                let orders = list
                    .split(',')
                    .map(|tok| tok.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| ClusterError::InvalidRing(s.to_string()))?;
                BaseRing::custom(orders)
            }
        }
    }
}
