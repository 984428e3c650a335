//! Exact truth values in `[0,1] ∩ ℚ`.
//!
//! The lattice operations are `join = max` and `meet = min`. Every sup-min
//! formula in the crate only ever selects among its inputs, so grades never
//! need addition or multiplication and values stay bit-exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A rational number in `[0,1]`, stored in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grade {
    num: u64,
    den: u64,
}

impl Grade {
    pub const ZERO: Grade = Grade { num: 0, den: 1 };
    pub const ONE: Grade = Grade { num: 1, den: 1 };

    /// Builds `numerator / denominator`, reducing to canonical form.
    pub fn new(numerator: u64, denominator: u64) -> Result<Grade> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        if numerator > denominator {
            return Err(Error::GradeOutOfRange {
                numerator,
                denominator,
            });
        }
        let g = numerator.gcd(&denominator);
        Ok(Grade {
            num: numerator / g,
            den: denominator / g,
        })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_one(self) -> bool {
        self.num == self.den
    }

    /// Greatest lower bound.
    #[inline]
    pub fn meet(self, other: Grade) -> Grade {
        self.min(other)
    }

    /// Least upper bound.
    #[inline]
    pub fn join(self, other: Grade) -> Grade {
        self.max(other)
    }

    /// Numerator of this grade when written over `denominator`, if it is
    /// representable there.
    pub fn scaled_to(self, denominator: u64) -> Option<u64> {
        if denominator.is_multiple_of(self.den) {
            Some(self.num * (denominator / self.den))
        } else {
            None
        }
    }
}

/// Join over an iterator; the empty join is `0`.
pub fn join_all<I: IntoIterator<Item = Grade>>(grades: I) -> Grade {
    grades.into_iter().fold(Grade::ZERO, Grade::join)
}

/// Meet over an iterator; the empty meet is `1`.
pub fn meet_all<I: IntoIterator<Item = Grade>>(grades: I) -> Grade {
    grades.into_iter().fold(Grade::ONE, Grade::meet)
}

impl Ord for Grade {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Grade {
    fn default() -> Self {
        Grade::ZERO
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Grade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Grade> {
        let s = s.trim();
        let bad = || Error::GradeSyntax(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse::<u64>().map_err(|_| bad())?;
                let d = d.trim().parse::<u64>().map_err(|_| bad())?;
                Grade::new(n, d)
            }
            None => {
                let n = s.parse::<u64>().map_err(|_| bad())?;
                Grade::new(n, 1)
            }
        }
    }
}

/// Least common multiple of the denominators of `grades` (1 for an empty
/// collection).
pub fn common_denominator<I: IntoIterator<Item = Grade>>(grades: I) -> u64 {
    grades.into_iter().fold(1u64, |acc, g| acc.lcm(&g.den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: u64, d: u64) -> Grade {
        Grade::new(n, d).unwrap()
    }

    #[test]
    fn meet_examples() {
        assert_eq!(g(1, 2).meet(g(1, 3)), g(1, 3));
        assert_eq!(g(3, 7).meet(Grade::ONE), g(3, 7));
        assert_eq!(g(2, 6).meet(g(1, 3)), g(1, 3));
    }

    #[test]
    fn join_examples() {
        assert_eq!(g(1, 2).join(g(1, 3)), g(1, 2));
        assert_eq!(join_all(std::iter::empty()), Grade::ZERO);
        assert_eq!(meet_all(std::iter::empty()), Grade::ONE);
        assert_eq!(Grade::ZERO.join(g(5, 9)), g(5, 9));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(g(0, 7), Grade::ZERO);
        assert_eq!(g(4, 4), Grade::ONE);
        let x = g(6, 8);
        assert_eq!((x.numerator(), x.denominator()), (3, 4));
        assert_eq!(g(x.numerator(), x.denominator()), x);
    }

    #[test]
    fn rejects_bad_grades() {
        assert_eq!(Grade::new(1, 0), Err(Error::ZeroDenominator));
        assert!(matches!(
            Grade::new(3, 2),
            Err(Error::GradeOutOfRange { .. })
        ));
        assert!("x/2".parse::<Grade>().is_err());
        assert!("3/2".parse::<Grade>().is_err());
    }

    #[test]
    fn display_and_parse() {
        for s in ["0", "1", "1/2", "2/3"] {
            assert_eq!(s.parse::<Grade>().unwrap().to_string(), s);
        }
        assert_eq!("4/6".parse::<Grade>().unwrap(), g(2, 3));
    }

    #[test]
    fn scaling() {
        assert_eq!(g(1, 3).scaled_to(6), Some(2));
        assert_eq!(g(1, 3).scaled_to(4), None);
        assert_eq!(common_denominator([g(1, 2), g(1, 3), Grade::ONE]), 6);
    }

    fn grade() -> impl Strategy<Value = Grade> {
        (1u64..=12).prop_flat_map(|d| (0..=d).prop_map(move |n| Grade::new(n, d).unwrap()))
    }

    proptest! {
        #[test]
        fn bounded_distributive_lattice(a in grade(), b in grade(), c in grade()) {
            prop_assert_eq!(a.join(a.meet(b)), a);
            prop_assert_eq!(a.meet(a.join(b)), a);
            prop_assert_eq!(a.meet(b.join(c)), a.meet(b).join(a.meet(c)));
            prop_assert_eq!(a.join(b.meet(c)), a.join(b).meet(a.join(c)));
            prop_assert_eq!(a.meet(Grade::ONE), a);
            prop_assert_eq!(a.join(Grade::ZERO), a);
        }

        #[test]
        fn order_agrees_with_value(n1 in 0u64..=30, n2 in 0u64..=30) {
            let (a, b) = (Grade::new(n1, 30).unwrap(), Grade::new(n2, 30).unwrap());
            prop_assert_eq!(a.cmp(&b), n1.cmp(&n2));
        }

        #[test]
        fn canonicalization_idempotent(a in grade()) {
            prop_assert_eq!(Grade::new(a.numerator(), a.denominator()).unwrap(), a);
        }
    }
}
