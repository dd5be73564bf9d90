use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::HardnessError;
use crate::group::{quad_compare, QuadInt};

/// Digits `x_0..x_n` in `{0..5}` denoting `sum x_i alpha^(3i)`, where
/// `alpha = 1 + sqrt 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct AlphaDigits(Vec<u8>);

impl AlphaDigits {
    pub fn new(digits: Vec<u8>) -> Result<Self, HardnessError> {
        if let Some(&d) = digits.iter().find(|&&d| d > 5) {
            return Err(HardnessError::DigitOutOfRange(d));
        }
        Ok(AlphaDigits(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    /// Digits with trailing zeros removed.
    pub fn normalized(&self) -> Vec<u8> {
        let mut v = self.0.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

impl TryFrom<Vec<u8>> for AlphaDigits {
    type Error = HardnessError;
    fn try_from(v: Vec<u8>) -> Result<Self, HardnessError> {
        AlphaDigits::new(v)
    }
}

impl From<AlphaDigits> for Vec<u8> {
    fn from(d: AlphaDigits) -> Self {
        d.0
    }
}

/// `alpha^(3i)`.
pub fn alpha_cube_power(i: usize) -> QuadInt {
    QuadInt::alpha().pow(3 * i as u32)
}

pub fn alpha_value(d: &AlphaDigits) -> QuadInt {
    d.digits()
        .iter()
        .enumerate()
        .fold(QuadInt::zero(), |acc, (i, &x)| {
            acc.add(&alpha_cube_power(i).scale(&BigInt::from(x)))
        })
}

/// `sum_{i<n} 5 alpha^(3i) < alpha^(3n)`.
pub fn alpha_inequality_holds(n: usize) -> bool {
    let lhs = (0..n).fold(QuadInt::zero(), |acc, i| {
        acc.add(&alpha_cube_power(i).scale(&BigInt::from(5)))
    });
    quad_compare(&lhs, &alpha_cube_power(n)).is_lt()
}

/// Exhaustively checks that distinct digit strings of length at most
/// `n_max` (up to trailing zeros) have distinct values, and that the
/// separating inequality holds for every `n <= n_max`.
pub fn check_digit_uniqueness(n_max: usize) -> bool {
    let mut seen = HashSet::new();
    let total = 6usize.pow(n_max as u32);
    for code in 0..total {
        let mut c = code;
        let digits: Vec<u8> = (0..n_max)
            .map(|_| {
                let d = (c % 6) as u8;
                c /= 6;
                d
            })
            .collect();
        let v = alpha_value(&AlphaDigits(digits));
        if !seen.insert(v) {
            return false;
        }
    }
    (1..=n_max).all(alpha_inequality_holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[u8]) -> AlphaDigits {
        AlphaDigits::new(v.to_vec()).unwrap()
    }

    #[test]
    fn values() {
        assert_eq!(alpha_value(&d(&[5])), QuadInt::new(5, 0));
        assert_eq!(alpha_value(&d(&[0, 1])), QuadInt::new(7, 5));
        assert_eq!(alpha_value(&d(&[5, 5])), QuadInt::new(40, 25));
        assert!(AlphaDigits::new(vec![6]).is_err());
        assert_eq!(d(&[1, 0, 0]).normalized(), vec![1]);
    }

    #[test]
    fn uniqueness_small() {
        assert!(check_digit_uniqueness(1));
        assert!(check_digit_uniqueness(2));
        assert!(alpha_inequality_holds(1));
    }
}
