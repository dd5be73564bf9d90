use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Coordinates `(a, b, c)` of the Heisenberg matrix
///
/// ```text
/// 1 a c
/// 0 1 b
/// 0 0 1
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HeisenbergCoord {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl HeisenbergCoord {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        HeisenbergCoord {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_central(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `(a1,b1,c1)(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1*b2)`
    pub fn mul(&self, other: &Self) -> Self {
        HeisenbergCoord {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            c: &self.c + &other.c + &self.a * &other.b,
        }
    }

    pub fn inv(&self) -> Self {
        HeisenbergCoord {
            a: -&self.a,
            b: -&self.b,
            c: &self.a * &self.b - &self.c,
        }
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, n: &BigInt) -> Self {
        if n.is_negative() {
            heisenberg_power(&self.inv(), &-n)
        } else {
            heisenberg_power(self, n)
        }
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let one = BigInt::one;
        let zero = BigInt::zero;
        IntMatrix::new(
            3,
            vec![
                one(),
                self.a.clone(),
                self.c.clone(),
                zero(),
                one(),
                self.b.clone(),
                zero(),
                zero(),
                one(),
            ],
        )
        .expect("3x3")
    }

    /// Reads the coordinates back from a unitriangular 3x3 matrix.
    pub fn from_matrix(m: &IntMatrix) -> Option<Self> {
        if m.dim() != 3 || !m.is_unitriangular() {
            return None;
        }
        Some(HeisenbergCoord {
            a: m.get(0, 1).clone(),
            b: m.get(1, 2).clone(),
            c: m.get(0, 2).clone(),
        })
    }
}

/// Closed form `A^n = (a n, b n, c n + a b (n-1) n / 2)` for `n >= 0`.
pub fn heisenberg_power(base: &HeisenbergCoord, n: &BigInt) -> HeisenbergCoord {
    assert!(!n.is_negative(), "heisenberg_power needs n >= 0");
    let tri: BigInt = (n - 1u32) * n / 2u32;
    HeisenbergCoord {
        a: &base.a * n,
        b: &base.b * n,
        c: &base.c * n + &base.a * &base.b * tri,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iterated(base: &HeisenbergCoord, n: u32) -> HeisenbergCoord {
        (0..n).fold(HeisenbergCoord::identity(), |acc, _| acc.mul(base))
    }

    #[test]
    fn examples() {
        let a = HeisenbergCoord::new(1, 0, 0);
        let b = HeisenbergCoord::new(0, 1, 0);
        assert_eq!(a.mul(&b), HeisenbergCoord::new(1, 1, 1));
        let p = |x: &HeisenbergCoord, n: i64| heisenberg_power(x, &BigInt::from(n));
        assert!(p(&HeisenbergCoord::new(4, -2, 9), 0).is_identity());
        assert_eq!(p(&HeisenbergCoord::new(1, 1, 0), 3), HeisenbergCoord::new(3, 3, 3));
        assert_eq!(p(&HeisenbergCoord::new(0, 0, 5), 2), HeisenbergCoord::new(0, 0, 10));
        assert_eq!(HeisenbergCoord::new(2, 4, 3).inv(), HeisenbergCoord::new(-2, -4, 5));
    }

    #[test]
    fn agrees_with_matrix_product() {
        for (x, y) in [((1, 2, 3), (-4, 5, 6)), ((0, 0, 1), (7, -1, 0)), ((-3, -3, 2), (2, 1, -5))] {
            let x = HeisenbergCoord::new(x.0, x.1, x.2);
            let y = HeisenbergCoord::new(y.0, y.1, y.2);
            let via_matrix = x.to_matrix().mul(&y.to_matrix()).unwrap();
            assert_eq!(HeisenbergCoord::from_matrix(&via_matrix).unwrap(), x.mul(&y));
        }
    }

    #[test]
    fn negative_powers() {
        let x = HeisenbergCoord::new(2, -1, 3);
        let n = BigInt::from(-4);
        assert!(x.pow(&n).mul(&iterated(&x, 4)).is_identity());
    }

    #[test]
    fn commutator_is_central() {
        let x = HeisenbergCoord::new(1, 0, 0);
        let y = HeisenbergCoord::new(0, 1, 0);
        let comm = x.mul(&y).mul(&x.inv()).mul(&y.inv());
        assert_eq!(comm, HeisenbergCoord::new(0, 0, 1));
        assert!(comm.is_central());
    }
}
