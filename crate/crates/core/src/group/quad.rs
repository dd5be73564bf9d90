use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::GroupError;

/// An element `p + q*sqrt(2)` of `Z[sqrt 2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadInt {
    pub p: BigInt,
    pub q: BigInt,
}

impl QuadInt {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        QuadInt {
            p: p.into(),
            q: q.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }

    /// `1 + sqrt 2`.
    pub fn alpha() -> Self {
        QuadInt::new(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadInt {
            p: &self.p + &o.p,
            q: &self.q + &o.q,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadInt {
            p: &self.p - &o.p,
            q: &self.q - &o.q,
        }
    }

    pub fn neg(&self) -> Self {
        QuadInt {
            p: -&self.p,
            q: -&self.q,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        QuadInt {
            p: &self.p * &o.p + 2u32 * &self.q * &o.q,
            q: &self.p * &o.q + &self.q * &o.p,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadInt {
            p: &self.p * k,
            q: &self.q * k,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QuadInt::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Field norm `p^2 - 2 q^2`.
    pub fn norm(&self) -> BigInt {
        &self.p * &self.p - 2u32 * &self.q * &self.q
    }

    /// Inverse in `Z[sqrt 2]`, defined for units (norm `+-1`).
    pub fn unit_inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_one() {
            Some(QuadInt::new(self.p.clone(), -&self.q))
        } else if (-&n).is_one() {
            Some(QuadInt::new(-&self.p, self.q.clone()))
        } else {
            None
        }
    }

    /// Sign of the real number `p + q sqrt 2`, decided without floating point.
    pub fn signum(&self) -> Ordering {
        let ps = self.p.sign();
        let qs = self.q.sign();
        use num_bigint::Sign::*;
        match (ps, qs) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
            // p > 0 > q: positive iff p^2 > 2 q^2
            (Plus, Minus) => self.norm().cmp(&BigInt::zero()),
            // p < 0 < q: positive iff 2 q^2 > p^2
            (Minus, Plus) => BigInt::zero().cmp(&self.norm()),
        }
    }
}

/// Exact order of the real values of two elements of `Z[sqrt 2]`.
pub fn quad_compare(x: &QuadInt, y: &QuadInt) -> Ordering {
    x.sub(y).signum()
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_compare(self, other)
    }
}

/// 2x2 matrix over `Z[sqrt 2]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadMatrix {
    pub entries: [QuadInt; 4],
}

impl QuadMatrix {
    pub fn new(a: QuadInt, b: QuadInt, c: QuadInt, d: QuadInt) -> Self {
        QuadMatrix {
            entries: [a, b, c, d],
        }
    }

    pub fn identity() -> Self {
        Self::new(QuadInt::one(), QuadInt::zero(), QuadInt::zero(), QuadInt::one())
    }

    /// `diag(1 + sqrt 2, 1)`.
    pub fn g_alpha() -> Self {
        Self::new(QuadInt::alpha(), QuadInt::zero(), QuadInt::zero(), QuadInt::one())
    }

    /// The elementary shear `[[1,1],[0,1]]`.
    pub fn shear() -> Self {
        Self::upper_shear(QuadInt::one())
    }

    /// `[[1,y],[0,1]]`.
    pub fn upper_shear(y: QuadInt) -> Self {
        Self::new(QuadInt::one(), y, QuadInt::zero(), QuadInt::one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &o.entries;
        Self::new(
            a.mul(e).add(&b.mul(g)),
            a.mul(f).add(&b.mul(h)),
            c.mul(e).add(&d.mul(g)),
            c.mul(f).add(&d.mul(h)),
        )
    }

    pub fn det(&self) -> QuadInt {
        let [a, b, c, d] = &self.entries;
        a.mul(d).sub(&b.mul(c))
    }

    /// Inverse when the determinant is a unit of `Z[sqrt 2]`; always the case
    /// inside `G_alpha`, whose determinants are powers of `alpha`.
    pub fn inv(&self) -> Result<Self, GroupError> {
        let dinv = self.det().unit_inverse().ok_or(GroupError::NotInvertible)?;
        let [a, b, c, d] = &self.entries;
        Ok(Self::new(
            d.mul(&dinv),
            b.neg().mul(&dinv),
            c.neg().mul(&dinv),
            a.mul(&dinv),
        ))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}
