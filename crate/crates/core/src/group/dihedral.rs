use num_bigint::BigInt;
use num_traits::Zero;

/// Element `(n, sigma)` of the infinite dihedral group, acting on `Z` by
/// `x -> (-1)^sigma x + n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DihedralElement {
    pub shift: BigInt,
    pub flip: bool,
}

impl DihedralElement {
    pub fn new(shift: impl Into<BigInt>, flip: bool) -> Self {
        DihedralElement {
            shift: shift.into(),
            flip,
        }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.shift.is_zero() && !self.flip
    }

    /// `(n, s)(m, t) = (n + (-1)^s m, s xor t)`
    pub fn mul(&self, o: &Self) -> Self {
        let shift = if self.flip {
            &self.shift - &o.shift
        } else {
            &self.shift + &o.shift
        };
        DihedralElement {
            shift,
            flip: self.flip ^ o.flip,
        }
    }

    pub fn inv(&self) -> Self {
        if self.flip {
            self.clone()
        } else {
            DihedralElement::new(-&self.shift, false)
        }
    }
}
