use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::GroupError;

/// Square integer matrix with arbitrary-precision entries, stored row-major.
///
/// The `unitriangular` flag is recomputed by every constructor, so it is true
/// exactly when the matrix lies in `UT_d(Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
    unitriangular: bool,
}

impl IntMatrix {
    pub fn new(dim: usize, entries: Vec<BigInt>) -> Result<Self, GroupError> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(GroupError::InvalidElement(format!(
                "expected {dim}x{dim} entries, got {}",
                entries.len()
            )));
        }
        let unitriangular = check_unitriangular(dim, &entries);
        Ok(IntMatrix {
            dim,
            entries,
            unitriangular,
        })
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, GroupError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(GroupError::InvalidElement("matrix is not square".into()));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        IntMatrix {
            dim,
            entries,
            unitriangular: true,
        }
    }

    /// `Id + value * E_{row,col}` (zero-based indices).
    pub fn elementary(dim: usize, row: usize, col: usize, value: BigInt) -> Self {
        let mut m = Self::identity(dim);
        m.entries[row * dim + col] += value;
        m.unitriangular = check_unitriangular(dim, &m.entries);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_unitriangular(&self) -> bool {
        self.unitriangular
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, GroupError> {
        if self.dim != other.dim {
            return Err(GroupError::Mismatch(format!(
                "matrix dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let d = self.dim;
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k * d + j];
                    if !b.is_zero() {
                        entries[i * d + j] += a * b;
                    }
                }
            }
        }
        let unitriangular = if self.unitriangular && other.unitriangular {
            true
        } else {
            check_unitriangular(d, &entries)
        };
        Ok(IntMatrix {
            dim: d,
            entries,
            unitriangular,
        })
    }

    /// Exact inverse. Only unitriangular matrices are inverted; their inverse
    /// again has integer entries and unit diagonal.
    pub fn inv(&self) -> Result<IntMatrix, GroupError> {
        if !self.unitriangular {
            return Err(GroupError::NotInvertible);
        }
        let d = self.dim;
        // Back substitution on M * X = Id, column by column.
        let mut x = vec![BigInt::zero(); d * d];
        for col in 0..d {
            for row in (0..d).rev() {
                let mut acc = if row == col { BigInt::one() } else { BigInt::zero() };
                for k in row + 1..d {
                    let m = &self.entries[row * d + k];
                    if !m.is_zero() {
                        acc -= m * &x[k * d + col];
                    }
                }
                x[row * d + col] = acc;
            }
        }
        Ok(IntMatrix {
            dim: d,
            entries: x,
            unitriangular: true,
        })
    }

    /// Sum of absolute values of all entries.
    pub fn norm(&self) -> BigInt {
        self.entries.iter().map(|e| e.abs()).sum()
    }
}

fn check_unitriangular(dim: usize, entries: &[BigInt]) -> bool {
    (0..dim).all(|i| {
        (0..dim).all(|j| {
            let e = &entries[i * dim + j];
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => e.is_one(),
                std::cmp::Ordering::Greater => e.is_zero(),
                std::cmp::Ordering::Less => true,
            }
        })
    })
}

/// `|M|`, the sum of absolute entry values.
pub fn ut_norm(m: &IntMatrix) -> BigInt {
    m.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ut3(a: i64, b: i64, c: i64) -> IntMatrix {
        let v = |x: i64| BigInt::from(x);
        IntMatrix::from_rows(vec![
            vec![v(1), v(a), v(c)],
            vec![v(0), v(1), v(b)],
            vec![v(0), v(0), v(1)],
        ])
        .unwrap()
    }

    #[test]
    fn norms() {
        assert_eq!(ut_norm(&IntMatrix::identity(3)), BigInt::from(3));
        assert_eq!(ut_norm(&ut3(1, 1, 0)), BigInt::from(5));
        assert_eq!(ut_norm(&ut3(-2, -4, 5)), BigInt::from(14));
    }

    #[test]
    fn inverse_of_ut3() {
        let m = ut3(2, 4, 3);
        assert_eq!(m.inv().unwrap(), ut3(-2, -4, 5));
        assert_eq!(m.mul(&m.inv().unwrap()).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn flag_tracks_shape() {
        let m = IntMatrix::from_rows(vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(1)],
        ])
        .unwrap();
        assert!(!m.is_unitriangular());
        assert_eq!(m.inv(), Err(GroupError::NotInvertible));
        assert!(ut3(5, -1, 7).is_unitriangular());
    }

    #[test]
    fn dimension_mismatch() {
        let r = IntMatrix::identity(2).mul(&IntMatrix::identity(3));
        assert!(matches!(r, Err(GroupError::Mismatch(_))));
    }
}
