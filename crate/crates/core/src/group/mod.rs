//! Exact arithmetic for the concrete groups used throughout the crate:
//! `UT_d(Z)`, `H3(Z) x Z^e`, `G_alpha <= GL_2(R)` with `alpha = 1 + sqrt 2`,
//! `Z^n`, the infinite dihedral group, and flat direct products of these.

mod descriptor;
mod dihedral;
mod element;
mod heisenberg;
mod matrix;
mod quad;
mod word;

pub use descriptor::{evaluate_with, letter_of, GroupDescriptor};
pub use dihedral::DihedralElement;
pub use element::{ElementRepr, GroupElement};
pub use heisenberg::{heisenberg_power, HeisenbergCoord};
pub use matrix::{ut_norm, IntMatrix};
pub use quad::{quad_compare, QuadInt, QuadMatrix};
pub use word::GeneratorWord;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group mismatch: {0}")]
    Mismatch(String),
    #[error("generator {index} out of range for a group with {count} generators")]
    GeneratorOutOfRange { index: i64, count: usize },
    #[error("letter 0 is not a generator")]
    ZeroLetter,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
}

/// `x * y`; both must live in the same group.
pub fn mul(x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
    x.mul(y)
}

pub fn inv(x: &GroupElement) -> Result<GroupElement, GroupError> {
    x.inv()
}

pub fn evaluate_word(w: &GeneratorWord, group: &GroupDescriptor) -> Result<GroupElement, GroupError> {
    group.evaluate_word(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn multiplication_examples() {
        let id3 = GroupDescriptor::Ut { d: 3 }.identity();
        let m = GroupDescriptor::Ut { d: 3 }
            .evaluate_word(&GeneratorWord::new(vec![1, 2, -3, 1]).unwrap())
            .unwrap();
        assert_eq!(mul(&id3, &m).unwrap(), m);
        assert_eq!(
            mul(&GroupElement::heis(1, 0, 0), &GroupElement::heis(0, 1, 0)).unwrap(),
            GroupElement::heis(1, 1, 1)
        );
        assert_eq!(
            mul(&GroupElement::dihedral(0, true), &GroupElement::dihedral(1, false)).unwrap(),
            GroupElement::dihedral(-1, true)
        );
    }

    #[test]
    fn mismatch_is_an_error() {
        let r = mul(&GroupElement::heis(1, 0, 0), &GroupElement::vector(&[1]));
        assert!(matches!(r, Err(GroupError::Mismatch(_))));
        let r = mul(&GroupElement::vector(&[1, 2]), &GroupElement::vector(&[1]));
        assert!(matches!(r, Err(GroupError::Mismatch(_))));
    }

    #[test]
    fn inverse_examples() {
        let id3 = GroupDescriptor::Ut { d: 3 }.identity();
        assert_eq!(inv(&id3).unwrap(), id3);
        let m = GroupElement::Matrix(HeisenbergCoord::new(2, 4, 3).to_matrix());
        assert_eq!(
            inv(&m).unwrap(),
            GroupElement::Matrix(HeisenbergCoord::new(-2, -4, 5).to_matrix())
        );
        assert_eq!(
            inv(&GroupElement::dihedral(3, true)).unwrap(),
            GroupElement::dihedral(3, true)
        );
    }

    #[test]
    fn word_examples() {
        let g = GroupDescriptor::Galpha;
        assert!(g.evaluate_word(&GeneratorWord::empty()).unwrap().is_identity());
        let w = g.evaluate_word(&GeneratorWord::new(vec![1, 2, -1]).unwrap()).unwrap();
        assert_eq!(w, GroupElement::Quad(QuadMatrix::upper_shear(QuadInt::alpha())));
        let h = GroupDescriptor::HeisZe { e: 0 };
        let comm = h.evaluate_word(&GeneratorWord::new(vec![1, 2, -1, -2]).unwrap()).unwrap();
        assert_eq!(comm, GroupElement::heis(0, 0, 1));
    }

    #[test]
    fn out_of_range_letter() {
        let r = GroupDescriptor::Dinf.evaluate_word(&GeneratorWord::new(vec![3]).unwrap());
        assert_eq!(r, Err(GroupError::GeneratorOutOfRange { index: 3, count: 2 }));
        assert_eq!(GeneratorWord::new(vec![1, 0]), Err(GroupError::ZeroLetter));
    }

    #[test]
    fn generator_orders() {
        assert_eq!(GroupDescriptor::Ut { d: 1 }.generator_count(), 0);
        assert_eq!(GroupDescriptor::Ut { d: 4 }.generators().len(), 6);
        let p = GroupDescriptor::product(vec![
            GroupDescriptor::Dinf,
            GroupDescriptor::product(vec![GroupDescriptor::Z { n: 2 }, GroupDescriptor::HeisZe { e: 1 }]),
        ]);
        assert_eq!(p.factors().len(), 3);
        assert_eq!(p.generators().len(), p.generator_count());
        assert_eq!(p.generator_count(), 2 + 2 + 4);
        // ut(3) generators line up with the Heisenberg coordinates
        let ut = GroupDescriptor::Ut { d: 3 }.generators();
        for (g, c) in ut.iter().zip([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) {
            match g {
                GroupElement::Matrix(m) => {
                    assert_eq!(HeisenbergCoord::from_matrix(m).unwrap(), HeisenbergCoord::new(c.0, c.1, c.2))
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn descriptor_json() {
        let p: GroupDescriptor = serde_json::from_str(
            r#"{"type":"product","factors":[{"type":"ut","d":3},{"type":"heis_ze","e":1},{"type":"galpha"},{"type":"dinf"},{"type":"z","n":2}]}"#,
        )
        .unwrap();
        assert_eq!(p.factors().len(), 5);
        let s = serde_json::to_string(&GroupDescriptor::Z { n: 2 }).unwrap();
        assert_eq!(s, r#"{"type":"z","n":2}"#);
        let w: GeneratorWord = serde_json::from_str("[1,-2,3]").unwrap();
        assert_eq!(w.letters(), &[1, -2, 3]);
        assert!(serde_json::from_str::<GeneratorWord>("[1,0]").is_err());
    }

    #[test]
    fn element_json() {
        let xs = vec![
            GroupElement::heis(1, -2, 3),
            GroupElement::dihedral(-4, true),
            GroupElement::Quad(QuadMatrix::g_alpha()),
            GroupElement::Product(vec![GroupElement::vector(&[1, 2]), GroupElement::heis(0, 0, 1)]),
            GroupElement::Matrix(IntMatrix::elementary(3, 0, 2, BigInt::from(7))),
        ];
        for x in xs {
            let s = serde_json::to_string(&x).unwrap();
            let back: GroupElement = serde_json::from_str(&s).unwrap();
            assert_eq!(back, x, "{s}");
        }
    }
}
