//! Exact arithmetic in Q and in the field Q(q), the coefficient field for
//! every structure in this crate.

mod poly;
mod qscalar;
mod rational;
pub mod text;

pub use poly::QPoly;
pub use qscalar::QScalar;
pub use rational::Rat;

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| Rat::new(n, d))
    }

    fn arb_poly(max_deg: u32) -> impl Strategy<Value = QPoly> {
        proptest::collection::vec((0..=max_deg, arb_rat()), 0..4)
            .prop_map(QPoly::from_coeffs)
    }

    fn arb_qscalar() -> impl Strategy<Value = QScalar> {
        (arb_poly(3), arb_poly(3))
            .prop_filter_map("nonzero denominator", |(n, d)| QScalar::new(n, d).ok())
    }

    proptest! {
        #[test]
        fn add_associative(a in arb_qscalar(), b in arb_qscalar(), c in arb_qscalar()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        }

        #[test]
        fn mul_distributes(a in arb_qscalar(), b in arb_qscalar(), c in arb_qscalar()) {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn mul_inverse(a in arb_qscalar()) {
            prop_assume!(!a.is_zero());
            prop_assert!(a.mul(&a.recip().unwrap()).is_one());
        }

        #[test]
        fn eval_is_homomorphism(a in arb_qscalar(), b in arb_qscalar(), q0 in 1i64..10) {
            let q0 = Rat::from_i64(q0);
            let lhs = a.mul(&b).eval(&q0);
            let (ra, rb) = (a.eval(&q0), b.eval(&q0));
            if let (Ok(l), Ok(ra), Ok(rb)) = (lhs, ra, rb) {
                prop_assert_eq!(l, &ra * &rb);
            }
            let lhs = a.add(&b).eval(&q0);
            let (ra, rb) = (a.eval(&q0), b.eval(&q0));
            if let (Ok(l), Ok(ra), Ok(rb)) = (lhs, ra, rb) {
                prop_assert_eq!(l, &ra + &rb);
            }
        }

        #[test]
        fn text_round_trip(a in arb_qscalar()) {
            let s = a.to_string();
            let back: QScalar = s.parse().unwrap();
            prop_assert_eq!(a, back);
        }
    }
}
