//! probe: composite product fields against normal-ordered oracles

use qva_core::fields::{y_eo_product, Certificate, Field, ModuleKind};
use qva_core::gamma::{fock_state, fock_vacuum, heisenberg_infinity_field, FockBasis};
use qva_core::scalar::QScalar;
use qva_core::vect::Vect;

fn level() -> QScalar { QScalar::q() }

// :a(x)a(x): with derivative weight on the first factor:
//   (a_{-j-1} a)(r) = sum_{s<=-1} C(-s-1, j) a(s) a(r-s-1+... )
// classical formula: (u_{-j-1} v)(r) = sum_{s<=-j-1} C(-s-1, j) u(s) v(r-s+j)
//                                + sum_{s>=-j} C(-s-1, j) v(r-s+j) u(s)  ... (at-zero VOA)
// For the AT-INFINITY side the roles flip; probe empirically which matches.
#[test]
fn probe_a_minus1_a() {
    let a = heisenberg_infinity_field(&level());
    let cert: Certificate<FockBasis> = Certificate::power(2);
    let c = y_eo_product(&a, &a, &cert, -1).unwrap();
    for w in [fock_vacuum(), fock_state(&[1]), fock_state(&[2, 0])] {
        for r in -4..=4i64 {
            let direct = c.act(r, &w);
            // normal-ordered oracle: sum over splittings with annihilators
            // (s <= -1) moved right:
            //   c(r) = sum_{s >= 0} a(s) a(r-s-1)  [creation left]
            //        + sum_{s <= -1} a(r-s-1) a(s) [annihilator right]
            let mut oracle = Vect::zero();
            for s in -12..=12i64 {
                let term = if s >= 0 {
                    a.act(s, &a.act(r - s - 1, &w))
                } else {
                    a.act(r - s - 1, &a.act(s, &w))
                };
                oracle.add_assign(&term);
            }
            if direct != oracle {
                panic!("mismatch r={r}, w={w:?}:\n direct={direct:?}\n oracle={oracle:?}");
            }
        }
    }
}

#[test]
fn probe_a2_on_derivative_field() {
    let a = heisenberg_infinity_field(&level());
    let one: Field<FockBasis> = Field::identity(ModuleKind::AtInfinity);
    let cert0: Certificate<FockBasis> = Certificate::power(0);
    // da = a_{-2} 1 is the derivative field
    let da = y_eo_product(&a, &one, &cert0, -2).unwrap();
    // bracket [a(z), da(w)] carries a second-derivative delta: k = 3
    let cert3: Certificate<FockBasis> = Certificate::power(3);
    let c = y_eo_product(&a, &da, &cert3, 2).unwrap();
    let got = c.act(-1, &fock_vacuum());
    let expect = fock_vacuum().scale(&level().scale_rat(&qva_core::scalar::Rat::from_i64(-2)));
    assert_eq!(got, expect, "a_2(da) should be -2*level*identity");
}
