//! Cross-module checks: products and locality on concrete modules.

use qva_core::fields::{
    bracket_nth_products, check_certificate, fields_agree, nth_product_residue_at_zero,
    verify_opposite_jacobi, verify_weak_associativity, y_eo_product, Certificate, Field,
    ModuleKind,
};
use qva_core::gamma::{
    banded_vacuum, fock_state, fock_vacuum, heisenberg_infinity_field, BandedModule, FockBasis,
};
use qva_core::scalar::QScalar;
use qva_core::series::{MPoly, RatFn1, UPoly};
use qva_core::vect::Vect;

fn level() -> QScalar {
    QScalar::q()
}

fn heisenberg_vectors() -> Vec<Vect<FockBasis>> {
    vec![
        fock_vacuum(),
        fock_state(&[0]),
        fock_state(&[1]),
        fock_state(&[1, 0]),
        fock_state(&[2, 1]),
    ]
}

#[test]
fn heisenberg_certificate_verifies() {
    let a = heisenberg_infinity_field(&level());
    let cert: Certificate<FockBasis> = Certificate::power(2);
    let out = check_certificate(&cert, &a, &a, &heisenberg_vectors(), 4).unwrap();
    assert!(out.ok, "{:?}", out.counterexample);
}

#[test]
fn heisenberg_failing_certificate_reports_cell() {
    // p = 1 does not clear the derivative-delta bracket
    let a = heisenberg_infinity_field(&level());
    let cert: Certificate<FockBasis> = Certificate::power(0);
    let out = check_certificate(&cert, &a, &a, &[fock_state(&[1])], 3).unwrap();
    assert!(!out.ok);
    assert!(out.counterexample.is_some());
}

#[test]
fn heisenberg_nth_products() {
    let a = heisenberg_infinity_field(&level());
    let cert: Certificate<FockBasis> = Certificate::power(2);
    let vectors = heisenberg_vectors();
    // a_1 a = -level * identity
    let p1 = y_eo_product(&a, &a, &cert, 1).unwrap();
    let expect = Field::identity(ModuleKind::AtInfinity).scale(&level().neg());
    let out = fields_agree("a1a", &p1, &expect, &vectors, -5, 5);
    assert!(out.ok, "{:?}", out.counterexample);
    // a_0 a = 0 and a_n a = 0 for 2 <= n <= 6
    for n in [0i64, 2, 3, 4, 5, 6] {
        let pn = y_eo_product(&a, &a, &cert, n).unwrap();
        let zero = Field::zero_field(ModuleKind::AtInfinity);
        let out = fields_agree(&format!("a{n}a"), &pn, &zero, &vectors, -5, 5);
        assert!(out.ok, "n={n}: {:?}", out.counterexample);
    }
}

#[test]
fn identity_products_reduce_to_translation() {
    // Y(1, x0) a = a; Y(a, x0) 1 = a(x + x0), i.e. a_{-j-1} 1 = d^j a / j!
    let a = heisenberg_infinity_field(&level());
    let one: Field<FockBasis> = Field::identity(ModuleKind::AtInfinity);
    let cert: Certificate<FockBasis> = Certificate::power(0);
    let vectors = heisenberg_vectors();
    let p = y_eo_product(&one, &a, &cert, -1).unwrap();
    let out = fields_agree("1_{-1}a", &p, &a, &vectors, -5, 5);
    assert!(out.ok, "{:?}", out.counterexample);
    for n in 0..3 {
        let p = y_eo_product(&one, &a, &cert, n).unwrap();
        let zero = Field::zero_field(ModuleKind::AtInfinity);
        let out = fields_agree("1_n a", &p, &zero, &vectors, -5, 5);
        assert!(out.ok, "n={n}: {:?}", out.counterexample);
    }
    // a_{-2} 1 is the derivative field: modes -m a(m-1)
    let p = y_eo_product(&a, &one, &cert, -2).unwrap();
    let aa = a.clone();
    let da = Field::new(
        "da",
        ModuleKind::AtInfinity,
        move |m, w| aa.act(m - 1, w).scale(&QScalar::from_i64(-m)),
        {
            let ab = a.clone();
            move |w| ab.bound(w) + 1
        },
    );
    let out = fields_agree("a_{-2}1", &p, &da, &vectors, -5, 5);
    assert!(out.ok, "{:?}", out.counterexample);
}

#[test]
fn bracket_route_matches_substitution_route_heisenberg() {
    let a = heisenberg_infinity_field(&level());
    let module = BandedModule::new(1, level());
    let _ = module;
    // decomposition of -[a(x1), a(x2)]: a single derivative delta at the
    // identity argument with coefficient -level
    use qva_core::fields::{BracketDecomposition, DecompositionTerm};
    use qva_core::series::AffineQ;
    let deco = BracketDecomposition::new(
        ModuleKind::AtInfinity,
        vec![DecompositionTerm {
            map: AffineQ::identity(),
            order: 1,
            field: Field::identity(ModuleKind::AtInfinity).scale(&level().neg()),
        }],
    )
    .unwrap();
    let products = bracket_nth_products(&deco).unwrap();
    let cert: Certificate<FockBasis> = Certificate::power(2);
    let vectors = heisenberg_vectors();
    for (n, field) in &products {
        let sub = y_eo_product(&a, &a, &cert, *n).unwrap();
        let out = fields_agree(&format!("route-agreement n={n}"), field, &sub, &vectors, -4, 4);
        assert!(out.ok, "n={n}: {:?}", out.counterexample);
    }
}

#[test]
fn banded_bracket_decomposition_matches_products() {
    // the shifted-delta instance: bands (1, 0) have one identity-argument
    // delta (the x2 + 0 term) and one genuinely shifted delta at x2 - 1
    let module = BandedModule::new(4, level());
    let a1 = module.band_field(1);
    let a0 = module.band_field(0);
    let vacuum = banded_vacuum();
    let vectors = vec![
        vacuum.clone(),
        module.apply(0, 1, &vacuum),
        module.apply(1, 0, &vacuum),
        module.apply(2, 2, &module.apply(0, 1, &vacuum)),
    ];
    // quasi-locality certificate (x1 - x2)(x1 - x2 + 1)
    let ids = ["x1", "x2"];
    let p = MPoly::var(&ids, "x1")
        .sub(&MPoly::var(&ids, "x2"))
        .mul(
            &MPoly::var(&ids, "x1")
                .sub(&MPoly::var(&ids, "x2"))
                .add(&MPoly::constant(&ids, QScalar::one())),
        );
    let cert = Certificate::with_poly(p).unwrap();
    let out = check_certificate(&cert, &a1, &a0, &vectors, 4).unwrap();
    assert!(out.ok, "{:?}", out.counterexample);

    let deco = module.bracket_decomposition(1, 0).unwrap();
    let products = bracket_nth_products(&deco).unwrap();
    // order-0 identity coefficient is -A_1, everything else zero
    for (n, field) in &products {
        let sub = y_eo_product(&a1, &a0, &cert, *n).unwrap();
        let out = fields_agree(&format!("banded n={n}"), field, &sub, &vectors, -4, 4);
        assert!(out.ok, "n={n}: {:?}", out.counterexample);
    }
    // and the products for a genuinely shifted pair vanish from n = 0 up
    let a2 = module.band_field(2);
    let p12 = MPoly::var(&ids, "x1")
        .sub(&MPoly::var(&ids, "x2"))
        .sub(&MPoly::constant(&ids, QScalar::from_i64(2)))
        .mul(
            &MPoly::var(&ids, "x1")
                .sub(&MPoly::var(&ids, "x2"))
                .add(&MPoly::constant(&ids, QScalar::one())),
        );
    let cert12 = Certificate::with_poly(p12).unwrap();
    let out = check_certificate(&cert12, &a1, &a2, &vectors, 4).unwrap();
    assert!(out.ok, "{:?}", out.counterexample);
    for n in 0..3 {
        let sub = y_eo_product(&a1, &a2, &cert12, n).unwrap();
        let zero = Field::zero_field(ModuleKind::AtInfinity);
        let out = fields_agree("shifted-pair", &sub, &zero, &vectors, -4, 4);
        assert!(out.ok, "n={n}: {:?}", out.counterexample);
    }
}

#[test]
fn weak_associativity_heisenberg() {
    let a = heisenberg_infinity_field(&level());
    let vectors = vec![fock_vacuum(), fock_state(&[0]), fock_state(&[1, 0])];
    // composite pairs need higher clearing powers; search them per pair
    let sv = vectors.clone();
    let certs = move |x: &Field<FockBasis>, y: &Field<FockBasis>| -> Certificate<FockBasis> {
        qva_core::fields::search_power_certificate(x, y, &sv, 12, 12)
            .expect("power certificate exists")
    };
    let out = verify_weak_associativity(&a, &a, &a, &certs, 2, &vectors, 4).unwrap();
    assert!(out.ok, "{:?}", out.counterexample);
}

#[test]
fn weak_associativity_with_identity_argument() {
    let a = heisenberg_infinity_field(&level());
    let one: Field<FockBasis> = Field::identity(ModuleKind::AtInfinity);
    let vectors = vec![fock_vacuum(), fock_state(&[1])];
    let certs =
        |x: &Field<FockBasis>, y: &Field<FockBasis>| -> Certificate<FockBasis> {
            if x.label == "1" || y.label == "1" {
                Certificate::power(0)
            } else {
                Certificate::power(2)
            }
        };
    let out = verify_weak_associativity(&one, &a, &a, &certs, 0, &vectors, 3).unwrap();
    assert!(out.ok, "{:?}", out.counterexample);
    let out = verify_weak_associativity(&a, &a, &one, &certs, 2, &vectors, 3).unwrap();
    assert!(out.ok, "{:?}", out.counterexample);
}

#[test]
fn opposite_jacobi_heisenberg() {
    let a = heisenberg_infinity_field(&level());
    // commutative exchange data: f = 1, pair (a, a)
    let cert = Certificate::braided(
        2,
        vec![(RatFn1::one(), a.clone(), a.clone())],
    );
    let vectors = vec![fock_vacuum(), fock_state(&[0]), fock_state(&[1, 0])];
    let out = verify_opposite_jacobi(&a, &a, &cert, &vectors, 4).unwrap();
    assert!(out.ok, "{:?}", out.counterexample);
}

#[test]
fn opposite_jacobi_with_identity() {
    let a = heisenberg_infinity_field(&level());
    let one: Field<FockBasis> = Field::identity(ModuleKind::AtInfinity);
    let cert = Certificate::braided(0, vec![(RatFn1::one(), a.clone(), one.clone())]);
    let vectors = vec![fock_vacuum(), fock_state(&[1])];
    let out = verify_opposite_jacobi(&one, &a, &cert, &vectors, 3).unwrap();
    assert!(out.ok, "{:?}", out.counterexample);
}

#[test]
fn residue_route_matches_substitution_route_at_zero() {
    // generating fields of the superalgebra module are of at-zero type;
    // their braided data: ee and ff anticommute (f = -1), ef anticommutes
    // up to the central field, h commutes with everything
    use qva_core::dy::DyCtx;
    use qva_core::superfock::{apply_mode, vacuum, weight_basis, Gen, Mode};
    use std::sync::Arc;

    let _ = DyCtx::symbolic();
    let mk = |g: Gen| -> Field<qva_core::superfock::SuperMonomial> {
        Field::new(
            format!("{g:?}"),
            ModuleKind::AtZero,
            move |n, w| apply_mode(Mode::new(g, n), w),
            |w| {
                w.iter()
                    .map(|(m, _)| m.weight())
                    .max()
                    .unwrap_or(0)
            },
        )
    };
    let e = Arc::new(mk(Gen::E));
    let f = mk(Gen::F);
    let h = mk(Gen::H);
    let minus_one = RatFn1::new(
        UPoly::constant(QScalar::from_i64(-1)),
        UPoly::constant(QScalar::one()),
    )
    .unwrap();
    let mut vectors = vec![vacuum()];
    for d in 1..=2 {
        for m in weight_basis(d) {
            vectors.push(Vect::single(m));
        }
    }
    // (e, f): k = 1, exchange -1 (the delta term is cleared by the power)
    let cert_ef = Certificate::braided(1, vec![(minus_one.clone(), f.clone(), (*e).clone())]);
    for n in 0..=3i64 {
        let sub = y_eo_product(&e, &f, &cert_ef, n).unwrap();
        for w in &vectors {
            for m in -3..=3i64 {
                let res =
                    nth_product_residue_at_zero(&e, &f, &cert_ef.pairs, n, m, w).unwrap();
                let direct = sub.act(m, w);
                assert_eq!(direct, res, "ef n={n} m={m}");
            }
        }
    }
    // (h, h): commuting, k = 0, exchange +1
    let cert_hh = Certificate::braided(0, vec![(RatFn1::one(), h.clone(), h.clone())]);
    for n in 0..=2i64 {
        let sub = y_eo_product(&h, &h, &cert_hh, n).unwrap();
        for w in &vectors {
            for m in -3..=3i64 {
                let res =
                    nth_product_residue_at_zero(&h, &h, &cert_hh.pairs, n, m, w).unwrap();
                assert_eq!(sub.act(m, w), res, "hh n={n} m={m}");
            }
        }
    }
}
