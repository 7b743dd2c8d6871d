//! Sparse multivariate Laurent series with expansion-region tags and exact
//! windows, the directional expansions of rational functions, shift
//! substitution, residues, and formal delta distributions.

mod core;
mod delta;
mod iota;
pub mod json;
mod mpoly;
mod xint;

pub use self::core::{CellWitness, Coeff, QSeries, Region, Series, VarSpec};
pub use delta::{AffineQ, DeltaTerm, ScalarMul};
pub use iota::{iota_expand, polynomial_series};
pub use mpoly::{qbinom, MPoly, RatFn, RatFn1, UPoly};
pub use xint::{Span, XInt};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QScalar;

    fn q() -> QScalar {
        QScalar::q()
    }

    fn win(lo: i64, hi: i64) -> Span {
        Span::fin(lo, hi)
    }

    /// 1/(x - q) at infinity: sum_{i>=0} q^i x^{-i-1}.
    #[test]
    fn expand_at_infinity_matches_table() {
        let vars = [VarSpec::at_infinity("x")];
        let f = RatFn::new(
            MPoly::var(&["x"], "x"),
            MPoly::var(&["x"], "x"),
        )
        .unwrap();
        let f = RatFn::new(
            MPoly::var(&["x"], "x").sub(&MPoly::constant(&["x"], q())),
            MPoly::constant(&["x"], QScalar::one()),
        )
        .unwrap()
        .recip()
        .unwrap();
        let s = iota_expand(&f, &vars, &[win(-8, 8)]).unwrap();
        for i in 0..=7i64 {
            assert_eq!(s.get(&[-i - 1]), q().pow(i).unwrap(), "coefficient at -i-1");
        }
        assert!(s.get(&[0]).is_zero());
        assert!(s.get(&[3]).is_zero());
    }

    /// 1/(-q + x) at zero: -sum_{i>=0} q^{-i-1} x^i.
    #[test]
    fn expand_at_zero_matches_table() {
        let vars = [VarSpec::at_zero("x")];
        let f = RatFn::new(
            MPoly::constant(&["x"], QScalar::one()),
            MPoly::var(&["x"], "x").sub(&MPoly::constant(&["x"], q())),
        )
        .unwrap();
        let s = iota_expand(&f, &vars, &[win(-8, 8)]).unwrap();
        for i in 0..=8i64 {
            assert_eq!(s.get(&[i]), q().pow(-i - 1).unwrap().neg());
        }
    }

    /// 1/(x1 - x2) in (x1 at infinity; x2 at zero): sum x2^i x1^{-i-1}.
    #[test]
    fn geometric_series_bivariate() {
        let ids = ["x1", "x2"];
        let vars = [VarSpec::at_infinity("x1"), VarSpec::at_zero("x2")];
        let f = RatFn::new(
            MPoly::constant(&ids, QScalar::one()),
            MPoly::var(&ids, "x1").sub(&MPoly::var(&ids, "x2")),
        )
        .unwrap();
        let s = iota_expand(&f, &vars, &[win(-6, 6), win(0, 6)]).unwrap();
        for i in 0..=5i64 {
            assert!(s.get(&[-i - 1, i]).is_one());
        }
        assert!(s.get(&[-1, 1]).is_zero());
        assert!(s.get(&[-2, 0]).is_zero());
    }

    /// Multiplying a truncated expansion by its denominator returns 1 on
    /// the window where the product is exact.
    #[test]
    fn expansion_times_denominator_is_one() {
        let vars = [VarSpec::at_infinity("x")];
        let den = MPoly::var(&["x"], "x").sub(&MPoly::constant(&["x"], q()));
        let f = RatFn::new(MPoly::constant(&["x"], QScalar::one()), den.clone()).unwrap();
        let s = iota_expand(&f, &vars, &[win(-9, 9)]).unwrap();
        let p = polynomial_series(&den, &vars);
        let prod = s.mul(&p).unwrap();
        let one = Series::from_parts(
            vars.to_vec(),
            vec![Span::point(0)],
            vec![Span::full()],
            [(vec![0i64], QScalar::one())],
        );
        let diff = prod.sub(&one).unwrap();
        assert!(diff
            .vanishes_on(&[("x".to_string(), win(-8, 8))])
            .unwrap()
            .is_none());
    }

    /// Region tags refuse to mix: the same variable expanded at zero and at
    /// infinity cannot appear in one product.
    #[test]
    fn region_mismatch_is_an_error() {
        let az = Series::<QScalar>::from_parts(
            vec![VarSpec::at_zero("x")],
            vec![Span::point(0)],
            vec![Span::full()],
            [(vec![0i64], QScalar::one())],
        );
        let ai = Series::<QScalar>::from_parts(
            vec![VarSpec::at_infinity("x")],
            vec![Span::point(0)],
            vec![Span::full()],
            [(vec![0i64], QScalar::one())],
        );
        assert!(matches!(
            az.mul(&ai),
            Err(crate::EngineError::RegionMismatch(_))
        ));
    }

    /// Two bilateral-in-the-same-variable factors have no certifiable
    /// finite products.
    #[test]
    fn divergent_product_detected() {
        let mk = || {
            let mut s = Series::<QScalar>::from_parts(
                vec![VarSpec::bilateral("x")],
                vec![Span::full()],
                vec![Span::full()],
                [(vec![0i64], QScalar::one())],
            );
            s.widen_support("x", Span::full());
            s
        };
        assert!(matches!(
            mk().mul(&mk()),
            Err(crate::EngineError::DivergentProduct(_))
        ));
    }

    /// x1^2 under x1 := x2 + x0.
    #[test]
    fn shift_substitution_polynomial() {
        let vars = [VarSpec::at_infinity("x1")];
        let p = polynomial_series(&MPoly::var(&["x1"], "x1").pow(2), &vars);
        let s = p.subst_shift("x1", "x2", "x0", 8).unwrap();
        assert!(s.get(&[2, 0]).is_one());
        assert_eq!(s.get(&[1, 1]), QScalar::from_i64(2));
        assert!(s.get(&[0, 2]).is_one());
        assert!(s.get(&[2, 1]).is_zero());
    }

    /// (x1 - x2)^k maps to x0^k under x1 := x2 + x0.
    #[test]
    fn shift_substitution_difference_power() {
        let ids = ["x1", "x2"];
        let vars = [VarSpec::at_infinity("x1"), VarSpec::at_infinity("x2")];
        for k in 1..=3u32 {
            let p = polynomial_series(
                &MPoly::var(&ids, "x1").sub(&MPoly::var(&ids, "x2")).pow(k),
                &vars,
            );
            let s = p.subst_shift("x1", "x2", "x0", 8).unwrap();
            // all x2 dependence cancels
            for (e, c) in s.terms() {
                assert_eq!(e[1] as u32, k, "only x0^{k}: {e:?} {c}");
                assert_eq!(e[0], 0);
            }
            assert!(s.get(&[0, k as i64]).is_one());
        }
    }

    /// Residues: Res_x (x^-1 + x) = 1 and Res_x d/dx f = 0.
    #[test]
    fn residue_basics() {
        let vars = [VarSpec::bilateral("x")];
        let s = Series::from_parts(
            vars.to_vec(),
            vec![Span::fin(-1, 1)],
            vec![Span::full()],
            [
                (vec![-1i64], QScalar::one()),
                (vec![1i64], QScalar::one()),
            ],
        );
        let r = s.residue("x").unwrap();
        assert!(r.get(&[]).is_one());
        // derivative of anything has no x^{-1} term: d/dx x^n = n x^{n-1}
        let mut d: Series<QScalar> = Series::zero(vars.to_vec());
        for (e, c) in s.terms() {
            let n = e[0];
            if n != 0 {
                d.insert_term(vec![n - 1], c.mul(&QScalar::from_i64(n)));
            }
        }
        assert!(d.residue("x").unwrap().is_zero());
    }

    /// The shifted delta annihilation law: (x1 - g(x2))^(j+1) times the
    /// order-j derivative delta vanishes identically, checked on windows
    /// for j <= 4.
    #[test]
    fn delta_annihilation_to_order_four() {
        for j in 0usize..=4 {
            let map = AffineQ::shift_by(QScalar::q());
            let d: DeltaTerm<QScalar> = DeltaTerm::new(
                "x1",
                "x2",
                Region::AtInfinity,
                map.clone(),
                j,
                Series::constant(QScalar::one()),
            );
            let m = d.materialize(win(-12, 12), win(-18, 12)).unwrap();
            let ids = ["x2", "x1"];
            let factor = MPoly::var(&ids, "x1")
                .sub(&MPoly::var(&ids, "x2").scale(&map.scale))
                .sub(&MPoly::constant(&ids, map.shift.clone()))
                .pow(j as u32 + 1);
            let fs = polynomial_series(
                &factor,
                &[VarSpec::at_infinity("x2"), VarSpec::bilateral("x1")],
            );
            let prod = fs.mul(&m).unwrap();
            let verdict = prod
                .vanishes_on(&[
                    ("x1".to_string(), win(-6, 6)),
                    ("x2".to_string(), win(-6, 6)),
                ])
                .unwrap();
            assert!(verdict.is_none(), "order {j}: {verdict:?}");
        }
    }

    /// delta substitution: applying x1^3 to delta(x2/x1) leaves x2^3 times
    /// the plain delta.
    #[test]
    fn delta_substitution_rule() {
        let d: DeltaTerm<QScalar> = DeltaTerm::new(
            "x1",
            "x2",
            Region::AtInfinity,
            AffineQ::identity(),
            0,
            Series::constant(QScalar::one()),
        );
        let cube = polynomial_series(
            &MPoly::var(&["x1"], "x1").pow(3),
            &[VarSpec::bilateral("x1")],
        );
        let out = d.apply_series(&cube, Span::full()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].order, 0);
        assert!(out[0].coeff.get(&[3]).is_one());
        // and the rewritten coefficient has no source variable
        assert!(out[0].coeff.index_of("x1").is_none());
    }

    /// Round trip through the JSON schema.
    #[test]
    fn json_round_trip() {
        let vars = [VarSpec::at_infinity("x")];
        let f = RatFn::new(
            MPoly::constant(&["x"], QScalar::one()),
            MPoly::var(&["x"], "x").sub(&MPoly::constant(&["x"], q())),
        )
        .unwrap();
        let s = iota_expand(&f, &vars, &[win(-5, 5)]).unwrap();
        let v = json::series_to_json(&s);
        let back = json::series_from_json(&v).unwrap();
        let diff = s.sub(&back).unwrap();
        assert!(diff
            .vanishes_on(&[("x".to_string(), win(-5, 5))])
            .unwrap()
            .is_none());
        assert_eq!(v, json::series_to_json(&back));
    }
}
