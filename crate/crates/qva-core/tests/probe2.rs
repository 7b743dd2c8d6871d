use qva_core::fields::*;
use qva_core::gamma::{fock_vacuum, heisenberg_infinity_field, FockBasis};
use qva_core::scalar::QScalar;

#[test]
fn probe_assoc_cell() {
    let level = QScalar::q();
    let a = heisenberg_infinity_field(&level);
    let one: Field<FockBasis> = Field::identity(ModuleKind::AtInfinity);
    let vectors = vec![fock_vacuum()];
    let sv = vectors.clone();
    let certs = move |x: &Field<FockBasis>, y: &Field<FockBasis>| -> Certificate<FockBasis> {
        search_power_certificate(x, y, &sv, 3, 10).expect("cert")
    };
    let (k, r) = (2i64, 3i64);
    let w = fock_vacuum();
    // replicate the LHS assembly at cell (x0=-2, x2=2, x=0)
    let kval_inner = certs(&a, &one).p.diagonal_vanishing_order("x1", "x2") as i64;
    println!("kval_inner (a,1) = {kval_inner}");
    for np in (-r - 1)..kval_inner {
        let inner = y_eo_product(&a, &one, &certs(&a, &one), np).unwrap();
        let cert_out = certs(&a, &inner);
        let kval_out = cert_out.p.diagonal_vanishing_order("x1", "x2") as i64;
        println!("np={np} inner={} kval_out={kval_out}", inner.label);
        for m in (k - 1 - 2 * r - kval_inner.max(0))..kval_out {
            let comp = y_eo_product(&a, &inner, &cert_out, m).unwrap();
            let base = comp.act(-1, &w); // x-exponent 0
            if !base.is_zero() {
                println!("  m={m}: comp(-1)|0> = {base}");
            }
        }
    }
}
