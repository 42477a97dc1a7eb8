mod support;

use primform::{compute, four_point_function, Catalog, Monomial, Rational, SSeries};
use support::{u12_exponents, U12_BASIS, U12_MINUS_F4};

fn printed() -> SSeries {
    SSeries::from_terms(
        12,
        4,
        U12_MINUS_F4
            .iter()
            .map(|(e, (p, q))| (Monomial::new(u12_exponents(e)), Rational::new(*p, *q))),
    )
    .unwrap()
}

#[test]
fn u12_quartic_part_matches_printed_table() {
    let cat = Catalog::builtin();
    let entry = cat.get("U12").unwrap();
    assert_eq!(entry.basis.as_deref().unwrap(), &U12_BASIS.map(String::from)[..]);
    let c = compute("U12", &entry.weighted().unwrap(), entry.explicit_basis().unwrap(), 4).unwrap();
    assert!(c.checks().all_passed());

    // Single normalization constant: the printed table has eta(1, socle) = 1
    // and lists -F_0, so ours is multiplied by -1/eta(1, socle).
    let eta = &c.milnor.eta()[0][c.milnor.socle_index()];
    let k = -eta.recip();
    assert_eq!(k, Rational::from_integer(-36));

    let ours = four_point_function(c.prepotential()).scale(&k);
    assert_eq!(ours.len(), 14);
    assert_eq!(ours, printed());
}
