mod support;

use primform::{compute, Monomial, SSeries, WeightedPolynomial};
use support::oracle::{Class, Oracle, Ser};
use support::big;

fn to_ser(s: &SSeries) -> Ser {
    s.terms().map(|(m, c)| (m.exponents().to_vec(), big(c))).collect()
}

fn to_class(b: &primform::LaurentBlock) -> Class {
    b.entries()
        .filter(|(_, _, s)| !s.is_zero())
        .map(|(j, a, s)| ((j, a), to_ser(s)))
        .collect()
}

fn check(n: u32, order: u32) {
    let f = WeightedPolynomial::parse(&format!("x^{n}"), None, None).unwrap();
    let c = compute("A", &f, None, order).unwrap();
    let basis: Vec<Monomial> = (0..n - 1).map(|k| Monomial::new(vec![k])).collect();
    assert_eq!(c.milnor.basis(), &basis[..]);
    let o = Oracle::new(n, order);
    assert_eq!(to_class(&c.result.zeta), o.zeta, "zeta for x^{n}");
    assert_eq!(to_class(&c.result.j), o.j, "J for x^{n}");
    let t: Vec<Ser> = c.frobenius.t_of_s.iter().map(to_ser).collect();
    assert_eq!(t, o.t_of_s, "flat coordinates for x^{n}");
    let s: Vec<Ser> = c.frobenius.s_of_t.iter().map(to_ser).collect();
    assert_eq!(s, o.s_of_t, "inverse coordinates for x^{n}");
    assert_eq!(to_ser(c.prepotential()), o.f0, "prepotential for x^{n}");
}

#[test]
fn a2_matches_reference() {
    check(3, 4);
}

#[test]
fn a3_matches_reference() {
    check(4, 4);
}

#[test]
fn a4_matches_reference() {
    check(5, 4);
}

#[test]
fn reference_a3_closed_form() {
    // t1 = s1 - s3^2/8 and the quartic part -t2^2 t3^2/64.
    let o = Oracle::new(4, 4);
    let mut t1 = Ser::new();
    t1.insert(vec![1, 0, 0], support::brat(1, 1));
    t1.insert(vec![0, 0, 2], support::brat(-1, 8));
    assert_eq!(o.t_of_s[0], t1);
    assert_eq!(o.f0.get(&vec![0, 2, 2]), Some(&support::brat(-1, 64)));
    assert_eq!(o.f0.get(&vec![1, 2, 0]), Some(&support::brat(1, 8)));
}

#[test]
fn a3_matches_reference_at_order_six() {
    check(4, 6);
}
