use proptest::prelude::*;

use primform::algebra::parse_poly;
use primform::{divide_by_jacobian, milnor_basis, Monomial, Poly, Rational, SSeries, WeightedPolynomial};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
}

fn poly(n: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), rational()), 0..6).prop_map(move |ts| {
        let mut p = Poly::zero(n);
        for (e, c) in ts {
            p.add_term(Monomial::new(e), c);
        }
        p
    })
}

fn series(n: usize, order: u32) -> impl Strategy<Value = SSeries> {
    prop::collection::vec((prop::collection::vec(0..=order, n), rational()), 0..6).prop_map(move |ts| {
        let mut s = SSeries::zero(n, order);
        for (e, c) in ts {
            if e.iter().sum::<u32>() <= order {
                s.add_term(Monomial::new(e), c);
            }
        }
        s
    })
}

proptest! {
    #[test]
    fn rational_round_trips_through_text(r in rational()) {
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn poly_ring_axioms(a in poly(3, 3), b in poly(3, 3), c in poly(3, 3)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn poly_text_round_trip(a in poly(3, 4)) {
        let vars = ["x", "y", "z"];
        let text = a.display_with(&vars);
        prop_assert_eq!(parse_poly(&text, &vars).unwrap(), a);
    }

    #[test]
    fn leibniz_rule(a in poly(2, 4), b in poly(2, 4), i in 0usize..2) {
        let lhs = (&a * &b).derivative(i);
        let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_commutes_with_products(a in series(3, 5), b in series(3, 5), k in 0u32..=5) {
        prop_assert_eq!(a.mul(&b).truncate(k), a.truncate(k).mul(&b.truncate(k)));
    }

    #[test]
    fn composition_with_identity(a in series(2, 4)) {
        let id: Vec<SSeries> = (0..2).map(|i| SSeries::var(2, 4, i)).collect();
        prop_assert_eq!(a.compose(&id, 4), a);
    }

    #[test]
    fn division_reconstructs_input(g in poly(2, 9)) {
        let f = WeightedPolynomial::parse("x^3 + x*y^5", None, None).unwrap();
        let d = milnor_basis(&f).unwrap();
        let div = divide_by_jacobian(&g, &d);
        let mut back = Poly::zero(2);
        for (c, phi) in div.coeffs.iter().zip(d.basis()) {
            back.add_term(phi.clone(), c.clone());
        }
        for (q, df) in div.quotients.iter().zip(d.gradient()) {
            back = &back + &(q * df);
        }
        prop_assert_eq!(back, g);
    }

    #[test]
    fn normal_form_is_linear(a in poly(3, 4), b in poly(3, 4), c in rational()) {
        let f = WeightedPolynomial::parse("x^3 + y^3 + z^4", None, None).unwrap();
        let d = milnor_basis(&f).unwrap();
        let lhs = d.normal_form(&(&a + &b.scale(&c)));
        let rhs: Vec<Rational> = d
            .normal_form(&a)
            .into_iter()
            .zip(d.normal_form(&b))
            .map(|(x, y)| x + y * &c)
            .collect();
        prop_assert_eq!(lhs, rhs);
    }
}
