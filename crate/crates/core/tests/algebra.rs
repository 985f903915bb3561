use std::collections::HashMap;

use confqm::exact::{solve, PolyJson};
use confqm::{QMatrix, Rational, SparsePoly, VarRegistry};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
}

fn big_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(p, q)| Rational::new(p, q))
}

fn registry() -> VarRegistry {
    VarRegistry::geometry(3)
}

fn poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0i32..4, 3), rational()), 0..6)
        .prop_map(|terms| SparsePoly::from_terms(&registry(), terms).unwrap())
}

fn matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop::collection::vec(rational(), n), n).prop_map(|rows| QMatrix::from_rows(rows).unwrap())
}

fn point() -> impl Strategy<Value = HashMap<String, Rational>> {
    prop::collection::vec(rational(), 3).prop_map(|v| registry().names().iter().cloned().zip(v).collect())
}

proptest! {
    #[test]
    fn rational_field_axioms(a in big_rational(), b in big_rational(), c in big_rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn rational_order_matches_floats(a in rational(), b in rational()) {
        if a != b {
            prop_assert_eq!(a < b, a.to_f64() < b.to_f64());
        }
    }

    #[test]
    fn rational_text_round_trip(a in big_rational()) {
        let back: Rational = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn polynomial_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &SparsePoly::one(&registry()), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(), q in poly(), x in point()) {
        let (pv, qv) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), &pv + &qv);
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), &pv * &qv);
    }

    #[test]
    fn grade_scale_at_one_is_identity(p in poly()) {
        let scaled = p.grade_scale().unwrap();
        prop_assert_eq!(scaled.eval_lambda(&Rational::one()).unwrap(), p.clone());
        let pieces = scaled.split_by_lambda().unwrap();
        for (d, piece) in &pieces {
            prop_assert!(piece.is_homogeneous(*d as i64));
        }
    }

    #[test]
    fn grade_scale_is_substitution(p in poly(), x in point(), l in rational()) {
        let scaled = p.grade_scale().unwrap().eval_lambda(&l).unwrap();
        let moved: HashMap<String, Rational> = x.iter().map(|(k, v)| (k.clone(), v * &l)).collect();
        prop_assert_eq!(scaled.eval(&x).unwrap(), p.eval(&moved).unwrap());
    }

    #[test]
    fn json_round_trip(p in poly()) {
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(SparsePoly::from_json(&back).unwrap(), p);
    }

    #[test]
    fn trace_is_cyclic(a in matrix(3), b in matrix(3), c in matrix(3)) {
        prop_assert_eq!((&(&a * &b) * &c).trace(), (&(&b * &c) * &a).trace());
    }

    #[test]
    fn inverse_when_full_rank(a in matrix(3)) {
        match a.inverse() {
            Ok(inv) => prop_assert_eq!(&a * &inv, QMatrix::identity(3)),
            Err(_) => prop_assert!(a.rank() < 3),
        }
    }

    #[test]
    fn linear_solve_satisfies_system(a in matrix(4), x in prop::collection::vec(rational(), 4)) {
        let rows = a.rows();
        let b: Vec<Rational> = rows.iter().map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum()).collect();
        let sol = solve(&rows, &b, 4).unwrap().expect("consistent by construction");
        let back: Vec<Rational> = rows.iter().map(|r| r.iter().zip(&sol.particular).map(|(p, q)| p * q).sum()).collect();
        prop_assert_eq!(back, b);
        prop_assert_eq!(sol.nullity, 4 - a.rank());
    }
}
