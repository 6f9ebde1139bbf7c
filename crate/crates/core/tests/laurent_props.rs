mod common;

use common::{cofactor_det, laurent_strategy, Poly};
use proptest::prelude::*;
use wadakit::laurent::{LaurentPoly, PolyMatrix, RationalFunction};
use wadakit::{Field, PrimeField, Rationals};

fn to_oracle(p: &LaurentPoly<Rationals>) -> Poly {
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        out.add_term(e, c.clone());
    }
    out
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<LaurentPoly<Rationals>>>> {
    (0usize..5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(laurent_strategy(), n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn degree_is_additive(p in laurent_strategy(), q in laurent_strategy()) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!((&p * &q).degree().unwrap(), p.degree().unwrap() + q.degree().unwrap());
    }

    #[test]
    fn ring_axioms(p in laurent_strategy(), q in laurent_strategy(), r in laurent_strategy()) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor(p in laurent_strategy(), q in laurent_strategy()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q), Some(p));
    }

    #[test]
    fn gcd_divides_both(p in laurent_strategy(), q in laurent_strategy(), r in laurent_strategy()) {
        let a = &p * &r;
        let b = &q * &r;
        let g = a.gcd(&b);
        if !g.is_zero() {
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
            prop_assert!(r.divides(&g));
        }
        prop_assert_eq!(g.clone(), to_oracle(&a).gcd(&to_oracle(&b)).to_laurent());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(rows in matrix_strategy()) {
        let n = rows.len();
        let m = PolyMatrix::from_fn(Rationals, n, n, |i, j| rows[i][j].clone());
        let oracle: Vec<Vec<Poly>> = rows.iter().map(|r| r.iter().map(to_oracle).collect()).collect();
        prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&oracle).to_laurent());
    }

    #[test]
    fn unit_classes_ignore_units(p in laurent_strategy(), q in laurent_strategy(), k in -3i64..3, c in 1i64..5) {
        prop_assume!(!q.is_zero());
        let f = RationalFunction::new(p.clone(), q.clone()).unwrap();
        let unit = LaurentPoly::from_terms(Rationals, &[(k, -c)]);
        let g = RationalFunction::new(&p * &unit, q).unwrap();
        prop_assert!(f.equal_up_to_unit(&g));
    }
}

#[test]
fn prime_field_determinant() {
    let f = PrimeField::new(3).unwrap();
    // [[t, 2], [1, t]] has determinant t^2 - 2 = t^2 + 1 over F_3
    let m = PolyMatrix::from_fn(f, 2, 2, |i, j| match (i, j) {
        (0, 0) | (1, 1) => LaurentPoly::t_power(f, 1),
        (0, 1) => LaurentPoly::constant(f, f.from_i64(2)),
        _ => LaurentPoly::one(f),
    });
    assert_eq!(m.determinant().unwrap(), LaurentPoly::from_terms(f, &[(2, 1), (0, 1)]));
}
