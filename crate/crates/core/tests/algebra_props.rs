//! Property tests for the exterior-algebra and cross-product kernels:
//! the double Hodge star, graded anticommutativity of the wedge, the
//! contraction derivation rule, and the norm identity of the induced
//! cross product — all over exact rationals on randomized inputs.

use g2cal::exterior::blades_of_degree;
use g2cal::g2::G2Structure;
use g2cal::scalar::rat;
use g2cal::{Form, Vector};
use proptest::prelude::*;

const DIM: usize = 7;

fn rational() -> impl Strategy<Value = g2cal::Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn form_of_degree(k: usize) -> impl Strategy<Value = Form> {
    let blades = blades_of_degree(DIM, k);
    let count = blades.len();
    prop::collection::vec(rational(), count).prop_map(move |coeffs| {
        let mut f = Form::zero(DIM, k);
        for (blade, coeff) in blades.iter().zip(coeffs) {
            f = f
                .add(&Form::monomial(DIM, *blade, coeff).unwrap())
                .unwrap();
        }
        f
    })
}

fn any_form() -> impl Strategy<Value = Form> {
    (0usize..=DIM).prop_flat_map(form_of_degree)
}

fn vector() -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), DIM).prop_map(Vector::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn double_hodge_star_is_the_identity(f in any_form()) {
        let back = f.hodge_star().unwrap().hodge_star().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn wedge_is_graded_anticommutative(
        (a, b) in (0usize..=DIM)
            .prop_flat_map(|p| (0usize..=(DIM - p)).prop_map(move |q| (p, q)))
            .prop_flat_map(|(p, q)| (form_of_degree(p), form_of_degree(q)))
    ) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let sign = if (a.degree() * b.degree()) % 2 == 0 { 1 } else { -1 };
        let expected = if sign == 1 { ba } else { ba.neg() };
        prop_assert_eq!(ab, expected);
    }

    #[test]
    fn contraction_is_a_graded_derivation(
        x in vector(),
        (a, b) in (1usize..=3, 1usize..=3)
            .prop_flat_map(|(p, q)| (form_of_degree(p), form_of_degree(q)))
    ) {
        let lhs = a.wedge(&b).unwrap().contract(&x).unwrap();
        let first = a.contract(&x).unwrap().wedge(&b).unwrap();
        let second = a.wedge(&b.contract(&x).unwrap()).unwrap();
        let rhs = if a.degree() % 2 == 0 {
            first.add(&second).unwrap()
        } else {
            first.sub(&second).unwrap()
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_product_norm_identity(u in vector(), v in vector()) {
        let g2 = G2Structure::standard();
        let uv = g2.cross(&u, &v).unwrap();
        let dot = u.dot(&v).unwrap();
        let rhs = u.norm_sq() * v.norm_sq() - dot.clone() * dot;
        prop_assert_eq!(uv.norm_sq(), rhs);
    }

    #[test]
    fn cross_product_is_orthogonal_to_both_factors(u in vector(), v in vector()) {
        let g2 = G2Structure::standard();
        let uv = g2.cross(&u, &v).unwrap();
        prop_assert!(uv.dot(&u).unwrap() == rat(0, 1));
        prop_assert!(uv.dot(&v).unwrap() == rat(0, 1));
    }
}
