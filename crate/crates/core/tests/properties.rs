use agaut::code::build_ag_code;
use agaut::code::{LinearCode, DEFAULT_MIN_DISTANCE_CAP};
use agaut::curve::{Curve, CurvePoint};
use agaut::gf::{Field, FieldCtx, FieldElement, Poly};
use agaut::group::GroupElement;
use agaut::perm::Permutation;
use agaut::rr::OnePointDivisor;
use proptest::prelude::*;

fn gf(p: u32, k: usize) -> Field {
    FieldCtx::get(p, k).unwrap()
}

fn elem(f: Field) -> impl Strategy<Value = FieldElement> {
    (0..f.order()).prop_map(move |i| f.element_at(i))
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn example2_code() -> LinearCode {
    let c = Curve::new(7, 1).unwrap();
    let d = OnePointDivisor::new(&c, CurvePoint::Infinity, 5).unwrap();
    build_ag_code(&c, &d, &c.points()[1..]).unwrap()
}

proptest! {
    #[test]
    fn gf49_field_axioms(a in elem(gf(7, 2)), b in elem(gf(7, 2)), c in elem(gf(7, 2))) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - b + b, a);
        if !b.is_zero() {
            prop_assert_eq!(a / b * b, a);
        }
    }

    #[test]
    fn gf121_frobenius_is_a_ring_map(a in elem(gf(11, 2)), b in elem(gf(11, 2))) {
        prop_assert_eq!((a + b).frobenius(), a.frobenius() + b.frobenius());
        prop_assert_eq!((a * b).frobenius(), a.frobenius() * b.frobenius());
    }

    #[test]
    fn poly_divmod_round_trip(
        f in proptest::collection::vec(0i64..7, 0..12),
        g in proptest::collection::vec(0i64..7, 1..6),
    ) {
        let field = gf(7, 1);
        let f = Poly::from_ints(field, &f);
        let g = Poly::from_ints(field, &g);
        prop_assume!(!g.is_zero());
        let (q, r) = f.divmod(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < g.degree());
    }

    #[test]
    fn perm_inverse_of_product(s in perm(7), t in perm(7)) {
        prop_assert_eq!(s.compose(&t).inverse(), t.inverse().compose(&s.inverse()));
        prop_assert!(s.compose(&s.inverse()).is_identity());
    }

    #[test]
    fn cycle_notation_round_trip(s in perm(9)) {
        let again = Permutation::from_cycles(9, &s.to_cycles()).unwrap();
        prop_assert_eq!(&again, &s);
        prop_assert_eq!(Permutation::parse_cycles(9, &s.to_string()).unwrap(), s);
    }

    #[test]
    fn permute_then_unpermute(s in perm(7)) {
        let code = example2_code();
        let moved = code.permute_coords(&s).unwrap();
        prop_assert_eq!(moved.permute_coords(&s.inverse()).unwrap(), code);
    }

    #[test]
    fn min_distance_is_permutation_invariant(s in perm(7)) {
        let code = example2_code();
        let moved = code.permute_coords(&s).unwrap();
        prop_assert_eq!(moved.min_distance_exact(DEFAULT_MIN_DISTANCE_CAP).unwrap(), 5);
    }

    #[test]
    fn random_code_rref_invariance(
        rows in proptest::collection::vec(proptest::collection::vec(0i64..7, 6), 1..4),
        mix in proptest::collection::vec((0usize..4, 0usize..4, 1i64..7), 0..20),
        s in perm(6),
    ) {
        let f = gf(7, 1);
        let rows: Vec<Vec<FieldElement>> =
            rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect();
        let code = LinearCode::from_rows(f, 6, rows.clone()).unwrap();
        let mut mixed = rows;
        let k = mixed.len();
        for (i, j, c) in mix {
            let (i, j) = (i % k, j % k);
            let c = f.from_i64(c);
            if i == j {
                mixed[i] = mixed[i].iter().map(|v| *v * c).collect();
            } else {
                let src = mixed[j].clone();
                for (v, w) in mixed[i].iter_mut().zip(src) {
                    *v = *v + c * w;
                }
            }
        }
        prop_assert_eq!(&LinearCode::from_rows(f, 6, mixed).unwrap(), &code);
        if code.dimension() > 0 {
            let d = code.min_distance_exact(DEFAULT_MIN_DISTANCE_CAP).unwrap();
            let moved = code.permute_coords(&s).unwrap();
            prop_assert_eq!(moved.min_distance_exact(DEFAULT_MIN_DISTANCE_CAP).unwrap(), d);
            prop_assert!(code.dimension() + d <= 7);
        }
    }
}
