use std::collections::HashSet;

use agaut::audit::{evaluation_points, EvalSelector};
use agaut::autcode::ActionContext;
use agaut::code::{build_ag_code, rref};
use agaut::curve::{AutElement, Curve, CurvePoint};
use agaut::gf::FieldElement;
use agaut::group::{self, GroupElement, DEFAULT_GROUP_CAP};
use agaut::rr::{rr_basis, rr_dim, OnePointDivisor};

fn gf49() -> (Curve, Vec<AutElement>) {
    let c = Curve::new(7, 2).unwrap();
    let g = c.aut_group().unwrap();
    (c, g)
}

fn p1(c: &Curve) -> CurvePoint {
    c.point(c.field().element(1), c.field().zero()).unwrap()
}

#[test]
fn automorphisms_permute_the_points() {
    let (c, g) = gf49();
    let points: HashSet<CurvePoint> = c.points().into_iter().collect();
    for t in &g {
        let image: HashSet<CurvePoint> = points.iter().map(|p| t.apply(p)).collect();
        assert_eq!(image, points, "{t}");
    }
}

#[test]
fn action_on_gf49_points_is_faithful() {
    let (c, g) = gf49();
    let pts = c.points();
    let fixing_all: Vec<_> = g
        .iter()
        .filter(|t| pts.iter().all(|p| t.apply(p) == *p))
        .collect();
    assert_eq!(fixing_all.len(), 1);
    assert!(fixing_all[0].is_identity());
}

#[test]
fn scalar_squares_to_determinant() {
    let (c, g) = gf49();
    for t in &g {
        assert_eq!(t.scalar() * t.scalar(), c.field().element(t.det() as u64));
        let inv = t.inverse();
        assert_eq!(
            inv.scalar() * inv.scalar(),
            c.field().element(inv.det() as u64)
        );
    }
    for s in g.iter().step_by(7) {
        for t in g.iter().step_by(5) {
            let st = s.compose(t);
            assert_eq!(
                st.scalar() * st.scalar(),
                c.field().element(st.det() as u64)
            );
            for p in c.points().iter().step_by(11) {
                assert_eq!(st.apply(p), s.apply(&t.apply(p)));
            }
        }
    }
}

#[test]
fn classification_equals_closure() {
    for ext in [1, 2] {
        let c = Curve::new(7, ext).unwrap();
        let gens = c
            .standard_generators(c.default_gamma2_parameter().unwrap())
            .unwrap();
        assert_eq!(
            c.closure_from_generators(&gens, DEFAULT_GROUP_CAP).unwrap(),
            c.aut_group().unwrap()
        );
    }
}

#[test]
fn orbit_stabilizer_everywhere() {
    let (c, g) = gf49();
    for p in c.points() {
        assert_eq!(c.orbit(&g, &p).len() * c.stabilizer(&g, &p).len(), g.len());
    }
}

fn rank_at(c: &Curve, d: &OnePointDivisor, pts: &[CurvePoint]) -> usize {
    let rows: Vec<Vec<FieldElement>> = rr_basis(c, d)
        .unwrap()
        .iter()
        .map(|f| pts.iter().map(|p| f.eval(p).unwrap()).collect())
        .collect();
    rref(&rows).0.len()
}

#[test]
fn basis_is_independent_and_pole_orders_are_consistent() {
    let (c, _) = gf49();
    for base in [CurvePoint::Infinity, p1(&c)] {
        let finite: Vec<CurvePoint> = c
            .points()
            .into_iter()
            .filter(|p| !p.is_infinity() && *p != base)
            .collect();
        for m in 1..=21u32 {
            let d = OnePointDivisor::new(&c, base, m).unwrap();
            let basis = rr_basis(&c, &d).unwrap();
            assert_eq!(
                rank_at(&c, &d, &finite[..m as usize + 1]),
                basis.len(),
                "m = {m} at {base}"
            );
            let orders: Vec<u32> = basis.iter().map(|f| f.pole_order()).collect();
            assert!(orders.windows(2).all(|w| w[0] < w[1]));
            assert!(orders.iter().all(|&o| o <= m));
            for f in &basis {
                assert!(f.denominator_power() <= m.div_ceil(2));
                let expected = match (base.is_infinity(), f.b().is_zero()) {
                    (true, true) => 2 * f.a().degree().unwrap() as u32,
                    (true, false) => 2 * f.b().degree().unwrap() as u32 + 7,
                    (false, true) => 2 * f.denominator_power(),
                    (false, false) => 2 * f.denominator_power() - 1,
                };
                assert_eq!(f.pole_order(), expected);
            }
        }
    }
}

#[test]
fn evaluation_is_injective_when_n_exceeds_deg_d() {
    let (c, g) = gf49();
    let base = p1(&c);
    let e = evaluation_points(&c, &g, &base, &EvalSelector::OrbitComplement);
    for m in 1..=21u32 {
        let d = OnePointDivisor::new(&c, base, m).unwrap();
        assert_eq!(
            build_ag_code(&c, &d, &e).unwrap().dimension(),
            rr_dim(&c, &d).unwrap()
        );
    }
    let c7 = Curve::new(7, 1).unwrap();
    for m in 0..7u32 {
        let d = OnePointDivisor::new(&c7, CurvePoint::Infinity, m).unwrap();
        assert_eq!(
            build_ag_code(&c7, &d, &c7.points()[1..])
                .unwrap()
                .dimension(),
            rr_dim(&c7, &d).unwrap()
        );
    }
}

#[test]
fn kernel_trivial_across_the_corollary_range() {
    let (c, g) = gf49();
    let base = p1(&c);
    let e = evaluation_points(&c, &g, &base, &EvalSelector::OrbitComplement);
    for m in 7..=21u32 {
        let d = OnePointDivisor::new(&c, base, m).unwrap();
        let ctx = ActionContext::from_group(c, d, e.clone(), &g).unwrap();
        let (image, kernel) = ctx.rho_image_and_kernel().unwrap();
        assert_eq!((image.order(), kernel.len()), (84, 1), "m = {m}");
    }
}

#[test]
fn homomorphism_law_sampled_at_p11() {
    let c = Curve::new(11, 2).unwrap();
    let g = c.aut_group().unwrap();
    let base = c.point(c.field().zero(), c.field().zero()).unwrap();
    let e = evaluation_points(&c, &g, &base, &EvalSelector::OrbitComplement);
    let d = OnePointDivisor::new(&c, base, 12).unwrap();
    let ctx = ActionContext::from_group(c, d, e, &g).unwrap();
    let stab = ctx.stab();
    assert_eq!(stab.len(), 220);
    for i in 0..100 {
        let (s, t) = (&stab[(i * 37) % 220], &stab[(i * 101 + 3) % 220]);
        assert_eq!(
            ctx.rho(&s.compose(t)).unwrap(),
            ctx.rho(s).unwrap().compose(&ctx.rho(t).unwrap())
        );
    }
    assert!(group::is_closed_sampled(stab, 10_000));
}

#[test]
fn subgroup_orders_divide() {
    let c = Curve::new(7, 1).unwrap();
    let g = c.aut_group().unwrap();
    let stab = c.stabilizer(&g, &CurvePoint::Infinity);
    assert_eq!(g.len() % stab.len(), 0);
    let d = OnePointDivisor::new(&c, CurvePoint::Infinity, 5).unwrap();
    let ctx = ActionContext::from_group(c, d, c.points()[1..].to_vec(), &g).unwrap();
    let (image, _) = ctx.rho_image_and_kernel().unwrap();
    let paut = agaut::autcode::paut_exhaustive(ctx.code(), 8).unwrap();
    assert_eq!(paut.order() % image.order(), 0);
    assert!(image.is_subgroup_of(&paut));
}
