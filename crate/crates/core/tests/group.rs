mod common;

use common::*;
use idarc_core::algebra::{RatFunc, Ring};
use idarc_core::derivation::HSDerivation;
use idarc_core::group::{
    check_group_axioms, constant_points, first_detecting_level, ArcGroup, GroupPresentation,
};
use idarc_core::sample::Sampler;
use idarc_core::suites::builtin_groups;
use proptest::prelude::*;

fn setup(seed: u64) -> (Sampler, Vec<GroupPresentation>) {
    let m = modulus([2, 3, 5][(seed % 3) as usize]);
    (Sampler::new(m, seed), builtin_groups(m))
}

#[test]
fn constant_points_have_trivial_log_derivative() {
    for p in [2, 3, 5] {
        let m = modulus(p);
        for g in [
            GroupPresentation::additive(m),
            GroupPresentation::multiplicative(m),
            GroupPresentation::affine(m),
        ] {
            let pts = constant_points(&g).unwrap();
            for level in 0..=2 * p as usize {
                let ag = ArcGroup::new(&g, level);
                for c in &pts {
                    assert!(
                        ag.is_identity(&ag.log_derivative(c).unwrap()),
                        "{} {c:?}",
                        g.name()
                    );
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn presentations_are_groups(seed in any::<u64>()) {
        let (mut s, groups) = setup(seed);
        for g in &groups {
            let a = s.group_point(g, 3).unwrap();
            let b = s.group_point(g, 3).unwrap();
            let c = s.group_point(g, 3).unwrap();
            prop_assert!(check_group_axioms(g, &a, &b, &c).unwrap());
        }
    }

    #[test]
    fn arc_groups_are_groups(seed in any::<u64>(), level in 0usize..4) {
        let (mut s, groups) = setup(seed);
        for g in &groups {
            let ag = ArcGroup::new(g, level);
            let mut el = || ag.element(s.arc_element(g, level, 2).unwrap()).unwrap();
            let (a, b, c) = (el(), el(), el());
            let ab_c = ag.arc_mul(&ag.arc_mul(&a, &b).unwrap(), &c).unwrap();
            let a_bc = ag.arc_mul(&a, &ag.arc_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let inv = ag.arc_inv(&a).unwrap();
            prop_assert!(ag.is_identity(&ag.arc_mul(&inv, &a).unwrap()));
            // The prolonged law agrees with evaluation over k^(m).
            let flat = ag.prolonged_mul().apply(&a.point().join(b.point()).unwrap().flatten()).unwrap();
            prop_assert_eq!(flat, ag.arc_mul(&a, &b).unwrap().point().flatten());
        }
    }

    #[test]
    fn split_and_section_rebuild(seed in any::<u64>(), level in 0usize..4) {
        let (mut s, groups) = setup(seed);
        for g in &groups {
            let ag = ArcGroup::new(g, level);
            let x = ag.element(s.arc_element(g, level, 2).unwrap()).unwrap();
            let h = ag.split(&x).unwrap();
            prop_assert!(ag.in_identity_fiber(&h));
            prop_assert_eq!(ag.arc_mul(&h, &ag.section(&x.base_point()).unwrap()).unwrap(), x.clone());
            let a = s.group_point(g, 2).unwrap();
            let b = s.group_point(g, 2).unwrap();
            let sab = ag.section(&g.mul_points(&a, &b).unwrap()).unwrap();
            prop_assert_eq!(sab, ag.arc_mul(&ag.section(&a).unwrap(), &ag.section(&b).unwrap()).unwrap());
        }
    }

    /// `ℓD(xy) = ℓD(x) · s(x) ℓD(y) s(x)^{-1}`.
    #[test]
    fn log_derivative_cocycle(seed in any::<u64>(), level in 0usize..4) {
        let (mut s, groups) = setup(seed);
        for g in &groups {
            let ag = ArcGroup::new(g, level);
            let x = s.group_point(g, 2).unwrap();
            let y = s.group_point(g, 2).unwrap();
            let lhs = ag.log_derivative(&g.mul_points(&x, &y).unwrap()).unwrap();
            let sx = ag.section(&x).unwrap();
            let conj = ag.arc_mul(&ag.arc_mul(&sx, &ag.log_derivative(&y).unwrap()).unwrap(), &ag.arc_inv(&sx).unwrap()).unwrap();
            prop_assert_eq!(lhs, ag.arc_mul(&ag.log_derivative(&x).unwrap(), &conj).unwrap());
            prop_assert!(ag.check_nabla_embedding(&x, &y).unwrap());
        }
    }

    #[test]
    fn right_constant_translates_are_invisible(seed in any::<u64>(), level in 0usize..5) {
        let (mut s, groups) = setup(seed);
        for g in &groups {
            let ag = ArcGroup::new(g, level);
            let x = s.group_point(g, 3).unwrap();
            let c = s.constant_group_point(g).unwrap();
            let xc = g.mul_points(&x, &c).unwrap();
            prop_assert_eq!(ag.log_derivative(&xc).unwrap(), ag.log_derivative(&x).unwrap());
        }
    }

    /// On `G_a` the first detecting level is the first nonvanishing `d_i`.
    #[test]
    fn detection_level_on_ga((m, xs) in ratfuncs(1, 4)) {
        let g = &xs[0];
        let ga = GroupPresentation::additive(m);
        let w = HSDerivation::new(m).is_constant(g);
        let found = first_detecting_level(&ga, std::slice::from_ref(g), 8 * m.p() as usize).unwrap();
        prop_assert_eq!(found.map(|l| l as u64), w.first_nonvanishing);
        let gm = GroupPresentation::multiplicative(m);
        if !g.is_zero() {
            let found = first_detecting_level(&gm, std::slice::from_ref(g), 8 * m.p() as usize).unwrap();
            prop_assert_eq!(found.map(|l| l as u64), w.first_nonvanishing);
        }
    }

    #[test]
    fn gm_log_derivative_is_a_series_quotient((m, xs) in ratfuncs(1, 4), level in 0usize..6) {
        prop_assume!(!xs[0].is_zero());
        let g = &xs[0];
        let d = HSDerivation::new(m);
        let ld = ArcGroup::new(&GroupPresentation::multiplicative(m), level).log_derivative(std::slice::from_ref(g)).unwrap();
        let expected = d.d_series(g, level).scale(&g.inv().unwrap());
        prop_assert_eq!(&ld.point().coords()[0], &expected);
        let ga = ArcGroup::new(&GroupPresentation::additive(m), level).log_derivative(std::slice::from_ref(g)).unwrap();
        let mut coords: Vec<RatFunc> = vec![g.zero_like()];
        coords.extend((1..=level).map(|i| d.d_i(g, i)));
        prop_assert_eq!(ga.point().flatten(), coords);
    }
}
