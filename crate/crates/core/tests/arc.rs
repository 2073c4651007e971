mod common;

use common::*;
use idarc_core::algebra::{MultiPoly, RatFunc, Ring, TruncSeries};
use idarc_core::arc::{
    apply_to_arc, arc_index, check_nabla_naturality, fiber_at, nabla, product_shuffle,
    product_variety, prolong_variety, ArcPoint, PolyMap, VarietyPresentation,
};
use idarc_core::sample::Sampler;
use proptest::prelude::*;

fn circle(m: idarc_core::algebra::Modulus) -> VarietyPresentation {
    let x = MultiPoly::var(m, 2, 0);
    let y = MultiPoly::var(m, 2, 1);
    let f = &(&(&x * &x) + &(&y * &y)) - &MultiPoly::one(m, 2);
    VarietyPresentation::new(m, vec!["x".into(), "y".into()], vec![f], vec![]).unwrap()
}

fn random_arc(s: &mut Sampler, n: usize, level: usize) -> ArcPoint {
    let coords = (0..n)
        .map(|_| TruncSeries::new((0..=level).map(|_| s.ratfunc(2)).collect()))
        .collect();
    ArcPoint::new(level, coords).unwrap()
}

/// `(2u/(1+u^2), (1-u^2)/(1+u^2))` lies on the unit circle whenever defined.
fn circle_point(u: &RatFunc) -> Option<Vec<RatFunc>> {
    let one = u.one_like();
    let den = (&one + &(u * u)).inv().ok()?;
    Some(vec![&(u + u) * &den, &(&one - &(u * u)) * &den])
}

#[test]
fn prolonged_circle_at_level_one() {
    let m = modulus(5);
    let arc = prolong_variety(&circle(m), 1);
    let names = arc.var_names();
    let eqs: Vec<String> = arc
        .prolonged_equations()
        .iter()
        .map(|f| f.fmt_with(&names))
        .collect();
    assert_eq!(eqs, ["x_0^2 + y_0^2 + 4", "2*x_0*x_1 + 2*y_0*y_1"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functorial(seed in any::<u64>(), level in 0usize..4, dims in (1usize..3, 1usize..3, 1usize..3)) {
        let m = modulus([2, 3, 5][(seed % 3) as usize]);
        let mut s = Sampler::new(m, seed);
        let f = s.poly_map(dims.0, dims.1, 2);
        let g = s.poly_map(dims.1, dims.2, 2);
        let gf = g.compose(&f).unwrap();
        prop_assert_eq!(gf.prolong(level), g.prolong(level).compose(&f.prolong(level)).unwrap());
        let arc = random_arc(&mut s, dims.0, level);
        let direct = gf.prolong(level).apply(&arc.flatten()).unwrap();
        prop_assert_eq!(&direct, &apply_to_arc(&gf, &arc).unwrap().flatten());
        prop_assert_eq!(f.prolong(0), f);
    }

    #[test]
    fn identity_prolongs_to_identity(n in 1usize..4, level in 0usize..4) {
        let m = modulus(3);
        prop_assert_eq!(PolyMap::identity(m, n).prolong(level), PolyMap::identity(m, n * (level + 1)));
    }

    #[test]
    fn nabla_on_the_circle((m, xs) in ratfuncs(1, 3), level in 0usize..4) {
        prop_assume!(m.p() != 2);
        let Some(a) = circle_point(&xs[0]) else { return Ok(()) };
        let v = circle(m);
        let arc = nabla(&v, &a, level).unwrap();
        prop_assert!(prolong_variety(&v, level).contains(&arc).unwrap());
        let fiber = fiber_at(&v, level, &a).unwrap();
        let higher: Vec<RatFunc> = arc.coords().iter().flat_map(|c| c.coeffs()[1..].to_vec()).collect();
        prop_assert!(fiber.contains_higher(&higher).unwrap());
        for n in 0..=level {
            prop_assert_eq!(arc.project(n).unwrap(), nabla(&v, &a, n).unwrap());
        }
    }

    #[test]
    fn nabla_is_natural(seed in any::<u64>(), level in 0usize..4, dims in (1usize..3, 1usize..3)) {
        let m = modulus([2, 3, 5][(seed % 3) as usize]);
        let mut s = Sampler::new(m, seed);
        let f = s.poly_map(dims.0, dims.1, 3);
        let a: Vec<RatFunc> = (0..dims.0).map(|_| s.ratfunc(3)).collect();
        prop_assert!(check_nabla_naturality(&f, &a, level).unwrap());
    }

    #[test]
    fn arcs_of_a_product_split(seed in any::<u64>(), level in 0usize..4) {
        let m = modulus(5);
        let mut s = Sampler::new(m, seed);
        let x = circle(m);
        let y = VarietyPresentation::affine_space(m, vec!["z".into()]);
        let xy = product_variety(&x, &y);
        let shuffle = product_shuffle(2, 1, level);
        let mut seen = shuffle.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..3 * (level + 1)).collect::<Vec<_>>());
        let a = loop {
            if let Some(a) = circle_point(&s.ratfunc(2)) { break a; }
        };
        let z = s.ratfunc(2);
        let pair: Vec<RatFunc> = a.iter().cloned().chain([z.clone()]).collect();
        let joint = nabla(&xy, &pair, level).unwrap();
        let separate = nabla(&x, &a, level).unwrap().join(&nabla(&y, &[z], level).unwrap()).unwrap();
        let flat = joint.flatten();
        let sflat = separate.flatten();
        for (k, &pos) in shuffle.iter().enumerate() {
            prop_assert_eq!(&flat[k], &sflat[pos]);
        }
        prop_assert_eq!(arc_index(1, level, level), 2 * level + 1);
    }
}
