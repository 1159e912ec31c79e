use apolar::error::PointsetError;
use apolar::groebner::IdealHandle;
use apolar::linalg::{Matrix, PrimeField, Scalar, SymmetricForm};
use apolar::pointsets::{
    conditions_on_quadrics, is_self_associated, normalize_to_frame, point_ideal, points_on_rnc,
    projectively_equivalent, quadric_deficiency, quadrics_through, random_configuration,
    rational_points_exhaustive, self_associated_from_apolar, PointConfiguration,
};
use apolar::poly::{parse_polynomials, Ring};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field() -> PrimeField {
    PrimeField::default_large()
}

fn sa_configuration(n: usize, seed: u64) -> PointConfiguration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = SymmetricForm::random_nondegenerate(field(), n + 1, &mut rng);
    self_associated_from_apolar(&q, &mut rng).unwrap()
}

fn invertible<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    loop {
        let g = Matrix::random(field(), n + 1, n + 1, rng);
        if g.rank() == n + 1 {
            return g;
        }
    }
}

#[test]
fn apolar_sets_are_self_associated() {
    for n in 2..=7 {
        for seed in 0..3 {
            let c = sa_configuration(n, seed);
            assert_eq!(c.len(), 2 * n + 2);
            assert!(is_self_associated(&c).unwrap(), "n={n} seed={seed}");
            assert_eq!(quadric_deficiency(&c), 1);
        }
    }
}

#[test]
fn points_on_a_rational_normal_curve_are_self_associated() {
    for n in 2..=6 {
        let params: Vec<Scalar> = (1..=(2 * n + 2) as Scalar).collect();
        let c = points_on_rnc(field(), n, &params).unwrap();
        assert!(is_self_associated(&c).unwrap(), "n={n}");
    }
    assert!(matches!(points_on_rnc(field(), 2, &[1, 2, 1]), Err(PointsetError::DuplicateParam(1))));
}

#[test]
fn random_points_are_not_self_associated() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 2..=7 {
        let c = random_configuration(field(), n, 2 * n + 2, &mut rng);
        assert!(!is_self_associated(&c).unwrap(), "n={n}");
        assert_eq!(quadric_deficiency(&c), 0);
    }
}

#[test]
fn wrong_cardinality_is_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let c = random_configuration(field(), 3, 7, &mut rng);
    assert!(matches!(is_self_associated(&c), Err(PointsetError::BadCardinality { expected: 8, got: 7 })));
}

#[test]
fn quadrics_vanish_on_the_points() {
    for n in 2..=6 {
        let c = sa_configuration(n, 20 + n as u64);
        let qs = quadrics_through(&c);
        assert_eq!(qs.dim(), (n + 1) * (n + 2) / 2 - (2 * n + 1));
        for q in &qs.basis {
            assert!(c.points.iter().all(|p| q.evaluate(p) == 0));
        }
    }
}

#[test]
fn point_ideal_has_the_right_degree() {
    let c = sa_configuration(5, 30);
    let i = point_ideal(&c).unwrap();
    assert_eq!(i.dimension_degree().unwrap(), (0, 12));
    for g in i.generators() {
        assert!(c.points.iter().all(|p| g.evaluate(p) == 0));
    }
}

#[test]
fn frame_normalization() {
    let c = sa_configuration(3, 40);
    let (_, norm) = normalize_to_frame(&c).unwrap();
    for i in 0..4 {
        let e: Vec<Scalar> = (0..4).map(|k| (k == i) as Scalar).collect();
        assert_eq!(norm.points[i], e);
    }
    assert_eq!(norm.points[4], vec![1; 4]);
}

#[test]
fn rational_points_of_a_small_complete_intersection() {
    let f = PrimeField::new(101).unwrap();
    let r = Ring::new(f, 3).unwrap();
    // four points (±1 : ±1 : 1) on the two conics
    let gens = parse_polynomials(&r, "x0^2 - x2^2\nx1^2 - x2^2").unwrap();
    let i = IdealHandle::new(&r, gens).unwrap();
    let pts = rational_points_exhaustive(&i).unwrap();
    assert_eq!(pts.len(), 4);
    let big = Ring::new(field(), 3).unwrap();
    let j = IdealHandle::new(&big, parse_polynomials(&big, "x0^2\nx1^2").unwrap()).unwrap();
    assert!(matches!(rational_points_exhaustive(&j), Err(PointsetError::TooLarge(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn self_association_is_projectively_invariant(n in 2usize..6, seed in 0u64..1_000_000, sa in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = if sa { sa_configuration(n, seed) } else { random_configuration(field(), n, 2 * n + 2, &mut rng) };
        let g = invertible(n, &mut rng);
        let d = c.transform(&g);
        prop_assert_eq!(is_self_associated(&c).unwrap(), is_self_associated(&d).unwrap());
        prop_assert_eq!(is_self_associated(&c).unwrap(), sa);
        prop_assert_eq!(conditions_on_quadrics(&c), conditions_on_quadrics(&d));
        let h = projectively_equivalent(&c, &d, true).unwrap().expect("labeled equivalence");
        prop_assert_eq!(c.transform(&h).normalized(), d.normalized());
    }

    #[test]
    fn unlabeled_equivalence_within_the_search_pool(n in 2usize..5, seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sa_configuration(n, seed);
        let g = invertible(n, &mut rng);
        let mut pts = c.transform(&g).points;
        // frame candidates are drawn from the first n + 4 points only
        pts[..n + 4].shuffle(&mut rng);
        pts[n + 4..].shuffle(&mut rng);
        let d = PointConfiguration::new(field(), pts).unwrap();
        prop_assert!(projectively_equivalent(&c, &d, false).unwrap().is_some());
        let other = random_configuration(field(), n, 2 * n + 2, &mut rng);
        prop_assert!(!matches!(projectively_equivalent(&c, &other, false), Ok(Some(_))));
    }

    #[test]
    fn unlabeled_equivalence_never_denies_a_true_match(n in 2usize..5, seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sa_configuration(n, seed);
        let mut pts = c.transform(&invertible(n, &mut rng)).points;
        pts.shuffle(&mut rng);
        let d = PointConfiguration::new(field(), pts).unwrap();
        match projectively_equivalent(&c, &d, false) {
            Ok(found) => prop_assert!(found.is_some()),
            Err(e) => prop_assert!(n > 2 && matches!(e, PointsetError::Indeterminate)),
        }
    }

    #[test]
    fn rescaling_representatives_changes_nothing(n in 2usize..6, seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sa_configuration(n, seed);
        let f = field();
        let scaled: Vec<Vec<Scalar>> = c
            .points
            .iter()
            .map(|p| {
                let s = f.random_nonzero(&mut rng);
                p.iter().map(|&x| f.mul(x, s)).collect()
            })
            .collect();
        let d = PointConfiguration::new(f, scaled).unwrap();
        prop_assert!(is_self_associated(&d).unwrap());
        prop_assert_eq!(c.normalized(), d.normalized());
        prop_assert!(point_ideal(&c).unwrap().equals(&point_ideal(&d).unwrap()).unwrap());
    }
}
