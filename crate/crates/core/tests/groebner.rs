use apolar::groebner::oracle::hilbert_function_by_rank;
use apolar::groebner::{polynomial_syzygies, FreeModule, IdealHandle, Vector};
use apolar::linalg::{PrimeField, Scalar, SymmetricForm};
use apolar::pointsets::{point_ideal, self_associated_from_apolar};
use apolar::poly::{parse_polynomial, parse_polynomials, Polynomial, Ring};
use apolar::varieties::{
    grassmannian_g2n_ideal, lagrangian_grassmannian_ideal, linear_section, rational_normal_curve_ideal,
    symplectic_grassmannian, SkewMatrixOfForms,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_ring(n: usize) -> Ring {
    Ring::new(PrimeField::default_small(), n).unwrap()
}

fn random_form<R: Rng>(ring: &Ring, d: u32, density: f64, rng: &mut R) -> Polynomial {
    let f = ring.field();
    let c: Vec<Scalar> = (0..ring.num_monomials(d))
        .map(|_| if rng.gen_bool(density) { f.random(rng) } else { 0 })
        .collect();
    Polynomial::from_coefficients(ring, d, &c)
}

fn agrees_with_oracle(ideal: &IdealHandle, top: u32) {
    for d in 0..=top {
        assert_eq!(
            ideal.hilbert_function(d),
            hilbert_function_by_rank(ideal.ring(), ideal.generators(), d),
            "degree {d}"
        );
    }
}

#[test]
fn principal_ideal_basis_is_monic_generator() {
    let r = small_ring(3);
    let f = parse_polynomial(&r, "3*x0^2 + x1*x2").unwrap();
    let i = IdealHandle::new(&r, vec![f.clone()]).unwrap();
    assert_eq!(i.groebner_basis().elements(), &[f.make_monic()]);
}

#[test]
fn monomial_ideal_is_its_own_basis() {
    let r = small_ring(2);
    let gens = parse_polynomials(&r, "x0^2\nx0*x1").unwrap();
    let i = IdealHandle::new(&r, gens.clone()).unwrap();
    let mut got = i.groebner_basis().elements().to_vec();
    got.sort_by_key(|p| p.to_string());
    let mut want = gens;
    want.sort_by_key(|p| p.to_string());
    assert_eq!(got, want);
}

#[test]
fn normal_forms_of_generators_and_small_elements() {
    let r = small_ring(3);
    let gens = parse_polynomials(&r, "x0^2 - x1*x2\nx1^2 - x0*x2").unwrap();
    let i = IdealHandle::new(&r, gens.clone()).unwrap();
    for g in &gens {
        assert!(i.normal_form(g).unwrap().is_zero());
    }
    let lin = parse_polynomial(&r, "x0 + 2*x1").unwrap();
    assert_eq!(i.normal_form(&lin).unwrap(), lin);
}

#[test]
fn hilbert_function_examples() {
    let f = PrimeField::default_large();
    let r = Ring::new(f, 6).unwrap();
    assert_eq!(IdealHandle::zero(&r).hilbert_function(2), 21);
    let lg = lagrangian_grassmannian_ideal(f, &mut ChaCha8Rng::seed_from_u64(0));
    assert_eq!(lg.hilbert_function(2), 126);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let q = SymmetricForm::random_nondegenerate(f, 6, &mut rng);
    let c = self_associated_from_apolar(&q, &mut rng).unwrap();
    assert_eq!(point_ideal(&c).unwrap().hilbert_function(2), 11);
}

#[test]
fn dimension_and_degree_of_the_three_varieties() {
    let f = PrimeField::default_large();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    assert_eq!(lagrangian_grassmannian_ideal(f, &mut rng).dimension_degree().unwrap(), (10, 12));
    assert_eq!(grassmannian_g2n_ideal(f, 6).unwrap().dimension_degree().unwrap(), (8, 14));
    assert_eq!(symplectic_grassmannian(f, &mut rng).ideal.dimension_degree().unwrap(), (6, 16));
    assert_eq!(rational_normal_curve_ideal(f, 3).unwrap().dimension_degree().unwrap(), (1, 3));
}

#[test]
fn sections_over_ten_seeds() {
    let f = PrimeField::default_large();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let lg = lagrangian_grassmannian_ideal(f, &mut rng);
    let g = grassmannian_g2n_ideal(f, 6).unwrap();
    let gw = symplectic_grassmannian(f, &mut rng).ideal;
    for seed in 0..10 {
        let mut r = ChaCha8Rng::seed_from_u64(100 + seed);
        assert_eq!(linear_section(&lg, 5, &mut r).unwrap().ideal.dimension_degree().unwrap(), (0, 12));
        assert_eq!(linear_section(&g, 6, &mut r).unwrap().ideal.dimension_degree().unwrap(), (0, 14));
        assert_eq!(linear_section(&gw, 7, &mut r).unwrap().ideal.dimension_degree().unwrap(), (0, 16));
    }
}

#[test]
fn powers() {
    let r = small_ring(2);
    let m = IdealHandle::irrelevant(&r);
    assert!(m.power(1).equals(&m).unwrap());
    let sq = IdealHandle::new(&r, parse_polynomials(&r, "x0^2\nx0*x1\nx1^2").unwrap()).unwrap();
    assert!(m.power(2).equals(&sq).unwrap());
    let g = grassmannian_g2n_ideal(PrimeField::default_large(), 6).unwrap();
    let g2 = g.power(2);
    assert!(g2.generators().len() <= 120);
    assert_eq!(g2.basis_in_degree(4).len(), g2.ring().num_monomials(4) - g2.hilbert_function(4));
}

#[test]
fn saturation_cases() {
    let r = small_ring(2);
    let i = IdealHandle::new(&r, parse_polynomials(&r, "x0^2\nx0*x1").unwrap()).unwrap();
    let x = IdealHandle::new(&r, vec![r.var(0)]).unwrap();
    let sat = i.saturate(&IdealHandle::irrelevant(&r)).unwrap();
    assert!(sat.equals(&x).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    assert!(i.saturate_irrelevant(&mut rng).unwrap().equals(&x).unwrap());
    assert!(i.saturate(&IdealHandle::unit(&r)).unwrap().equals(&i).unwrap());
}

#[test]
fn pfaffian_cubic_lies_in_the_saturated_square_only() {
    let f = PrimeField::default_large();
    let g = grassmannian_g2n_ideal(f, 6).unwrap();
    let a = SkewMatrixOfForms::generic(g.ring(), 6);
    let pf6 = a.pfaffian(&[0, 1, 2, 3, 4, 5]).unwrap();
    let sq = g.power(2);
    assert!(!sq.normal_form(&pf6).unwrap().is_zero());
    let sat = sq.saturate_irrelevant(&mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    assert!(sat.normal_form(&pf6).unwrap().is_zero());
    assert_eq!(sat.basis_in_degree(3).len(), 1);
}

#[test]
fn lagrangian_square_is_already_saturated() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sq = lagrangian_grassmannian_ideal(PrimeField::default_large(), &mut rng).power(2);
    let sat = sq.saturate_irrelevant(&mut rng).unwrap();
    assert!(sq.equals(&sat).unwrap());
}

#[test]
fn koszul_and_trivial_syzygies() {
    let r = small_ring(3);
    let f = parse_polynomial(&r, "x0^2 + x1*x2").unwrap();
    let g = parse_polynomial(&r, "x1^3 - x0*x2^2").unwrap();
    assert!(polynomial_syzygies(&r, std::slice::from_ref(&f)).is_empty());
    let s = polynomial_syzygies(&r, &[f.clone(), g.clone()]);
    assert_eq!(s.len(), 1);
    let col = &s.columns[0];
    // (g, -f) up to a scalar
    assert_eq!(col[0].make_monic(), g.make_monic());
    assert_eq!(col[1].make_monic(), f.make_monic());
    assert_eq!(&(&col[0] * &f) + &(&col[1] * &g), r.zero());
}

#[test]
fn oracle_on_the_suite() {
    let f = PrimeField::default_large();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let lg = lagrangian_grassmannian_ideal(f, &mut rng);
    agrees_with_oracle(&lg, 4);
    agrees_with_oracle(&grassmannian_g2n_ideal(f, 6).unwrap(), 4);
    agrees_with_oracle(&symplectic_grassmannian(f, &mut rng).ideal, 4);
    agrees_with_oracle(&linear_section(&lg, 5, &mut rng).unwrap().ideal, 4);
    agrees_with_oracle(&rational_normal_curve_ideal(f, 5).unwrap(), 4);
}

fn random_ideal(seed: u64) -> IdealHandle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = small_ring(4);
    let k = rng.gen_range(1..4);
    let gens: Vec<Polynomial> = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..4);
            random_form(&r, d, 0.4, &mut rng)
        })
        .filter(|p| !p.is_zero())
        .collect();
    IdealHandle::new(&r, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hilbert_function_matches_dense_rank(seed in 0u64..1_000_000) {
        let i = random_ideal(seed);
        for d in 0..=4 {
            prop_assert_eq!(i.hilbert_function(d), hilbert_function_by_rank(i.ring(), i.generators(), d));
        }
    }

    #[test]
    fn normal_form_is_linear(seed in 0u64..1_000_000) {
        let i = random_ideal(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let a = random_form(i.ring(), 3, 0.5, &mut rng);
        let b = random_form(i.ring(), 3, 0.5, &mut rng);
        let lhs = i.normal_form(&(&a + &b)).unwrap();
        let rhs = i.normal_form(&(&i.normal_form(&a).unwrap() + &i.normal_form(&b).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn combinations_of_generators_reduce_to_zero(seed in 0u64..1_000_000) {
        let i = random_ideal(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let mut acc = i.ring().zero();
        for g in i.generators() {
            let d = 4 - g.degree().unwrap();
            acc = &acc + &(g * &random_form(i.ring(), d, 0.5, &mut rng));
        }
        prop_assert!(i.contains(&acc).unwrap());
    }

    #[test]
    fn saturation_contains_and_is_stable(seed in 0u64..1_000_000) {
        let i = random_ideal(seed);
        let m = IdealHandle::irrelevant(i.ring());
        let s = i.saturate(&m).unwrap();
        prop_assert!(s.contains_ideal(&i).unwrap());
        prop_assert!(s.quotient(&m).unwrap().equals(&s).unwrap());
    }

    #[test]
    fn syzygies_annihilate(seed in 0u64..1_000_000) {
        let i = random_ideal(seed);
        let module = FreeModule::ideal(i.ring());
        let vecs: Vec<Vector> = i.generators().iter().map(|g| Vector::from_polynomial(&module, g)).collect();
        let s = polynomial_syzygies(i.ring(), i.generators());
        prop_assert!(s.annihilates(&module, &vecs));
    }
}
