use std::collections::BTreeMap;

use apolar::groebner::IdealHandle;
use apolar::linalg::{Matrix, PrimeField, SymmetricForm};
use apolar::pointsets::{point_ideal, random_configuration, self_associated_from_apolar};
use apolar::poly::{parse_polynomials, Monomial, Polynomial, Ring};
use apolar::resolution::{
    betti_table, codimension, is_acm, is_arithmetically_gorenstein, minimal_free_resolution,
    minimal_free_resolution_cut, regular_linear_cut, BettiTable,
};
use apolar::varieties::{grassmannian_g2n_ideal, lagrangian_grassmannian_ideal, rational_normal_curve_ideal, subsets};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> PrimeField {
    PrimeField::default_large()
}

/// Betti numbers of an Artinian `S/J` as dimensions of Koszul homology
/// `H_i(x; S/J)_j`, computed on a monomial basis of `S/J` by dense rank.
fn koszul_betti(ideal: &IdealHandle) -> BTreeMap<(usize, u32), usize> {
    let ring = ideal.ring();
    let f = ring.field();
    let m = ring.nvars();
    let leads = ideal.groebner_basis().lead_monomials();
    let mut standard: Vec<Vec<Monomial>> = Vec::new();
    loop {
        let d = standard.len() as u32;
        let s: Vec<Monomial> = ring
            .monomials_of_degree(d)
            .into_iter()
            .filter(|x| !leads.iter().any(|l| l.divides(x)))
            .collect();
        if s.is_empty() {
            break;
        }
        standard.push(s);
    }
    let top = standard.len();
    let std_dim = |d: usize| standard.get(d).map_or(0, |s| s.len());
    // x_k * a in the standard basis of degree d + 1
    let multiply = |k: usize, a: &Monomial| -> Vec<(usize, u32)> {
        let d = a.degree() as usize + 1;
        if d >= top {
            return Vec::new();
        }
        let nf = ideal
            .normal_form(&Polynomial::from_monomial(ring, a.mul(&Monomial::var(k)), 1))
            .unwrap();
        standard[d]
            .iter()
            .enumerate()
            .filter_map(|(r, s)| Some((r, nf.coefficient(s))).filter(|x| x.1 != 0))
            .collect()
    };
    let sets: Vec<Vec<Vec<usize>>> = (0..=m).map(|i| subsets(m, i)).collect();
    // d_{i,j}: K_{i,j} -> K_{i-1,j}, as a dense matrix
    let differential = |i: usize, j: usize| -> Matrix {
        let (src_deg, tgt_deg) = (j - i, j + 1 - i);
        let rows = sets[i - 1].len() * std_dim(tgt_deg);
        let cols = sets[i].len() * std_dim(src_deg);
        let mut d = Matrix::zeros(f, rows.max(1), cols.max(1));
        if rows == 0 || cols == 0 {
            return d;
        }
        for (si, s) in sets[i].iter().enumerate() {
            for (ai, a) in standard[src_deg].iter().enumerate() {
                let col = si * std_dim(src_deg) + ai;
                for (t, &k) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != k).collect();
                    let ti = sets[i - 1].iter().position(|x| *x == rest).unwrap();
                    for (r, c) in multiply(k, a) {
                        let v = if t % 2 == 0 { c } else { f.neg(c) };
                        let row = ti * std_dim(tgt_deg) + r;
                        d.set(row, col, f.add(d.get(row, col), v));
                    }
                }
            }
        }
        d
    };
    let mut out = BTreeMap::new();
    for i in 0..=m {
        for j in i..i + top {
            let dim = sets[i].len() * std_dim(j - i);
            if dim == 0 {
                continue;
            }
            let out_rank = if i > 0 { differential(i, j).rank() } else { 0 };
            let in_rank = if i < m && j > i { differential(i + 1, j).rank() } else { 0 };
            let h = dim - out_rank - in_rank;
            if h > 0 {
                out.insert((i, j as u32), h);
            }
        }
    }
    out
}

fn table_map(t: &BettiTable) -> BTreeMap<(usize, u32), usize> {
    t.entries().map(|(i, j, c)| ((i, j), c)).collect()
}

fn artinian_cut(ideal: &IdealHandle, seed: u64) -> IdealHandle {
    let dim = ideal.hilbert_series().krull_dimension();
    regular_linear_cut(ideal, dim, &mut ChaCha8Rng::seed_from_u64(seed))
        .unwrap()
        .expect("general linear forms are regular")
}

fn check_against_koszul(ideal: &IdealHandle, seed: u64) -> BettiTable {
    let res = minimal_free_resolution_cut(ideal, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
    let table = betti_table(&res).unwrap();
    let oracle = koszul_betti(&artinian_cut(ideal, seed + 1));
    assert_eq!(table_map(&table), oracle);
    table
}

fn sa_points(seed: u64) -> IdealHandle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = SymmetricForm::random_nondegenerate(field(), 6, &mut rng);
    point_ideal(&self_associated_from_apolar(&q, &mut rng).unwrap()).unwrap()
}

fn trimmed(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

#[test]
fn complete_intersection_of_three_quadrics() {
    let r = Ring::new(field(), 3).unwrap();
    let gens = parse_polynomials(&r, "x0^2 + x1*x2\nx1^2 - x0*x2\nx2^2 + 3*x0*x1").unwrap();
    let i = IdealHandle::new(&r, gens).unwrap();
    let t = betti_table(&minimal_free_resolution(&i, None).unwrap()).unwrap();
    let want: BTreeMap<_, _> = [((0, 0), 1), ((1, 2), 3), ((2, 4), 3), ((3, 6), 1)].into_iter().collect();
    assert_eq!(table_map(&t), want);
    assert_eq!(koszul_betti(&i), want);
}

#[test]
fn uncut_resolution_is_an_exact_minimal_complex() {
    let c = rational_normal_curve_ideal(field(), 4).unwrap();
    let res = minimal_free_resolution(&c, None).unwrap();
    assert!(res.is_complex());
    assert!(res.is_minimal());
    assert!(res.is_graded());
    assert!(res.exact_at_random_point(&mut ChaCha8Rng::seed_from_u64(0)));
    assert_eq!(res.ranks(), vec![1, 6, 8, 3]);
    let cut = minimal_free_resolution_cut(&c, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert_eq!(betti_table(&cut).unwrap(), betti_table(&res).unwrap());
}

#[test]
fn koszul_oracle_on_rational_normal_curves() {
    for n in 2..=5 {
        let c = rational_normal_curve_ideal(field(), n).unwrap();
        check_against_koszul(&c, n as u64);
    }
}

#[test]
fn lagrangian_grassmannian_is_gorenstein() {
    let lg = lagrangian_grassmannian_ideal(field(), &mut ChaCha8Rng::seed_from_u64(2));
    let t = check_against_koszul(&lg, 3);
    assert!(t.is_self_dual());
    assert_eq!(t.length(), codimension(&lg));
    assert_eq!(trimmed(t.hilbert_numerator()), trimmed(lg.hilbert_series().numerator.clone()));
}

#[test]
fn g26_is_gorenstein() {
    let g = grassmannian_g2n_ideal(field(), 6).unwrap();
    let t = check_against_koszul(&g, 4);
    assert!(t.is_self_dual());
    assert_eq!(t.length(), 6);
    assert_eq!(t.get(1, 2), 15);
    assert_eq!(t.get(6, 9), 1);
}

#[test]
fn self_associated_points_are_gorenstein() {
    for seed in 0..5 {
        let i = sa_points(seed);
        let t = check_against_koszul(&i, 10 + seed);
        assert!(t.is_self_dual(), "seed {seed}");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        assert!(is_acm(&i, &mut rng).unwrap());
        assert!(is_arithmetically_gorenstein(&i, &mut rng).unwrap());
    }
}

#[test]
fn random_points_are_acm_but_not_gorenstein() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let c = random_configuration(field(), 5, 12, &mut rng);
    let i = point_ideal(&c).unwrap();
    let t = check_against_koszul(&i, 21);
    assert!(!t.is_self_dual());
    assert!(is_acm(&i, &mut rng).unwrap());
    assert!(!is_arithmetically_gorenstein(&i, &mut rng).unwrap());
}

#[test]
fn skew_lines_are_not_acm() {
    let r = Ring::new(field(), 4).unwrap();
    let a = IdealHandle::new(&r, parse_polynomials(&r, "x0\nx1").unwrap()).unwrap();
    let b = IdealHandle::new(&r, parse_polynomials(&r, "x2\nx3").unwrap()).unwrap();
    let lines = a.intersect(&b).unwrap();
    assert_eq!(codimension(&lines), 2);
    assert!(!is_acm(&lines, &mut ChaCha8Rng::seed_from_u64(0)).unwrap());
    let t = betti_table(&minimal_free_resolution(&lines, None).unwrap()).unwrap();
    assert_eq!(t.length(), 3);
}

#[test]
fn betti_table_text_round_trip() {
    let g = grassmannian_g2n_ideal(field(), 6).unwrap();
    let t = betti_table(&minimal_free_resolution_cut(&g, &mut ChaCha8Rng::seed_from_u64(5)).unwrap()).unwrap();
    assert_eq!(BettiTable::parse(&t.render()).unwrap(), t);
    let json = serde_json::to_string(&t).unwrap();
    assert_eq!(serde_json::from_str::<BettiTable>(&json).unwrap(), t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn points_resolve_consistently(seed in 0u64..1_000_000, n in 2usize..5, extra in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_configuration(field(), n, n + 1 + extra, &mut rng);
        let i = point_ideal(&c).unwrap();
        let res = minimal_free_resolution_cut(&i, &mut rng).unwrap();
        let t = betti_table(&res).unwrap();
        prop_assert!(res.is_complex());
        prop_assert_eq!(t.length(), n);
        prop_assert_eq!(trimmed(t.hilbert_numerator()), trimmed(i.hilbert_series().numerator.clone()));
        prop_assert_eq!(table_map(&t), koszul_betti(&artinian_cut(&i, seed ^ 7)));
    }
}
