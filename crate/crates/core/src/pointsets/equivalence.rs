use std::collections::HashSet;

use super::{normalized, PointConfiguration};
use crate::error::PointsetError;
use crate::linalg::field::Scalar;
use crate::linalg::Matrix;

/// The transformation `T` sending the first `n+1` points to the coordinate
/// points and the next one to `(1, ..., 1)`, and `T · C` with normalized
/// representatives.
pub fn normalize_to_frame(c: &PointConfiguration) -> Result<(Matrix, PointConfiguration), PointsetError> {
    let t = frame_transform(c, &(0..c.n + 2).collect::<Vec<_>>())?;
    Ok((t.clone(), c.transform(&t).normalized()))
}

fn frame_transform(c: &PointConfiguration, idx: &[usize]) -> Result<Matrix, PointsetError> {
    let n = c.n;
    if c.len() < n + 2 || idx.len() != n + 2 {
        return Err(PointsetError::DegenerateFrame);
    }
    let f = c.field();
    let basis: Vec<Vec<Scalar>> = idx[..=n].iter().map(|&i| c.points[i].clone()).collect();
    let p = Matrix::from_columns(f, n + 1, &basis);
    let lambda = p.solve(&c.points[idx[n + 1]]).ok_or(PointsetError::DegenerateFrame)?;
    if p.rank() < n + 1 || lambda.contains(&0) {
        return Err(PointsetError::DegenerateFrame);
    }
    let mut scaled = p.clone();
    for (j, &l) in lambda.iter().enumerate() {
        for i in 0..=n {
            scaled.set(i, j, f.mul(p.get(i, j), l));
        }
    }
    Ok(scaled.inverse().expect("frame basis is invertible"))
}

/// A matrix `g` with `g · a_i ~ b_i` for all `i` (labeled) or up to a
/// relabeling (unlabeled).
pub fn projectively_equivalent(
    a: &PointConfiguration,
    b: &PointConfiguration,
    labeled: bool,
) -> Result<Option<Matrix>, PointsetError> {
    if a.len() != b.len() || a.n != b.n || a.prime != b.prime {
        return Ok(None);
    }
    let n = a.n;
    let frame: Vec<usize> = (0..n + 2).collect();
    let ta = frame_transform(a, &frame)?;
    let na = a.transform(&ta).normalized();
    if labeled {
        let tb = frame_transform(b, &frame)?;
        let nb = b.transform(&tb).normalized();
        return Ok((na.points == nb.points).then(|| tb.inverse().expect("invertible").mul(&ta)));
    }
    let targets: HashSet<Vec<Scalar>> = na.points.iter().cloned().collect();
    if targets.len() != na.len() {
        return Err(PointsetError::Degenerate("repeated point".into()));
    }
    let pool = (n + 4).min(b.len());
    let mut chosen = Vec::with_capacity(n + 2);
    let mut used = vec![false; pool];
    let f = b.field();
    let found = search(b, pool, &mut chosen, &mut used, &mut |idx: &[usize]| {
        let tb = frame_transform(b, idx).ok()?;
        // stop at the first point that lands outside the normalized image of `a`
        let mut hit = HashSet::with_capacity(b.len());
        for (k, p) in b.points.iter().enumerate() {
            if idx.contains(&k) {
                continue;
            }
            let q = normalized(f, &tb.mul_vec(p));
            if !targets.contains(&q) || !hit.insert(q) {
                return None;
            }
        }
        Some(tb.inverse().expect("invertible").mul(&ta))
    });
    match found {
        Some(g) => Ok(Some(g)),
        None if pool < b.len() => Err(PointsetError::Indeterminate),
        None => Ok(None),
    }
}

fn search(
    b: &PointConfiguration,
    pool: usize,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    test: &mut dyn FnMut(&[usize]) -> Option<Matrix>,
) -> Option<Matrix> {
    let n = b.n;
    if chosen.len() == n + 2 {
        return test(chosen);
    }
    for i in 0..pool {
        if used[i] {
            continue;
        }
        chosen.push(i);
        // the first n+1 chosen points must stay independent
        let ok = chosen.len() > n + 1 || {
            let cols: Vec<Vec<Scalar>> = chosen.iter().map(|&k| b.points[k].clone()).collect();
            Matrix::from_columns(b.field(), n + 1, &cols).rank() == chosen.len()
        };
        if ok {
            used[i] = true;
            if let Some(g) = search(b, pool, chosen, used, test) {
                return Some(g);
            }
            used[i] = false;
        }
        chosen.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::pointsets::random_configuration;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn proportional(f: PrimeField, a: &Matrix, b: &Matrix) -> bool {
        let (ra, ca) = (a.nrows(), a.ncols());
        let mut s = None;
        for i in 0..ra {
            for j in 0..ca {
                let (x, y) = (a.get(i, j), b.get(i, j));
                if (x == 0) != (y == 0) {
                    return false;
                }
                if x != 0 {
                    let r = f.div(y, x);
                    if *s.get_or_insert(r) != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn standard_frame_is_fixed() {
        let f = PrimeField::default_small();
        let mut pts: Vec<Vec<Scalar>> = (0..3).map(|i| (0..3).map(|j| (i == j) as Scalar).collect()).collect();
        pts.push(vec![1, 1, 1]);
        let c = PointConfiguration::new(f, pts).unwrap();
        let (t, nc) = normalize_to_frame(&c).unwrap();
        assert!(proportional(f, &t, &Matrix::identity(f, 3)));
        assert_eq!(nc.points, c.points);
    }

    #[test]
    fn recovers_known_transformation() {
        let f = PrimeField::default_large();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..6 {
            let a = random_configuration(f, n, 2 * n + 2, &mut rng);
            let g = Matrix::random(f, n + 1, n + 1, &mut rng);
            let b = a.transform(&g);
            let w = projectively_equivalent(&a, &b, true).unwrap().unwrap();
            assert!(proportional(f, &w, &g));
            let (_, once) = normalize_to_frame(&a).unwrap();
            let (_, twice) = normalize_to_frame(&once).unwrap();
            assert_eq!(once.points, twice.points);
            assert_eq!(normalize_to_frame(&b).unwrap().1.points, once.points);
            let mut moved = b.clone();
            moved.points[2 * n + 1][0] = f.add(moved.points[2 * n + 1][0], 1);
            assert!(projectively_equivalent(&a, &moved, true).unwrap().is_none());
        }
    }

    #[test]
    fn unlabeled_search() {
        let f = PrimeField::default_large();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_configuration(f, 2, 6, &mut rng);
        let g = Matrix::random(f, 3, 3, &mut rng);
        let mut b = a.transform(&g);
        b.points.reverse();
        assert!(projectively_equivalent(&a, &b, true).unwrap().is_none());
        let w = projectively_equivalent(&a, &b, false).unwrap().unwrap();
        assert!(proportional(f, &w, &g));
    }
}
