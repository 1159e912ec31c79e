use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::linalg::field::{PrimeField, Scalar};
use crate::linalg::Matrix;
use crate::poly::{binomial, Polynomial, Ring};

type ChartFn = dyn Fn(&[Scalar]) -> Vec<Scalar> + Send + Sync;

/// Map from an affine parameter space to a projective space.
#[derive(Clone)]
pub struct Parametrization {
    field: PrimeField,
    params: usize,
    ambient: usize,
    map: Arc<ChartFn>,
}

impl fmt::Debug for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Parametrization(k^{} -> P^{})", self.params, self.ambient - 1)
    }
}

impl Parametrization {
    /// `ambient` is the number of homogeneous coordinates.
    pub fn new(
        field: PrimeField,
        params: usize,
        ambient: usize,
        map: impl Fn(&[Scalar]) -> Vec<Scalar> + Send + Sync + 'static,
    ) -> Self {
        Parametrization {
            field,
            params,
            ambient,
            map: Arc::new(map),
        }
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn eval(&self, t: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(t.len(), self.params);
        let v = (self.map)(t);
        assert_eq!(v.len(), self.ambient);
        v
    }

    /// Image of a random parameter, retrying on the zero vector.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Scalar> {
        loop {
            let t: Vec<Scalar> = (0..self.params).map(|_| self.field.random(rng)).collect();
            let v = self.eval(&t);
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }

    /// Composition with a linear map `P^{ambient-1} -> P^{rows-1}` given by
    /// the rows of `m`.
    pub fn project(&self, m: &Matrix) -> Parametrization {
        assert_eq!(m.ncols(), self.ambient);
        let inner = self.map.clone();
        let m = m.clone();
        Parametrization::new(self.field, self.params, m.nrows(), move |t| m.mul_vec(&inner(t)))
    }
}

/// Default sample count `4 * binom(n + d, d)` for `n + 1` coordinates.
pub fn default_samples(coords: usize, d: u32) -> usize {
    4 * binomial(coords - 1 + d as usize, d as usize)
}

/// Degree-`d` forms vanishing on sampled image points: a basis of the kernel
/// of the evaluation matrix, in reduced echelon form.
pub fn ideal_by_interpolation<R: Rng + ?Sized>(
    chart: &Parametrization,
    ring: &Ring,
    d: u32,
    samples: Option<usize>,
    rng: &mut R,
) -> Vec<Polynomial> {
    assert_eq!(ring.nvars(), chart.ambient());
    let count = samples.unwrap_or_else(|| default_samples(chart.ambient(), d));
    let points: Vec<Vec<Scalar>> = (0..count).map(|_| chart.sample(rng)).collect();
    let ev = ring.evaluation_matrix(&points, d).expect("samples are nonzero");
    ev.kernel_basis()
        .into_iter()
        .map(|v| Polynomial::from_coefficients(ring, d, &v))
        .collect()
}
