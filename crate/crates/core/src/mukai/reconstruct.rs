use rand::Rng;
use serde::Serialize;

use super::relations::{dual_form, quadratic_relations, singular_quadrics_at};
use crate::error::{MukaiError, PointsetError};
use crate::linalg::field::{PrimeField, Scalar};
use crate::linalg::{HyperbolicBasis, Matrix, SymmetricForm};
use crate::pointsets::{
    conditions_on_quadrics, is_self_associated, projectively_equivalent, quadrics_through, PointConfiguration,
};
use crate::varieties::{lagrangian_grassmannian_ideal, lagrangian_spinor_chart};

pub const CHART_RETRIES: usize = 50;

/// Every intermediate dimension of one reconstruction of `Γ ⊂ P^5` as a
/// section of `LG(5,10) ⊂ P^15`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MukaiReport {
    pub points: usize,
    pub conditions: usize,
    pub deficiency: usize,
    pub quadrics: usize,
    pub relations: usize,
    pub relation_rank: usize,
    pub w_dims: Vec<usize>,
    pub isotropic: bool,
    pub chart_attempts: usize,
    pub spinor_points: Vec<Vec<Scalar>>,
    pub on_lg: bool,
    /// Projective dimension of the span of the spinor points.
    pub span_dim: usize,
    /// `g` with `g · Γ_i ~ s_i` in coordinates of the span.
    pub witness: Vec<Vec<Scalar>>,
}

fn dimension(stage: &str, expected: usize, got: usize) -> Result<(), MukaiError> {
    if expected == got {
        Ok(())
    } else {
        Err(MukaiError::UnexpectedDimension {
            stage: stage.into(),
            expected,
            got,
        })
    }
}

fn check(stage: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<(), MukaiError> {
    if ok {
        Ok(())
    } else {
        Err(MukaiError::Assertion {
            stage: stage.into(),
            detail: detail(),
        })
    }
}

/// The same basis with `e_n` and `f_n` exchanged: the second Lagrangean
/// moves to the other family.
fn flip_last(h: &HyperbolicBasis) -> HyperbolicBasis {
    let mut out = h.clone();
    let n = out.e.len();
    std::mem::swap(&mut out.e[n - 1], &mut out.f[n - 1]);
    out
}

/// Spinor coordinates of `W` in the chart of `H = [e | f]`: writing
/// `W = H [X; Y]`, the graph of `(Y X^{-1})^T`. `None` if `W` meets
/// `span(f)`.
fn spinor_in_chart(h_inv: &Matrix, w: &[Vec<Scalar>]) -> Result<Option<Vec<Scalar>>, MukaiError> {
    let f = h_inv.field();
    let n = w.len();
    let coords = h_inv.mul(&Matrix::from_columns(f, 2 * n, w));
    let top: Vec<usize> = (0..n).collect();
    let bottom: Vec<usize> = (n..2 * n).collect();
    let Some(x_inv) = coords.submatrix(&top, &top).inverse() else {
        return Ok(None);
    };
    let a = coords.submatrix(&bottom, &top).mul(&x_inv).transpose();
    let skew = (0..n).all(|i| (0..n).all(|j| a.get(i, j) == f.neg(a.get(j, i))));
    check("spinor chart", skew, || "chart matrix of an isotropic W is not skew".into())?;
    Ok(Some(lagrangian_spinor_chart(&a)))
}

fn chart_all<R: Rng + ?Sized>(
    form: &SymmetricForm,
    ws: &[Vec<Vec<Scalar>>],
    rng: &mut R,
) -> Result<(usize, Vec<Vec<Scalar>>), MukaiError> {
    let f = form.field();
    for attempt in 1..=CHART_RETRIES {
        let hb = form.hyperbolic_basis(rng)?;
        for cand in [hb.clone(), flip_last(&hb)] {
            let h_inv = cand.matrix(f).inverse().expect("hyperbolic basis is a basis");
            let mut out = Vec::with_capacity(ws.len());
            for w in ws {
                match spinor_in_chart(&h_inv, w)? {
                    Some(s) => out.push(s),
                    None => break,
                }
            }
            if out.len() == ws.len() {
                return Ok((attempt, out));
            }
        }
    }
    Err(MukaiError::ChartExhausted(CHART_RETRIES))
}

/// Dimension of the linear span of `points` and their coordinates in the
/// basis given by the rows of its reduced echelon form.
pub fn span_coordinates(field: PrimeField, points: &[Vec<Scalar>]) -> (usize, Vec<Vec<Scalar>>) {
    let (_, pivots) = Matrix::from_rows(field, points).rref();
    // each echelon row has a 1 in its pivot column and 0 in the others
    let coords = points.iter().map(|s| pivots.iter().map(|&c| s[c]).collect()).collect();
    (pivots.len(), coords)
}

/// Reconstructs a self-associated `Γ ⊂ P^5` of 12 points as a linear
/// section of the Lagrangean Grassmannian and checks every step.
pub fn mukai_reconstruct_p5<R: Rng + ?Sized>(gamma: &PointConfiguration, rng: &mut R) -> Result<MukaiReport, MukaiError> {
    if gamma.n != 5 || gamma.len() != 12 {
        return Err(PointsetError::BadCardinality {
            expected: 12,
            got: if gamma.n == 5 { gamma.len() } else { 0 },
        }
        .into());
    }
    if !is_self_associated(gamma)? {
        return Err(MukaiError::NotSelfAssociated);
    }
    let field = gamma.field();
    let conditions = conditions_on_quadrics(gamma);
    dimension("conditions deficiency", 1, gamma.len() - conditions)?;

    let space = quadrics_through(gamma);
    dimension("quadrics through the points", 10, space.dim())?;
    let rels = quadratic_relations(&space.basis);
    dimension("quadratic relations", 1, rels.len())?;
    let rel = &rels[0];
    check("quadratic relation", rel.holds(&space.basis), || "relation does not vanish".into())?;
    let relation_rank = rel.rank();
    let form = dual_form(rel)?;

    let mut ws = Vec::with_capacity(gamma.len());
    let mut w_dims = Vec::with_capacity(gamma.len());
    for (i, p) in gamma.points.iter().enumerate() {
        let mut w = singular_quadrics_at(&space, p);
        w_dims.push(w.dim());
        dimension(&format!("W_{i}"), 5, w.dim())?;
        check(&format!("W_{i}"), w.certify(&form), || "not isotropic for the dual form".into())?;
        ws.push(w.basis);
    }

    let (chart_attempts, spinor_points) = chart_all(&form, &ws, rng)?;

    let lg = lagrangian_grassmannian_ideal(field, rng);
    let on_lg = spinor_points
        .iter()
        .all(|s| lg.generators().iter().all(|q| q.evaluate(s) == 0));
    check("spinor points", on_lg, || "a spinor point is off the Lagrangean Grassmannian".into())?;

    let (span, coords) = span_coordinates(field, &spinor_points);
    dimension("span of spinor points", 6, span)?;
    let image = PointConfiguration::new(field, coords)?;
    let g = projectively_equivalent(gamma, &image, true)?;
    let g = g.ok_or_else(|| MukaiError::Assertion {
        stage: "projective equivalence".into(),
        detail: "spinor configuration is not equivalent to the input".into(),
    })?;

    Ok(MukaiReport {
        points: gamma.len(),
        conditions,
        deficiency: gamma.len() - conditions,
        quadrics: space.dim(),
        relations: rels.len(),
        relation_rank,
        w_dims,
        isotropic: true,
        chart_attempts,
        spinor_points,
        on_lg,
        span_dim: span - 1,
        witness: (0..g.nrows()).map(|r| g.row(r).to_vec()).collect(),
    })
}
