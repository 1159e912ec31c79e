//! Python bindings: experiments, self-association tests and ideal invariants.

use apolar::cli::{self, Experiment, ExperimentConfig};
use apolar::groebner::IdealHandle;
use apolar::linalg::{PrimeField, Scalar, SymmetricForm, DEFAULT_PRIME};
use apolar::mukai::{chern_bf, moduli_counts};
use apolar::pointsets::{self, PointConfiguration};
use apolar::poly::{parse_polynomials, Ring};
use clap::Parser;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "apolar", no_binary_name = true)]
struct Args {
    #[command(subcommand)]
    experiment: Experiment,
}

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(prime: u64) -> PyResult<PrimeField> {
    PrimeField::new(prime).map_err(err)
}

fn configuration(points: Vec<Vec<Scalar>>, prime: u64) -> PyResult<PointConfiguration> {
    PointConfiguration::new(field(prime)?, points).map_err(err)
}

fn ideal(generators: &str, nvars: usize, prime: u64) -> PyResult<IdealHandle> {
    let ring = Ring::new(field(prime)?, nvars).map_err(err)?;
    let gens = parse_polynomials(&ring, generators).map_err(err)?;
    IdealHandle::new(&ring, gens).map_err(err)
}

/// Runs one experiment given its command-line words, e.g.
/// `["sa-verify", "--n", "5"]`, and returns the JSON report as a string.
#[pyfunction]
#[pyo3(signature = (args, prime=None, seed=0))]
fn run_experiment(args: Vec<String>, prime: Option<u64>, seed: u64) -> PyResult<String> {
    let parsed = Args::try_parse_from(args).map_err(err)?;
    let mut config = ExperimentConfig::new(parsed.experiment);
    config.prime = prime;
    config.seed = seed;
    let report = cli::run(&config);
    serde_json::to_string(&report.to_json()).map_err(err)
}

/// `2n+2` points of `P^n` forming two apolar simplices of a random form.
#[pyfunction]
#[pyo3(signature = (n, seed=0, prime=DEFAULT_PRIME))]
fn self_associated_points(n: usize, seed: u64, prime: u64) -> PyResult<Vec<Vec<Scalar>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = SymmetricForm::random_nondegenerate(field(prime)?, n + 1, &mut rng);
    Ok(pointsets::self_associated_from_apolar(&q, &mut rng).map_err(err)?.points)
}

#[pyfunction]
#[pyo3(signature = (points, prime=DEFAULT_PRIME))]
fn is_self_associated(points: Vec<Vec<Scalar>>, prime: u64) -> PyResult<bool> {
    pointsets::is_self_associated(&configuration(points, prime)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (points, prime=DEFAULT_PRIME))]
fn quadric_deficiency(points: Vec<Vec<Scalar>>, prime: u64) -> PyResult<usize> {
    Ok(pointsets::quadric_deficiency(&configuration(points, prime)?))
}

/// Projective dimension and degree of `V(I)`; generators one per line.
#[pyfunction]
#[pyo3(signature = (generators, nvars, prime=DEFAULT_PRIME))]
fn dimension_degree(generators: &str, nvars: usize, prime: u64) -> PyResult<(i64, i64)> {
    ideal(generators, nvars, prime)?.dimension_degree().map_err(err)
}

#[pyfunction]
#[pyo3(signature = (generators, nvars, degree, prime=DEFAULT_PRIME))]
fn hilbert_function(generators: &str, nvars: usize, degree: u32, prime: u64) -> PyResult<usize> {
    Ok(ideal(generators, nvars, prime)?.hilbert_function(degree))
}

#[pyfunction(name = "chern_bf")]
fn chern() -> Vec<i64> {
    chern_bf().c.to_vec()
}

/// `(dim of the section moduli, dim A_n, verdict)` for `n` in 5..=7.
#[pyfunction(name = "moduli_counts")]
fn moduli(n: usize) -> PyResult<(i64, i64, String)> {
    let m = moduli_counts(n).map_err(err)?;
    Ok((m.dim_section_moduli as i64, m.dim_a_n as i64, m.verdict))
}

#[pymodule]
fn pyapolar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_PRIME", DEFAULT_PRIME)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(self_associated_points, m)?)?;
    m.add_function(wrap_pyfunction!(is_self_associated, m)?)?;
    m.add_function(wrap_pyfunction!(quadric_deficiency, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_degree, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_function, m)?)?;
    m.add_function(wrap_pyfunction!(chern, m)?)?;
    m.add_function(wrap_pyfunction!(moduli, m)?)?;
    Ok(())
}
