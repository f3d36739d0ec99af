//! Seeded generators for sweep tests: random Frobenius algebras with a
//! hidden diagonal classification (weights become the oracle), matching
//! Hermitian forms, and random generator words in the cobordism category.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cobordism::{Cobordism, Generator};
use crate::frobenius::FrobeniusAlgebra;
use crate::hermitian::HermitianStructure;
use crate::tensor::{solve, Matrix, Scalar};

/// An algebra produced by conjugating a hidden diagonal model, together
/// with the transported Hermitian form and the hidden data itself.
pub struct GeneratedPair {
    pub algebra: FrobeniusAlgebra,
    pub hermitian: HermitianStructure,
    /// Hidden diagonal weights, sorted ascending: the classification oracle.
    pub weights: Vec<f64>,
    /// Hidden-to-visible change of basis T (visible basis vector j has
    /// hidden coordinates T·e_j).
    pub basis_change: Matrix,
    /// Matrix of the transported involution, `J(y) = involution · conj(y)`.
    pub involution: Matrix,
}

/// Weights log-uniform in [0.1, 10], change of basis with condition
/// number at most 10, `h = β(·, J·)` positive-definite.
pub fn random_unitary_pair(dim: usize, seed: u64) -> GeneratedPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..dim).map(|_| 10f64.powf(rng.gen_range(-1.0..1.0))).collect();
    build_pair(&weights, &mut rng)
}

/// Same construction with random weight signs: a valid Hermitian pair
/// whose form is (generically) indefinite.
pub fn random_hermitian_pair(dim: usize, seed: u64) -> GeneratedPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..dim)
        .map(|_| {
            let w = 10f64.powf(rng.gen_range(-1.0..1.0));
            if rng.gen_bool(0.5) {
                -w
            } else {
                w
            }
        })
        .collect();
    build_pair(&weights, &mut rng)
}

fn build_pair(weights: &[f64], rng: &mut ChaCha8Rng) -> GeneratedPair {
    let n = weights.len();
    let t = random_well_conditioned(n, rng);
    let tol = 1e-13;

    // visible basis vector j is the hidden vector T·e_j; multiplication
    // in the hidden model is coordinatewise
    let mut hadamards = Matrix::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                hadamards[(k, i * n + j)] = t[(k, i)] * t[(k, j)];
            }
        }
    }
    let coords = solve::solve(&t, &hadamards, tol).expect("basis change is invertible");
    let mut mul = vec![Scalar::new(0.0, 0.0); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mul[(i * n + j) * n + k] = coords[(k, i * n + j)];
            }
        }
    }

    let ones = Matrix::column_vector(&vec![Scalar::new(1.0, 0.0); n]);
    let unit = solve::solve(&t, &ones, tol).expect("basis change is invertible").column(0);

    let counit: Vec<Scalar> = (0..n)
        .map(|i| (0..n).map(|k| Scalar::new(weights[k], 0.0) * t[(k, i)]).sum())
        .collect();

    let hmat = Matrix::from_fn(n, n, |i, j| {
        (0..n).map(|k| Scalar::new(weights[k], 0.0) * t[(k, i)] * t[(k, j)].conj()).sum()
    });

    let t_inv = solve::inverse(&t, tol).expect("basis change is invertible");
    let involution = t_inv.mul(&t.conj());

    let algebra = FrobeniusAlgebra::new(n, mul, unit, counit).expect("generated data is finite");
    let hermitian = HermitianStructure::new(hmat, 1e-9).expect("generated form is valid");
    let mut sorted = weights.to_vec();
    sorted.sort_by(f64::total_cmp);
    GeneratedPair { algebra, hermitian, weights: sorted, basis_change: t, involution }
}

/// Unitary × diagonal(σ) × unitary with σ log-uniform in [0.4, 4.0]:
/// condition number at most 10.
fn random_well_conditioned(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let u1 = random_unitary(n, rng);
    let u2 = random_unitary(n, rng);
    let sigmas: Vec<f64> = (0..n)
        .map(|_| 10f64.powf(rng.gen_range(-0.39794..0.60206))) // [0.4, 4.0]
        .collect();
    u1.mul(&Matrix::diag_real(&sigmas)).mul(&u2)
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let g = Matrix::from_fn(n, n, |_, _| {
            Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        if let Some(q) = gram_schmidt(&g) {
            return q;
        }
    }
}

fn gram_schmidt(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    let mut cols: Vec<Vec<Scalar>> = (0..n).map(|j| m.column(j)).collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Scalar = cols[k].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
            for i in 0..n {
                let c = cols[k][i];
                cols[j][i] -= proj * c;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            return None;
        }
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    let mut q = Matrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        q.set_column(j, col);
    }
    Some(q)
}

/// A random layered generator word as a cobordism, starting from
/// `start_arity` input circles and keeping every intermediate arity at
/// most `arity_cap` (tensor-space sizes stay bounded).
pub fn random_word(rng: &mut ChaCha8Rng, layers: usize, start_arity: usize, arity_cap: usize) -> Cobordism {
    let mut word = identity_layer(start_arity);
    for _ in 0..layers {
        let arity = word.num_outputs();
        let layer = random_layer(rng, arity, arity_cap);
        word = word.compose(&layer).expect("layers are composable by construction");
    }
    word
}

fn identity_layer(arity: usize) -> Cobordism {
    let mut out = Cobordism::surface(0, 0, 0);
    for _ in 0..arity {
        out = out.tensor(&Cobordism::generator(Generator::Id));
    }
    out
}

fn random_layer(rng: &mut ChaCha8Rng, arity: usize, arity_cap: usize) -> Cobordism {
    if arity == 0 {
        return Cobordism::generator(Generator::Unit);
    }
    loop {
        let mut layer = Cobordism::surface(0, 0, 0);
        let mut remaining = arity;
        while remaining > 0 {
            // occasionally slot in a unit, which consumes nothing
            if rng.gen_ratio(1, 10) {
                layer = layer.tensor(&Cobordism::generator(Generator::Unit));
            }
            let gen = match rng.gen_range(0..8) {
                0 | 1 if remaining >= 2 => Generator::Mul,
                2 | 3 => Generator::Comul,
                4 if remaining >= 2 => Generator::Swap,
                5 => Generator::Counit,
                _ => Generator::Id,
            };
            layer = layer.tensor(&Cobordism::generator(gen));
            remaining -= gen.arity().0;
        }
        if layer.num_outputs() <= arity_cap {
            return layer;
        }
    }
}

/// Empty cobordism (identity on zero circles); exposed for tests.
pub fn empty_cobordism() -> Cobordism {
    Cobordism::surface(0, 0, 0)
}
