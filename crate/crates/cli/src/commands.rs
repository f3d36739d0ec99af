//! Subcommand implementations. Each produces a `Report` (printed as text
//! or JSON) or a `CliError` that maps onto the exit-code classes:
//! 1 = validation / theorem failure, 2 = I/O or malformed file,
//! 3 = internal.

use std::path::Path;

use serde_json::json;

use tqft_core::algfile::{self, FileError};
use tqft_core::cobordism::{evaluate, Cobordism};
use tqft_core::dsl;
use tqft_core::error::Error as CoreError;
use tqft_core::frobenius::FrobeniusAlgebra;
use tqft_core::hermitian::{build_involution, extract_real_form, verify_adjoint, HermitianStructure};
use tqft_core::unitary;

use crate::report::{
    complex_pair, matrix_value, number, real_vector_value, vector_value, Report,
};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
    #[allow(dead_code)]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Io(_) | FileError::Json(_) | FileError::Shape(_) | FileError::Hermitian(_) => {
                CliError::Io(e.to_string())
            }
            FileError::Axioms(_) => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<dsl::DslError> for CliError {
    fn from(e: dsl::DslError) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn load(path: &Path, tol: f64) -> Result<(FrobeniusAlgebra, Option<HermitianStructure>), CliError> {
    algfile::load_algebra(path, tol).map_err(|e| {
        let err: CliError = e.into();
        match err {
            CliError::Io(m) => CliError::Io(format!("{}: {m}", path.display())),
            CliError::Validation(m) => CliError::Validation(format!("{}: {m}", path.display())),
            other => other,
        }
    })
}

fn require_hermitian(
    pair: (FrobeniusAlgebra, Option<HermitianStructure>),
) -> Result<(FrobeniusAlgebra, HermitianStructure), CliError> {
    match pair.1 {
        Some(h) => Ok((pair.0, h)),
        None => Err(CliError::Validation(
            "this command needs a \"hermitian\" matrix in the algebra file".into(),
        )),
    }
}

fn parse_expr_for(a: &FrobeniusAlgebra, src: &str) -> Result<(Cobordism, dsl::Expr), CliError> {
    let expr = dsl::parse(src)?;
    let cob = expr.to_cobordism()?;
    let _ = a; // dimension constraints surface during evaluation
    Ok((cob, expr))
}

/// `check <file>`: axiom report; exit 0 iff all axioms pass.
pub fn check(path: &Path, tol: f64) -> Result<Report, CliError> {
    // lenient load: an axiom failure is this command's subject, not an error
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let file: algfile::AlgebraFile =
        serde_json::from_str(&text).map_err(|e| CliError::Io(format!("invalid JSON: {e}")))?;
    let (algebra, hermitian) = match algfile::from_file(&file, tol) {
        Ok(pair) => pair,
        Err(FileError::Axioms(report)) => {
            let mut r = Report::new("check");
            fill_axiom_report(&mut r, &report);
            r.pass = false;
            r.datum("dimension", json!(file.dimension));
            return Ok(r);
        }
        Err(other) => return Err(other.into()),
    };
    let report = algebra.verify_axioms(tol);
    let mut r = Report::new("check");
    fill_axiom_report(&mut r, &report);
    r.pass = report.pass();
    r.datum("dimension", json!(algebra.dim()));
    r.datum("hermitian_present", json!(hermitian.is_some()));
    if let Some(h) = &hermitian {
        r.datum("hermitian_positive_definite", json!(h.is_positive_definite(tol)));
    }
    Ok(r)
}

fn fill_axiom_report(r: &mut Report, report: &tqft_core::frobenius::AxiomReport) {
    r.residual("associativity", report.associativity);
    r.residual("commutativity", report.commutativity);
    r.residual("unit_law", report.unit);
    r.residual("beta_smallest_singular", report.beta_min_singular);
    r.datum("beta_largest_singular", number(report.beta_max_singular));
    r.datum("nondegenerate", json!(report.nondegenerate()));
}

/// `hermitian <file>`: involution checks plus the real-form basis;
/// exit 0 iff the pair satisfies the Hermitian axiom.
pub fn hermitian(path: &Path, tol: f64) -> Result<Report, CliError> {
    let (a, h) = require_hermitian(load(path, tol)?)?;
    let mut r = Report::new("hermitian");
    let (pos, neg) = h.signature();
    r.datum("signature", json!([pos, neg]));
    r.datum("positive_definite", json!(h.is_positive_definite(tol)));
    match build_involution(&a, &h, tol) {
        Ok((j, report)) => {
            r.residual("involution", report.involution);
            r.residual("unit_fixed", report.unit);
            r.residual("multiplicativity", report.multiplicativity);
            r.residual("counit_realness", report.counit_realness);
            let rf = extract_real_form(&a, &j, tol)?;
            r.residual("real_form_imag", rf.imag_residual);
            r.residual("complexification", rf.complexification_residual);
            r.datum("involution_matrix", matrix_value(j.matrix()));
            r.datum("real_basis", matrix_value(&rf.basis));
            r.datum("real_counit", real_vector_value(&rf.counit));
            r.pass = report.pass()
                && rf.imag_residual <= tol
                && rf.complexification_residual <= tol;
        }
        Err(CoreError::IncompatiblePair(report)) => {
            r.residual("involution", report.involution);
            r.residual("unit_fixed", report.unit);
            r.residual("multiplicativity", report.multiplicativity);
            r.residual("counit_realness", report.counit_realness);
            r.datum("failed_checks", json!(report.failures()));
            r.pass = false;
        }
        Err(other) => return Err(other.into()),
    }
    Ok(r)
}

/// `classify <file>`: idempotent weights, handle spectrum, and seeded
/// C*-identity checks; exit 0 iff classification succeeds.
pub fn classify(path: &Path, tol: f64, seed: u64, samples: usize) -> Result<Report, CliError> {
    let (a, h) = require_hermitian(load(path, tol)?)?;
    let mut r = Report::new("classify");
    match unitary::classify(&a, &h, tol) {
        Ok(c) => {
            r.datum("weights", real_vector_value(&c.weights));
            r.datum("spectrum", real_vector_value(&unitary::handle_spectrum(&c)));
            let idems: Vec<serde_json::Value> =
                c.idempotents.iter().map(|e| vector_value(e)).collect();
            r.datum("idempotents", serde_json::Value::from(idems));
            r.residual("idempotency", c.residuals.idempotency);
            r.residual("unit_decomposition", c.residuals.unit_decomposition);
            r.residual("reconstruction", c.residuals.reconstruction);
            r.residual("weight_imag", c.residuals.weight_imag);
            let cstar = unitary::cstar_check(&a, &h, samples, seed, tol)?;
            r.residual("cstar_norm_identity", cstar.norm_identity);
            r.residual("cstar_positivity", cstar.positivity);
            r.datum("cstar_min_positivity", number(cstar.min_positivity_value));
            r.datum("cstar_samples", json!(cstar.samples));
            r.datum("seed", json!(seed));
            r.pass = true;
        }
        Err(
            e @ (CoreError::NotPositiveDefinite { .. }
            | CoreError::IncompatiblePair(_)
            | CoreError::NotCommuting { .. }
            | CoreError::RankDeficient { .. }
            | CoreError::SingularMatrix { .. }),
        ) => {
            r.datum("error", json!(e.to_string()));
            r.pass = false;
        }
        Err(other) => return Err(other.into()),
    }
    Ok(r)
}

/// `eval <file> -e <expr>`: the matrix of Z(expr).
pub fn eval(path: &Path, tol: f64, expr_src: &str) -> Result<Report, CliError> {
    let (a, _) = load(path, tol)?;
    let (cob, expr) = parse_expr_for(&a, expr_src)?;
    let z = evaluate(&a, &cob, tol)?;
    if !z.all_finite() {
        return Err(CliError::Validation(
            "evaluation overflowed to a non-finite value (genus too high for this spectrum?)".into(),
        ));
    }
    let mut r = Report::new("eval");
    r.datum("expr", json!(expr.pretty()));
    r.datum("inputs", json!(cob.num_inputs()));
    r.datum("outputs", json!(cob.num_outputs()));
    r.datum("matrix", matrix_value(&z));
    Ok(r)
}

/// `surface <file> -g <G>`: the closed-surface invariant ε(H^g(η)).
pub fn surface(path: &Path, tol: f64, genus: usize) -> Result<Report, CliError> {
    let (a, _) = load(path, tol)?;
    let value = a.closed_surface(genus, tol)?;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(CliError::Validation(
            "surface invariant overflowed to a non-finite value".into(),
        ));
    }
    let mut r = Report::new("surface");
    r.datum("genus", json!(genus));
    r.datum("dimension", json!(a.dim()));
    r.datum("value", complex_pair(value));
    Ok(r)
}

/// `adjoint <file> -e <expr>`: residual of h_W(Z(M)v, w) = h_V(v, Z(M*)w);
/// exit 0 iff the residual is within tolerance.
pub fn adjoint(path: &Path, tol: f64, expr_src: &str) -> Result<Report, CliError> {
    let (a, h) = require_hermitian(load(path, tol)?)?;
    let (cob, expr) = parse_expr_for(&a, expr_src)?;
    let residual = verify_adjoint(&a, &h, &cob, tol)?;
    let mut r = Report::new("adjoint");
    r.datum("expr", json!(expr.pretty()));
    r.residual("adjoint", residual);
    r.pass = residual <= tol;
    Ok(r)
}
