//! Reading algebra files and element arguments.

use std::fs;
use std::path::Path;

use plalg_core::algebra::AlgebraFile;
use plalg_core::{AlgebraSpec, Matrix, Subspace};

use crate::commands::CliError;

pub fn read_file(path: &Path) -> Result<AlgebraFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    AlgebraFile::parse(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// The algebra of a file, with the restricted axioms checked.
pub fn read_algebra(path: &Path) -> Result<(AlgebraFile, AlgebraSpec), CliError> {
    let file = read_file(path)?;
    let spec = file
        .to_spec()
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok((file, spec))
}

/// A basis name, or coefficients separated by ':'.
pub fn element(spec: &AlgebraSpec, arg: &str) -> Result<Vec<u32>, CliError> {
    let arg = arg.trim();
    if let Some(i) = spec.basis_names().iter().position(|n| n == arg) {
        return Ok(spec.basis_vector(i));
    }
    let coeffs: Vec<u32> = arg
        .split(':')
        .map(|c| c.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::input(format!("`{arg}` is neither a basis name nor a coefficient vector")))?;
    if coeffs.len() != spec.dim() || coeffs.iter().any(|&c| c >= spec.p()) {
        return Err(CliError::input(format!(
            "`{arg}` needs {} coefficients in [0, {}]",
            spec.dim(),
            spec.p() - 1
        )));
    }
    Ok(coeffs)
}

pub fn subspace(spec: &AlgebraSpec, args: &[String]) -> Result<Subspace, CliError> {
    if args.is_empty() {
        return Ok(spec.full());
    }
    let vs = args.iter().map(|a| element(spec, a)).collect::<Result<Vec<_>, _>>()?;
    Ok(spec.span(&vs))
}

/// Rows separated by ';', entries by ':' or whitespace.
pub fn matrix(p: u32, text: &str) -> Result<Matrix, CliError> {
    let field = plalg_core::ffarith::PrimeField::new(p).map_err(CliError::from)?;
    let rows: Vec<Vec<u32>> = text
        .split(';')
        .map(|r| {
            r.split(|c: char| c == ':' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map(|v| v % p))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::input(format!("bad matrix `{text}`")))?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::input(format!("matrix `{text}` is not square")));
    }
    Matrix::from_rows(field, n, &rows).map_err(CliError::from)
}
