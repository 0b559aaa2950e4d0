//! Shared numeric eigenvalue helper.

use nalgebra::{Complex, DMatrix};

use crate::rng::SplitMix64;

/// Complex eigenvalues of a real matrix, robust against the QR iteration's
/// failure to converge on highly structured inputs (permutation and companion
/// matrices have all eigenvalues of equal modulus and can make the raw
/// iteration cycle). Conjugating by a fixed random orthogonal matrix keeps
/// the spectrum and makes the matrix generic; convergence failure is still
/// reported as `None` rather than looping.
pub(crate) fn robust_complex_eigenvalues(matrix: &DMatrix<f64>) -> Option<Vec<Complex<f64>>> {
    let n = matrix.nrows();
    let mut rng = SplitMix64::new(0x0a9e_5eed ^ n as u64);
    let q = DMatrix::<f64>::from_fn(n, n, |_, _| rng.unit_f64() - 0.5)
        .qr()
        .q();
    let conjugated = q.transpose() * matrix * &q;
    // Machine-epsilon convergence is not reachable for every input; 1e-13
    // leaves the eigenvalues several orders more accurate than anything the
    // oracles certify.
    let schur = conjugated.try_schur(1e-13, 100_000)?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}
