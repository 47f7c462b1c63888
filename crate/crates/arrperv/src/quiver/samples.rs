//! Quivers built from families of commuting idempotents.

use super::{DoubleRep, QuiverError};
use crate::arrangement::{FacePoset, Sign};
use crate::exactla::Matrix;
use std::sync::Arc;

/// Idempotents `(P₊, P₋)` on a common space, as in the dimension-1 case.
pub type SidePair = (Matrix, Matrix);

fn side(pair: &SidePair, s: Sign) -> Matrix {
    match s {
        Sign::Zero => Matrix::identity(pair.0.rows()),
        Sign::Plus => pair.0.clone(),
        Sign::Minus => pair.1.clone(),
    }
}

/// Pullback along hyperplane `h`: `P_X = P_{X_h}`.
pub fn pullback(poset: Arc<FacePoset>, h: usize, pair: &SidePair) -> Result<DoubleRep, QuiverError> {
    let ps: Vec<Matrix> = poset.faces().iter().map(|f| side(pair, f.signs.0[h])).collect();
    DoubleRep::from_idempotents(poset, &ps)
}

/// External tensor product over an arrangement whose hyperplane `i` only
/// involves coordinate `i`: `P_X = ⊗_i P^i_{X_i}`.
pub fn external_tensor(poset: Arc<FacePoset>, pairs: &[SidePair]) -> Result<DoubleRep, QuiverError> {
    let ps: Vec<Matrix> = poset
        .faces()
        .iter()
        .map(|f| pairs.iter().zip(&f.signs.0).fold(Matrix::identity(1), |acc, (pair, &s)| acc.kron(&side(pair, s))))
        .collect();
    DoubleRep::from_idempotents(poset, &ps)
}

/// `E_0 = k` on a linear arrangement, `P = 1` on faces of dimension at most
/// `cut` and `P = 0` above.
pub fn truncated(poset: Arc<FacePoset>, cut: usize) -> Result<DoubleRep, QuiverError> {
    let ps: Vec<Matrix> =
        (0..poset.len()).map(|c| if poset.dim(c) <= cut { Matrix::identity(1) } else { Matrix::zeros(1, 1) }).collect();
    DoubleRep::from_idempotents(poset, &ps)
}
