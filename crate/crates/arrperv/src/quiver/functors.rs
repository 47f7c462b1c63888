use super::{DoubleRep, QuiverError};
use crate::arrangement::{enumerate_faces, quotient, restrict, Flat, FlatLattice};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

/// Rebuilds `q` on a new poset given the old face of each new face.
fn transport(
    q: &DoubleRep,
    poset: Arc<crate::arrangement::FacePoset>,
    old: &[usize],
) -> Result<DoubleRep, QuiverError> {
    let dims = old.iter().map(|&o| q.dim(o)).collect();
    let mut gamma = HashMap::new();
    let mut delta = HashMap::new();
    for &(lo, up) in poset.covering_pairs() {
        let (a, b) = (old[lo], old[up]);
        gamma.insert((lo, up), q.gamma(a, b).expect("face order is preserved"));
        delta.insert((lo, up), q.delta(b, a).expect("face order is preserved"));
    }
    DoubleRep::build(poset, dims, gamma, delta)
}

/// `Q^{≤L}`: the sub-diagram on faces inside the flat, over the restricted
/// arrangement.
pub fn restrict_flat(q: &DoubleRep, l: &Flat) -> Result<DoubleRep, QuiverError> {
    let p = q.poset();
    let r = restrict(p.arrangement(), l)?;
    let rp = Arc::new(enumerate_faces(&r.arrangement));
    let old: Vec<usize> = rp
        .faces()
        .iter()
        .map(|f| p.find(&p.arrangement().signs_at(&r.lift_point(&f.interior_point))))
        .collect::<Result<_, _>>()?;
    transport(q, rp, &old)
}

/// `Q^{≥C}`: the sub-diagram on the star of `C`, over the quotient by the
/// span of `C`.
pub fn slice(q: &DoubleRep, c: usize) -> Result<DoubleRep, QuiverError> {
    let p = q.poset();
    let f = p.face(c);
    let l =
        Flat { hyperplanes: p.zero_set(c), basis: f.span_basis.clone(), point: f.interior_point.clone(), dim: f.dim };
    let quo = quotient(p.arrangement(), &l)?;
    let qp = Arc::new(enumerate_faces(&quo.arrangement));
    let mut old = vec![usize::MAX; qp.len()];
    for k in p.star(c) {
        old[qp.find(&quo.project_signs(p.signs(k)))?] = k;
    }
    debug_assert!(old.iter().all(|&o| o != usize::MAX));
    transport(q, qp, &old)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicities {
    /// One value per flat, in lattice order.
    pub values: Vec<i64>,
    /// Flats with a negative value.
    pub anomalies: Vec<usize>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("faces open in the flat {flat:?} carry different dimensions {dims:?}")]
pub struct InconsistentDims {
    pub flat: Vec<usize>,
    pub dims: Vec<(String, usize)>,
}

/// Solves `dim E_C = Σ_{L ⊇ C} m_L` from the largest flat downward. Every
/// face open in a flat must give the same dimension.
pub fn multiplicities(q: &DoubleRep, lat: &FlatLattice) -> Result<Multiplicities, InconsistentDims> {
    let p = q.poset();
    let mut values: Vec<i64> = Vec::with_capacity(lat.len());
    for (i, l) in lat.flats().iter().enumerate() {
        let open: Vec<usize> = (0..p.len()).filter(|&c| p.zero_set(c) == l.hyperplanes).collect();
        let d = q.dim(open[0]);
        if open.iter().any(|&c| q.dim(c) != d) {
            return Err(InconsistentDims {
                flat: l.hyperplanes.clone(),
                dims: open.iter().map(|&c| (q.label(c), q.dim(c))).collect(),
            });
        }
        let above: i64 = (0..i).filter(|&j| lat.contains(j, i)).map(|j| values[j]).sum();
        values.push(d as i64 - above);
    }
    let anomalies = (0..values.len()).filter(|&i| values[i] < 0).collect();
    Ok(Multiplicities { values, anomalies })
}
