//! Double representations of the face poset: spaces `E_C` with covariant
//! maps `γ_{C'C}` and contravariant maps `δ_{CC'}` along face inclusions.

mod functors;
pub mod samples;
mod validate;

pub use functors::{multiplicities, restrict_flat, slice, InconsistentDims, Multiplicities};
pub use validate::{
    transition, validate, validate_in, InvViolation, MonViolation, TranViolation, TransitionTable, ValidationReport,
};

use crate::arrangement::{ArrangementError, FacePoset};
use crate::exactla::{Field, Matrix};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Gamma,
    Delta,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Gamma => "gamma",
            MapKind::Delta => "delta",
        })
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("expected {expected} dimensions, got {got}")]
    DimsLength { expected: usize, got: usize },
    #[error("missing {kind} map for {lower} < {upper}")]
    Missing { kind: MapKind, lower: String, upper: String },
    #[error("{kind} map given for {lower}, {upper}, which is not a covering pair")]
    NotCovering { kind: MapKind, lower: String, upper: String },
    #[error("{kind} map for {lower} < {upper} is {got:?}, expected {expected:?}")]
    Shape { kind: MapKind, lower: String, upper: String, expected: (usize, usize), got: (usize, usize) },
    #[error("{kind} composites from {lower} to {upper} disagree through {via1} and {via2}")]
    PathDependent { kind: MapKind, lower: String, upper: String, via1: String, via2: String },
    #[error("faces {0} and {1} have no common lower bound")]
    NoCommonLowerBound(String, String),
    #[error("transition {0} -> {1} depends on the lower bound ({2} vs {3})")]
    LowerBoundDependence(String, String, String, String),
    #[error("projector for {0} has the wrong shape or is not idempotent")]
    BadProjector(String),
    #[error("operation requires a linear arrangement")]
    NeedsLinear,
    #[error("{0}")]
    Field(#[from] crate::exactla::ExactError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// A double representation with all composites precomputed.
#[derive(Clone)]
pub struct DoubleRep {
    poset: Arc<FacePoset>,
    dims: Vec<usize>,
    /// `(lower, upper) -> γ : E_lower -> E_upper`, for every strict pair.
    gamma: HashMap<(usize, usize), Matrix>,
    /// `(lower, upper) -> δ : E_upper -> E_lower`, for every strict pair.
    delta: HashMap<(usize, usize), Matrix>,
}

impl DoubleRep {
    /// Builds from maps on covering pairs and closes them along chains.
    /// Composites must not depend on the chain.
    pub fn build(
        poset: Arc<FacePoset>,
        dims: Vec<usize>,
        gamma: HashMap<(usize, usize), Matrix>,
        delta: HashMap<(usize, usize), Matrix>,
    ) -> Result<Self, QuiverError> {
        let p = &*poset;
        if dims.len() != p.len() {
            return Err(QuiverError::DimsLength { expected: p.len(), got: dims.len() });
        }
        let label = |i: usize| p.signs(i).to_string();
        for (kind, maps) in [(MapKind::Gamma, &gamma), (MapKind::Delta, &delta)] {
            for &(lo, up) in maps.keys() {
                if lo >= p.len() || up >= p.len() || !p.is_covering(lo, up) {
                    let l = |i: usize| if i < p.len() { label(i) } else { format!("#{i}") };
                    return Err(QuiverError::NotCovering { kind, lower: l(lo), upper: l(up) });
                }
            }
            for &(lo, up) in p.covering_pairs() {
                let m = maps.get(&(lo, up)).ok_or(QuiverError::Missing { kind, lower: label(lo), upper: label(up) })?;
                let expected = match kind {
                    MapKind::Gamma => (dims[up], dims[lo]),
                    MapKind::Delta => (dims[lo], dims[up]),
                };
                if m.shape() != expected {
                    return Err(QuiverError::Shape {
                        kind,
                        lower: label(lo),
                        upper: label(up),
                        expected,
                        got: m.shape(),
                    });
                }
            }
        }
        let mut q = DoubleRep { poset: poset.clone(), dims, gamma, delta };
        q.close()?;
        Ok(q)
    }

    fn close(&mut self) -> Result<(), QuiverError> {
        let p = self.poset.clone();
        let n = p.len();
        let max_gap = p.arrangement().dim() + 1;
        for gap in 2..=max_gap {
            for lo in 0..n {
                for up in 0..n {
                    if p.dim(up) != p.dim(lo) + gap || !p.leq(lo, up) {
                        continue;
                    }
                    let mids: Vec<usize> = p.upper_covers(lo).iter().copied().filter(|&m| p.leq(m, up)).collect();
                    let mut g: Option<(usize, Matrix)> = None;
                    let mut d: Option<(usize, Matrix)> = None;
                    for &m in &mids {
                        let gm = &self.gamma[&(m, up)] * &self.gamma[&(lo, m)];
                        let dm = &self.delta[&(lo, m)] * &self.delta[&(m, up)];
                        for (kind, slot, val) in [(MapKind::Gamma, &mut g, gm), (MapKind::Delta, &mut d, dm)] {
                            match slot {
                                None => *slot = Some((m, val)),
                                Some((m0, v0)) if *v0 != val => {
                                    return Err(QuiverError::PathDependent {
                                        kind,
                                        lower: p.signs(lo).to_string(),
                                        upper: p.signs(up).to_string(),
                                        via1: p.signs(*m0).to_string(),
                                        via2: p.signs(m).to_string(),
                                    })
                                }
                                _ => {}
                            }
                        }
                    }
                    self.gamma.insert((lo, up), g.expect("graded poset has a chain").1);
                    self.delta.insert((lo, up), d.expect("graded poset has a chain").1);
                }
            }
        }
        Ok(())
    }

    /// All spaces of dimension `d`, all maps the identity.
    pub fn constant(poset: Arc<FacePoset>, d: usize) -> Self {
        let id: HashMap<(usize, usize), Matrix> =
            poset.covering_pairs().iter().map(|&pair| (pair, Matrix::identity(d))).collect();
        let dims = vec![d; poset.len()];
        DoubleRep::build(poset, dims, id.clone(), id).expect("constant data is functorial")
    }

    /// Linear mode: the quiver with `E_X = Im P_X ⊆ E_0`, `δ` the inclusions
    /// and `γ` the projectors corestricted. Needs `P_0 = Id` and
    /// `P_X P_Y = P_X = P_Y P_X` whenever `Y ≤ X`.
    pub fn from_idempotents(poset: Arc<FacePoset>, projectors: &[Matrix]) -> Result<Self, QuiverError> {
        let zero = poset.minimum().ok_or(QuiverError::NeedsLinear)?;
        let e0 = projectors.get(zero).map(|m| m.rows()).unwrap_or(0);
        if projectors.len() != poset.len() {
            return Err(QuiverError::DimsLength { expected: poset.len(), got: projectors.len() });
        }
        for (i, p) in projectors.iter().enumerate() {
            if p.shape() != (e0, e0) || &(p * p) != p {
                return Err(QuiverError::BadProjector(poset.signs(i).to_string()));
            }
        }
        if !projectors[zero].is_identity() {
            return Err(QuiverError::BadProjector(poset.signs(zero).to_string()));
        }
        let images: Vec<Matrix> = projectors.iter().map(|p| p.column_space()).collect();
        let dims = images.iter().map(|j| j.cols()).collect();
        let mut gamma = HashMap::new();
        let mut delta = HashMap::new();
        for &(lo, up) in poset.covering_pairs() {
            let bad = || QuiverError::BadProjector(poset.signs(up).to_string());
            let d = images[lo].solve(&images[up]).ok_or_else(bad)?;
            let g = images[up].solve(&(&projectors[up] * &images[lo])).ok_or_else(bad)?;
            gamma.insert((lo, up), g);
            delta.insert((lo, up), d);
        }
        DoubleRep::build(poset, dims, gamma, delta)
    }

    pub fn poset(&self) -> &Arc<FacePoset> {
        &self.poset
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    /// `γ : E_lower -> E_upper`, identity when equal, `None` if incomparable.
    pub fn gamma(&self, lower: usize, upper: usize) -> Option<Matrix> {
        if lower == upper {
            return Some(Matrix::identity(self.dims[lower]));
        }
        self.gamma.get(&(lower, upper)).cloned()
    }

    /// `δ : E_upper -> E_lower`, identity when equal, `None` if incomparable.
    pub fn delta(&self, upper: usize, lower: usize) -> Option<Matrix> {
        if lower == upper {
            return Some(Matrix::identity(self.dims[lower]));
        }
        self.delta.get(&(lower, upper)).cloned()
    }

    /// Maps on covering pairs, the input format of [`DoubleRep::build`].
    pub fn covering_maps(&self) -> (HashMap<(usize, usize), Matrix>, HashMap<(usize, usize), Matrix>) {
        let pairs = self.poset.covering_pairs();
        let g = pairs.iter().map(|&k| (k, self.gamma[&k].clone())).collect();
        let d = pairs.iter().map(|&k| (k, self.delta[&k].clone())).collect();
        (g, d)
    }

    /// Same data with the maps of one covering pair replaced.
    pub fn with_covering_maps(
        &self,
        lower: usize,
        upper: usize,
        gamma: Option<Matrix>,
        delta: Option<Matrix>,
    ) -> Result<Self, QuiverError> {
        let (mut g, mut d) = self.covering_maps();
        if let Some(m) = gamma {
            g.insert((lower, upper), m);
        }
        if let Some(m) = delta {
            d.insert((lower, upper), m);
        }
        DoubleRep::build(self.poset.clone(), self.dims.clone(), g, d)
    }

    /// `(E_C^*, δ^*, γ^*)`: transposes with the roles of γ and δ swapped.
    pub fn dual(&self) -> Self {
        DoubleRep {
            poset: self.poset.clone(),
            dims: self.dims.clone(),
            gamma: self.delta.iter().map(|(&k, m)| (k, m.transpose())).collect(),
            delta: self.gamma.iter().map(|(&k, m)| (k, m.transpose())).collect(),
        }
    }

    /// Checks that every entry reduces in `field`.
    pub fn check_field(&self, field: Field) -> Result<(), QuiverError> {
        for m in self.gamma.values().chain(self.delta.values()) {
            field.admits_matrix(m)?;
        }
        Ok(())
    }

    pub fn label(&self, c: usize) -> String {
        self.poset.signs(c).to_string()
    }
}

impl PartialEq for DoubleRep {
    fn eq(&self, other: &Self) -> bool {
        self.poset.arrangement() == other.poset.arrangement()
            && self.dims == other.dims
            && self.gamma == other.gamma
            && self.delta == other.delta
    }
}

impl fmt::Debug for DoubleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleRep(")?;
        for (i, d) in self.dims.iter().enumerate() {
            write!(f, "{}{}: {}", if i > 0 { ", " } else { "" }, self.poset.signs(i), d)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{enumerate_faces, samples};

    fn line() -> Arc<FacePoset> {
        Arc::new(enumerate_faces(&samples::line_point()))
    }

    #[test]
    fn constant_quiver_composites() {
        let p = Arc::new(enumerate_faces(&samples::cross()));
        let q = DoubleRep::constant(p.clone(), 2);
        let zero = p.minimum().unwrap();
        let ch = p.chambers()[0];
        assert!(q.gamma(zero, ch).unwrap().is_identity());
        assert!(q.gamma(ch, zero).is_none());
        assert_eq!(q.dual(), q);
    }

    #[test]
    fn path_dependence_is_rejected() {
        let p = Arc::new(enumerate_faces(&samples::cross()));
        let q = DoubleRep::constant(p.clone(), 1);
        let f = |s: &str| p.parse_face(s).unwrap();
        let err = q.with_covering_maps(f("+0"), f("++"), Some(Matrix::from_i64(1, 1, &[2])), None).unwrap_err();
        match err {
            QuiverError::PathDependent { kind, lower, upper, .. } => {
                assert_eq!(kind, MapKind::Gamma);
                assert_eq!((lower.as_str(), upper.as_str()), ("00", "++"));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn shapes_are_checked() {
        let p = line();
        let (mut g, d) = DoubleRep::constant(p.clone(), 1).covering_maps();
        g.insert((0, 1), Matrix::zeros(2, 1));
        assert!(matches!(DoubleRep::build(p.clone(), vec![1; 3], g, d.clone()), Err(QuiverError::Shape { .. })));
        let mut g2 = DoubleRep::constant(p.clone(), 1).covering_maps().0;
        g2.insert((1, 2), Matrix::identity(1));
        assert!(matches!(DoubleRep::build(p, vec![1; 3], g2, d), Err(QuiverError::NotCovering { .. })));
    }

    #[test]
    fn skyscraper_builds() {
        let p = line();
        let g: HashMap<_, _> = p.covering_pairs().iter().map(|&(lo, up)| ((lo, up), Matrix::zeros(0, 1))).collect();
        let d: HashMap<_, _> = p.covering_pairs().iter().map(|&(lo, up)| ((lo, up), Matrix::zeros(1, 0))).collect();
        let q = DoubleRep::build(p, vec![1, 0, 0], g, d).unwrap();
        assert_eq!(q.dual().dims(), &[1, 0, 0]);
    }
}
