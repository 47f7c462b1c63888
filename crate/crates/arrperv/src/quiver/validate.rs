use super::{DoubleRep, QuiverError};
use crate::arrangement::{adjacent, collinear};
use crate::exactla::{Field, Matrix};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq)]
pub struct MonViolation {
    pub lower: usize,
    pub upper: usize,
    /// `γδ - Id` on `E_upper`.
    pub defect: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranViolation {
    pub triple: (usize, usize, usize),
    /// `φ_AC`.
    pub lhs: Matrix,
    /// `φ_BC φ_AB`.
    pub rhs: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvViolation {
    pub from: usize,
    pub to: usize,
    pub phi: Matrix,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub mon_violations: Vec<MonViolation>,
    pub tran_violations: Vec<TranViolation>,
    pub inv_violations: Vec<InvViolation>,
    /// Set when (Mon) fails: transition maps are then not well defined, so
    /// (Tran) and (Inv) are not evaluated.
    pub transition_checks_skipped: bool,
}

impl ValidationReport {
    pub fn verdict(&self) -> bool {
        self.mon_violations.is_empty()
            && self.tran_violations.is_empty()
            && self.inv_violations.is_empty()
            && !self.transition_checks_skipped
    }
}

/// Transition maps `φ_AB = γ_{MB} δ_{AM}` through the largest common lower
/// bound `M`, for every pair that has one.
#[derive(Debug, Clone)]
pub struct TransitionTable {
    maps: HashMap<(usize, usize), Matrix>,
}

impl TransitionTable {
    pub fn new(q: &DoubleRep) -> Self {
        let p = q.poset();
        let mut maps = HashMap::new();
        for a in 0..p.len() {
            for b in 0..p.len() {
                if let Some(m) = p.meet(a, b) {
                    maps.insert((a, b), phi_via(q, m, a, b));
                }
            }
        }
        TransitionTable { maps }
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&Matrix> {
        self.maps.get(&(a, b))
    }
}

fn phi_via(q: &DoubleRep, m: usize, a: usize, b: usize) -> Matrix {
    let g = q.gamma(m, b).expect("m <= b");
    let d = q.delta(a, m).expect("m <= a");
    &g * &d
}

/// `φ_AB`, cross-checked against the lowest-indexed common lower bound.
pub fn transition(q: &DoubleRep, a: usize, b: usize) -> Result<Matrix, QuiverError> {
    let p = q.poset();
    let lbs = p.common_lower_bounds(a, b);
    let m = p.meet(a, b).ok_or_else(|| QuiverError::NoCommonLowerBound(q.label(a), q.label(b)))?;
    let phi = phi_via(q, m, a, b);
    let other = lbs[0];
    if other != m && phi_via(q, other, a, b) != phi {
        return Err(QuiverError::LowerBoundDependence(q.label(a), q.label(b), q.label(m), q.label(other)));
    }
    Ok(phi)
}

pub fn validate(q: &DoubleRep) -> ValidationReport {
    validate_in(q, Field::Rational)
}

/// Checks (Mon) on every comparable pair, then (Tran) on every collinear
/// triple and (Inv) on every ordered adjacent pair. Equalities and ranks
/// are taken in `field`.
pub fn validate_in(q: &DoubleRep, field: Field) -> ValidationReport {
    let p = q.poset();
    let n = p.len();
    let mut report = ValidationReport::default();
    for lo in 0..n {
        for up in 0..n {
            if lo == up || !p.leq(lo, up) {
                continue;
            }
            let gd = &q.gamma(lo, up).unwrap() * &q.delta(up, lo).unwrap();
            let defect = &gd - &Matrix::identity(q.dim(up));
            if !field.is_zero(&defect) {
                report.mon_violations.push(MonViolation { lower: lo, upper: up, defect });
            }
        }
    }
    if !report.mon_violations.is_empty() {
        report.transition_checks_skipped = true;
        return report;
    }
    let table = TransitionTable::new(q);
    for a in 0..n {
        for c in 0..n {
            let Some(ac) = table.get(a, c) else { continue };
            for b in 0..n {
                if !collinear(p, a, b, c) {
                    continue;
                }
                let (Some(ab), Some(bc)) = (table.get(a, b), table.get(b, c)) else { continue };
                let rhs = bc * ab;
                if !field.equal(ac, &rhs) {
                    report.tran_violations.push(TranViolation { triple: (a, b, c), lhs: ac.clone(), rhs });
                }
            }
        }
    }
    for c1 in 0..n {
        for c2 in 0..n {
            if adjacent(p, c1, c2).is_none() {
                continue;
            }
            let phi = table.get(c1, c2).expect("adjacent faces share their wall");
            if !field.is_invertible(phi) {
                report.inv_violations.push(InvViolation { from: c1, to: c2, phi: phi.clone() });
            }
        }
    }
    report
}
