use super::{Cousin, CousinError, StalkComplex};
use crate::arrangement::{s1_leq, FacePoset, S1Cell};
use crate::exactla::Field;
use crate::quiver::DoubleRep;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementaryInclusion {
    /// `[C', D] ≤ [C, D]` with `C' <₁ C ≤ D`.
    Flag,
    /// `[C', D'] ≤ [D, D]` with `C'` a wall between `D'` and `D`.
    Wall,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    NotQuasiIso,
    NotChainMap(String),
    StalkInvalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessFailure {
    pub kind: ElementaryInclusion,
    pub lower: S1Cell,
    pub upper: S1Cell,
    pub reason: FailureReason,
}

/// All elementary inclusions of S1 cells.
pub fn elementary_inclusions(p: &FacePoset) -> Vec<(ElementaryInclusion, S1Cell, S1Cell)> {
    let mut out = Vec::new();
    for d in 0..p.len() {
        for &(c1, c2) in p.covering_pairs() {
            if p.leq(c2, d) {
                out.push((ElementaryInclusion::Flag, S1Cell { c: c1, d }, S1Cell { c: c2, d }));
            }
        }
    }
    for &(wall, d1) in p.covering_pairs() {
        for &d2 in p.upper_covers(wall) {
            if d2 != d1 && p.same_span(d1, d2) {
                out.push((ElementaryInclusion::Wall, S1Cell { c: wall, d: d1 }, S1Cell { c: d2, d: d2 }));
            }
        }
    }
    out
}

fn stalks(cz: &Cousin) -> HashMap<S1Cell, Result<StalkComplex, CousinError>> {
    S1Cell::all(cz.poset()).into_iter().map(|cell| (cell, cz.stalk_complex(cell))).collect()
}

/// Generalization maps along every elementary inclusion must be
/// quasi-isomorphisms.
pub fn smoothness_check(q: &DoubleRep, field: Field) -> Result<Vec<SmoothnessFailure>, CousinError> {
    let cz = Cousin::new(q, field)?;
    let st = stalks(&cz);
    let mut failures = Vec::new();
    for (kind, lower, upper) in elementary_inclusions(q.poset()) {
        let reason = match (&st[&lower], &st[&upper]) {
            (Err(e), _) | (_, Err(e)) => Some(FailureReason::StalkInvalid(e.to_string())),
            (Ok(a), Ok(b)) => match cz.generalization_chain_map(a, b) {
                Err(e) => Some(FailureReason::NotChainMap(e.to_string())),
                Ok(m) if !m.is_quasi_iso_in(field) => Some(FailureReason::NotQuasiIso),
                Ok(_) => None,
            },
        };
        if let Some(reason) = reason {
            failures.push(SmoothnessFailure { kind, lower, upper, reason });
        }
    }
    Ok(failures)
}

/// Comparable pairs of cells whose generalization map does not commute with
/// the differentials, i.e. the stalks do not glue to a complex of sheaves.
pub fn generalization_check(q: &DoubleRep, field: Field) -> Result<Vec<(S1Cell, S1Cell)>, CousinError> {
    let cz = Cousin::new(q, field)?;
    let st = stalks(&cz);
    let p = q.poset();
    let mut cells = S1Cell::all(p);
    cells.sort();
    let mut bad = Vec::new();
    for &lo in &cells {
        for &hi in &cells {
            if lo == hi || !s1_leq(p, lo, hi) {
                continue;
            }
            let ok = match (&st[&lo], &st[&hi]) {
                (Ok(a), Ok(b)) => cz.generalization_chain_map(a, b).is_ok(),
                _ => false,
            };
            if !ok {
                bad.push((lo, hi));
            }
        }
    }
    Ok(bad)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StalkRow {
    pub cell: S1Cell,
    pub terms: Vec<usize>,
    /// `None` when the stalk is not a complex.
    pub cohomology: Option<Vec<usize>>,
}

pub fn stalk_table(q: &DoubleRep, field: Field) -> Result<Vec<StalkRow>, CousinError> {
    let cz = Cousin::new(q, field)?;
    let mut rows: Vec<StalkRow> = stalks(&cz)
        .into_iter()
        .map(|(cell, s)| match s {
            Ok(s) => StalkRow {
                cell,
                terms: s.graded.complex.terms().to_vec(),
                cohomology: Some(s.graded.cohomology_in(field)),
            },
            Err(_) => StalkRow { cell, terms: Vec::new(), cohomology: None },
        })
        .collect();
    rows.sort_by_key(|r| r.cell);
    Ok(rows)
}

/// Pairs of cells over the same complex stratum (same span of `D`) whose
/// stalk cohomology differs.
pub fn stratum_constancy(q: &DoubleRep, table: &[StalkRow]) -> Vec<(S1Cell, S1Cell)> {
    let p = q.poset();
    let mut first: HashMap<Vec<usize>, &StalkRow> = HashMap::new();
    let mut bad = Vec::new();
    for row in table {
        let key = p.zero_set(row.cell.d);
        match first.get(&key) {
            None => {
                first.insert(key, row);
            }
            Some(r0) if r0.cohomology != row.cohomology => bad.push((r0.cell, row.cell)),
            _ => {}
        }
    }
    bad
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerversityViolation {
    /// Found on the dual quiver.
    pub dual: bool,
    pub cell: S1Cell,
    pub degree: usize,
}

/// `H^p` of the stalk on `[C, D]` may be nonzero only when the span of `D`
/// has codimension at least p; checked for `q` and its dual.
pub fn perversity_support_check(q: &DoubleRep, field: Field) -> Result<Vec<PerversityViolation>, CousinError> {
    let mut out = Vec::new();
    for (dual, rep) in [(false, q.clone()), (true, q.dual())] {
        let p = rep.poset().clone();
        for row in stalk_table(&rep, field)? {
            let codim = p.codim(row.cell.d);
            let h = row.cohomology.unwrap_or_default();
            for (degree, &x) in h.iter().enumerate() {
                if x != 0 && degree > codim {
                    out.push(PerversityViolation { dual, cell: row.cell, degree });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{enumerate_faces, samples};
    use std::sync::Arc;

    #[test]
    fn elementary_inclusion_counts_in_dimension_one() {
        let p = enumerate_faces(&samples::line_point());
        let e = elementary_inclusions(&p);
        assert_eq!(e.iter().filter(|x| x.0 == ElementaryInclusion::Flag).count(), 2);
        assert_eq!(e.iter().filter(|x| x.0 == ElementaryInclusion::Wall).count(), 2);
    }

    #[test]
    fn constant_quiver_is_smooth_and_perverse() {
        for a in [samples::line_point(), samples::cross(), samples::three_lines()] {
            let q = DoubleRep::constant(Arc::new(enumerate_faces(&a)), 1);
            assert!(smoothness_check(&q, Field::Rational).unwrap().is_empty());
            assert!(perversity_support_check(&q, Field::Rational).unwrap().is_empty());
            let t = stalk_table(&q, Field::Rational).unwrap();
            assert!(stratum_constancy(&q, &t).is_empty());
            for row in t {
                let h = row.cohomology.unwrap();
                assert_eq!(h[0], 1);
                assert!(h[1..].iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn stalks_glue_only_with_transitivity() {
        let p = Arc::new(enumerate_faces(&samples::cross()));
        assert!(generalization_check(&DoubleRep::constant(p.clone(), 1), Field::Rational).unwrap().is_empty());
        let broken = crate::quiver::samples::truncated(p.clone(), 1).unwrap();
        let bad = generalization_check(&broken, Field::Rational).unwrap();
        let (o, u) = (p.parse_face("00").unwrap(), p.parse_face("0+").unwrap());
        assert!(bad.contains(&(S1Cell { c: o, d: o }, S1Cell { c: o, d: u })));
    }
}
