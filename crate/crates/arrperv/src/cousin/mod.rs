//! Cousin complexes of double quivers: the global complex graded by face
//! codimension, stalk complexes on S1 cells and generalization maps.

mod audit;

pub use audit::{
    elementary_inclusions, generalization_check, perversity_support_check, smoothness_check, stalk_table,
    stratum_constancy, ElementaryInclusion, FailureReason, PerversityViolation, SmoothnessFailure, StalkRow,
};

use crate::arrangement::{s1_leq, FacePoset, S1Cell};
use crate::exactla::{sign_of, ChainComplex, ChainMap, ExactError, Field, Matrix};
use crate::quiver::{DoubleRep, TransitionTable};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CousinError {
    #[error("incidence signs fail the diamond condition on {lower} < {upper}")]
    Diamond { lower: String, upper: String },
    #[error("d^2 != 0 on the interval {lower} < {upper}")]
    NotAComplex { lower: String, upper: String },
    #[error("cells {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Incidence signs `[C : C']` for covering pairs `C' <₁ C`, from the echelon
/// bases of the spans: the sign compares `(basis(C'), c - c')` with
/// `basis(C)`, where `c`, `c'` are interior points.
#[derive(Debug, Clone)]
pub struct OrientationData {
    signs: HashMap<(usize, usize), i8>,
}

impl OrientationData {
    pub fn new(p: &FacePoset) -> Result<Self, CousinError> {
        let mut signs = HashMap::new();
        for &(lo, up) in p.covering_pairs() {
            let (fl, fu) = (p.face(lo), p.face(up));
            let (_, pivots) = fu.span_basis.rref();
            let mut rows: Vec<Vec<_>> = fl.span_basis.row_vecs();
            rows.push(fu.interior_point.iter().zip(&fl.interior_point).map(|(a, b)| a - b).collect());
            let coords: Vec<Vec<_>> = rows.iter().map(|r| pivots.iter().map(|&j| r[j].clone()).collect()).collect();
            let m = Matrix::from_rows(&coords, pivots.len())?;
            let s = sign_of(&m.determinant());
            if s == 0 {
                return Err(CousinError::Diamond { lower: p.signs(lo).to_string(), upper: p.signs(up).to_string() });
            }
            signs.insert((lo, up), s);
        }
        let o = OrientationData { signs };
        o.check_diamonds(p)?;
        Ok(o)
    }

    fn check_diamonds(&self, p: &FacePoset) -> Result<(), CousinError> {
        for lo in 0..p.len() {
            for up in 0..p.len() {
                if p.dim(up) != p.dim(lo) + 2 || !p.leq(lo, up) {
                    continue;
                }
                let sum: i32 = p
                    .upper_covers(lo)
                    .iter()
                    .filter(|&&m| p.is_covering(m, up))
                    .map(|&m| (self.sign(lo, m) * self.sign(m, up)) as i32)
                    .sum();
                if sum != 0 {
                    return Err(CousinError::Diamond {
                        lower: p.signs(lo).to_string(),
                        upper: p.signs(up).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn sign(&self, lower: usize, upper: usize) -> i8 {
        self.signs[&(lower, upper)]
    }
}

pub fn orientation_data(p: &FacePoset) -> Result<OrientationData, CousinError> {
    OrientationData::new(p)
}

/// A complex whose degree-p term is a sum over faces of codimension p.
#[derive(Debug, Clone)]
pub struct GradedComplex {
    /// Contributing faces per degree.
    pub faces: Vec<Vec<usize>>,
    /// Dimension of each face's summand, per degree.
    pub dims: Vec<Vec<usize>>,
    pub complex: ChainComplex,
}

impl GradedComplex {
    pub fn cohomology_in(&self, field: Field) -> Vec<usize> {
        self.complex.cohomology_in(field)
    }

    pub fn cohomology(&self) -> Vec<usize> {
        self.complex.cohomology()
    }

    fn offset(&self, degree: usize, face: usize) -> Option<(usize, usize)> {
        let i = self.faces[degree].iter().position(|&f| f == face)?;
        Some((self.dims[degree][..i].iter().sum(), self.dims[degree][i]))
    }
}

#[derive(Debug, Clone)]
pub struct StalkComplex {
    pub cell: S1Cell,
    pub graded: GradedComplex,
}

/// Computes Cousin data for one quiver over one field.
pub struct Cousin<'a> {
    q: &'a DoubleRep,
    field: Field,
    orientation: OrientationData,
    phi: TransitionTable,
}

impl<'a> Cousin<'a> {
    pub fn new(q: &'a DoubleRep, field: Field) -> Result<Self, CousinError> {
        Ok(Cousin { q, field, orientation: OrientationData::new(q.poset())?, phi: TransitionTable::new(q) })
    }

    pub fn quiver(&self) -> &DoubleRep {
        self.q
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn poset(&self) -> &FacePoset {
        self.q.poset()
    }

    /// Assembles the complex on `faces` with summand dimensions `dim_of` and
    /// blocks `sign · block(C, C')` for `C' <₁ C`.
    fn assemble(
        &self,
        faces: &[usize],
        dim_of: impl Fn(usize) -> usize,
        block: impl Fn(usize, usize) -> Matrix,
    ) -> Result<GradedComplex, CousinError> {
        let p = self.poset();
        let n = p.arrangement().dim();
        let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for &c in faces {
            by_degree[p.codim(c)].push(c);
        }
        let dims: Vec<Vec<usize>> = by_degree.iter().map(|fs| fs.iter().map(|&c| dim_of(c)).collect()).collect();
        let terms: Vec<usize> = dims.iter().map(|d| d.iter().sum()).collect();
        let mut diffs = Vec::with_capacity(n);
        for deg in 0..n {
            let mut m = Matrix::zeros(terms[deg + 1], terms[deg]);
            let mut col = 0;
            for (i, &c) in by_degree[deg].iter().enumerate() {
                let mut row = 0;
                for (j, &c2) in by_degree[deg + 1].iter().enumerate() {
                    if p.is_covering(c2, c) {
                        let b = block(c, c2);
                        let b = if self.orientation.sign(c2, c) < 0 { -&b } else { b };
                        m.set_block(row, col, &b);
                    }
                    row += dims[deg + 1][j];
                }
                col += dims[deg][i];
            }
            diffs.push(m);
        }
        let graded = GradedComplex { faces: by_degree, dims, complex: ChainComplex::zero(n + 1) };
        for deg in 0..n.saturating_sub(1) {
            let dd = &diffs[deg + 1] * &diffs[deg];
            if self.field.is_zero(&dd) {
                continue;
            }
            for &c in &graded.faces[deg] {
                for &c2 in &graded.faces[deg + 2] {
                    let (r, h) = graded.offset(deg + 2, c2).expect("listed");
                    let (s, w) = graded.offset(deg, c).expect("listed");
                    if !self.field.is_zero(&dd.submatrix(r..r + h, s..s + w)) {
                        return Err(CousinError::NotAComplex {
                            lower: p.signs(c2).to_string(),
                            upper: p.signs(c).to_string(),
                        });
                    }
                }
            }
        }
        let complex = ChainComplex::new_in(self.field, terms, diffs)?;
        Ok(GradedComplex { complex, ..graded })
    }

    /// `⊕_{codim C = p} E_C` with blocks `± δ_{CC'}`.
    pub fn global_complex(&self) -> Result<GradedComplex, CousinError> {
        let all: Vec<usize> = (0..self.poset().len()).collect();
        self.assemble(&all, |c| self.q.dim(c), |c, c2| self.q.delta(c, c2).expect("c2 <= c"))
    }

    /// The stalk on `[C₁, D]`: faces `C ≥ C₁` contribute `E_{C∘D}`, with
    /// blocks `± φ_{C∘D, C'∘D}`.
    pub fn stalk_complex(&self, cell: S1Cell) -> Result<StalkComplex, CousinError> {
        let p = self.poset();
        let star = p.star(cell.c);
        let d = cell.d;
        let graded = self.assemble(
            &star,
            |c| self.q.dim(p.compose(c, d)),
            |c, c2| self.phi.get(p.compose(c, d), p.compose(c2, d)).expect("linked by C'∘D").clone(),
        )?;
        Ok(StalkComplex { cell, graded })
    }

    /// The map of stalks for `lo ≤ hi`: `γ_{C∘D', C∘D}` on faces of both,
    /// zero on faces only in the source.
    pub fn generalization_chain_map(&self, lo: &StalkComplex, hi: &StalkComplex) -> Result<ChainMap, CousinError> {
        let p = self.poset();
        if !s1_leq(p, lo.cell, hi.cell) {
            return Err(CousinError::NotComparable(lo.cell.label(p), hi.cell.label(p)));
        }
        let (src, tgt) = (&lo.graded, &hi.graded);
        let mut comps = Vec::with_capacity(src.faces.len());
        for deg in 0..src.faces.len() {
            let mut m = Matrix::zeros(tgt.complex.terms()[deg], src.complex.terms()[deg]);
            for &c in &tgt.faces[deg] {
                let (r, _) = tgt.offset(deg, c).expect("listed");
                let (s, _) = src.offset(deg, c).expect("target faces are source faces");
                let g = self.q.gamma(p.compose(c, lo.cell.d), p.compose(c, hi.cell.d)).expect("C∘D' <= C∘D");
                m.set_block(r, s, &g);
            }
            comps.push(m);
        }
        Ok(ChainMap::new_in(self.field, src.complex.clone(), tgt.complex.clone(), comps)?)
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(self.q)
    }
}

pub fn global_complex(q: &DoubleRep) -> Result<GradedComplex, CousinError> {
    Cousin::new(q, Field::Rational)?.global_complex()
}

pub fn stalk_complex(q: &DoubleRep, cell: S1Cell) -> Result<StalkComplex, CousinError> {
    Cousin::new(q, Field::Rational)?.stalk_complex(cell)
}

pub fn generalization_chain_map(q: &DoubleRep, lo: S1Cell, hi: S1Cell) -> Result<ChainMap, CousinError> {
    let c = Cousin::new(q, Field::Rational)?;
    c.generalization_chain_map(&c.stalk_complex(lo)?, &c.stalk_complex(hi)?)
}

/// `Σ_C (-1)^{codim C} dim E_C`.
pub fn euler_characteristic(q: &DoubleRep) -> i64 {
    let p = q.poset();
    (0..p.len()).map(|c| if p.codim(c).is_multiple_of(2) { q.dim(c) as i64 } else { -(q.dim(c) as i64) }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{enumerate_faces, samples};
    use std::sync::Arc;

    fn constant(a: crate::arrangement::Arrangement, d: usize) -> DoubleRep {
        DoubleRep::constant(Arc::new(enumerate_faces(&a)), d)
    }

    #[test]
    fn rays_have_opposite_incidence() {
        let p = enumerate_faces(&samples::line_point());
        let o = OrientationData::new(&p).unwrap();
        assert_eq!(o.sign(0, 1), -o.sign(0, 2));
    }

    #[test]
    fn diamonds_hold() {
        for a in [samples::cross(), samples::three_lines(), samples::boolean3(), samples::triangle(), samples::braid3()]
        {
            OrientationData::new(&enumerate_faces(&a)).unwrap();
        }
    }

    #[test]
    fn constant_global_cohomology() {
        let q = constant(samples::line_point(), 1);
        let g = global_complex(&q).unwrap();
        assert_eq!(g.complex.terms(), &[2, 1]);
        assert_eq!(g.cohomology(), vec![1, 0]);
        let q = constant(samples::three_lines(), 1);
        let g = global_complex(&q).unwrap();
        assert_eq!(g.complex.terms(), &[6, 6, 1]);
        assert_eq!(g.cohomology(), vec![1, 0, 0]);
        assert_eq!(euler_characteristic(&q), 1);
    }

    #[test]
    fn stalk_on_half_line_cell() {
        let q = constant(samples::line_point(), 1);
        let p = q.poset();
        let plus = p.parse_face("+").unwrap();
        let s = stalk_complex(&q, S1Cell::new(p, 0, plus).unwrap()).unwrap();
        assert_eq!(s.graded.complex.terms(), &[2, 1]);
        assert_eq!(s.graded.cohomology(), vec![1, 0]);
        let d = s.graded.complex.differential(0);
        assert_eq!(d.entries()[0].clone() * d.entries()[1].clone(), -crate::exactla::rat(1));
        let top = stalk_complex(&q, S1Cell::new(p, plus, plus).unwrap()).unwrap();
        assert_eq!(top.graded.complex.terms(), &[1, 0]);
        let m = generalization_chain_map(&q, S1Cell::new(p, 0, plus).unwrap(), S1Cell::new(p, plus, plus).unwrap())
            .unwrap();
        assert_eq!(m.components()[0].shape(), (1, 2));
        assert!(m.is_quasi_iso());
    }
}
