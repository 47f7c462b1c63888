use super::{Arrangement, ArrangementError, Mode, Sign, SignVec};
use crate::exactla::{lp_feasible, primitive, Matrix, Rat};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub signs: SignVec,
    pub dim: usize,
    /// Echelon basis (rows) of the direction space of the span of the face.
    pub span_basis: Matrix,
    pub interior_point: Vec<Rat>,
}

/// Faces of an arrangement, listed in canonical sign-vector order
/// (coordinatewise lexicographic with 0 < + < -).
#[derive(Debug, Clone)]
pub struct FacePoset {
    arrangement: Arrangement,
    faces: Vec<Face>,
    index: HashMap<SignVec, usize>,
    covering: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

fn realize(a: &Arrangement, s: &SignVec) -> Option<Vec<Rat>> {
    let x = lp_feasible(&a.face_system(s))?;
    Some(match a.mode() {
        Mode::Linear => primitive(&x),
        Mode::Affine => x,
    })
}

fn make_face(a: &Arrangement, signs: SignVec, interior_point: Vec<Rat>) -> Face {
    let span_basis = a.coefficient_matrix(&signs.zero_set()).kernel();
    debug_assert_eq!(a.signs_at(&interior_point), signs);
    Face { dim: span_basis.rows(), signs, span_basis, interior_point }
}

/// Realizable sign vectors, found by inserting one hyperplane at a time and
/// keeping the feasible refinements.
pub fn enumerate_faces(a: &Arrangement) -> FacePoset {
    let mut partial: Vec<SignVec> = vec![SignVec(Vec::new())];
    for _ in 0..a.len() {
        let mut next = Vec::with_capacity(partial.len() * 3);
        for s in &partial {
            for sign in [Sign::Zero, Sign::Plus, Sign::Minus] {
                let mut t = s.clone();
                t.0.push(sign);
                if lp_feasible(&a.face_system(&t)).is_some() {
                    next.push(t);
                }
            }
        }
        partial = next;
    }
    let faces = partial
        .into_iter()
        .map(|s| {
            let x = realize(a, &s).expect("face realized during insertion");
            make_face(a, s, x)
        })
        .collect();
    FacePoset::from_faces(a.clone(), faces)
}

/// Oracle: test every vector in {0,+,-}^H for feasibility.
pub fn brute_force_faces(a: &Arrangement) -> Vec<SignVec> {
    let h = a.len();
    let mut out = Vec::new();
    for code in 0..3usize.pow(h as u32) {
        let mut c = code;
        let mut v = Vec::with_capacity(h);
        for _ in 0..h {
            v.push([Sign::Zero, Sign::Plus, Sign::Minus][c % 3]);
            c /= 3;
        }
        v.reverse();
        let s = SignVec(v);
        if lp_feasible(&a.face_system(&s)).is_some() {
            out.push(s);
        }
    }
    out.sort();
    out
}

impl FacePoset {
    fn from_faces(arrangement: Arrangement, mut faces: Vec<Face>) -> Self {
        faces.sort_by(|x, y| x.signs.cmp(&y.signs));
        let index = faces.iter().enumerate().map(|(i, f)| (f.signs.clone(), i)).collect();
        let n = faces.len();
        let mut covering = Vec::new();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for lo in 0..n {
            for up in 0..n {
                if faces[up].dim == faces[lo].dim + 1 && faces[lo].signs.face_le(&faces[up].signs) {
                    covering.push((lo, up));
                    upper[lo].push(up);
                    lower[up].push(lo);
                }
            }
        }
        FacePoset { arrangement, faces, index, covering, upper, lower }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn signs(&self, i: usize) -> &SignVec {
        &self.faces[i].signs
    }

    pub fn dim(&self, i: usize) -> usize {
        self.faces[i].dim
    }

    pub fn codim(&self, i: usize) -> usize {
        self.arrangement.dim() - self.faces[i].dim
    }

    pub fn index_of(&self, s: &SignVec) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn find(&self, s: &SignVec) -> Result<usize, ArrangementError> {
        self.arrangement.check_signs(s)?;
        self.index_of(s).ok_or_else(|| ArrangementError::NotAFace(s.to_string()))
    }

    /// Parses a sign vector and looks it up.
    pub fn parse_face(&self, text: &str) -> Result<usize, ArrangementError> {
        let s: SignVec = text.parse().map_err(|_| ArrangementError::NotAFace(text.to_string()))?;
        self.find(&s)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.faces[i].signs.face_le(&self.faces[j].signs)
    }

    /// Pairs `(lower, upper)` with `lower <₁ upper`.
    pub fn covering_pairs(&self) -> &[(usize, usize)] {
        &self.covering
    }

    pub fn is_covering(&self, lo: usize, up: usize) -> bool {
        self.upper[lo].contains(&up)
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn chambers(&self) -> Vec<usize> {
        let n = self.arrangement.dim();
        (0..self.len()).filter(|&i| self.faces[i].dim == n).collect()
    }

    pub fn is_chamber(&self, i: usize) -> bool {
        self.faces[i].dim == self.arrangement.dim()
    }

    /// The least face, when the poset has one (always in linear mode).
    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(i, j)))
    }

    /// Faces lying below both `a` and `b`.
    pub fn common_lower_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&m| self.leq(m, a) && self.leq(m, b)).collect()
    }

    /// Largest common lower bound of `a` and `b`, when one exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lbs = self.common_lower_bounds(a, b);
        let top = lbs.iter().copied().max_by_key(|&m| self.dim(m))?;
        debug_assert!(lbs.iter().all(|&m| self.leq(m, top)));
        Some(top)
    }

    /// Hyperplanes containing the face.
    pub fn zero_set(&self, i: usize) -> Vec<usize> {
        self.faces[i].signs.zero_set()
    }

    /// Whether two faces span the same flat.
    pub fn same_span(&self, i: usize, j: usize) -> bool {
        self.zero_set(i) == self.zero_set(j)
    }

    /// Index of `C ∘ D`.
    pub fn compose(&self, c: usize, d: usize) -> usize {
        let s = super::compose(&self.faces[c].signs, &self.faces[d].signs).expect("same arrangement");
        self.index_of(&s).expect("composition of faces is a face")
    }

    /// Faces whose closure contains face `c`.
    pub fn star(&self, c: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.leq(c, k)).collect()
    }
}
