//! Real hyperplane arrangements: sign vectors, faces, flats, composition,
//! collinearity and the bookkeeping for the S1 stratification.

mod faces;
mod flats;
mod predicates;

pub use faces::{brute_force_faces, enumerate_faces, Face, FacePoset};
pub use flats::{essentialize, flats, quotient, restrict, Flat, FlatLattice, Quotient, Restriction};
pub use predicates::{
    adjacent, chamber_distance, collinear, collinear_oracle, compose, compose_oracle, monotone_signs, s1_leq,
    s1_leq_oracle, s2_to_s1, S1Cell,
};

use crate::exactla::{sign_of, AffineForm, LinearSystem, Matrix, Rat};
use num::Zero;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("hyperplane {0} has a zero coefficient vector")]
    ZeroForm(usize),
    #[error("hyperplane {0} has {1} coefficients, expected {2}")]
    Arity(usize, usize, usize),
    #[error("hyperplanes {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("hyperplane {0} has a nonzero offset in linear mode")]
    OffsetInLinearMode(usize),
    #[error("sign vector length {0} does not match {1} hyperplanes")]
    Length(usize, usize),
    #[error("sign vector {0} is not realized by a face")]
    NotAFace(String),
    #[error("face {0} is not a chamber")]
    NotAChamber(String),
    #[error("not a flat of the arrangement")]
    NotAFlat,
    #[error("operation requires a linear arrangement")]
    NeedsLinear,
    #[error("cells are not comparable")]
    NotComparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Linear,
    Affine,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Linear => "linear",
            Mode::Affine => "affine",
        })
    }
}

/// Sign of a form on a face. The derived order `0 < + < -` is the canonical
/// listing order, not the face order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Zero,
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: &Rat) -> Sign {
        match sign_of(x) {
            0 => Sign::Zero,
            1 => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    /// Face order on single signs: 0 below both + and -.
    pub fn face_le(self, other: Sign) -> bool {
        self == other || self == Sign::Zero
    }

    /// Position in the chain - < 0 < +.
    pub fn level(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    pub fn char(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVec(pub Vec<Sign>);

impl SignVec {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zeros(n: usize) -> Self {
        SignVec(vec![Sign::Zero; n])
    }

    /// Coordinatewise face order.
    pub fn face_le(&self, other: &SignVec) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.face_le(*b))
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] == Sign::Zero).collect()
    }

    pub fn restrict_to(&self, idx: &[usize]) -> SignVec {
        SignVec(idx.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for SignVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for s in &self.0 {
            write!(f, "{}", s.char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "()" {
            return Ok(SignVec(Vec::new()));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(Sign::Zero),
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(format!("bad sign character {c:?} in {s:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVec)
    }
}

/// The hyperplane `coeffs · x + offset = 0` with its chosen equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub coeffs: Vec<Rat>,
    pub offset: Rat,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rat>, offset: Rat) -> Self {
        Hyperplane { coeffs, offset }
    }

    pub fn linear(coeffs: Vec<Rat>) -> Self {
        Hyperplane { coeffs, offset: Rat::zero() }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        crate::exactla::dot(&self.coeffs, x) + &self.offset
    }

    pub fn form(&self) -> AffineForm {
        AffineForm::new(self.coeffs.clone(), self.offset.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    n: usize,
    hyperplanes: Vec<Hyperplane>,
    mode: Mode,
}

impl Arrangement {
    pub fn new(n: usize, hyperplanes: Vec<Hyperplane>, mode: Mode) -> Result<Self, ArrangementError> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.coeffs.len() != n {
                return Err(ArrangementError::Arity(i, h.coeffs.len(), n));
            }
            if h.coeffs.iter().all(|c| c.is_zero()) {
                return Err(ArrangementError::ZeroForm(i));
            }
            if mode == Mode::Linear && !h.offset.is_zero() {
                return Err(ArrangementError::OffsetInLinearMode(i));
            }
        }
        let ext: Vec<Vec<Rat>> = hyperplanes
            .iter()
            .map(|h| {
                let mut v = h.coeffs.clone();
                v.push(h.offset.clone());
                v
            })
            .collect();
        for i in 0..ext.len() {
            for j in 0..i {
                let pair = Matrix::from_rows(&[ext[j].clone(), ext[i].clone()], n + 1).expect("rows");
                if pair.rank() == 1 {
                    return Err(ArrangementError::Duplicate(j, i));
                }
            }
        }
        Ok(Arrangement { n, hyperplanes, mode })
    }

    /// Linear arrangement from integer coefficient rows.
    pub fn linear_from_i64(n: usize, rows: &[&[i64]]) -> Result<Self, ArrangementError> {
        let hs = rows.iter().map(|r| Hyperplane::linear(r.iter().map(|&x| crate::exactla::rat(x)).collect())).collect();
        Arrangement::new(n, hs, Mode::Linear)
    }

    /// Affine arrangement from integer rows `(coeffs..., offset)`.
    pub fn affine_from_i64(n: usize, rows: &[&[i64]]) -> Result<Self, ArrangementError> {
        let hs = rows
            .iter()
            .map(|r| {
                let v: Vec<Rat> = r.iter().map(|&x| crate::exactla::rat(x)).collect();
                Hyperplane::new(v[..n].to_vec(), v[n].clone())
            })
            .collect();
        Arrangement::new(n, hs, Mode::Affine)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Same hyperplanes, reinterpreted in another mode.
    pub fn with_mode(&self, mode: Mode) -> Result<Self, ArrangementError> {
        Arrangement::new(self.n, self.hyperplanes.clone(), mode)
    }

    pub fn signs_at(&self, x: &[Rat]) -> SignVec {
        SignVec(self.hyperplanes.iter().map(|h| Sign::of(&h.eval(x))).collect())
    }

    /// Coefficient rows of the given hyperplanes.
    pub fn coefficient_matrix(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<Rat>> = idx.iter().map(|&i| self.hyperplanes[i].coeffs.clone()).collect();
        Matrix::from_rows(&rows, self.n).expect("rows")
    }

    /// Constraints describing the face with sign vector `s` (on a prefix of
    /// the hyperplanes when `s` is shorter).
    pub fn face_system(&self, s: &SignVec) -> LinearSystem {
        let mut sys = LinearSystem::new(self.n);
        for (h, sign) in self.hyperplanes.iter().zip(&s.0) {
            let f = h.form();
            match sign {
                Sign::Zero => sys.equalities.push(f),
                Sign::Plus => sys.strict.push(f),
                Sign::Minus => sys.strict.push(f.negated()),
            }
        }
        sys
    }

    /// Constraints describing the closure of the face `s`.
    pub fn closure_system(&self, s: &SignVec) -> LinearSystem {
        let mut sys = LinearSystem::new(self.n);
        for (h, sign) in self.hyperplanes.iter().zip(&s.0) {
            let f = h.form();
            match sign {
                Sign::Zero => sys.equalities.push(f),
                Sign::Plus => sys.weak.push(f),
                Sign::Minus => sys.weak.push(f.negated()),
            }
        }
        sys
    }

    pub fn check_signs(&self, s: &SignVec) -> Result<(), ArrangementError> {
        if s.len() != self.len() {
            return Err(ArrangementError::Length(s.len(), self.len()));
        }
        Ok(())
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} arrangement of {} hyperplanes in dimension {}", self.mode, self.len(), self.n)
    }
}

/// Standard test arrangements.
pub mod samples {
    use super::*;

    /// The point {0} on the line.
    pub fn line_point() -> Arrangement {
        Arrangement::linear_from_i64(1, &[&[1]]).unwrap()
    }

    /// The two coordinate lines in the plane.
    pub fn cross() -> Arrangement {
        Arrangement::linear_from_i64(2, &[&[1, 0], &[0, 1]]).unwrap()
    }

    /// x = 0, y = 0, x = y.
    pub fn three_lines() -> Arrangement {
        Arrangement::linear_from_i64(2, &[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
    }

    /// The coordinate hyperplanes of 3-space.
    pub fn boolean3() -> Arrangement {
        Arrangement::linear_from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap()
    }

    /// The points 0 and 1 on the line.
    pub fn two_points() -> Arrangement {
        Arrangement::affine_from_i64(1, &[&[1, 0], &[1, -1]]).unwrap()
    }

    /// Three lines bounding a triangle.
    pub fn triangle() -> Arrangement {
        Arrangement::affine_from_i64(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]).unwrap()
    }

    /// A line in the plane, not essential.
    pub fn plane_line() -> Arrangement {
        Arrangement::linear_from_i64(2, &[&[1, 0]]).unwrap()
    }

    /// The braid arrangement x_i = x_j in 3-space (not essential).
    pub fn braid3() -> Arrangement {
        Arrangement::linear_from_i64(3, &[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_arrangements() {
        assert_eq!(Arrangement::linear_from_i64(1, &[&[0]]).unwrap_err(), ArrangementError::ZeroForm(0));
        assert_eq!(
            Arrangement::linear_from_i64(2, &[&[1, 1], &[-2, -2]]).unwrap_err(),
            ArrangementError::Duplicate(0, 1)
        );
        assert!(Arrangement::affine_from_i64(1, &[&[1, 0], &[1, -1]]).is_ok());
        assert_eq!(
            Arrangement::affine_from_i64(1, &[&[1, 2], &[-2, -4]]).unwrap_err(),
            ArrangementError::Duplicate(0, 1)
        );
        let h = Hyperplane::new(vec![crate::exactla::rat(1)], crate::exactla::rat(1));
        assert_eq!(Arrangement::new(1, vec![h], Mode::Linear).unwrap_err(), ArrangementError::OffsetInLinearMode(0));
    }

    #[test]
    fn sign_vector_text() {
        let s: SignVec = "+0-".parse().unwrap();
        assert_eq!(s.to_string(), "+0-");
        assert_eq!("()".parse::<SignVec>().unwrap().len(), 0);
        assert!("+x".parse::<SignVec>().is_err());
    }
}
