//! The dimension-1 dictionary. `P` objects are diagrams `Φ ⇄ Ψ` with
//! `vu + Id` invertible; `B` objects are pairs of idempotents on `E_0`.
//!
//! Arrow conventions: `u : Ψ -> Φ` is stored as a `φ × ψ` matrix and
//! `v : Φ -> Ψ` as a `ψ × φ` matrix. In `to_p`, `Φ = Ker P₋` and
//! `Ψ = Im P₊` get the bases returned by the kernel and column-space
//! routines, `v` is `P₊` in those bases and `u` is `P₋ - Id`.

use crate::arrangement::{enumerate_faces, samples, Arrangement, FacePoset};
use crate::exactla::{rat, Matrix, Rat};
use crate::quiver::{DoubleRep, QuiverError};
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OneDimError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("vu + Id is not invertible")]
    MonodromyNotInvertible,
    #[error("{0} is not idempotent")]
    NotIdempotent(&'static str),
    #[error("P- restricted to Im P+ (or P+ to Im P-) is not an isomorphism")]
    NotIsomorphic,
    #[error("quiver is not over the one-point arrangement on the line")]
    NotOneDimensional,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PObject {
    pub phi: usize,
    pub psi: usize,
    pub u: Matrix,
    pub v: Matrix,
}

impl PObject {
    pub fn new(u: Matrix, v: Matrix) -> Result<Self, OneDimError> {
        let (phi, psi) = (u.rows(), u.cols());
        if v.shape() != (psi, phi) {
            return Err(OneDimError::Shape(format!("u is {phi}x{psi} but v is {}x{}", v.rows(), v.cols())));
        }
        let p = PObject { phi, psi, u, v };
        if !p.monodromy().is_invertible() {
            return Err(OneDimError::MonodromyNotInvertible);
        }
        Ok(p)
    }

    /// `vu + Id_Ψ`.
    pub fn monodromy(&self) -> Matrix {
        &(&self.v * &self.u) + &Matrix::identity(self.psi)
    }

    /// The rank-one local system with monodromy λ: `Φ = Ψ = k`, `v = 1`,
    /// `u = λ - 1`.
    pub fn lambda(lambda: Rat) -> Result<Self, OneDimError> {
        let one = rat(1);
        PObject::new(Matrix::from_rows(&[vec![lambda - &one]], 1).expect("1x1"), Matrix::identity(1))
    }

    /// `Φ ⇄ Ψ` with the roles of the two spaces exchanged.
    pub fn swapped(&self) -> Result<Self, OneDimError> {
        PObject::new(self.v.clone(), self.u.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BObject {
    pub e0: usize,
    pub p_plus: Matrix,
    pub p_minus: Matrix,
}

impl BObject {
    pub fn new(p_plus: Matrix, p_minus: Matrix) -> Result<Self, OneDimError> {
        let e0 = p_plus.rows();
        if p_plus.shape() != (e0, e0) || p_minus.shape() != (e0, e0) {
            return Err(OneDimError::Shape("idempotents must be square of equal size".into()));
        }
        if &p_plus * &p_plus != p_plus {
            return Err(OneDimError::NotIdempotent("P+"));
        }
        if &p_minus * &p_minus != p_minus {
            return Err(OneDimError::NotIdempotent("P-"));
        }
        let (rp, rm) = (p_plus.rank(), p_minus.rank());
        if rp != rm || (&p_minus * &p_plus).rank() != rp || (&p_plus * &p_minus).rank() != rp {
            return Err(OneDimError::NotIsomorphic);
        }
        Ok(BObject { e0, p_plus, p_minus })
    }

    /// `(E_0, Id - P₊, Id - P₋)`.
    pub fn fourier(&self) -> Self {
        let id = Matrix::identity(self.e0);
        BObject::new(&id - &self.p_plus, &id - &self.p_minus).expect("complementary idempotents stay valid")
    }
}

fn kernel_columns(m: &Matrix) -> Matrix {
    let k = m.kernel();
    if k.rows() == 0 {
        Matrix::zeros(m.cols(), 0)
    } else {
        k.transpose()
    }
}

/// `E_0 = Φ ⊕ Ψ`, `P₊ = [[0, 0], [v, 1]]`, `P₋ = [[0, u], [0, 1]]`.
pub fn to_b(p: &PObject) -> BObject {
    let n = p.phi + p.psi;
    let mut plus = Matrix::zeros(n, n);
    plus.set_block(p.phi, 0, &p.v);
    plus.set_block(p.phi, p.phi, &Matrix::identity(p.psi));
    let mut minus = Matrix::zeros(n, n);
    minus.set_block(0, p.phi, &p.u);
    minus.set_block(p.phi, p.phi, &Matrix::identity(p.psi));
    BObject::new(plus, minus).expect("invertible monodromy gives a valid object")
}

/// Builds the `P` object on `Φ = Ker A`, `Ψ = Im B` with `v = V|Φ` and
/// `u = U|Ψ`.
fn p_from(a: &Matrix, b: &Matrix, v_map: &Matrix, u_map: &Matrix) -> Result<PObject, OneDimError> {
    let k = kernel_columns(a);
    let j = b.column_space();
    let j = if j.cols() == 0 { Matrix::zeros(b.rows(), 0) } else { j };
    let v = j.solve(&(v_map * &k)).ok_or(OneDimError::NotIsomorphic)?;
    let u = k.solve(&(u_map * &j)).ok_or(OneDimError::NotIsomorphic)?;
    PObject::new(u, v)
}

/// `Φ = Ker P₋`, `Ψ = Im P₊`, `v = P₊`, `u = P₋ - Id`.
pub fn to_p(b: &BObject) -> Result<PObject, OneDimError> {
    let id = Matrix::identity(b.e0);
    p_from(&b.p_minus, &b.p_plus, &b.p_plus, &(&b.p_minus - &id))
}

/// The other convention: `Φ = Ker P₊`, `Ψ = Im P₋`, `v = P₋`, `u = P₊ - Id`.
pub fn to_p_minus(b: &BObject) -> Result<PObject, OneDimError> {
    let id = Matrix::identity(b.e0);
    p_from(&b.p_plus, &b.p_minus, &b.p_minus, &(&b.p_plus - &id))
}

/// Morphism `(a, b)` of `P` objects: `a : Φ -> Φ'`, `b : Ψ -> Ψ'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PMorphism {
    pub a: Matrix,
    pub b: Matrix,
}

impl PMorphism {
    pub fn is_morphism(&self, src: &PObject, tgt: &PObject) -> bool {
        self.a.shape() == (tgt.phi, src.phi)
            && self.b.shape() == (tgt.psi, src.psi)
            && &self.b * &src.v == &tgt.v * &self.a
            && &self.a * &src.u == &tgt.u * &self.b
    }

    pub fn is_iso(&self, src: &PObject, tgt: &PObject) -> bool {
        self.is_morphism(src, tgt) && self.a.is_invertible() && self.b.is_invertible()
    }
}

/// Coordinates of `(P₊ - Id)|Ker P₋` and `P₋|Im P₊` in the bases used by
/// [`to_p`] and [`to_p_minus`]: the half-monodromy from the first
/// convention to the second.
pub fn half_monodromy_plus(x: &BObject) -> PMorphism {
    let id = Matrix::identity(x.e0);
    let (k_src, j_src) = (kernel_columns(&x.p_minus), x.p_plus.column_space());
    let (k_tgt, j_tgt) = (kernel_columns(&x.p_plus), x.p_minus.column_space());
    let a = k_tgt.solve(&(&(&x.p_plus - &id) * &k_src)).expect("lands in Ker P+");
    let b = j_tgt.solve(&(&x.p_minus * &j_src)).expect("lands in Im P-");
    PMorphism { a, b }
}

/// `(P₋ - Id, P₊)` from the second convention back to the first.
pub fn half_monodromy_minus(x: &BObject) -> PMorphism {
    let id = Matrix::identity(x.e0);
    let (k_src, j_src) = (kernel_columns(&x.p_plus), x.p_minus.column_space());
    let (k_tgt, j_tgt) = (kernel_columns(&x.p_minus), x.p_plus.column_space());
    let a = k_tgt.solve(&(&(&x.p_minus - &id) * &k_src)).expect("lands in Ker P-");
    let b = j_tgt.solve(&(&x.p_plus * &j_src)).expect("lands in Im P+");
    PMorphism { a, b }
}

/// The face poset of the line with the origin as its only hyperplane.
pub fn line_poset() -> Arc<FacePoset> {
    Arc::new(enumerate_faces(&samples::line_point()))
}

fn is_line(a: &Arrangement) -> bool {
    a.dim() == 1 && a.len() == 1
}

/// `E_± = Im P_±` with `δ_±` the inclusions and `γ_±` the corestricted
/// idempotents.
pub fn to_quiver(b: &BObject) -> Result<DoubleRep, OneDimError> {
    let poset = line_poset();
    let mut projectors = vec![Matrix::identity(b.e0); 3];
    projectors[poset.parse_face("+").expect("face")] = b.p_plus.clone();
    projectors[poset.parse_face("-").expect("face")] = b.p_minus.clone();
    Ok(DoubleRep::from_idempotents(poset, &projectors)?)
}

/// `P_± = δ_± γ_±`.
pub fn from_quiver(q: &DoubleRep) -> Result<BObject, OneDimError> {
    let p = q.poset();
    if !is_line(p.arrangement()) {
        return Err(OneDimError::NotOneDimensional);
    }
    let zero = p.parse_face("0").map_err(|_| OneDimError::NotOneDimensional)?;
    let side = |s: &str| {
        let c = p.parse_face(s).expect("face of the line");
        &q.delta(c, zero).expect("0 <= C") * &q.gamma(zero, c).expect("0 <= C")
    };
    BObject::new(side("+"), side("-"))
}

/// Solution space `{x : f(x) = 0}` of a linear map given on vectors.
fn solution_basis(unknowns: usize, f: impl Fn(&[Rat]) -> Vec<Rat>) -> Vec<Vec<Rat>> {
    let cols: Vec<Vec<Rat>> = (0..unknowns)
        .map(|i| {
            let mut e = vec![rat(0); unknowns];
            e[i] = rat(1);
            f(&e)
        })
        .collect();
    let rows = cols.first().map(|c| c.len()).unwrap_or(0);
    let m = Matrix::from_columns(&cols, rows);
    m.kernel().row_vecs()
}

/// A deterministic search for an element of `span(basis)` accepted by
/// `ok`: each basis vector, then seeded random integer combinations.
fn find_invertible<T>(basis: &[Vec<Rat>], build: impl Fn(&[Rat]) -> T, ok: impl Fn(&T) -> bool) -> Option<T> {
    for v in basis {
        let t = build(v);
        if ok(&t) {
            return Some(t);
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let mut x = vec![rat(0); basis.first()?.len()];
        for v in basis {
            let c = rat(rng.gen_range(-50..=50));
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += &c * vi;
            }
        }
        let t = build(&x);
        if ok(&t) {
            return Some(t);
        }
    }
    None
}

fn reshape(v: &[Rat], rows: usize, cols: usize) -> Matrix {
    Matrix::from_vec(rows, cols, v.to_vec()).expect("sizes agree")
}

/// An invertible `T` with `T P_± = P'_± T`, if one exists.
pub fn b_intertwiner(x: &BObject, y: &BObject) -> Option<Matrix> {
    if x.e0 != y.e0 {
        return None;
    }
    let n = x.e0;
    if n == 0 {
        return Some(Matrix::zeros(0, 0));
    }
    let basis = solution_basis(n * n, |v| {
        let t = reshape(v, n, n);
        let mut out = (&(&t * &x.p_plus) - &(&y.p_plus * &t)).entries().to_vec();
        out.extend((&(&t * &x.p_minus) - &(&y.p_minus * &t)).entries().iter().cloned());
        out
    });
    find_invertible(&basis, |v| reshape(v, n, n), |t| t.is_invertible())
}

/// An isomorphism `(a, b)` of `P` objects, if one exists.
pub fn p_intertwiner(x: &PObject, y: &PObject) -> Option<PMorphism> {
    if x.phi != y.phi || x.psi != y.psi {
        return None;
    }
    let (f, s) = (x.phi, x.psi);
    let split = |v: &[Rat]| PMorphism { a: reshape(&v[..f * f], f, f), b: reshape(&v[f * f..], s, s) };
    if f * f + s * s == 0 {
        return Some(split(&[]));
    }
    let basis = solution_basis(f * f + s * s, |v| {
        let m = split(v);
        let mut out = (&(&m.b * &x.v) - &(&y.v * &m.a)).entries().to_vec();
        out.extend((&(&m.a * &x.u) - &(&y.u * &m.b)).entries().iter().cloned());
        out
    });
    find_invertible(&basis, split, |m| m.is_iso(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ratio;

    fn m(rows: usize, cols: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(rows, cols, e)
    }

    #[test]
    fn lambda_family_blocks() {
        let p = PObject::lambda(rat(2)).unwrap();
        let b = to_b(&p);
        assert_eq!(b.p_plus, m(2, 2, &[0, 0, 1, 1]));
        assert_eq!(b.p_minus, m(2, 2, &[0, 1, 0, 1]));
        assert!(PObject::lambda(rat(0)).is_err());
    }

    #[test]
    fn simple_objects() {
        let sky = PObject::new(Matrix::zeros(1, 0), Matrix::zeros(0, 1)).unwrap();
        let b = to_b(&sky);
        assert_eq!((b.e0, b.p_plus.is_zero(), b.p_minus.is_zero()), (1, true, true));
        let constant = PObject::new(Matrix::zeros(0, 1), Matrix::zeros(1, 0)).unwrap();
        let b = to_b(&constant);
        assert!(b.p_plus.is_identity() && b.p_minus.is_identity());
        let back = to_p(&b).unwrap();
        assert_eq!((back.phi, back.psi), (0, 1));
        assert_eq!(b.fourier(), to_b(&sky));
    }

    #[test]
    fn round_trips_have_intertwiners() {
        for l in [rat(2), rat(-1), ratio(1, 3)] {
            let p = PObject::lambda(l.clone()).unwrap();
            let pp = to_p(&to_b(&p)).unwrap();
            assert_eq!(pp.monodromy(), Matrix::from_rows(&[vec![l]], 1).unwrap());
            assert!(p_intertwiner(&p, &pp).unwrap().is_iso(&p, &pp));
            let b = to_b(&p);
            let bb = to_b(&to_p(&b).unwrap());
            let t = b_intertwiner(&b, &bb).unwrap();
            assert_eq!(&t * &b.p_plus, &bb.p_plus * &t);
        }
    }

    #[test]
    fn half_monodromies_compose_to_monodromy() {
        let b = to_b(&PObject::lambda(ratio(-3, 2)).unwrap());
        let (fp, fm) = (to_p(&b).unwrap(), to_p_minus(&b).unwrap());
        let tp = half_monodromy_plus(&b);
        let tm = half_monodromy_minus(&b);
        assert!(tp.is_iso(&fp, &fm));
        assert!(tm.is_iso(&fm, &fp));
        assert_eq!(&tm.b * &tp.b, fp.monodromy());
    }

    #[test]
    fn quiver_round_trip() {
        let b = to_b(&PObject::lambda(rat(5)).unwrap());
        let q = to_quiver(&b).unwrap();
        assert_eq!(from_quiver(&q).unwrap().p_plus.rank(), 1);
        assert!(crate::quiver::validate(&q).verdict());
    }
}
