use super::{Arrangement, ArrangementError, FacePoset, Hyperplane, Mode, SignVec};
use crate::exactla::{Matrix, Rat};
use num::Zero;
use std::collections::BTreeSet;

/// Intersection of a set of hyperplanes, keyed by the full set of
/// hyperplanes containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub hyperplanes: Vec<usize>,
    /// Echelon basis (rows) of the direction space.
    pub basis: Matrix,
    /// A point of the flat (the origin in linear mode).
    pub point: Vec<Rat>,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct FlatLattice {
    flats: Vec<Flat>,
}

impl FlatLattice {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.flats[i]
    }

    pub fn ambient(&self) -> usize {
        self.find(&[]).expect("ambient flat")
    }

    pub fn find(&self, hyperplanes: &[usize]) -> Option<usize> {
        self.flats.iter().position(|f| f.hyperplanes == hyperplanes)
    }

    /// Whether flat `small` lies inside flat `big`.
    pub fn contains(&self, big: usize, small: usize) -> bool {
        let s = &self.flats[small].hyperplanes;
        self.flats[big].hyperplanes.iter().all(|h| s.contains(h))
    }

    /// The flat spanned by a face.
    pub fn flat_of_face(&self, poset: &FacePoset, c: usize) -> usize {
        self.find(&poset.zero_set(c)).expect("face spans a flat")
    }

    /// Smallest flat containing the given ones: the intersection of the
    /// hyperplanes they share.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let hs: Vec<usize> =
            self.flats[a].hyperplanes.iter().copied().filter(|h| self.flats[b].hyperplanes.contains(h)).collect();
        self.flats
            .iter()
            .enumerate()
            .filter(|(_, f)| hs.iter().all(|h| f.hyperplanes.contains(h)))
            .max_by_key(|(_, f)| f.dim)
            .map(|(i, _)| i)
            .expect("ambient flat contains everything")
    }
}

/// Point and direction space of the intersection of `idx`, if nonempty.
fn intersect(a: &Arrangement, idx: &[usize]) -> Option<(Vec<Rat>, Matrix)> {
    let m = a.coefficient_matrix(idx);
    let rhs: Vec<Rat> = idx.iter().map(|&i| -a.hyperplanes()[i].offset.clone()).collect();
    let x = m.solve(&Matrix::from_columns(&[rhs], idx.len()))?;
    Some((x.column(0), m.kernel()))
}

/// All hyperplanes containing the intersection of `idx`.
fn closure(a: &Arrangement, point: &[Rat], basis: &Matrix) -> Vec<usize> {
    (0..a.len())
        .filter(|&h| {
            let hp = &a.hyperplanes()[h];
            hp.eval(point).is_zero() && basis.mul_vec(&hp.coeffs).iter().all(|x| x.is_zero())
        })
        .collect()
}

/// Intersections of all subsets of hyperplanes, deduplicated.
pub fn flats(a: &Arrangement) -> FlatLattice {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack = vec![Vec::<usize>::new()];
    while let Some(idx) = stack.pop() {
        let Some((point, basis)) = intersect(a, &idx) else { continue };
        let z = closure(a, &point, &basis);
        if !seen.insert(z.clone()) {
            continue;
        }
        for h in 0..a.len() {
            if !z.contains(&h) {
                let mut next = z.clone();
                next.push(h);
                next.sort();
                stack.push(next);
            }
        }
        let point = if a.mode() == Mode::Linear { vec![Rat::zero(); a.dim()] } else { point };
        out.push(Flat { hyperplanes: z, dim: basis.rows(), basis, point });
    }
    out.sort_by(|x, y| y.dim.cmp(&x.dim).then_with(|| x.hyperplanes.cmp(&y.hyperplanes)));
    FlatLattice { flats: out }
}

fn check_flat(a: &Arrangement, l: &Flat) -> Result<(), ArrangementError> {
    let Some((point, basis)) = intersect(a, &l.hyperplanes) else { return Err(ArrangementError::NotAFlat) };
    if closure(a, &point, &basis) != l.hyperplanes {
        return Err(ArrangementError::NotAFlat);
    }
    Ok(())
}

/// The arrangement of hyperplanes containing a flat, in coordinates on the
/// quotient by its direction space.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub arrangement: Arrangement,
    /// Original index of each surviving hyperplane.
    pub kept: Vec<usize>,
    /// Rows give the quotient coordinates `y = R (x - base)`.
    pub projection: Matrix,
    pub base: Vec<Rat>,
}

impl Quotient {
    /// Face map on sign vectors of faces above the flat.
    pub fn project_signs(&self, s: &SignVec) -> SignVec {
        s.restrict_to(&self.kept)
    }

    pub fn project_point(&self, x: &[Rat]) -> Vec<Rat> {
        let d: Vec<Rat> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        self.projection.mul_vec(&d)
    }
}

/// Quotient by a flat; always a linear arrangement.
pub fn quotient(a: &Arrangement, l: &Flat) -> Result<Quotient, ArrangementError> {
    check_flat(a, l)?;
    let (r, pivots) = a.coefficient_matrix(&l.hyperplanes).rref();
    let projection = r.submatrix(0..pivots.len(), 0..a.dim());
    let hs = l
        .hyperplanes
        .iter()
        .map(|&h| Hyperplane::linear(pivots.iter().map(|&p| a.hyperplanes()[h].coeffs[p].clone()).collect()))
        .collect();
    let arrangement = Arrangement::new(pivots.len(), hs, Mode::Linear)?;
    Ok(Quotient { arrangement, kept: l.hyperplanes.clone(), projection, base: l.point.clone() })
}

/// Quotient of a linear arrangement by its smallest flat.
pub fn essentialize(a: &Arrangement) -> Result<(Arrangement, Matrix), ArrangementError> {
    if a.mode() != Mode::Linear {
        return Err(ArrangementError::NeedsLinear);
    }
    let all: Vec<usize> = (0..a.len()).collect();
    let basis = a.coefficient_matrix(&all).kernel();
    let l = Flat { hyperplanes: all, dim: basis.rows(), basis, point: vec![Rat::zero(); a.dim()] };
    let q = quotient(a, &l)?;
    Ok((q.arrangement, q.projection))
}

/// The induced arrangement on a flat, parametrized as `base + basis · u`.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub arrangement: Arrangement,
    pub base: Vec<Rat>,
    /// Columns span the direction space of the flat.
    pub basis: Matrix,
    /// Original hyperplane giving each restricted one.
    pub kept: Vec<usize>,
}

impl Restriction {
    pub fn lift_point(&self, u: &[Rat]) -> Vec<Rat> {
        self.basis.mul_vec(u).iter().zip(&self.base).map(|(x, b)| x + b).collect()
    }
}

pub fn restrict(a: &Arrangement, l: &Flat) -> Result<Restriction, ArrangementError> {
    check_flat(a, l)?;
    let basis = l.basis.transpose();
    let k = basis.cols();
    let mut hs: Vec<Hyperplane> = Vec::new();
    let mut kept = Vec::new();
    for (i, h) in a.hyperplanes().iter().enumerate() {
        let coeffs = Matrix::from_rows(std::slice::from_ref(&h.coeffs), a.dim()).expect("row");
        let c = (&coeffs * &basis).row(0).to_vec();
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        let offset = h.eval(&l.point);
        let mut ext = c.clone();
        ext.push(offset.clone());
        let dup = hs.iter().any(|g| {
            let mut e = g.coeffs.clone();
            e.push(g.offset.clone());
            Matrix::from_rows(&[e, ext.clone()], k + 1).expect("rows").rank() == 1
        });
        if !dup {
            hs.push(Hyperplane::new(c, offset));
            kept.push(i);
        }
    }
    let arrangement = Arrangement::new(k, hs, a.mode())?;
    Ok(Restriction { arrangement, base: l.point.clone(), basis, kept })
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_faces, samples};
    use super::*;

    fn flat_count(a: &Arrangement) -> usize {
        flats(a).len()
    }

    #[test]
    fn counts() {
        assert_eq!(flat_count(&samples::line_point()), 2);
        assert_eq!(flat_count(&samples::three_lines()), 5);
        assert_eq!(flat_count(&Arrangement::new(2, vec![], Mode::Linear).unwrap()), 1);
        assert_eq!(flat_count(&samples::two_points()), 3);
        assert_eq!(flat_count(&samples::boolean3()), 8);
    }

    #[test]
    fn flats_are_spans_of_faces() {
        for a in [samples::cross(), samples::three_lines(), samples::triangle(), samples::braid3()] {
            let p = enumerate_faces(&a);
            let mut from_faces: Vec<Vec<usize>> = p.faces().iter().map(|f| f.signs.zero_set()).collect();
            from_faces.sort();
            from_faces.dedup();
            let mut got: Vec<Vec<usize>> = flats(&a).flats().iter().map(|f| f.hyperplanes.clone()).collect();
            got.sort();
            assert_eq!(got, from_faces);
        }
    }

    #[test]
    fn essentialize_cases() {
        let (e, r) = essentialize(&samples::cross()).unwrap();
        assert_eq!(e, samples::cross());
        assert!(r.is_identity());
        let (e, _) = essentialize(&samples::plane_line()).unwrap();
        assert_eq!(e, samples::line_point());
        let (e, r) = essentialize(&Arrangement::new(3, vec![], Mode::Linear).unwrap()).unwrap();
        assert_eq!((e.dim(), r.rows()), (0, 0));
    }

    #[test]
    fn quotient_cases() {
        let a = samples::cross();
        let lat = flats(&a);
        let amb = quotient(&a, lat.flat(lat.ambient())).unwrap();
        assert_eq!(amb.arrangement.dim(), 0);
        let line = quotient(&a, lat.flat(lat.find(&[1]).unwrap())).unwrap();
        assert_eq!(line.arrangement.dim(), 1);
        assert_eq!(line.kept, vec![1]);
        let b = samples::three_lines();
        let lb = flats(&b);
        let not_closed = Flat { hyperplanes: vec![0, 1], ..lb.flat(lb.find(&[0, 1, 2]).unwrap()).clone() };
        assert!(quotient(&b, &not_closed).is_err());
    }

    #[test]
    fn restriction_cases() {
        let a = samples::cross();
        let lat = flats(&a);
        let r = restrict(&a, lat.flat(lat.find(&[0]).unwrap())).unwrap();
        assert_eq!(r.arrangement.dim(), 1);
        assert_eq!(enumerate_faces(&r.arrangement).len(), 3);
        let r0 = restrict(&a, lat.flat(lat.find(&[0, 1]).unwrap())).unwrap();
        assert_eq!(enumerate_faces(&r0.arrangement).len(), 1);
        let whole = restrict(&a, lat.flat(lat.ambient())).unwrap();
        assert_eq!(whole.arrangement, a);
        // Two lines with the same trace on x = 0 collapse to one point.
        let b = samples::three_lines();
        let lb = flats(&b);
        let r = restrict(&b, lb.flat(lb.find(&[0]).unwrap())).unwrap();
        assert_eq!(r.arrangement.len(), 1);
    }

    #[test]
    fn affine_restriction_drops_parallel_hyperplanes() {
        let a = samples::two_points();
        let lat = flats(&a);
        let r = restrict(&a, lat.flat(lat.find(&[0]).unwrap())).unwrap();
        assert_eq!(r.arrangement.dim(), 0);
        assert!(r.arrangement.is_empty());
    }
}
