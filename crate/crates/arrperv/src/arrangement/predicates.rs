use super::{Arrangement, ArrangementError, Face, FacePoset, Mode, Sign, SignVec};
use crate::exactla::{lp_feasible, ratio, AffineForm, LinearSystem, Rat};
use num::{One, Signed, Zero};
use std::collections::VecDeque;

/// Coordinatewise composition: `a ⋆ b = b` if `a < b`, else `a`.
pub fn compose(s: &SignVec, t: &SignVec) -> Result<SignVec, ArrangementError> {
    if s.len() != t.len() {
        return Err(ArrangementError::Length(t.len(), s.len()));
    }
    Ok(SignVec(s.0.iter().zip(&t.0).map(|(&a, &b)| if a == Sign::Zero { b } else { a }).collect()))
}

/// Signs at `(1 - ε) c + ε d` for a point `c` of `C`, a point `d` of `D`,
/// and ε small enough that no nonzero value at `c` changes sign.
pub fn compose_oracle(a: &Arrangement, c: &Face, d: &Face) -> SignVec {
    let fc: Vec<Rat> = a.hyperplanes().iter().map(|h| h.eval(&c.interior_point)).collect();
    let fd: Vec<Rat> = a.hyperplanes().iter().map(|h| h.eval(&d.interior_point)).collect();
    let mut eps = ratio(1, 2);
    for (x, y) in fc.iter().zip(&fd) {
        if !x.is_zero() {
            let t = x.abs() / (x.abs() + y.abs()) / Rat::from_integer(2.into());
            if t < eps {
                eps = t;
            }
        }
    }
    let one_minus = Rat::one() - &eps;
    let p: Vec<Rat> = c.interior_point.iter().zip(&d.interior_point).map(|(x, y)| x * &one_minus + y * &eps).collect();
    a.signs_at(&p)
}

fn monotone(x: Sign, y: Sign, z: Sign) -> bool {
    let (x, y, z) = (x.level(), y.level(), z.level());
    (x <= y && y <= z) || (x >= y && y >= z)
}

/// Sign of a form strictly inside a segment whose ends have signs x and z.
fn strictly_between(x: Sign, y: Sign, z: Sign) -> bool {
    match (x, z) {
        _ if x == z => y == x,
        (Sign::Zero, _) => y == z,
        (_, Sign::Zero) => y == x,
        _ => true,
    }
}

/// Per-hyperplane monotonicity of `(A_H, B_H, C_H)` under `- < 0 < +`.
/// Weaker than collinearity: it also accepts `(0, ray, chamber)` triples
/// such as `(00, 0+, ++)` where no segment works.
pub fn monotone_signs(p: &FacePoset, a: usize, b: usize, c: usize) -> bool {
    let (sa, sb, sc) = (p.signs(a), p.signs(b), p.signs(c));
    (0..sa.len()).all(|h| monotone(sa.0[h], sb.0[h], sc.0[h]))
}

/// Sign criterion for `b ∈ [a, c]`: either `B` is an endpoint face or every
/// hyperplane sees `B_H` strictly between `A_H` and `C_H`. In affine mode
/// the three faces must also share a lower bound.
pub fn collinear(p: &FacePoset, a: usize, b: usize, c: usize) -> bool {
    let (sa, sb, sc) = (p.signs(a), p.signs(b), p.signs(c));
    let signs_ok = b == a || b == c || (0..sa.len()).all(|h| strictly_between(sa.0[h], sb.0[h], sc.0[h]));
    if !signs_ok {
        return false;
    }
    match p.arrangement().mode() {
        Mode::Linear => true,
        Mode::Affine => (0..p.len()).any(|d| p.leq(d, a) && p.leq(d, b) && p.leq(d, c)),
    }
}

fn push_sign(sys: &mut LinearSystem, form: AffineForm, sign: Sign) {
    match sign {
        Sign::Zero => sys.equalities.push(form),
        Sign::Plus => sys.strict.push(form),
        Sign::Minus => sys.strict.push(form.negated()),
    }
}

/// Geometric test: points `a ∈ A`, `c ∈ C` and `b ∈ B` with `b` on the
/// open segment, found by LP in the variables `(p, q, s)` with `b = p + q`,
/// `p ∈ s·A`, `q ∈ (1 - s)·C`. Affine mode also asks for a common point of
/// the three closures.
pub fn collinear_oracle(arr: &Arrangement, a: &SignVec, b: &SignVec, c: &SignVec) -> bool {
    if a == b || b == c {
        return common_closure_point(arr, a, b, c);
    }
    let n = arr.dim();
    let vars = 2 * n + 1;
    let mut sys = LinearSystem::new(vars);
    for (h, hp) in arr.hyperplanes().iter().enumerate() {
        let beta = &hp.offset;
        let mut fp = vec![Rat::zero(); vars];
        fp[..n].clone_from_slice(&hp.coeffs);
        fp[2 * n] = beta.clone();
        push_sign(&mut sys, AffineForm::linear(fp), a.0[h]);

        let mut fq = vec![Rat::zero(); vars];
        fq[n..2 * n].clone_from_slice(&hp.coeffs);
        fq[2 * n] = -beta;
        push_sign(&mut sys, AffineForm::new(fq, beta.clone()), c.0[h]);

        let mut fb = vec![Rat::zero(); vars];
        fb[..n].clone_from_slice(&hp.coeffs);
        fb[n..2 * n].clone_from_slice(&hp.coeffs);
        push_sign(&mut sys, AffineForm::new(fb, beta.clone()), b.0[h]);
    }
    let mut s = vec![Rat::zero(); vars];
    s[2 * n] = Rat::one();
    sys.strict.push(AffineForm::linear(s.clone()));
    sys.strict.push(AffineForm::new(s.iter().map(|x| -x).collect(), Rat::one()));
    lp_feasible(&sys).is_some() && common_closure_point(arr, a, b, c)
}

fn common_closure_point(arr: &Arrangement, a: &SignVec, b: &SignVec, c: &SignVec) -> bool {
    if arr.mode() == Mode::Linear {
        return true;
    }
    let mut sys = arr.closure_system(a);
    for s in [b, c] {
        let other = arr.closure_system(s);
        sys.equalities.extend(other.equalities);
        sys.weak.extend(other.weak);
    }
    lp_feasible(&sys).is_some()
}

/// A cell `[C, D]` of the S1 stratification, `C ≤ D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct S1Cell {
    pub c: usize,
    pub d: usize,
}

impl S1Cell {
    pub fn new(p: &FacePoset, c: usize, d: usize) -> Result<Self, ArrangementError> {
        if !p.leq(c, d) {
            return Err(ArrangementError::NotComparable);
        }
        Ok(S1Cell { c, d })
    }

    pub fn all(p: &FacePoset) -> Vec<S1Cell> {
        let mut out = Vec::new();
        for c in 0..p.len() {
            for d in 0..p.len() {
                if p.leq(c, d) {
                    out.push(S1Cell { c, d });
                }
            }
        }
        out
    }

    pub fn label(&self, p: &FacePoset) -> String {
        format!("[{}, {}]", p.signs(self.c), p.signs(self.d))
    }
}

/// `[C', D'] ≤ [C, D]` iff `C' ≤ C` and `C ∘ D' ≤ D`.
pub fn s1_leq(p: &FacePoset, lo: S1Cell, hi: S1Cell) -> bool {
    p.leq(lo.c, hi.c) && p.leq(p.compose(hi.c, lo.d), hi.d)
}

/// Closure test: the cell `[C, D]` is `C + i (D + span C)`, so
/// `[C', D']` lies in its closure iff a point of `C'` is in `cl C` and a
/// point of `D'` is in `cl D + span C`.
pub fn s1_leq_oracle(p: &FacePoset, lo: S1Cell, hi: S1Cell) -> bool {
    let a = p.arrangement();
    let x = &p.face(lo.c).interior_point;
    if !a.closure_system(p.signs(hi.c)).satisfied_by(x) {
        return false;
    }
    let n = a.dim();
    let span = &p.face(hi.c).span_basis;
    let k = span.rows();
    let y = &p.face(lo.d).interior_point;
    let closure = a.closure_system(p.signs(hi.d));
    let mut sys = LinearSystem::new(n + k);
    let widen = |f: &AffineForm| {
        let mut c = f.coeffs.clone();
        c.extend(std::iter::repeat_n(Rat::zero(), k));
        AffineForm::new(c, f.constant.clone())
    };
    sys.equalities.extend(closure.equalities.iter().map(widen));
    sys.weak.extend(closure.weak.iter().map(widen));
    // z + Σ w_j span_j = y
    for i in 0..n {
        let mut c = vec![Rat::zero(); n + k];
        c[i] = Rat::one();
        for j in 0..k {
            c[n + j] = span[(j, i)].clone();
        }
        sys.equalities.push(AffineForm::new(c, -&y[i]));
    }
    lp_feasible(&sys).is_some()
}

/// `[C, C ∘ D]`.
pub fn s2_to_s1(p: &FacePoset, c: usize, d: usize) -> S1Cell {
    S1Cell { c, d: p.compose(c, d) }
}

/// Length of a shortest gallery of chambers crossing one wall at a time.
pub fn chamber_distance(p: &FacePoset, from: usize, to: usize) -> Result<usize, ArrangementError> {
    for x in [from, to] {
        if !p.is_chamber(x) {
            return Err(ArrangementError::NotAChamber(p.signs(x).to_string()));
        }
    }
    let mut dist = vec![usize::MAX; p.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        if c == to {
            return Ok(dist[c]);
        }
        for &wall in p.lower_covers(c) {
            for &next in p.upper_covers(wall) {
                if dist[next] == usize::MAX {
                    dist[next] = dist[c] + 1;
                    queue.push_back(next);
                }
            }
        }
    }
    unreachable!("chambers are connected through walls")
}

/// The common wall of two faces of the same flat lying on opposite sides of
/// a face of codimension one in that flat.
pub fn adjacent(p: &FacePoset, c1: usize, c2: usize) -> Option<usize> {
    if c1 == c2 || p.dim(c1) != p.dim(c2) || !p.same_span(c1, c2) {
        return None;
    }
    p.lower_covers(c1).iter().copied().find(|&w| p.is_covering(w, c2))
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_faces, samples};
    use super::*;

    fn sv(s: &str) -> SignVec {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&sv("+0"), &sv("-+")).unwrap(), sv("++"));
        assert_eq!(compose(&sv("+-0"), &sv("+-0")).unwrap(), sv("+-0"));
        assert_eq!(compose(&sv("00"), &sv("-+")).unwrap(), sv("-+"));
        assert!(compose(&sv("0"), &sv("00")).is_err());
    }

    #[test]
    fn compose_oracle_on_three_lines() {
        let a = samples::three_lines();
        let p = enumerate_faces(&a);
        for i in 0..p.len() {
            for j in 0..p.len() {
                let want = compose(p.signs(i), p.signs(j)).unwrap();
                assert_eq!(compose_oracle(&a, p.face(i), p.face(j)), want);
            }
        }
    }

    #[test]
    fn collinear_examples() {
        let p = enumerate_faces(&samples::line_point());
        let (zero, plus, minus) = (p.find(&sv("0")).unwrap(), p.find(&sv("+")).unwrap(), p.find(&sv("-")).unwrap());
        assert!(collinear(&p, plus, zero, minus));
        assert!(collinear(&p, plus, plus, minus));
        assert!(!collinear(&p, plus, minus, plus));
        let cross = enumerate_faces(&samples::cross());
        let f = |s| cross.find(&sv(s)).unwrap();
        assert!(collinear(&cross, f("++"), f("+0"), f("+-")));
        assert!(collinear_oracle(cross.arrangement(), &sv("++"), &sv("+0"), &sv("+-")));
    }

    #[test]
    fn s1_examples() {
        let p = enumerate_faces(&samples::line_point());
        let (z, plus, minus) = (0, p.find(&sv("+")).unwrap(), p.find(&sv("-")).unwrap());
        let cell = |c, d| S1Cell::new(&p, c, d).unwrap();
        assert!(s1_leq(&p, cell(z, plus), cell(z, plus)));
        assert!(s1_leq(&p, cell(z, plus), cell(plus, plus)));
        assert!(s1_leq(&p, cell(z, plus), cell(minus, minus)));
        assert!(s1_leq_oracle(&p, cell(z, plus), cell(minus, minus)));
        assert!(!s1_leq(&p, cell(plus, plus), cell(z, plus)));
        assert_eq!(S1Cell::all(&p).len(), 5);
        assert_eq!(s2_to_s1(&p, plus, minus), cell(plus, plus));
    }

    #[test]
    fn distances_and_adjacency() {
        let p = enumerate_faces(&samples::three_lines());
        let ch = p.chambers();
        for &x in &ch {
            for &y in &ch {
                let sep = (0..3).filter(|&h| p.signs(x).0[h] != p.signs(y).0[h]).count();
                assert_eq!(chamber_distance(&p, x, y).unwrap(), sep);
            }
        }
        assert!(chamber_distance(&p, 0, ch[0]).is_err());
        let line = enumerate_faces(&samples::line_point());
        assert_eq!(adjacent(&line, 1, 2), Some(0));
        assert_eq!(adjacent(&line, 1, 1), None);
        let cross = enumerate_faces(&samples::cross());
        let f = |s| cross.find(&sv(s)).unwrap();
        assert_eq!(adjacent(&cross, f("++"), f("+-")), Some(f("+0")));
        assert_eq!(adjacent(&cross, f("++"), f("--")), None);
        assert_eq!(adjacent(&cross, f("+0"), f("-0")), Some(f("00")));
    }
}
