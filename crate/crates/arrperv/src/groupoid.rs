//! Presentations of the fundamental groupoid of the complexified
//! complement with one object per chamber, and their representations by
//! transition maps of a quiver.

use crate::arrangement::{adjacent, collinear, quotient, FacePoset, Flat, Mode};
use crate::exactla::{rat, Field, Matrix, Rat};
use crate::quiver::{DoubleRep, TransitionTable};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("groupoid presentations need a linear arrangement")]
    NeedsLinear,
    #[error("{0} is not a chamber")]
    NotAChamber(String),
    #[error("no generic segment found from {0} to {1}")]
    Perturbation(String, String),
    #[error("no generator from {0} to {1}")]
    MissingGenerator(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    AnyPair,
    Adjacent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub source: usize,
    pub target: usize,
    pub kind: GeneratorKind,
}

/// Generator indices in the order they are traversed: the first entry is
/// applied first.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone)]
pub struct GroupoidPresentation {
    pub objects: Vec<usize>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    index: HashMap<(usize, usize), usize>,
}

impl GroupoidPresentation {
    fn new(objects: Vec<usize>, generators: Vec<Generator>) -> Self {
        let index = generators.iter().enumerate().map(|(i, g)| ((g.source, g.target), i)).collect();
        GroupoidPresentation { objects, generators, relations: Vec::new(), index }
    }

    pub fn generator(&self, source: usize, target: usize) -> Option<usize> {
        self.index.get(&(source, target)).copied()
    }

    /// Word through a sequence of chambers.
    pub fn word_through(&self, p: &FacePoset, chambers: &[usize]) -> Result<Word, GroupoidError> {
        chambers
            .windows(2)
            .map(|w| {
                self.generator(w[0], w[1]).ok_or_else(|| {
                    GroupoidError::MissingGenerator(p.signs(w[0]).to_string(), p.signs(w[1]).to_string())
                })
            })
            .collect()
    }

    /// Source and target of a nonempty word, if composable.
    pub fn endpoints(&self, w: &[usize]) -> Option<(usize, usize)> {
        let first = self.generators[*w.first()?];
        let mut at = first.target;
        for &g in &w[1..] {
            if self.generators[g].source != at {
                return None;
            }
            at = self.generators[g].target;
        }
        Some((first.source, at))
    }
}

fn check_linear(p: &FacePoset) -> Result<(), GroupoidError> {
    if p.arrangement().mode() != Mode::Linear {
        return Err(GroupoidError::NeedsLinear);
    }
    Ok(())
}

/// Generators for all ordered pairs of distinct chambers; one relation
/// `φ_AC = φ_BC φ_AB` per collinear triple of distinct chambers.
pub fn collinearity_presentation(p: &FacePoset) -> Result<GroupoidPresentation, GroupoidError> {
    check_linear(p)?;
    let ch = p.chambers();
    let mut gens = Vec::new();
    for &a in &ch {
        for &b in &ch {
            if a != b {
                gens.push(Generator { source: a, target: b, kind: GeneratorKind::AnyPair });
            }
        }
    }
    let mut pres = GroupoidPresentation::new(ch.clone(), gens);
    for &a in &ch {
        for &b in &ch {
            for &c in &ch {
                if a != b && b != c && a != c && collinear(p, a, b, c) {
                    let lhs = vec![pres.generator(a, c).expect("distinct")];
                    let rhs = pres.word_through(p, &[a, b, c])?;
                    pres.relations.push(Relation { lhs, rhs });
                }
            }
        }
    }
    Ok(pres)
}

/// Angular comparison of nonzero plane vectors, starting from the positive
/// x-axis, counterclockwise.
fn angle_cmp(u: &[Rat], v: &[Rat]) -> Ordering {
    let half = |w: &[Rat]| if w[1].is_positive() || (w[1].is_zero() && w[0].is_positive()) { 0 } else { 1 };
    half(u).cmp(&half(v)).then_with(|| {
        let cross = &u[0] * &v[1] - &u[1] * &v[0];
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Chambers above a codimension-2 face in cyclic order.
pub fn chambers_around(p: &FacePoset, f: usize) -> Vec<usize> {
    let face = p.face(f);
    let l = Flat {
        hyperplanes: p.zero_set(f),
        basis: face.span_basis.clone(),
        point: face.interior_point.clone(),
        dim: face.dim,
    };
    let quo = quotient(p.arrangement(), &l).expect("faces span flats");
    let mut around: Vec<(usize, Vec<Rat>)> = p
        .star(f)
        .into_iter()
        .filter(|&c| p.is_chamber(c))
        .map(|c| (c, quo.project_point(&p.face(c).interior_point)))
        .collect();
    around.sort_by(|x, y| angle_cmp(&x.1, &y.1));
    around.into_iter().map(|(c, _)| c).collect()
}

/// The two circular paths from `around[start]` to the opposite chamber.
fn circular_paths(around: &[usize], start: usize) -> (Vec<usize>, Vec<usize>) {
    let k = around.len();
    let m = k / 2;
    let ccw = (0..=m).map(|i| around[(start + i) % k]).collect();
    let cw = (0..=m).map(|i| around[(start + k - i) % k]).collect();
    (ccw, cw)
}

/// Generators for ordered adjacent chamber pairs; for each codimension-2
/// face and each chamber above it, the two circular words to the opposite
/// chamber agree.
pub fn salvetti_presentation(p: &FacePoset) -> Result<GroupoidPresentation, GroupoidError> {
    check_linear(p)?;
    let ch = p.chambers();
    let mut gens = Vec::new();
    for &a in &ch {
        for &b in &ch {
            if adjacent(p, a, b).is_some() {
                gens.push(Generator { source: a, target: b, kind: GeneratorKind::Adjacent });
            }
        }
    }
    let mut pres = GroupoidPresentation::new(ch, gens);
    for f in 0..p.len() {
        if p.codim(f) != 2 {
            continue;
        }
        let around = chambers_around(p, f);
        for start in 0..around.len() {
            let (ccw, cw) = circular_paths(&around, start);
            let lhs = pres.word_through(p, &ccw)?;
            let rhs = pres.word_through(p, &cw)?;
            pres.relations.push(Relation { lhs, rhs });
        }
    }
    Ok(pres)
}

/// Chambers met in order by a generic segment from an interior point of
/// `from` to a perturbed interior point of `to`.
pub fn crossing_path(p: &FacePoset, from: usize, to: usize) -> Result<Vec<usize>, GroupoidError> {
    check_linear(p)?;
    for x in [from, to] {
        if !p.is_chamber(x) {
            return Err(GroupoidError::NotAChamber(p.signs(x).to_string()));
        }
    }
    if from == to {
        return Ok(vec![from]);
    }
    let arr = p.arrangement();
    let n = arr.dim();
    let a = &p.face(from).interior_point;
    let b = &p.face(to).interior_point;
    let separating: Vec<usize> = (0..arr.len()).filter(|&h| p.signs(from).0[h] != p.signs(to).0[h]).collect();
    for k in 1..=8i64 {
        let dir: Vec<Rat> = (0..n).map(|i| rat(k).pow(i as i32)).collect();
        let mut eps = Rat::one();
        for _ in 0..64 {
            eps /= rat(2);
            let b2: Vec<Rat> = b.iter().zip(&dir).map(|(x, d)| x + &eps * d).collect();
            if arr.signs_at(&b2) != *p.signs(to) {
                continue;
            }
            let mut times: Vec<(Rat, usize)> = separating
                .iter()
                .map(|&h| {
                    let (fa, fb) = (arr.hyperplanes()[h].eval(a), arr.hyperplanes()[h].eval(&b2));
                    (&fa / (&fa - &fb), h)
                })
                .collect();
            times.sort();
            if times.windows(2).any(|w| w[0].0 == w[1].0) {
                continue;
            }
            let mut signs = p.signs(from).clone();
            let mut path = vec![from];
            for (_, h) in times {
                signs.0[h] = p.signs(to).0[h];
                path.push(p.find(&signs).expect("a generic segment crosses one wall at a time"));
            }
            return Ok(path);
        }
    }
    Err(GroupoidError::Perturbation(p.signs(from).to_string(), p.signs(to).to_string()))
}

/// The crossing path as a word in adjacent-pair generators.
pub fn crossing_word(
    p: &FacePoset,
    pres: &GroupoidPresentation,
    from: usize,
    to: usize,
) -> Result<Word, GroupoidError> {
    pres.word_through(p, &crossing_path(p, from, to)?)
}

/// Matrix of a word under `generator -> φ`, identity on an empty word at
/// `object`.
pub fn represent(
    q: &DoubleRep,
    table: &TransitionTable,
    pres: &GroupoidPresentation,
    object: usize,
    word: &[usize],
) -> Matrix {
    let mut m = Matrix::identity(q.dim(object));
    for &g in word {
        let gen = pres.generators[g];
        m = table.get(gen.source, gen.target).expect("chambers share the origin") * &m;
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationFailure {
    pub relation: usize,
    pub lhs: Matrix,
    pub rhs: Matrix,
}

/// Relations of `pres` that fail under the transition representation of `q`.
pub fn check_representation(q: &DoubleRep, pres: &GroupoidPresentation, field: Field) -> Vec<RelationFailure> {
    let table = TransitionTable::new(q);
    let mut out = Vec::new();
    for (i, r) in pres.relations.iter().enumerate() {
        let (src, _) = pres.endpoints(&r.lhs).expect("relation words are composable");
        let lhs = represent(q, &table, pres, src, &r.lhs);
        let rhs = represent(q, &table, pres, src, &r.rhs);
        if !field.equal(&lhs, &rhs) {
            out.push(RelationFailure { relation: i, lhs, rhs });
        }
    }
    out
}

/// Product `γ_{W_m B_m} δ_{B_{m-1} W_m} ⋯ γ_{W_1 B_1} δ_{B_0 W_1}` along a
/// chamber path, `W_i` the wall crossed at step i.
pub fn alternating_product(q: &DoubleRep, path: &[usize]) -> Matrix {
    let p = q.poset();
    let mut m = Matrix::identity(q.dim(path[0]));
    for w in path.windows(2) {
        let wall = adjacent(p, w[0], w[1]).expect("consecutive chambers are adjacent");
        m = &(&q.gamma(wall, w[1]).unwrap() * &q.delta(w[0], wall).unwrap()) * &m;
    }
    m
}

/// Codimension-2 faces and start chambers where the two circular
/// alternating products disagree.
pub fn zifferblatt_check(q: &DoubleRep, field: Field) -> Vec<(usize, usize)> {
    let p = q.poset();
    let mut out = Vec::new();
    for f in 0..p.len() {
        if p.codim(f) != 2 {
            continue;
        }
        let around = chambers_around(p, f);
        for start in 0..around.len() {
            let (ccw, cw) = circular_paths(&around, start);
            if !field.equal(&alternating_product(q, &ccw), &alternating_product(q, &cw)) {
                out.push((f, around[start]));
            }
        }
    }
    out
}

/// Squares `D ≤ A, C ≤ B` with `(A, B, C)` collinear and `B = C∘A` where
/// `γ_{DC} δ_{AD} ≠ δ_{BC} γ_{AB}`.
pub fn base_change_check(q: &DoubleRep, field: Field) -> Vec<(usize, usize, usize, usize)> {
    let p = q.poset();
    let mut out = Vec::new();
    for a in 0..p.len() {
        for c in 0..p.len() {
            let b = p.compose(c, a);
            if !p.leq(a, b) || !collinear(p, a, b, c) {
                continue;
            }
            let rhs = &q.delta(b, c).unwrap() * &q.gamma(a, b).unwrap();
            for d in p.common_lower_bounds(a, c) {
                let lhs = &q.gamma(d, c).unwrap() * &q.delta(a, d).unwrap();
                if !field.equal(&lhs, &rhs) {
                    out.push((d, a, b, c));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{chamber_distance, enumerate_faces, samples};
    use std::sync::Arc;

    #[test]
    fn presentation_sizes() {
        let three = enumerate_faces(&samples::three_lines());
        let s = salvetti_presentation(&three).unwrap();
        assert_eq!((s.generators.len(), s.relations.len()), (12, 6));
        let cross = enumerate_faces(&samples::cross());
        let s = salvetti_presentation(&cross).unwrap();
        assert_eq!((s.generators.len(), s.relations.len()), (8, 4));
        let line = enumerate_faces(&samples::line_point());
        let s = salvetti_presentation(&line).unwrap();
        assert_eq!((s.generators.len(), s.relations.len()), (2, 0));
        let c = collinearity_presentation(&line).unwrap();
        assert_eq!((c.generators.len(), c.relations.len()), (2, 0));
        assert_eq!(collinearity_presentation(&three).unwrap().generators.len(), 30);
    }

    #[test]
    fn relation_words_share_endpoints() {
        for a in [samples::cross(), samples::three_lines(), samples::boolean3(), samples::braid3()] {
            let p = enumerate_faces(&a);
            for pres in [salvetti_presentation(&p).unwrap(), collinearity_presentation(&p).unwrap()] {
                for r in &pres.relations {
                    assert_eq!(pres.endpoints(&r.lhs), pres.endpoints(&r.rhs));
                }
            }
        }
    }

    #[test]
    fn crossing_words_have_gallery_length() {
        for a in [samples::three_lines(), samples::boolean3(), samples::braid3()] {
            let p = enumerate_faces(&a);
            let s = salvetti_presentation(&p).unwrap();
            for &x in &p.chambers() {
                for &y in &p.chambers() {
                    let w = crossing_word(&p, &s, x, y).unwrap();
                    assert_eq!(w.len(), chamber_distance(&p, x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn constant_quiver_represents_both_presentations() {
        let p = Arc::new(enumerate_faces(&samples::three_lines()));
        let q = DoubleRep::constant(p.clone(), 2);
        for pres in [salvetti_presentation(&p).unwrap(), collinearity_presentation(&p).unwrap()] {
            assert!(check_representation(&q, &pres, Field::Rational).is_empty());
        }
        assert!(zifferblatt_check(&q, Field::Rational).is_empty());
        assert!(base_change_check(&q, Field::Rational).is_empty());
    }

    #[test]
    fn affine_is_rejected() {
        let p = enumerate_faces(&samples::two_points());
        assert_eq!(salvetti_presentation(&p).unwrap_err(), GroupoidError::NeedsLinear);
    }
}
