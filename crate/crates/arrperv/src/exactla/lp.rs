//! Exact feasibility for systems mixing equalities, weak and strict
//! inequalities. Strictness is handled by maximizing a common slack `t`
//! (capped at 1) and requiring a positive optimum. The simplex uses
//! Bland's rule, so it terminates without lexicographic perturbation.

use super::{dot, Rat};
use num::{One, Signed, Zero};

/// `coeffs · x + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl AffineForm {
    pub fn new(coeffs: Vec<Rat>, constant: Rat) -> Self {
        AffineForm { coeffs, constant }
    }

    pub fn linear(coeffs: Vec<Rat>) -> Self {
        AffineForm { coeffs, constant: Rat::zero() }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.coeffs, x) + &self.constant
    }

    pub fn negated(&self) -> Self {
        AffineForm { coeffs: self.coeffs.iter().map(|c| -c).collect(), constant: -&self.constant }
    }
}

#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    pub vars: usize,
    /// form = 0
    pub equalities: Vec<AffineForm>,
    /// form >= 0
    pub weak: Vec<AffineForm>,
    /// form > 0
    pub strict: Vec<AffineForm>,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem { vars, ..Default::default() }
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        x.len() == self.vars
            && self.equalities.iter().all(|f| f.eval(x).is_zero())
            && self.weak.iter().all(|f| !f.eval(x).is_negative())
            && self.strict.iter().all(|f| f.eval(x).is_positive())
    }

    fn check_arity(&self) {
        for f in self.equalities.iter().chain(&self.weak).chain(&self.strict) {
            assert_eq!(f.coeffs.len(), self.vars, "form arity differs from system arity");
        }
    }
}

/// A witness point if the system is feasible.
pub fn lp_feasible(sys: &LinearSystem) -> Option<Vec<Rat>> {
    sys.check_arity();
    let n = sys.vars;
    // Columns: x+ (n), x- (n), t, then one surplus per inequality row.
    let ineq = sys.weak.len() + sys.strict.len() + 1;
    let ncols = 2 * n + 1 + ineq;
    let t = 2 * n;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let mut push = |coeffs: &[Rat], tcoef: Rat, surplus: Option<usize>, b: Rat| {
        let mut r = vec![Rat::zero(); ncols];
        for (i, c) in coeffs.iter().enumerate() {
            r[i] = c.clone();
            r[n + i] = -c;
        }
        r[t] = tcoef;
        if let Some(s) = surplus {
            r[2 * n + 1 + s] = -Rat::one();
        }
        rows.push(r);
        rhs.push(b);
    };
    for f in &sys.equalities {
        push(&f.coeffs, Rat::zero(), None, -&f.constant);
    }
    let mut s = 0;
    for f in &sys.weak {
        push(&f.coeffs, Rat::zero(), Some(s), -&f.constant);
        s += 1;
    }
    for f in &sys.strict {
        push(&f.coeffs, -Rat::one(), Some(s), -&f.constant);
        s += 1;
    }
    // -t - s = -1, i.e. t <= 1.
    push(&vec![Rat::zero(); n], -Rat::one(), Some(s), -Rat::one());

    let mut obj = vec![Rat::zero(); ncols];
    if !sys.strict.is_empty() {
        obj[t] = Rat::one();
    }
    let (y, value) = simplex_max(rows, rhs, obj)?;
    if !sys.strict.is_empty() && !value.is_positive() {
        return None;
    }
    let x: Vec<Rat> = (0..n).map(|i| &y[i] - &y[n + i]).collect();
    assert!(sys.satisfied_by(&x), "simplex witness failed re-substitution");
    Some(x)
}

/// Maximizes `c · y` subject to `A y = b`, `y >= 0`.
/// Returns `None` when infeasible; the problems built here are bounded.
fn simplex_max(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>, c: Vec<Rat>) -> Option<(Vec<Rat>, Rat)> {
    let m = a.len();
    let n = c.len();
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -&b[i];
            for x in a[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
    // Phase 1 tableau with artificials n..n+m.
    let width = n + m;
    let mut tab: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut r = a[i].clone();
            r.extend((0..m).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut phase1 = vec![Rat::zero(); width];
    for j in n..width {
        phase1[j] = -Rat::one();
    }
    run(&mut tab, &mut basis, &phase1, width);
    let infeas: Rat = basis.iter().enumerate().filter(|(_, &v)| v >= n).map(|(i, _)| tab[i][width].clone()).sum();
    if infeas.is_positive() {
        return None;
    }
    // Drive zero-level artificials out of the basis or drop redundant rows.
    let mut i = 0;
    while i < tab.len() {
        if basis[i] >= n {
            match (0..n).find(|&j| !tab[i][j].is_zero()) {
                Some(j) => {
                    pivot(&mut tab, &mut basis, i, j);
                    i += 1;
                }
                None => {
                    tab.remove(i);
                    basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    for r in tab.iter_mut() {
        r.drain(n..width);
    }
    let mut cost = c.clone();
    cost.truncate(n);
    run(&mut tab, &mut basis, &cost, n);
    let mut y = vec![Rat::zero(); n];
    for (i, &v) in basis.iter().enumerate() {
        y[v] = tab[i][n].clone();
    }
    let value = dot(&c, &y);
    Some((y, value))
}

fn pivot(tab: &mut [Vec<Rat>], basis: &mut [usize], r: usize, col: usize) {
    let inv = tab[r][col].recip();
    for x in tab[r].iter_mut() {
        *x *= &inv;
    }
    let prow = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[col].is_zero() {
            continue;
        }
        let f = row[col].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
    basis[r] = col;
}

/// Primal simplex with Bland's rule on a tableau whose last column is the rhs.
fn run(tab: &mut [Vec<Rat>], basis: &mut [usize], cost: &[Rat], width: usize) {
    loop {
        let entering = (0..width).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut r = cost[j].clone();
            for (i, &v) in basis.iter().enumerate() {
                r -= &cost[v] * &tab[i][j];
            }
            r.is_positive()
        });
        let Some(j) = entering else { return };
        let mut best: Option<(usize, Rat)> = None;
        for i in 0..tab.len() {
            if tab[i][j].is_positive() {
                let ratio = &tab[i][width] / &tab[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let (r, _) = best.expect("objective unbounded");
        pivot(tab, basis, r, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};

    fn form(c: &[i64], k: i64) -> AffineForm {
        AffineForm::new(c.iter().map(|&x| rat(x)).collect(), rat(k))
    }

    #[test]
    fn open_interval() {
        let mut s = LinearSystem::new(1);
        s.strict.push(form(&[1], 0));
        s.strict.push(form(&[-1], 1));
        let x = lp_feasible(&s).unwrap();
        assert!(x[0] > rat(0) && x[0] < rat(1));
    }

    #[test]
    fn contradiction() {
        let mut s = LinearSystem::new(1);
        s.strict.push(form(&[1], 0));
        s.strict.push(form(&[-1], 0));
        assert!(lp_feasible(&s).is_none());
    }

    #[test]
    fn ray_of_the_cross() {
        let mut s = LinearSystem::new(2);
        s.strict.push(form(&[1, 0], 0));
        s.equalities.push(form(&[0, 1], 0));
        let x = lp_feasible(&s).unwrap();
        assert!(x[0] > rat(0));
        assert_eq!(x[1], rat(0));
    }

    #[test]
    fn weak_only_and_degenerate() {
        let mut s = LinearSystem::new(2);
        s.weak.push(form(&[1, 1], -2));
        s.weak.push(form(&[-1, -1], 2));
        s.equalities.push(form(&[1, -1], 0));
        let x = lp_feasible(&s).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        s.strict.push(form(&[1, 0], -1));
        assert!(lp_feasible(&s).is_none());
    }

    #[test]
    fn thin_strip() {
        let mut s = LinearSystem::new(1);
        s.strict.push(AffineForm::new(vec![rat(1)], ratio(-1, 1000)));
        s.strict.push(AffineForm::new(vec![rat(-1)], ratio(1, 999)));
        let x = lp_feasible(&s).unwrap();
        assert!(s.satisfied_by(&x));
    }
}
