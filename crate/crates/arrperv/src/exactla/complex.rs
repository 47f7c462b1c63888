use super::{ExactError, Field, Matrix};

/// Cochain complex concentrated in degrees `0..terms.len()`.
/// `differentials[d]` has shape `terms[d + 1] x terms[d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    terms: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(terms: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self, ExactError> {
        Self::new_in(Field::Rational, terms, differentials)
    }

    /// Checks shapes and `d^2 = 0` over `field`.
    pub fn new_in(field: Field, terms: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self, ExactError> {
        if differentials.len() + 1 != terms.len().max(1) {
            return Err(ExactError::Shape(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (d, m) in differentials.iter().enumerate() {
            if m.shape() != (terms[d + 1], terms[d]) {
                return Err(ExactError::Shape(format!(
                    "differential {d} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    terms[d + 1],
                    terms[d]
                )));
            }
        }
        for d in 0..differentials.len().saturating_sub(1) {
            if !field.is_zero(&(&differentials[d + 1] * &differentials[d])) {
                return Err(ExactError::NotAComplex { degree: d });
            }
        }
        Ok(ChainComplex { terms, differentials })
    }

    pub fn zero(len: usize) -> Self {
        ChainComplex {
            terms: vec![0; len],
            differentials: (0..len.saturating_sub(1)).map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Outgoing differential of degree d, zero past the top.
    pub fn differential(&self, d: usize) -> Matrix {
        match self.differentials.get(d) {
            Some(m) => m.clone(),
            None => Matrix::zeros(0, self.terms.get(d).copied().unwrap_or(0)),
        }
    }

    pub fn cohomology(&self) -> Vec<usize> {
        self.cohomology_in(Field::Rational)
    }

    pub fn cohomology_in(&self, field: Field) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(|m| field.rank(m)).collect();
        (0..self.terms.len())
            .map(|d| {
                let out = ranks.get(d).copied().unwrap_or(0);
                let inc = if d == 0 { 0 } else { ranks[d - 1] };
                self.terms[d] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.terms)
    }

    pub fn is_acyclic_in(&self, field: Field) -> bool {
        self.cohomology_in(field).iter().all(|&h| h == 0)
    }
}

pub(crate) fn alternating(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// Degree-preserving map between complexes of the same length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, components: Vec<Matrix>) -> Result<Self, ExactError> {
        Self::new_in(Field::Rational, source, target, components)
    }

    pub fn new_in(
        field: Field,
        source: ChainComplex,
        target: ChainComplex,
        components: Vec<Matrix>,
    ) -> Result<Self, ExactError> {
        if source.len() != target.len() || components.len() != source.len() {
            return Err(ExactError::Shape("chain map degree ranges differ".into()));
        }
        for (d, f) in components.iter().enumerate() {
            if f.shape() != (target.terms[d], source.terms[d]) {
                return Err(ExactError::Shape(format!("component {d} has the wrong shape")));
            }
        }
        for d in 0..source.differentials.len() {
            let lhs = &components[d + 1] * &source.differentials[d];
            let rhs = &target.differentials[d] * &components[d];
            if !field.equal(&lhs, &rhs) {
                return Err(ExactError::NotAChainMap { degree: d });
            }
        }
        Ok(ChainMap { source, target, components })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components: c.terms.iter().map(|&n| Matrix::identity(n)).collect(),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn compose(&self, after: &ChainMap) -> Result<ChainMap, ExactError> {
        if self.target != after.source {
            return Err(ExactError::Shape("chain maps are not composable".into()));
        }
        let comps = self.components.iter().zip(&after.components).map(|(f, g)| g * f).collect();
        ChainMap::new(self.source.clone(), after.target.clone(), comps)
    }

    /// Mapping cone reindexed to start at degree 0:
    /// degree k holds `source^k ⊕ target^(k-1)`.
    pub fn cone_in(&self, field: Field) -> ChainComplex {
        let n = self.source.len();
        let a = |k: usize| if k < n { self.source.terms[k] } else { 0 };
        let b = |k: usize| if k >= 1 && k - 1 < n { self.target.terms[k - 1] } else { 0 };
        let terms: Vec<usize> = (0..=n).map(|k| a(k) + b(k)).collect();
        let mut diffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut m = Matrix::zeros(terms[k + 1], terms[k]);
            if k + 1 < n {
                m.set_block(0, 0, &-&self.source.differentials[k]);
            }
            m.set_block(a(k + 1), 0, &self.components[k]);
            if k >= 1 {
                m.set_block(a(k + 1), a(k), &self.target.differentials[k - 1]);
            }
            diffs.push(m);
        }
        ChainComplex::new_in(field, terms, diffs).expect("cone of a chain map is a complex")
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.is_quasi_iso_in(Field::Rational)
    }

    pub fn is_quasi_iso_in(&self, field: Field) -> bool {
        self.cone_in(field).is_acyclic_in(field)
    }
}

/// True iff `f` induces isomorphisms on all cohomology.
pub fn quasi_iso(f: &ChainMap) -> bool {
    f.is_quasi_iso()
}
