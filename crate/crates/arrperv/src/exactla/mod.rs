//! Exact rational scalars, dense matrices, linear programs with strict
//! inequalities, and chain complexes.

mod complex;
mod field;
mod lp;
mod matrix;

pub use complex::{quasi_iso, ChainComplex, ChainMap};
pub use field::Field;
pub use lp::{lp_feasible, AffineForm, LinearSystem};
pub use matrix::{rank_kernel, Matrix};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d^2 != 0 between degrees {degree} and {}", degree + 2)]
    NotAComplex { degree: usize },
    #[error("map does not commute with differentials in degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{value} is not integral at p = {p}")]
    NotIntegral { value: String, p: u64 },
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign_of(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Smallest positive multiple of `v` with integer, coprime entries.
/// The zero vector is returned unchanged.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    use num::Integer;
    if v.iter().all(|x| x.is_zero()) {
        return v.to_vec();
    }
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}
