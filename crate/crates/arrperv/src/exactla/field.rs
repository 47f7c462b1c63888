use super::{ExactError, Matrix, Rat};
use num::{BigInt, Integer, ToPrimitive, Zero};

/// Coefficient field used for ranks and equality tests.
///
/// Data is always stored as rationals. Under `Prime(p)` every entry is
/// reduced modulo p, which requires denominators prime to p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, ExactError> {
        if p < 2 || p > u32::MAX as u64 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(ExactError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// Checks that `x` has a reduction in this field.
    pub fn admits(&self, x: &Rat) -> Result<(), ExactError> {
        match self {
            Field::Rational => Ok(()),
            Field::Prime(p) => {
                if (x.denom() % BigInt::from(*p)).is_zero() {
                    Err(ExactError::NotIntegral { value: x.to_string(), p: *p })
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn admits_matrix(&self, m: &Matrix) -> Result<(), ExactError> {
        m.entries().iter().try_for_each(|x| self.admits(x))
    }

    fn reduce(p: u64, x: &Rat) -> u64 {
        let pb = BigInt::from(p);
        let n = x.numer().mod_floor(&pb).to_u64().expect("residue fits");
        let d = x.denom().mod_floor(&pb).to_u64().expect("residue fits");
        assert!(d != 0, "denominator of {x} vanishes mod {p}");
        n * inv_mod(d, p) % p
    }

    pub fn is_zero(&self, m: &Matrix) -> bool {
        match self {
            Field::Rational => m.is_zero(),
            Field::Prime(p) => m.entries().iter().all(|x| Self::reduce(*p, x) == 0),
        }
    }

    pub fn equal(&self, a: &Matrix, b: &Matrix) -> bool {
        a.shape() == b.shape() && self.is_zero(&(a - b))
    }

    pub fn rank(&self, m: &Matrix) -> usize {
        match self {
            Field::Rational => m.rank(),
            Field::Prime(p) => rank_mod(*p, m),
        }
    }

    pub fn is_invertible(&self, m: &Matrix) -> bool {
        m.is_square() && self.rank(m) == m.rows()
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn rank_mod(p: u64, m: &Matrix) -> usize {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<u64>> = (0..rows).map(|i| m.row(i).iter().map(|x| Field::reduce(p, x)).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for j in c..cols {
            a[r][j] = a[r][j] * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ratio;

    #[test]
    fn rank_drops_mod_p() {
        let m = Matrix::from_i64(2, 2, &[1, 1, 1, 4]);
        assert_eq!(Field::Rational.rank(&m), 2);
        assert_eq!(Field::prime(3).unwrap().rank(&m), 1);
        assert_eq!(Field::prime(5).unwrap().rank(&m), 2);
    }

    #[test]
    fn denominators_checked() {
        let f = Field::prime(2).unwrap();
        assert!(f.admits(&ratio(1, 2)).is_err());
        assert!(f.admits(&ratio(1, 3)).is_ok());
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn fractions_reduce() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_vec(1, 1, vec![ratio(1, 2)]).unwrap();
        let four = Matrix::from_i64(1, 1, &[4]);
        assert!(f.equal(&m, &four));
    }
}
