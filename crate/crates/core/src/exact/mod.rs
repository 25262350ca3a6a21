//! Exact scalars, dense matrices and polynomials over the rationals, plus the
//! factorization and real-root-counting kernels.

mod factor;
mod matrix;
mod modp;
mod poly;
mod sturm;

pub use factor::{factor_over_rationals, FactorList};
pub use matrix::{integer_determinant, RationalMatrix};
pub use poly::RationalPolynomial;
pub use sturm::{real_root_count, real_roots_in, SturmChain};

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Zero};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "k", "-k" or "p/q".
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

pub fn kernel_dimension_sequence(m: &RationalMatrix) -> Vec<usize> {
    m.kernel_dimension_sequence()
}

pub fn char_poly(m: &RationalMatrix) -> RationalPolynomial {
    m.char_poly()
}
