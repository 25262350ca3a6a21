use super::{Rational, RationalPolynomial};
use crate::error::{Error, Result};
use num::{Signed, Zero};

/// Sturm sequence of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RationalPolynomial>,
}

impl SturmChain {
    pub fn new(p: &RationalPolynomial) -> Result<Self> {
        if p.is_zero() || !p.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        Ok(SturmChain { chain })
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn sign(r: &Rational) -> i8 {
        if r.is_zero() {
            0
        } else if r.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|q| Self::sign(&q.eval(x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|q| Self::sign(&q.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|q| {
            let s = Self::sign(&q.leading());
            if q.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    pub fn total(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn real_root_count(p: &RationalPolynomial) -> Result<usize> {
    Ok(SturmChain::new(p)?.total())
}

/// Real roots in the half-open interval (a, b]; `None` bounds mean ∓∞.
pub fn real_roots_in(
    p: &RationalPolynomial,
    a: Option<&Rational>,
    b: Option<&Rational>,
) -> Result<usize> {
    let s = SturmChain::new(p)?;
    let va = a.map_or_else(|| s.variations_at_neg_inf(), |x| s.variations_at(x));
    let vb = b.map_or_else(|| s.variations_at_pos_inf(), |x| s.variations_at(x));
    Ok(va - vb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_i64(c)
    }

    /// Counts sign changes of p on a fine grid; adequate when roots are well separated.
    fn grid_count(q: &RationalPolynomial) -> usize {
        let pts: Vec<Rational> = (-400..=400).map(|i| ratio(i, 37)).collect();
        let vals: Vec<Rational> = pts.iter().map(|x| q.eval(x)).collect();
        vals.windows(2)
            .filter(|w| (w[0].is_negative() && w[1].is_positive()) || (w[0].is_positive() && w[1].is_negative()))
            .count()
            + vals.iter().filter(|v| v.is_zero()).count()
    }

    #[test]
    fn examples() {
        assert_eq!(real_root_count(&p(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(real_root_count(&p(&[-2, 0, 1])).unwrap(), 2);
        let cubic = p(&[1, -2, 0, 1]);
        assert_eq!(real_root_count(&cubic).unwrap(), 3);
        assert_eq!(grid_count(&cubic), 3);
        assert_eq!(real_root_count(&p(&[-2, 0, 0, 1])).unwrap(), 1);
        assert_eq!(real_root_count(&p(&[1, 2, 1])), Err(Error::NotSquarefree));
    }

    #[test]
    fn interval_counts() {
        let q = p(&[0, -1, 0, 1]);
        assert_eq!(real_roots_in(&q, None, Some(&ratio(-1, 2))).unwrap(), 1);
        assert_eq!(real_roots_in(&q, Some(&ratio(-1, 2)), Some(&rat(0))).unwrap(), 1);
        assert_eq!(real_roots_in(&q, Some(&rat(0)), None).unwrap(), 1);
    }
}
