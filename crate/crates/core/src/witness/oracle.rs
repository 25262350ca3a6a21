//! Existence of a non-degenerate closed 2-form: the Pfaffian of a generic element of the
//! closed-form space is either identically zero or not.

use super::{closed_two_form_space, verify_symplectic, BracketTable, SymplecticWitness};
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};
use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::collections::{BTreeMap, HashMap};

/// Largest algebra dimension for which the Pfaffian is expanded symbolically.
pub const SYMBOLIC_LIMIT: usize = 8;
const MIN_TRIALS: usize = 4;
const BITS_PER_TRIAL: i64 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// A verified non-degenerate closed form.
    Exists { omega: RationalMatrix },
    /// No form found; certain when `exact`, otherwise wrong with probability at most
    /// 2^false_negative_log2.
    None { exact: bool, trials: usize, false_negative_log2: i64 },
}

impl OracleVerdict {
    pub fn exists(&self) -> bool {
        matches!(self, OracleVerdict::Exists { .. })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            OracleVerdict::Exists { omega } => serde_json::json!({
                "verdict": "exists",
                "exact": true,
                "omega": omega.to_json_value(),
                "omega_text": super::format_two_form(omega),
            }),
            OracleVerdict::None { exact, trials, false_negative_log2 } => serde_json::json!({
                "verdict": "none",
                "exact": exact,
                "trials": trials,
                "confidence": if *exact {
                    "certain".to_string()
                } else {
                    format!("1 - 2^{false_negative_log2}")
                },
                "false_negative_log2": if *exact { None } else { Some(false_negative_log2) },
            }),
        }
    }
}

/// Pf(Σ x_i B_i) as a polynomial in x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPfaffian {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

type Poly = BTreeMap<Vec<u32>, Rational>;

fn add_scaled_product(acc: &mut Poly, linear: &[(usize, Rational)], p: &Poly, sign: bool) {
    for (var, coef) in linear {
        for (mono, c) in p {
            let mut m = mono.clone();
            m[*var] += 1;
            let v = coef * c;
            let e = acc.entry(m).or_insert_with(Rational::zero);
            if sign {
                *e -= v;
            } else {
                *e += v;
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
}

impl SymbolicPfaffian {
    pub fn of_basis(basis: &[RationalMatrix]) -> Self {
        let vars = basis.len();
        let n = basis.first().map_or(0, |b| b.rows());
        let linear = |a: usize, b: usize| -> Vec<(usize, Rational)> {
            basis
                .iter()
                .enumerate()
                .filter(|(_, m)| !m[(a, b)].is_zero())
                .map(|(i, m)| (i, m[(a, b)].clone()))
                .collect()
        };
        let entries: Vec<Vec<Vec<(usize, Rational)>>> =
            (0..n).map(|a| (0..n).map(|b| linear(a, b)).collect()).collect();
        let mut memo: HashMap<u32, Poly> = HashMap::new();
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let terms = Self::expand(full, &entries, vars, &mut memo);
        SymbolicPfaffian { vars, terms }
    }

    fn expand(set: u32, entries: &[Vec<Vec<(usize, Rational)>>], vars: usize, memo: &mut HashMap<u32, Poly>) -> Poly {
        if set == 0 {
            let mut one = Poly::new();
            one.insert(vec![0; vars], Rational::from_integer(1.into()));
            return one;
        }
        if let Some(p) = memo.get(&set) {
            return p.clone();
        }
        let a = set.trailing_zeros() as usize;
        let mut acc = Poly::new();
        let mut position = 0;
        for b in a + 1..entries.len() {
            if set >> b & 1 == 0 {
                continue;
            }
            position += 1;
            if entries[a][b].is_empty() {
                continue;
            }
            let rest = set & !(1 << a) & !(1 << b);
            let sub = Self::expand(rest, entries, vars, memo);
            if !sub.is_empty() {
                add_scaled_product(&mut acc, &entries[a][b], &sub, position % 2 == 0);
            }
        }
        memo.insert(set, acc.clone());
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.vars);
        self.terms
            .iter()
            .map(|(mono, c)| {
                mono.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&e, xi)| acc * num::pow(xi.clone(), e as usize))
            })
            .sum()
    }
}

pub fn pfaffian_is_identically_zero(basis: &[RationalMatrix]) -> bool {
    SymbolicPfaffian::of_basis(basis).is_zero()
}

fn combine(basis: &[RationalMatrix], x: &[Rational], n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for (b, xi) in basis.iter().zip(x) {
        if !xi.is_zero() {
            m = &m + &b.scale(xi);
        }
    }
    m
}

/// Adds basis forms one at a time while the rank grows; often lands on a small form.
fn greedy(basis: &[RationalMatrix], n: usize) -> Option<RationalMatrix> {
    let mut omega = RationalMatrix::zeros(n, n);
    let mut rank = 0;
    for b in basis {
        let next = &omega + b;
        let r = next.rank();
        if r > rank {
            omega = next;
            rank = r;
            if rank == n {
                return Some(omega);
            }
        }
    }
    None
}

/// Decides whether g_C carries a symplectic form. Sampling uses ChaCha20 seeded by `seed`.
pub fn symplectic_oracle(b: &BracketTable, seed: u64, trials: usize) -> Result<OracleVerdict> {
    let n = b.dimension();
    if n % 2 == 1 {
        return Err(Error::Precondition(format!("symplectic forms need even dimension, got {n}")));
    }
    let basis = closed_two_form_space(b);
    let found = |omega: RationalMatrix| -> Result<OracleVerdict> {
        let w = SymplecticWitness { bracket: b.clone(), omega };
        if !verify_symplectic(&w)? {
            return Err(Error::Internal("oracle produced a form that fails verification".into()));
        }
        Ok(OracleVerdict::Exists { omega: w.omega })
    };
    if let Some(omega) = greedy(&basis, n) {
        return found(omega);
    }
    let trials = trials.max(MIN_TRIALS);
    let side = ((n as u64) << BITS_PER_TRIAL) + 1;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let point = |rng: &mut ChaCha20Rng| -> Vec<Rational> {
        (0..basis.len())
            .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(0..side))))
            .collect()
    };
    for _ in 0..trials {
        let x = point(&mut rng);
        let omega = combine(&basis, &x, n);
        if !omega.determinant().is_zero() {
            return found(omega);
        }
    }
    if n <= SYMBOLIC_LIMIT {
        if pfaffian_is_identically_zero(&basis) {
            return Ok(OracleVerdict::None { exact: true, trials, false_negative_log2: 0 });
        }
        for _ in 0..1024 {
            let omega = combine(&basis, &point(&mut rng), n);
            if !omega.determinant().is_zero() {
                return found(omega);
            }
        }
        return Err(Error::Internal("nonzero Pfaffian but no non-degenerate sample".into()));
    }
    Ok(OracleVerdict::None {
        exact: false,
        trials,
        false_negative_log2: -BITS_PER_TRIAL * trials as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::tuples::parse_tuple;

    fn table(m: RationalMatrix) -> BracketTable {
        BracketTable::new(m).unwrap()
    }

    #[test]
    fn abelian_four() {
        let v = symplectic_oracle(&table(RationalMatrix::zeros(3, 3)), 0, 4).unwrap();
        let OracleVerdict::Exists { omega } = v else { panic!("expected a form") };
        assert_eq!(super::super::format_two_form(&omega), "e0^e1 + e2^e3");
    }

    #[test]
    fn identity_has_none_exactly() {
        // g_I in dimension 4: every closed form is e0 ∧ α
        let v = symplectic_oracle(&table(RationalMatrix::identity(3)), 0, 4).unwrap();
        assert_eq!(v, OracleVerdict::None { exact: true, trials: 4, false_negative_log2: 0 });
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let b = table(parse_tuple("2;1;1").unwrap().nilpotent_matrix());
        let basis = closed_two_form_space(&b);
        let pf = SymbolicPfaffian::of_basis(&basis);
        assert!(!pf.is_zero());
        for s in 0..5i64 {
            let x: Vec<Rational> = (0..basis.len()).map(|i| rat((i as i64 * 7 + s * 3) % 11 - 5)).collect();
            let m = combine(&basis, &x, 4);
            let p = pf.eval(&x);
            assert_eq!(&p * &p, m.determinant());
        }
        let abelian = closed_two_form_space(&table(RationalMatrix::zeros(5, 5)));
        assert_eq!(SymbolicPfaffian::of_basis(&abelian).term_count(), 15);
    }

    #[test]
    fn five_three_one_has_none() {
        let b = table(parse_tuple("5,3;1,1;1").unwrap().nilpotent_matrix());
        let v = symplectic_oracle(&b, 0, 4).unwrap();
        assert_eq!(v, OracleVerdict::None { exact: false, trials: 4, false_negative_log2: -128 });
        assert!(symplectic_oracle(&table(RationalMatrix::zeros(2, 2)), 0, 4).is_err());
    }
}
