use super::modp::{Field, Poly};
use super::{Rational, RationalPolynomial};
use crate::error::{Error, Result};
use itertools::Itertools;
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Irreducible monic factors with multiplicities; `unit` is the leading coefficient of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub unit: Rational,
    pub factors: Vec<(RationalPolynomial, usize)>,
}

impl FactorList {
    pub fn expand(&self) -> RationalPolynomial {
        self.factors
            .iter()
            .fold(RationalPolynomial::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

/// Largest number of modular factors for which subset recombination is attempted.
const MAX_MODULAR_FACTORS: usize = 20;

/// Complete factorization into monic irreducibles over the rationals.
pub fn factor_over_rationals(p: &RationalPolynomial) -> Result<FactorList> {
    if p.is_zero() {
        return Err(Error::Precondition("cannot factor the zero polynomial".into()));
    }
    let unit = p.leading();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        for f in factor_squarefree(&part)? {
            factors.push((f, mult));
        }
    }
    factors.sort();
    Ok(FactorList { unit, factors })
}

/// Yun's algorithm on a monic polynomial: pairs (squarefree part, multiplicity).
fn squarefree_decomposition(f: &RationalPolynomial) -> Vec<(RationalPolynomial, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.div_exact(&b).expect("gcd divides");
    let mut d = &df.div_exact(&b).expect("gcd divides") - &c.derivative();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("gcd divides");
        d = &d.div_exact(&a).expect("gcd divides") - &c.derivative();
        i += 1;
    }
    out
}

fn factor_squarefree(f: &RationalPolynomial) -> Result<Vec<RationalPolynomial>> {
    let mut ints = f.primitive_integer();
    let mut out = Vec::new();
    if ints[0].is_zero() {
        out.push(RationalPolynomial::x());
        ints.remove(0);
    }
    match ints.len() - 1 {
        0 => {}
        1 => out.push(RationalPolynomial::from_integers(&ints).monic()),
        2 => out.extend(split_quadratic(&ints)),
        _ => {
            for g in zassenhaus(&ints)? {
                out.push(RationalPolynomial::from_integers(&g).monic());
            }
        }
    }
    Ok(out)
}

fn split_quadratic(q: &[BigInt]) -> Vec<RationalPolynomial> {
    let (c, b, a) = (&q[0], &q[1], &q[2]);
    let disc: BigInt = b * b - BigInt::from(4) * a * c;
    let whole = RationalPolynomial::from_integers(q).monic();
    if disc.is_negative() {
        return vec![whole];
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return vec![whole];
    }
    let two_a = Rational::from_integer(BigInt::from(2) * a);
    let r1 = Rational::from_integer(-b + &s) / &two_a;
    let r2 = Rational::from_integer(-b - &s) / &two_a;
    vec![RationalPolynomial::linear_root(&r1), RationalPolynomial::linear_root(&r2)]
}

fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn int_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Quotient of f by a monic g over the integers, when exact.
fn int_div_monic(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return f.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for i in (0..q.len()).rev() {
        let c = r[i + dg].clone();
        if !c.is_zero() {
            for (j, gj) in g.iter().enumerate() {
                r[i + j] -= &c * gj;
            }
        }
        q[i] = c;
    }
    r[..dg].iter().all(Zero::is_zero).then(|| trim(q))
}

fn reduce(a: &[BigInt], p: u64) -> Poly {
    let pb = BigInt::from(p);
    let v: Poly = a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    Field::new(p).trim(v)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half: BigInt = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn lift_poly(a: &Poly) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|n| (3..).step_by(2).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

/// Factor a primitive squarefree integer polynomial of degree ≥ 3 with nonzero constant term.
fn zassenhaus(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    // Monic transform F(x) = lc^(n-1) f(x / lc).
    let mut big_f = Vec::with_capacity(n + 1);
    let mut pw = BigInt::one();
    for i in (0..n).rev() {
        big_f.push((i, &f[i] * &pw));
        pw *= &lc;
    }
    big_f.sort_by_key(|(i, _)| *i);
    let mut big_f: Vec<BigInt> = big_f.into_iter().map(|(_, c)| c).collect();
    big_f.push(BigInt::one());

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<Poly>)> = None;
    let mut tried = 0;
    for p in small_primes().take(200) {
        let fp = Field::new(p);
        let red = reduce(&big_f, p);
        if fp.gcd(&red, &fp.derivative(&red)).len() != 1 {
            continue;
        }
        let mut local = Vec::new();
        for (g, d) in fp.distinct_degree(&red) {
            local.extend(fp.equal_degree(&g, d, &mut rng));
        }
        if local.len() == 1 {
            return Ok(vec![f.to_vec()]);
        }
        if best.as_ref().is_none_or(|(_, b)| local.len() < b.len()) {
            best = Some((p, local));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, local) = best.ok_or_else(|| {
        Error::UnsupportedFactor(format!("no suitable prime for degree {n} polynomial"))
    })?;
    if local.len() > MAX_MODULAR_FACTORS {
        return Err(Error::UnsupportedFactor(format!(
            "{} modular factors exceed the recombination budget of {MAX_MODULAR_FACTORS}",
            local.len()
        )));
    }

    let norm: BigInt = big_f.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << n) * norm * 2;
    let mut modulus = BigInt::from(p);
    let mut k = 1;
    while modulus <= bound {
        modulus *= p;
        k += 1;
    }
    let lifted = hensel_lift(&big_f, &local, p, k);

    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut target = big_f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        for combo in (0..remaining.len()).combinations(s) {
            let prod = combo
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| symmetric(&int_mul(&acc, &remaining[i]), &modulus));
            if let Some(q) = int_div_monic(&target, &prod) {
                found.push(prod);
                target = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g)
                    .collect();
                continue 'outer;
            }
        }
        s += 1;
    }
    if target.len() > 1 {
        found.push(target);
    }

    // Undo the monic transform: g(x) = primitive part of G(lc·x).
    Ok(found
        .into_iter()
        .map(|g| {
            let mut pw = BigInt::one();
            let mut v = Vec::with_capacity(g.len());
            for c in &g {
                v.push(c * &pw);
                pw *= &lc;
            }
            let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            v.into_iter().map(|c| c / &content).collect()
        })
        .collect())
}

/// Lifts a factorization of monic f mod p into monic factors mod p^k.
fn hensel_lift(f: &[BigInt], local: &[Poly], p: u64, k: usize) -> Vec<Vec<BigInt>> {
    let fp = Field::new(p);
    let pk = BigInt::from(p).pow(k as u32);
    let mut out = Vec::new();
    let mut cur = f.to_vec();
    for i in 0..local.len() - 1 {
        let g0 = local[i].clone();
        let h0 = local[i + 1..].iter().fold(vec![1u64], |acc, q| fp.mul(&acc, q));
        let (g, h) = lift_pair(&cur, &g0, &h0, p, k);
        out.push(symmetric(&g, &pk));
        cur = h;
    }
    out.push(symmetric(&cur, &pk));
    out
}

fn lift_pair(f: &[BigInt], g0: &Poly, h0: &Poly, p: u64, k: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let fp = Field::new(p);
    let (one, _s, t) = fp.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let mut g = lift_poly(g0);
    let mut h = lift_poly(h0);
    let mut q = BigInt::from(p);
    for _ in 1..k {
        let diff = int_sub(f, &int_mul(&g, &h));
        let e: Vec<BigInt> = diff.iter().map(|c| c / &q).collect();
        let ep = reduce(&e, p);
        let dg = fp.rem(&fp.mul(&t, &ep), g0);
        let (dh, r) = fp.div_rem(&fp.sub(&ep, &fp.mul(&dg, h0)), g0);
        debug_assert!(r.is_empty());
        g = trim(
            (0..g.len())
                .map(|i| &g[i] + &q * BigInt::from(dg.get(i).copied().unwrap_or(0)))
                .collect(),
        );
        h = trim(
            (0..h.len())
                .map(|i| &h[i] + &q * BigInt::from(dh.get(i).copied().unwrap_or(0)))
                .collect(),
        );
        q *= p;
    }
    let m = &q;
    (g.iter().map(|c| c.mod_floor(m)).collect(), h.iter().map(|c| c.mod_floor(m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_i64(c)
    }

    fn factor_set(q: &RationalPolynomial) -> Vec<(RationalPolynomial, usize)> {
        factor_over_rationals(q).unwrap().factors
    }

    #[test]
    fn small_examples() {
        let f = factor_set(&p(&[0, -1, 0, 1]));
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(factor_set(&p(&[1, 0, 1]).pow(2)), vec![(p(&[1, 0, 1]), 2)]);
        let f = factor_set(&p(&[-4, 0, 0, 0, 1]));
        assert_eq!(f, vec![(p(&[-2, 0, 1]), 1), (p(&[2, 0, 1]), 1)]);
    }

    #[test]
    fn irreducible_and_nonmonic() {
        assert_eq!(factor_set(&p(&[-2, 0, 0, 1])), vec![(p(&[-2, 0, 0, 1]), 1)]);
        // x^4 + 1 splits modulo every prime but is irreducible over Q
        assert_eq!(factor_set(&p(&[1, 0, 0, 0, 1])), vec![(p(&[1, 0, 0, 0, 1]), 1)]);
        let q = &p(&[1, 3]) * &p(&[-5, 0, 2, 0, 7]);
        let fl = factor_over_rationals(&q).unwrap();
        // 7x^4 + 2x^2 - 5 = (7x^2 - 5)(x^2 + 1)
        assert_eq!(fl.factors.len(), 3);
        assert_eq!(fl.expand(), q);
    }

    #[test]
    fn swinnerton_dyer_degree_eight() {
        // minimal polynomial of √2 + √3 + √5
        let q = p(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert_eq!(factor_set(&q), vec![(q.clone(), 1)]);
        let sq = &q * &p(&[-2, 0, 1]);
        assert_eq!(factor_set(&sq).len(), 2);
    }

    fn small_poly() -> impl Strategy<Value = RationalPolynomial> {
        proptest::collection::vec(-6i64..=6, 1..=4).prop_map(|v| {
            let mut v = v;
            if *v.last().unwrap() == 0 {
                *v.last_mut().unwrap() = 1;
            }
            RationalPolynomial::from_i64(&v)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn factorization_reexpands(a in small_poly(), b in small_poly(), c in small_poly()) {
            let q = &(&a * &b) * &c;
            let fl = factor_over_rationals(&q).unwrap();
            prop_assert_eq!(fl.expand(), q);
            for (f, _) in &fl.factors {
                prop_assert!(f.is_monic());
            }
            let distinct: std::collections::BTreeSet<_> = fl.factors.iter().map(|(f, _)| f.clone()).collect();
            prop_assert_eq!(distinct.len(), fl.factors.len());
        }
    }
}
