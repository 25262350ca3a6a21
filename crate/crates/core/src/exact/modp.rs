//! Dense polynomials over F_p for a word-sized odd prime p, lowest degree first.

use num::{BigUint, One};
use rand::Rng;

pub(crate) type Poly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Field { p }
    }

    fn mul_s(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod p");
        let mut r = 1u64;
        let mut b = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_s(r, b);
            }
            b = self.mul_s(b, b);
            e >>= 1;
        }
        r
    }

    pub fn trim(&self, mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    #[cfg(test)]
    pub fn add(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(out)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        self.trim(out)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), self.trim(r));
        }
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul_s(r[i + db], inv);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[i + j] = (r[i + j] + self.p - self.mul_s(c, bj)) % self.p;
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Poly {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => {
                let inv = self.inv(lc);
                a.iter().map(|&x| self.mul_s(x, inv)).collect()
            }
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Poly {
        let (mut a, mut b) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// (g, s, t) with s·a + t·b = g monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("gcd of zero polynomials"));
        let scale = |v: &[u64]| self.trim(v.iter().map(|&x| self.mul_s(x, inv)).collect());
        (scale(&r0), scale(&s0), scale(&t0))
    }

    pub fn derivative(&self, a: &[u64]) -> Poly {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul_s(c, i as u64 % self.p))
            .collect();
        self.trim(out)
    }

    pub fn pow_mod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> Poly {
        let mut result: Poly = self.rem(&[1], m);
        let mut b = self.rem(base, m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
        }
        result
    }

    /// Distinct-degree factorization of a monic squarefree polynomial: (product, degree) pairs.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x: Poly = vec![0, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest.clone(), deg));
                break;
            }
            h = self.pow_mod(&h, &p, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of distinct monic irreducibles of degree d.
    pub fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<Poly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
        loop {
            let a: Poly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let mut g = self.gcd(&a, f);
            if g.len() == 1 {
                let b = self.pow_mod(&a, &e, f);
                g = self.gcd(&self.sub(&b, &[1]), f);
            }
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }
}
