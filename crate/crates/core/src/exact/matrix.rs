use super::{format_rational, parse_rational, rat, Rational, RationalPolynomial};
use crate::error::{Error, Result};
use num::{BigInt, Integer, One, Zero};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rat(1);
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {c}",
                rows[i].len()
            )));
        }
        Ok(RationalMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .expect("ragged matrix literal")
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// J_n(λ): λ on the diagonal, ones on the subdiagonal (J ε_i = λε_i + ε_{i+1}).
    pub fn jordan_block(n: usize, lambda: &Rational) -> Self {
        let mut m = Self::scalar(n, lambda);
        for i in 1..n {
            m[(i, i - 1)] = rat(1);
        }
        m
    }

    /// Companion matrix of a monic polynomial of degree ≥ 1.
    pub fn companion(p: &RationalPolynomial) -> Self {
        let p = p.monic();
        let d = p.degree().expect("companion of zero polynomial");
        let mut m = Self::zeros(d, d);
        for i in 1..d {
            m[(i, i - 1)] = rat(1);
        }
        for i in 0..d {
            m[(i, d - 1)] = -p.coeff(i);
        }
        m
    }

    pub fn block_diag(blocks: &[RationalMatrix]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &RationalMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    /// p(self) by Horner's rule.
    pub fn eval_poly(&self, p: &RationalPolynomial) -> Self {
        assert!(self.is_square());
        let mut acc = Self::zeros(self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Self::scalar(self.rows, c);
        }
        acc
    }

    /// Rows scaled to primitive integer vectors; the scale factors are discarded.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect()
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.integer_rows(), self.cols).0
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut scale = Rational::one();
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let l = self.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= Rational::from_integer(l.clone());
                self.row(i)
                    .iter()
                    .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        Rational::from_integer(integer_determinant(rows)) / scale
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &f * &m[(r, j)];
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = rat(1);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(i, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// dim ker mⁱ for i = 1, 2, … until the value stops growing.
    pub fn kernel_dimension_sequence(&self) -> Vec<usize> {
        assert!(self.is_square(), "kernel sequence of a non-square matrix");
        let n = self.rows;
        let mut seq = Vec::new();
        let mut power = self.clone();
        loop {
            let d = n - power.rank();
            if seq.last() == Some(&d) {
                break;
            }
            seq.push(d);
            if d == n {
                break;
            }
            power = &power * self;
        }
        seq
    }

    /// Characteristic polynomial det(xI − m) by the Faddeev–LeVerrier recurrence.
    pub fn char_poly(&self) -> RationalPolynomial {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = rat(1);
        let mut mk = Self::zeros(n, n);
        for k in 1..=n {
            mk = &(self * &mk) + &Self::scalar(n, &c[n + 1 - k]);
            let am = self * &mk;
            c[n - k] = -am.trace() / rat(k as i64);
        }
        RationalPolynomial::new(c)
    }

    /// Parses {"rows": [["k" | "p/q", ...], ...]}; integers are also accepted as JSON numbers.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let rows = v
            .get("rows")
            .and_then(|r| r.as_array())
            .ok_or_else(|| Error::Parse("matrix JSON needs a \"rows\" array".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("row {i} is not an array")))?;
            let mut parsed = Vec::with_capacity(row.len());
            for (j, x) in row.iter().enumerate() {
                let text = match x {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                    _ => {
                        return Err(Error::Parse(format!(
                            "row {i}, column {j}: expected an integer or fraction string"
                        )))
                    }
                };
                let r = parse_rational(&text)
                    .map_err(|e| Error::Parse(format!("row {i}, column {j}: {e}")))?;
                parsed.push(r);
            }
            out.push(parsed);
        }
        Self::from_rows(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Self::from_json_value(&v)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": (0..self.rows)
                .map(|i| self.row(i).iter().map(format_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
    }
}

/// Fraction-free elimination; returns the rank and the final pivot row order sign.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, i32) {
    let rows = a.len();
    let mut r = 0;
    let mut sign = 1;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, sign)
}

/// Exact determinant of a square integer matrix.
pub fn integer_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            writeln!(f, "[ {} ]", line.join(" "))?;
        }
        Ok(())
    }
}
