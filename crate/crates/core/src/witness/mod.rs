//! Explicit complex and symplectic structures on nilpotent g_C, and checks of both
//! from the bracket alone.

mod oracle;

pub use oracle::{pfaffian_is_identically_zero, symplectic_oracle, OracleVerdict, SymbolicPfaffian};

use crate::error::{Error, Result};
use crate::exact::{format_rational, rat, Rational, RationalMatrix};
use crate::jordan::JordanTuple;
use crate::tuples::{complex_condition, symplectic_condition};
use num::{One, Signed, Zero};

/// g_C = R e0 ⋉_C R^(d): the only nonzero brackets are [e0, e_i] = Σ_j C_{ji} e_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    c: RationalMatrix,
}

impl BracketTable {
    pub fn new(c: RationalMatrix) -> Result<Self> {
        if !c.is_square() {
            return Err(Error::Precondition(format!(
                "bracket matrix must be square, got {}×{}",
                c.rows(),
                c.cols()
            )));
        }
        Ok(BracketTable { c })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.c
    }

    /// Dimension of the Lie algebra, one more than the size of C.
    pub fn dimension(&self) -> usize {
        self.c.rows() + 1
    }

    /// [x, y] in the basis e0, …, e_d.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dimension()];
        if !x[0].is_zero() {
            for (o, v) in out[1..].iter_mut().zip(self.c.mul_vec(&y[1..])) {
                *o += &x[0] * v;
            }
        }
        if !y[0].is_zero() {
            for (o, v) in out[1..].iter_mut().zip(self.c.mul_vec(&x[1..])) {
                *o -= &y[0] * v;
            }
        }
        out
    }

    fn basis(&self, a: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dimension()];
        v[a] = Rational::one();
        v
    }

    /// Nonzero brackets of basis vectors, e.g. "[e0,e1] = e2".
    pub fn describe(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 1..self.dimension() {
            let v = self.bracket(&self.basis(0), &self.basis(i));
            if v.iter().any(|x| !x.is_zero()) {
                out.push(format!("[e0,e{i}] = {}", linear_combination(&v)));
            }
        }
        out
    }
}

fn term(coef: &Rational, name: &str, first: bool) -> String {
    let sign = if coef.is_negative() {
        if first { "-" } else { " - " }
    } else if first {
        ""
    } else {
        " + "
    };
    let mag = coef.abs();
    if mag.is_one() {
        format!("{sign}{name}")
    } else {
        format!("{sign}{}*{name}", format_rational(&mag))
    }
}

fn linear_combination(v: &[Rational]) -> String {
    let mut s = String::new();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            s += &term(c, &format!("e{i}"), s.is_empty());
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// "e0^e1 + e2^e3" for a skew matrix.
pub fn format_two_form(omega: &RationalMatrix) -> String {
    let mut s = String::new();
    for a in 0..omega.rows() {
        for b in a + 1..omega.cols() {
            let c = &omega[(a, b)];
            if !c.is_zero() {
                s += &term(c, &format!("e{a}^e{b}"), s.is_empty());
            }
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// "e0 -> e1, e1 -> -e0, …" for an endomorphism.
pub fn format_endomorphism(j: &RationalMatrix) -> String {
    (0..j.cols())
        .map(|a| format!("e{a} -> {}", linear_combination(&j.column(a))))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexWitness {
    pub bracket: BracketTable,
    pub j: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticWitness {
    pub bracket: BracketTable,
    /// ω(x, y) = xᵀ·omega·y.
    pub omega: RationalMatrix,
}

/// [[0, −I], [I, 0]] of size 2k.
fn rotation(k: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        m[(i, k + i)] = rat(-1);
        m[(k + i, i)] = rat(1);
    }
    m
}

fn nilpotent_block(n: usize) -> RationalMatrix {
    RationalMatrix::jordan_block(n, &Rational::zero())
}

/// Blocks of a block-diagonal pair (B, J) with B J = J B.
struct ComplexAssembly {
    b: Vec<RationalMatrix>,
    j: Vec<RationalMatrix>,
}

impl ComplexAssembly {
    fn new() -> Self {
        ComplexAssembly { b: Vec::new(), j: Vec::new() }
    }

    /// `count` copies of J_n, count even, paired as X ⊕ X with J the rotation.
    fn pairs(&mut self, n: usize, count: usize) {
        debug_assert!(count.is_multiple_of(2));
        for _ in 0..count / 2 {
            let x = if n == 1 { RationalMatrix::zeros(1, 1) } else { nilpotent_block(n) };
            self.b.push(RationalMatrix::block_diag(&[x.clone(), x]));
            self.j.push(rotation(n));
        }
    }

    fn zeros(&mut self, size: usize) {
        self.pairs(1, size);
    }

    /// C = [[0, 0], [v, B]] on (e1, u') and j with j e0 = e1, j|u' = J.
    fn finish(self, border: bool) -> ComplexWitness {
        let b = RationalMatrix::block_diag(&self.b);
        let jj = RationalMatrix::block_diag(&self.j);
        let m = b.rows();
        let mut c = RationalMatrix::zeros(m + 1, m + 1);
        c.set_block(1, 1, &b);
        if border {
            c[(1, 0)] = rat(1);
        }
        let mut j = RationalMatrix::zeros(m + 2, m + 2);
        j[(1, 0)] = rat(1);
        j[(0, 1)] = rat(-1);
        j.set_block(2, 2, &jj);
        ComplexWitness { bracket: BracketTable { c }, j }
    }
}

pub fn build_complex_witness(t: &JordanTuple) -> Result<ComplexWitness> {
    let cond = complex_condition(t)?
        .ok_or_else(|| Error::Inadmissible(format!("{t} is not complex-admissible")))?;
    let parts = t.parts();
    let ones = t.trailing_ones();
    let mut asm = ComplexAssembly::new();
    let border = match cond {
        "(m)" => {
            asm.zeros(ones - 1);
            false
        }
        "(i)" => {
            for &(n, p) in parts {
                asm.pairs(n, p);
            }
            asm.zeros(ones - 1);
            false
        }
        "(ii)" => {
            let k = parts.len() - 1;
            asm.zeros(ones + 1);
            asm.pairs(2, parts[k].1 - 1);
            for &(n, p) in &parts[..k] {
                asm.pairs(n, p);
            }
            true
        }
        _ => {
            let l = (1..parts.len())
                .find(|&l| {
                    parts[l - 1].0 == parts[l].0 + 1
                        && parts[l - 1].1 % 2 == 1
                        && parts[l].1 % 2 == 1
                })
                .expect("condition (iii) index");
            asm.pairs(parts[l].0, parts[l].1 + 1);
            asm.pairs(parts[l - 1].0, parts[l - 1].1 - 1);
            for (i, &(n, p)) in parts.iter().enumerate() {
                if i != l && i != l - 1 {
                    asm.pairs(n, p);
                }
            }
            asm.zeros(ones);
            true
        }
    };
    Ok(asm.finish(border))
}

/// D ∈ sp(Ω) assembled blockwise, Ω a sum of [[0, −I], [I, 0]] blocks.
struct SymplecticAssembly {
    d: Vec<RationalMatrix>,
    omega: Vec<RationalMatrix>,
}

impl SymplecticAssembly {
    fn new() -> Self {
        SymplecticAssembly { d: Vec::new(), omega: Vec::new() }
    }

    /// X ⊕ (−Xᵀ) with X = J_n, `count` even.
    fn pairs(&mut self, n: usize, count: usize) {
        debug_assert!(count.is_multiple_of(2));
        for _ in 0..count / 2 {
            let x = if n == 1 { RationalMatrix::zeros(1, 1) } else { nilpotent_block(n) };
            let y = x.transpose().scale(&rat(-1));
            self.d.push(RationalMatrix::block_diag(&[x, y]));
            self.omega.push(rotation(n));
        }
    }

    /// A single Jordan block of even size as [[J_k, I], [0, −J_kᵀ]].
    fn even_block(&mut self, size: usize) {
        self.d.push(even_symplectic_block(size / 2));
        self.omega.push(rotation(size / 2));
    }

    fn part(&mut self, n: usize, p: usize) {
        if n.is_multiple_of(2) {
            for _ in 0..p {
                self.even_block(n);
            }
        } else {
            self.pairs(n, p);
        }
    }

    /// C is the transpose of [[0, 0], [w, D]]; ω = e0^e1 ⊕ Ω⁻¹.
    fn finish(self, border: Option<usize>) -> SymplecticWitness {
        let d = RationalMatrix::block_diag(&self.d);
        let om = RationalMatrix::block_diag(&self.omega);
        let m = d.rows();
        let mut low = RationalMatrix::zeros(m + 1, m + 1);
        low.set_block(1, 1, &d);
        if let Some(i) = border {
            low[(1 + i, 0)] = rat(1);
        }
        let mut omega = RationalMatrix::zeros(m + 2, m + 2);
        omega[(0, 1)] = rat(1);
        omega[(1, 0)] = rat(-1);
        omega.set_block(2, 2, &om.inverse().expect("Ω is invertible"));
        SymplecticWitness { bracket: BracketTable { c: low.transpose() }, omega }
    }
}

/// N = [[J_k, I_k], [0, −J_kᵀ]], a single nilpotent block of size 2k lying in sp(2k).
pub fn even_symplectic_block(k: usize) -> RationalMatrix {
    let x = if k == 1 { RationalMatrix::zeros(1, 1) } else { nilpotent_block(k) };
    let mut n = RationalMatrix::zeros(2 * k, 2 * k);
    n.set_block(0, 0, &x);
    n.set_block(0, k, &RationalMatrix::identity(k));
    n.set_block(k, k, &x.transpose().scale(&rat(-1)));
    n
}

/// First standard basis vector outside the image of a single nilpotent Jordan block.
fn cyclic_index(n: &RationalMatrix) -> usize {
    let r = n.rank();
    (0..n.rows())
        .find(|&j| {
            let mut aug = RationalMatrix::zeros(n.rows(), n.cols() + 1);
            aug.set_block(0, 0, n);
            aug[(j, n.cols())] = rat(1);
            aug.rank() > r
        })
        .expect("a nilpotent block is not surjective")
}

pub fn build_symplectic_witness(t: &JordanTuple) -> Result<SymplecticWitness> {
    let cond = symplectic_condition(t)?
        .ok_or_else(|| Error::Inadmissible(format!("{t} is not symplectic-admissible")))?;
    let parts = t.parts();
    let ones = t.trailing_ones();
    let mut asm = SymplecticAssembly::new();
    let border = match cond {
        "(m)" => {
            asm.pairs(1, ones - 1);
            None
        }
        "(i)" => {
            asm.pairs(1, ones - 1);
            for &(n, p) in parts {
                asm.part(n, p);
            }
            None
        }
        _ => {
            let l = parts
                .iter()
                .position(|&(n, p)| n % 2 == 1 && p % 2 == 1)
                .expect("condition (ii) index");
            let (nl, pl) = parts[l];
            let k = (nl - 1) / 2;
            asm.even_block(nl - 1);
            for (i, &(n, p)) in parts.iter().enumerate() {
                if i != l {
                    asm.part(n, p);
                }
            }
            asm.pairs(nl, pl - 1);
            asm.pairs(1, ones);
            Some(cyclic_index(&even_symplectic_block(k)))
        }
    };
    Ok(asm.finish(border))
}

/// j² = −I and N_j(e_a, e_b) = 0 for all a < b.
pub fn verify_complex(w: &ComplexWitness) -> bool {
    let n = w.bracket.dimension();
    if w.j.rows() != n || w.j.cols() != n {
        return false;
    }
    if &w.j * &w.j != RationalMatrix::scalar(n, &rat(-1)) {
        return false;
    }
    let b = &w.bracket;
    let cols: Vec<Vec<Rational>> = (0..n).map(|a| w.j.column(a)).collect();
    for a in 0..n {
        for c in a + 1..n {
            let (x, y) = (b.basis(a), b.basis(c));
            let (jx, jy) = (&cols[a], &cols[c]);
            let inner: Vec<Rational> = b
                .bracket(jx, &y)
                .iter()
                .zip(b.bracket(&x, jy))
                .map(|(p, q)| p + q)
                .collect();
            let j_inner = w.j.mul_vec(&inner);
            let xy = b.bracket(&x, &y);
            let jxjy = b.bracket(jx, jy);
            let nonzero = (0..n).any(|i| !(&xy[i] + &j_inner[i] - &jxjy[i]).is_zero());
            if nonzero {
                return false;
            }
        }
    }
    true
}

fn form(omega: &RationalMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    let oy = omega.mul_vec(y);
    x.iter().zip(&oy).map(|(a, b)| a * b).sum()
}

/// True when dω vanishes on every basis triple.
pub fn is_closed(b: &BracketTable, omega: &RationalMatrix) -> bool {
    let n = b.dimension();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let (ex, ey, ez) = (b.basis(x), b.basis(y), b.basis(z));
                let d = -form(omega, &b.bracket(&ex, &ey), &ez)
                    - form(omega, &b.bracket(&ey, &ez), &ex)
                    - form(omega, &b.bracket(&ez, &ex), &ey);
                if !d.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// dω = 0 on all basis triples and det ω ≠ 0.
pub fn verify_symplectic(w: &SymplecticWitness) -> Result<bool> {
    let n = w.bracket.dimension();
    if w.omega.rows() != n || w.omega.cols() != n {
        return Err(Error::Precondition(format!(
            "ω is {}×{} on an algebra of dimension {n}",
            w.omega.rows(),
            w.omega.cols()
        )));
    }
    if !w.omega.is_skew_symmetric() {
        return Err(Error::Precondition("ω is not skew-symmetric".into()));
    }
    Ok(is_closed(&w.bracket, &w.omega) && !w.omega.determinant().is_zero())
}

/// Basis of the closed 2-forms, each as a skew matrix.
pub fn closed_two_form_space(b: &BracketTable) -> Vec<RationalMatrix> {
    let n = b.dimension();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |c| (a, c))).collect();
    let index = |a: usize, c: usize| -> (usize, Rational) {
        let (lo, hi, s) = if a < c { (a, c, rat(1)) } else { (c, a, rat(-1)) };
        (pairs.iter().position(|&p| p == (lo, hi)).unwrap(), s)
    };
    let mut rows = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut row = vec![Rational::zero(); pairs.len()];
                let (ex, ey, ez) = (b.basis(x), b.basis(y), b.basis(z));
                for (u, w) in [(b.bracket(&ex, &ey), z), (b.bracket(&ey, &ez), x), (b.bracket(&ez, &ex), y)] {
                    // −ω(u, e_w) = −Σ_i u_i ω_{i w}
                    for (i, ui) in u.iter().enumerate() {
                        if ui.is_zero() || i == w {
                            continue;
                        }
                        let (k, s) = index(i, w);
                        row[k] -= ui * s;
                    }
                }
                if row.iter().any(|r| !r.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..pairs.len())
            .map(|k| {
                let mut v = vec![Rational::zero(); pairs.len()];
                v[k] = Rational::one();
                v
            })
            .collect()
    } else {
        RationalMatrix::from_rows(rows).expect("rectangular").nullspace()
    };
    kernel
        .into_iter()
        .map(|v| {
            let mut m = RationalMatrix::zeros(n, n);
            for (k, &(a, c)) in pairs.iter().enumerate() {
                m[(a, c)] = v[k].clone();
                m[(c, a)] = -&v[k];
            }
            m
        })
        .collect()
}

impl ComplexWitness {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "structure": "complex",
            "dimension": self.bracket.dimension(),
            "bracket": self.bracket.matrix().to_json_value(),
            "j": self.j.to_json_value(),
            "verified": verify_complex(self),
        })
    }
}

impl SymplecticWitness {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "structure": "symplectic",
            "dimension": self.bracket.dimension(),
            "bracket": self.bracket.matrix().to_json_value(),
            "omega": self.omega.to_json_value(),
            "omega_text": format_two_form(&self.omega),
            "verified": verify_symplectic(self).unwrap_or(false),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::nilpotent_tuple;
    use crate::tuples::{generate_admissible, parse_tuple};
    use crate::Structure;

    fn t(s: &str) -> JordanTuple {
        parse_tuple(s).unwrap()
    }

    /// Rank of the coboundary map on 2-forms computed independently from structure constants.
    fn closed_dimension_oracle(c: &RationalMatrix) -> usize {
        let n = c.rows() + 1;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        // only [e0, e_i] is nonzero, so only triples (0, i, j) contribute:
        // dω(e0, e_i, e_j) = −ω(C e_i, e_j) + ω(C e_j, e_i)
        let mut rows = Vec::new();
        for i in 1..n {
            for j in i + 1..n {
                let mut row = vec![rat(0); pairs.len()];
                for k in 1..n {
                    let cki = &c[(k - 1, i - 1)];
                    let ckj = &c[(k - 1, j - 1)];
                    for (coef, a, b, sign) in [(cki, k, j, -1), (ckj, k, i, 1)] {
                        if coef.is_zero() || a == b {
                            continue;
                        }
                        let (lo, hi, s) = if a < b { (a, b, sign) } else { (b, a, -sign) };
                        let idx = pairs.iter().position(|&p| p == (lo, hi)).unwrap();
                        row[idx] += coef * rat(s);
                    }
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return pairs.len();
        }
        pairs.len() - RationalMatrix::from_rows(rows).unwrap().rank()
    }

    #[test]
    fn small_witnesses() {
        let w = build_complex_witness(&t("2;1;1")).unwrap();
        assert_eq!(w.bracket.describe(), vec!["[e0,e1] = e2".to_string()]);
        assert!(verify_complex(&w));
        assert_eq!(format_endomorphism(&w.j), "e0 -> e1, e1 -> -e0, e2 -> e3, e3 -> -e2");
        let mut broken = w.clone();
        broken.j[(2, 2)] = rat(1);
        broken.j[(3, 2)] = rat(0);
        assert!(!verify_complex(&broken));

        let s = build_symplectic_witness(&t("2;1;1")).unwrap();
        assert!(verify_symplectic(&s).unwrap());
        assert_eq!(nilpotent_tuple(s.bracket.matrix()).unwrap(), t("2;1;1"));

        let abelian = build_symplectic_witness(&t("3")).unwrap();
        assert_eq!(format_two_form(&abelian.omega), "e0^e1 + e2^e3");
        assert!(verify_symplectic(&abelian).unwrap());

        let five = build_symplectic_witness(&t("5;1;0")).unwrap();
        assert!(verify_symplectic(&five).unwrap());
        assert_eq!(nilpotent_tuple(five.bracket.matrix()).unwrap(), t("5;1;0"));
    }

    #[test]
    fn rejects_inadmissible_and_bad_forms() {
        assert!(matches!(build_complex_witness(&t("7;1;0")), Err(Error::Inadmissible(_))));
        assert!(matches!(build_symplectic_witness(&t("5,3;1,1;1")), Err(Error::Inadmissible(_))));
        let b = BracketTable::new(RationalMatrix::zeros(3, 3)).unwrap();
        let sym = SymplecticWitness { bracket: b, omega: RationalMatrix::identity(4) };
        assert!(verify_symplectic(&sym).is_err());
    }

    #[test]
    fn even_block_is_a_single_jordan_block() {
        for k in 1..=8 {
            let n = even_symplectic_block(k);
            assert!(!n.pow(2 * k - 1).is_zero());
            assert!(n.pow(2 * k).is_zero());
            assert_eq!(nilpotent_tuple(&n).unwrap(), JordanTuple::from_block_sizes([2 * k]));
        }
    }

    #[test]
    fn sweep_up_to_nine() {
        for m in (1..=9).step_by(2) {
            for tp in generate_admissible(m, Structure::Complex).unwrap() {
                let w = build_complex_witness(&tp).unwrap();
                assert!(verify_complex(&w), "{tp}");
                assert_eq!(nilpotent_tuple(w.bracket.matrix()).unwrap(), tp);
            }
            for tp in generate_admissible(m, Structure::Symplectic).unwrap() {
                let w = build_symplectic_witness(&tp).unwrap();
                assert!(verify_symplectic(&w).unwrap(), "{tp}");
                assert_eq!(nilpotent_tuple(w.bracket.matrix()).unwrap(), tp);
            }
        }
    }

    #[test]
    fn closed_forms() {
        let abelian = BracketTable::new(RationalMatrix::zeros(5, 5)).unwrap();
        assert_eq!(closed_two_form_space(&abelian).len(), 15);
        let m = t("5,3;1,1;1").nilpotent_matrix();
        let b = BracketTable::new(m.clone()).unwrap();
        let space = closed_two_form_space(&b);
        assert_eq!(space.len(), 17);
        assert_eq!(closed_dimension_oracle(&m), 17);
        assert!(space.iter().all(|w| w.is_skew_symmetric() && is_closed(&b, w)));
        let h = BracketTable::new(t("2;1;1").nilpotent_matrix()).unwrap();
        assert_eq!(closed_two_form_space(&h).len(), closed_dimension_oracle(h.matrix()));
    }
}
