//! Jordan-type invariants of a matrix: the nilpotent tuple Λ, the spectral profile, the
//! Jordan–Chevalley parts, the isomorphism test for g_A and generator normalization.

use crate::error::{Error, Result};
use crate::exact::{
    factor_over_rationals, format_rational, parse_rational, rat, real_root_count, real_roots_in,
    Rational, RationalMatrix, RationalPolynomial,
};
use crate::tuples::{format_tuple, parse_tuple};
use num::{BigInt, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Λ = (n₁,…,n_k; p₁,…,p_k; t): blocks of size n_i ≥ 2 with multiplicity p_i, plus t blocks of size 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanTuple {
    parts: Vec<(usize, usize)>,
    trailing_ones: usize,
}

impl JordanTuple {
    pub fn new(parts: Vec<(usize, usize)>, trailing_ones: usize) -> Result<Self> {
        for (i, &(n, p)) in parts.iter().enumerate() {
            if n < 2 {
                return Err(Error::Parse(format!("block size {n} must be at least 2")));
            }
            if p == 0 {
                return Err(Error::Parse(format!("multiplicity of size {n} must be positive")));
            }
            if i > 0 && parts[i - 1].0 <= n {
                return Err(Error::Parse(format!(
                    "sizes must strictly decrease ({} then {n})",
                    parts[i - 1].0
                )));
            }
        }
        Ok(JordanTuple { parts, trailing_ones })
    }

    /// The tuple (m) of a diagonalizable block.
    pub fn all_ones(m: usize) -> Self {
        JordanTuple { parts: Vec::new(), trailing_ones: m }
    }

    /// Canonical tuple of a multiset of block sizes; zero sizes are ignored.
    pub fn from_block_sizes<I: IntoIterator<Item = usize>>(sizes: I) -> Self {
        let mut counts = std::collections::BTreeMap::new();
        for s in sizes.into_iter().filter(|&s| s > 0) {
            *counts.entry(s).or_insert(0usize) += 1;
        }
        let t = counts.remove(&1).unwrap_or(0);
        JordanTuple { parts: counts.into_iter().rev().collect(), trailing_ones: t }
    }

    /// Tuple from dim ker N^k for k = 1, 2, … (the sequence must stabilize at the total).
    pub fn from_kernel_dims(dims: &[usize]) -> Self {
        let at_least: Vec<usize> = dims
            .iter()
            .scan(0, |prev, &d| {
                let b = d - *prev;
                *prev = d;
                Some(b)
            })
            .collect();
        let mut sizes = Vec::new();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            sizes.extend(std::iter::repeat_n(k + 1, at_least[k] - next));
        }
        Self::from_block_sizes(sizes)
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn trailing_ones(&self) -> usize {
        self.trailing_ones
    }

    pub fn total(&self) -> usize {
        self.parts.iter().map(|(n, p)| n * p).sum::<usize>() + self.trailing_ones
    }

    pub fn is_all_ones(&self) -> bool {
        self.parts.is_empty()
    }

    /// Size of the largest block; the nilpotency step of the corresponding matrix.
    pub fn step(&self) -> usize {
        self.parts.first().map_or(usize::from(self.trailing_ones > 0), |&(n, _)| n)
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        if size == 1 {
            return self.trailing_ones;
        }
        self.parts.iter().find(|(n, _)| *n == size).map_or(0, |&(_, p)| p)
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .parts
            .iter()
            .flat_map(|&(n, p)| std::iter::repeat_n(n, p))
            .collect();
        v.extend(std::iter::repeat_n(1, self.trailing_ones));
        v
    }

    pub fn merge(&self, other: &Self) -> Self {
        Self::from_block_sizes(self.block_sizes().into_iter().chain(other.block_sizes()))
    }

    /// Every block repeated k times.
    pub fn repeated(&self, k: usize) -> Self {
        JordanTuple {
            parts: self.parts.iter().map(|&(n, p)| (n, p * k)).collect(),
            trailing_ones: self.trailing_ones * k,
        }
    }

    /// Block diagonal Jordan matrix ⊕ J_{n_i}(λ)^{p_i} ⊕ λ I_t, blocks in decreasing size.
    pub fn jordan_matrix(&self, lambda: &Rational) -> RationalMatrix {
        let blocks: Vec<RationalMatrix> = self
            .block_sizes()
            .into_iter()
            .map(|s| RationalMatrix::jordan_block(s, lambda))
            .collect();
        RationalMatrix::block_diag(&blocks)
    }

    pub fn nilpotent_matrix(&self) -> RationalMatrix {
        self.jordan_matrix(&Rational::zero())
    }
}

impl fmt::Display for JordanTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_tuple(self))
    }
}

/// An eigenvalue class: a rational eigenvalue, or all roots of one irreducible factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Descriptor {
    Rational(Rational),
    Algebraic {
        minpoly: RationalPolynomial,
        real_roots: usize,
        imaginary: bool,
    },
}

impl Descriptor {
    /// Class of the roots of a monic irreducible polynomial of degree ≥ 2.
    pub fn algebraic(minpoly: &RationalPolynomial) -> Result<Self> {
        let q = minpoly.monic();
        if q.degree().unwrap_or(0) < 2 {
            return Err(Error::Precondition(format!("{q} has degree below 2")));
        }
        let real_roots = real_root_count(&q)?;
        let imaginary = real_roots == 0 && is_purely_imaginary(&q)?;
        Ok(Descriptor::Algebraic { minpoly: q, real_roots, imaginary })
    }

    pub fn zero() -> Self {
        Descriptor::Rational(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Descriptor::Rational(r) if r.is_zero())
    }

    pub fn is_imaginary(&self) -> bool {
        matches!(self, Descriptor::Algebraic { imaginary: true, .. })
    }

    pub fn root_count(&self) -> usize {
        match self {
            Descriptor::Rational(_) => 1,
            Descriptor::Algebraic { minpoly, .. } => minpoly.degree().unwrap_or(0),
        }
    }

    pub fn real_count(&self) -> usize {
        match self {
            Descriptor::Rational(_) => 1,
            Descriptor::Algebraic { real_roots, .. } => *real_roots,
        }
    }

    /// The class of the negated roots.
    pub fn negated(&self) -> Self {
        match self {
            Descriptor::Rational(r) => Descriptor::Rational(-r),
            Descriptor::Algebraic { minpoly, real_roots, imaginary } => Descriptor::Algebraic {
                minpoly: minpoly.negate_roots(),
                real_roots: *real_roots,
                imaginary: *imaginary,
            },
        }
    }

    /// The class of the roots multiplied by c ≠ 0.
    pub fn scaled(&self, c: &Rational) -> Self {
        match self {
            Descriptor::Rational(r) => Descriptor::Rational(r * c),
            Descriptor::Algebraic { minpoly, real_roots, imaginary } => Descriptor::Algebraic {
                minpoly: minpoly.scale_roots(c),
                real_roots: *real_roots,
                imaginary: *imaginary,
            },
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Descriptor::Rational(r) => serde_json::Value::String(format_rational(r)),
            Descriptor::Algebraic { minpoly, real_roots, imaginary } => serde_json::json!({
                "minpoly": minpoly.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
                "real_roots": real_roots,
                "imaginary": imaginary,
            }),
        }
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => Ok(Descriptor::Rational(parse_rational(s)?)),
            serde_json::Value::Number(n) => Ok(Descriptor::Rational(parse_rational(&n.to_string())?)),
            serde_json::Value::Object(o) => {
                let coeffs = o
                    .get("minpoly")
                    .and_then(|c| c.as_array())
                    .ok_or_else(|| Error::Parse("algebraic eigenvalue needs a \"minpoly\" array".into()))?;
                let coeffs = coeffs
                    .iter()
                    .map(|c| match c {
                        serde_json::Value::String(s) => parse_rational(s),
                        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                        _ => Err(Error::Parse("minpoly coefficients must be numbers or strings".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let q = RationalPolynomial::new(coeffs);
                let fl = factor_over_rationals(&q)?;
                if fl.factors.len() != 1 || fl.factors[0].1 != 1 {
                    return Err(Error::Parse(format!("minpoly {q} is not irreducible")));
                }
                let d = Descriptor::algebraic(&q)?;
                if let Descriptor::Algebraic { real_roots, imaginary, .. } = &d {
                    if let Some(r) = o.get("real_roots").and_then(|r| r.as_u64()) {
                        if r as usize != *real_roots {
                            return Err(Error::Parse(format!(
                                "minpoly {q} has {real_roots} real roots, not {r}"
                            )));
                        }
                    }
                    if let Some(i) = o.get("imaginary").and_then(|i| i.as_bool()) {
                        if i != *imaginary {
                            return Err(Error::Parse(format!("imaginary flag {i} is wrong for {q}")));
                        }
                    }
                }
                Ok(d)
            }
            _ => Err(Error::Parse("eigenvalue must be a string or an object".into())),
        }
    }
}

impl PartialOrd for Descriptor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rational classes first, ordered by value; then algebraic classes by minimal polynomial.
impl Ord for Descriptor {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Descriptor::Rational(a), Descriptor::Rational(b)) => a.cmp(b),
            (Descriptor::Rational(_), _) => Ordering::Less,
            (_, Descriptor::Rational(_)) => Ordering::Greater,
            (Descriptor::Algebraic { minpoly: a, .. }, Descriptor::Algebraic { minpoly: b, .. }) => {
                a.cmp(b)
            }
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Rational(r) => write!(f, "{}", format_rational(r)),
            Descriptor::Algebraic { minpoly, real_roots, imaginary } => {
                write!(f, "roots of {minpoly}")?;
                if *imaginary {
                    write!(f, " (purely imaginary)")
                } else {
                    write!(f, " ({real_roots} real)")
                }
            }
        }
    }
}

/// True when every root of an irreducible q lies on the imaginary axis.
fn is_purely_imaginary(q: &RationalPolynomial) -> Result<bool> {
    let Some(r) = q.even_part_in_square() else {
        return Ok(false);
    };
    let d = r.degree().unwrap_or(0);
    if d == 0 {
        return Ok(false);
    }
    Ok(real_roots_in(&r, None, Some(&Rational::zero()))? == d && r.eval(&Rational::zero()) != Rational::zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenClass {
    pub descriptor: Descriptor,
    /// Jordan structure at each root of the class.
    pub tuple: JordanTuple,
}

impl EigenClass {
    pub fn new(descriptor: Descriptor, tuple: JordanTuple) -> Self {
        EigenClass { descriptor, tuple }
    }

    pub fn rational(value: Rational, tuple: JordanTuple) -> Self {
        EigenClass { descriptor: Descriptor::Rational(value), tuple }
    }

    /// m_λ, the algebraic multiplicity of each root.
    pub fn multiplicity(&self) -> usize {
        self.tuple.total()
    }

    pub fn dimension(&self) -> usize {
        self.descriptor.root_count() * self.tuple.total()
    }
}

/// Real Jordan invariant of a matrix, with classes sorted by descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectralProfile {
    dimension: usize,
    classes: Vec<EigenClass>,
}

impl SpectralProfile {
    /// Classes sharing a descriptor are merged as a block sum; empty tuples are dropped.
    pub fn new(classes: Vec<EigenClass>) -> Self {
        let mut merged: Vec<EigenClass> = Vec::new();
        let mut sorted = classes;
        sorted.sort();
        for c in sorted {
            if c.tuple.total() == 0 {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.descriptor == c.descriptor => {
                    last.tuple = last.tuple.merge(&c.tuple);
                }
                _ => merged.push(c),
            }
        }
        let dimension = merged.iter().map(EigenClass::dimension).sum();
        SpectralProfile { dimension, classes: merged }
    }

    pub fn nilpotent(t: &JordanTuple) -> Self {
        Self::new(vec![EigenClass::new(Descriptor::zero(), t.clone())])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn classes(&self) -> &[EigenClass] {
        &self.classes
    }

    pub fn class(&self, d: &Descriptor) -> Option<&EigenClass> {
        self.classes.iter().find(|c| &c.descriptor == d)
    }

    pub fn zero_class(&self) -> Option<&EigenClass> {
        self.class(&Descriptor::zero())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.classes.iter().all(|c| c.descriptor.is_zero())
    }

    pub fn without(&self, removed: &[&Descriptor]) -> Self {
        Self::new(
            self.classes
                .iter()
                .filter(|c| !removed.contains(&&c.descriptor))
                .cloned()
                .collect(),
        )
    }

    pub fn merge(&self, other: &Self) -> Self {
        Self::new(self.classes.iter().chain(&other.classes).cloned().collect())
    }

    /// Profile of c·M.
    pub fn scaled(&self, c: &Rational) -> Self {
        assert!(!c.is_zero(), "scaling by zero");
        Self::new(
            self.classes
                .iter()
                .map(|k| EigenClass::new(k.descriptor.scaled(c), k.tuple.clone()))
                .collect(),
        )
    }

    /// A rational matrix with this profile; algebraic blocks use companion matrices of q^s.
    pub fn realize(&self) -> RationalMatrix {
        let mut blocks = Vec::new();
        for c in &self.classes {
            for s in c.tuple.block_sizes() {
                match &c.descriptor {
                    Descriptor::Rational(r) => blocks.push(RationalMatrix::jordan_block(s, r)),
                    Descriptor::Algebraic { minpoly, .. } => {
                        blocks.push(RationalMatrix::companion(&minpoly.pow(s)))
                    }
                }
            }
        }
        RationalMatrix::block_diag(&blocks)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "dimension": self.dimension,
            "classes": self.classes.iter().map(|c| serde_json::json!({
                "eigenvalue": c.descriptor.to_json_value(),
                "tuple": format_tuple(&c.tuple),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let classes = v
            .get("classes")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("profile JSON needs a \"classes\" array".into()))?;
        let mut out = Vec::with_capacity(classes.len());
        let mut seen = BTreeSet::new();
        for (i, c) in classes.iter().enumerate() {
            let ctx = |e: Error| Error::Parse(format!("class {i}: {e}"));
            let d = Descriptor::from_json_value(
                c.get("eigenvalue")
                    .ok_or_else(|| Error::Parse(format!("class {i}: missing \"eigenvalue\"")))?,
            )
            .map_err(ctx)?;
            let t = c
                .get("tuple")
                .and_then(|t| t.as_str())
                .ok_or_else(|| Error::Parse(format!("class {i}: missing \"tuple\" string")))?;
            let t = parse_tuple(t).map_err(ctx)?;
            if !seen.insert(d.clone()) {
                return Err(Error::Parse(format!("class {i}: duplicate eigenvalue {d}")));
            }
            out.push(EigenClass::new(d, t));
        }
        let p = Self::new(out);
        if let Some(n) = v.get("dimension").and_then(|n| n.as_u64()) {
            if n as usize != p.dimension {
                return Err(Error::Parse(format!(
                    "declared dimension {n} differs from the classes' total {}",
                    p.dimension
                )));
            }
        }
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Self::from_json_value(&v)
    }
}

impl fmt::Display for SpectralProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> =
            self.classes.iter().map(|c| format!("{} ↦ {}", c.descriptor, c.tuple)).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// g_A for a square matrix A acting on the abelian ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    matrix: RationalMatrix,
}

impl LieAlgebraSpec {
    pub fn new(matrix: RationalMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Precondition(format!(
                "defining matrix must be square, got {}×{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LieAlgebraSpec { matrix })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows() + 1
    }
}

/// Λ of a nilpotent matrix.
pub fn nilpotent_tuple(m: &RationalMatrix) -> Result<JordanTuple> {
    if !m.is_square() {
        return Err(Error::Precondition("nilpotent tuple of a non-square matrix".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(JordanTuple::all_ones(0));
    }
    let dims = m.kernel_dimension_sequence();
    let last = *dims.last().unwrap();
    if last != n {
        return Err(Error::NotNilpotent { power: dims.len(), kernel_dim: last, size: n });
    }
    Ok(JordanTuple::from_kernel_dims(&dims))
}

pub fn spectral_profile(m: &RationalMatrix) -> Result<SpectralProfile> {
    if !m.is_square() {
        return Err(Error::Precondition("spectral profile of a non-square matrix".into()));
    }
    let fl = factor_over_rationals(&m.char_poly())?;
    let mut classes = Vec::new();
    for (q, mult) in &fl.factors {
        let d = q.degree().unwrap();
        let (descriptor, shifted) = if d == 1 {
            let lambda = -q.coeff(0);
            let shifted = m - &RationalMatrix::scalar(m.rows(), &lambda);
            (Descriptor::Rational(lambda), shifted)
        } else {
            (Descriptor::algebraic(q)?, m.eval_poly(q))
        };
        let dims = shifted.kernel_dimension_sequence();
        let per_root: Vec<usize> = dims
            .iter()
            .map(|&k| {
                if k % d != 0 {
                    Err(Error::Internal(format!("kernel dimension {k} not divisible by {d}")))
                } else {
                    Ok(k / d)
                }
            })
            .collect::<Result<_>>()?;
        let tuple = JordanTuple::from_kernel_dims(&per_root);
        if tuple.total() != *mult {
            return Err(Error::Internal(format!(
                "class {descriptor}: tuple total {} differs from multiplicity {mult}",
                tuple.total()
            )));
        }
        classes.push(EigenClass::new(descriptor, tuple));
    }
    Ok(SpectralProfile::new(classes))
}

/// Profile of the semisimple part: every tuple replaced by all ones.
pub fn semisimple_profile(p: &SpectralProfile) -> SpectralProfile {
    SpectralProfile::new(
        p.classes()
            .iter()
            .map(|c| EigenClass::new(c.descriptor.clone(), JordanTuple::all_ones(c.tuple.total())))
            .collect(),
    )
}

/// Λ of the nilpotent part: all class tuples merged, algebraic classes once per root.
pub fn nilpotent_part_tuple(p: &SpectralProfile) -> JordanTuple {
    p.classes()
        .iter()
        .fold(JordanTuple::all_ones(0), |acc, c| acc.merge(&c.tuple.repeated(c.descriptor.root_count())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isomorphism {
    /// g_B ≅ g_A with B conjugate to scalar·A.
    Isomorphic { scalar: Rational },
    NotIsomorphic,
    Inconclusive { reason: String },
}

/// Per-root data preserved by any real nonzero scaling.
fn scaling_signature(p: &SpectralProfile) -> Vec<(bool, usize, usize, bool, JordanTuple)> {
    let mut v: Vec<_> = p
        .classes()
        .iter()
        .map(|c| {
            (
                c.descriptor.is_zero(),
                c.descriptor.real_count(),
                c.descriptor.root_count() - c.descriptor.real_count(),
                c.descriptor.is_imaginary(),
                c.tuple.clone(),
            )
        })
        .collect();
    // real and non-real roots are regrouped per tuple so Galois splittings compare equal
    let mut per_tuple: std::collections::BTreeMap<(bool, bool, JordanTuple), (usize, usize)> =
        Default::default();
    for (z, r, nr, im, t) in v.drain(..) {
        let e = per_tuple.entry((z, im, t)).or_default();
        e.0 += r;
        e.1 += nr;
    }
    per_tuple.into_iter().map(|((z, im, t), (r, nr))| (z, r, nr, im, t)).collect()
}

fn rational_root(r: &Rational, k: u32) -> Vec<Rational> {
    let root = |n: &BigInt| -> Option<BigInt> {
        let s = n.abs().nth_root(k);
        (s.pow(k) == n.abs()).then_some(s)
    };
    if r.is_negative() && k.is_multiple_of(2) {
        return Vec::new();
    }
    let (Some(a), Some(b)) = (root(r.numer()), root(r.denom())) else {
        return Vec::new();
    };
    let base = Rational::new(a, b);
    let base = if r.is_negative() { -base } else { base };
    if k.is_multiple_of(2) {
        vec![base.clone(), -base]
    } else {
        vec![base]
    }
}

/// Decides whether g_A ≅ g_B, i.e. whether B is conjugate to c·A for some real c ≠ 0.
pub fn isomorphic(a: &LieAlgebraSpec, b: &LieAlgebraSpec) -> Result<Isomorphism> {
    if a.matrix.rows() != b.matrix.rows() {
        return Err(Error::Precondition("matrices of different sizes".into()));
    }
    let pa = spectral_profile(&a.matrix)?;
    let pb = spectral_profile(&b.matrix)?;
    if pa.is_nilpotent() || pb.is_nilpotent() {
        return Ok(if pa == pb {
            Isomorphism::Isomorphic { scalar: rat(1) }
        } else {
            Isomorphism::NotIsomorphic
        });
    }
    if scaling_signature(&pa) != scaling_signature(&pb) {
        return Ok(Isomorphism::NotIsomorphic);
    }
    let mut candidates: BTreeSet<Rational> = [rat(1), rat(-1)].into_iter().collect();
    for ca in pa.classes() {
        for cb in pb.classes() {
            match (&ca.descriptor, &cb.descriptor) {
                (Descriptor::Rational(x), Descriptor::Rational(y)) if !x.is_zero() && !y.is_zero() => {
                    candidates.insert(y / x);
                }
                (
                    Descriptor::Algebraic { minpoly: qa, .. },
                    Descriptor::Algebraic { minpoly: qb, .. },
                ) if qa.degree() == qb.degree() => {
                    let d = qa.degree().unwrap();
                    if let Some(i) = (0..d).find(|&i| !qa.coeff(i).is_zero()) {
                        let ratio = qb.coeff(i) / qa.coeff(i);
                        if !ratio.is_zero() {
                            candidates.extend(rational_root(&ratio, (d - i) as u32));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    let mut ordered: Vec<Rational> = candidates.into_iter().collect();
    ordered.sort_by_key(|c| (c.is_negative(), c.abs()));
    for c in &ordered {
        if pa.scaled(c) == pb {
            return Ok(Isomorphism::Isomorphic { scalar: c.clone() });
        }
    }
    // With a nonzero rational eigenvalue on one side and only rational nonzero real eigenvalues
    // on the other, every admissible scalar is one of the enumerated ratios.
    let has_rational = |p: &SpectralProfile| {
        p.classes()
            .iter()
            .any(|c| matches!(&c.descriptor, Descriptor::Rational(r) if !r.is_zero()))
    };
    let real_algebraic = |p: &SpectralProfile| {
        p.classes()
            .iter()
            .any(|c| matches!(&c.descriptor, Descriptor::Algebraic { real_roots, .. } if *real_roots > 0))
    };
    if (has_rational(&pa) && !real_algebraic(&pb)) || (has_rational(&pb) && !real_algebraic(&pa)) {
        return Ok(Isomorphism::NotIsomorphic);
    }
    Ok(Isomorphism::Inconclusive {
        reason: "no rational scalar relates the spectra and an irrational one cannot be excluded".into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedProfile {
    pub profile: SpectralProfile,
    /// Factor applied to the generator, when one was applied.
    pub scale: Option<Rational>,
    pub note: Option<String>,
}

/// Canonical representative of the profiles of c·M, c ≠ 0.
pub fn normalize_generator(p: &SpectralProfile) -> NormalizedProfile {
    let unchanged = |note: &str| NormalizedProfile {
        profile: p.clone(),
        scale: None,
        note: Some(note.to_string()),
    };
    if p.is_nilpotent() {
        return unchanged("nilpotent: identity normalization");
    }
    let rationals: Vec<&Rational> = p
        .classes()
        .iter()
        .filter_map(|c| match &c.descriptor {
            Descriptor::Rational(r) if !r.is_zero() => Some(r),
            _ => None,
        })
        .collect();
    let has_algebraic = p.classes().iter().any(|c| matches!(c.descriptor, Descriptor::Algebraic { .. }));
    if p.zero_class().is_none() {
        let Some(d) = rationals
            .iter()
            .min_by(|a, b| a.abs().cmp(&b.abs()).then_with(|| b.cmp(a)))
        else {
            return unchanged("irrational normalizer: no nonzero rational eigenvalue");
        };
        let c = d.recip();
        return NormalizedProfile { profile: p.scaled(&c), scale: Some(c), note: None };
    }
    if has_algebraic {
        return unchanged("irrational normalizer: largest modulus comes from an algebraic class");
    }
    let max = rationals.iter().map(|r| r.abs()).max().expect("non-nilpotent profile");
    let plus = max.recip();
    let minus = -&plus;
    let (pp, pm) = (p.scaled(&plus), p.scaled(&minus));
    let key = |q: &SpectralProfile| q.classes().to_vec();
    let (profile, scale) = if key(&pm) < key(&pp) { (pm, minus) } else { (pp, plus) };
    NormalizedProfile {
        profile,
        scale: Some(scale),
        note: Some("sign of the generator fixed by the order on descriptor lists".into()),
    }
}
