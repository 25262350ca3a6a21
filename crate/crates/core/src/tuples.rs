//! Enumeration of Jordan tuples of a given total, the complex and symplectic admissibility
//! predicates for nilpotent g_A, the bordering successor relation and the Σ pairing.

use crate::error::{Error, Result};
use crate::jordan::JordanTuple;
use crate::Structure;
use std::collections::BTreeSet;

/// All tuples of total m, largest leading block first; (m) comes last.
pub fn generate_all(m: usize) -> Vec<JordanTuple> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<JordanTuple>) {
        if rest == 0 {
            out.push(JordanTuple::from_block_sizes(cur.iter().copied()));
            return;
        }
        for s in (1..=max.min(rest)).rev() {
            cur.push(s);
            rec(rest - s, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

fn require_odd(t: &JordanTuple) -> Result<()> {
    if t.total().is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "tuple {t} has even total {}; admissibility is defined for odd totals",
            t.total()
        )));
    }
    Ok(())
}

/// Which clause of the complex criterion holds: "(m)", "(i)", "(ii)" or "(iii)".
pub fn complex_condition(t: &JordanTuple) -> Result<Option<&'static str>> {
    require_odd(t)?;
    let parts = t.parts();
    let ones = t.trailing_ones();
    if parts.is_empty() {
        return Ok(Some("(m)"));
    }
    let k = parts.len();
    let even = |i: usize| parts[i].1.is_multiple_of(2);
    if ones % 2 == 1 {
        if (0..k).all(even) {
            return Ok(Some("(i)"));
        }
        if parts[k - 1].0 == 2 && !even(k - 1) && (0..k - 1).all(even) {
            return Ok(Some("(ii)"));
        }
        return Ok(None);
    }
    for l in 1..k {
        if parts[l - 1].0 == parts[l].0 + 1
            && !even(l - 1)
            && !even(l)
            && (0..k).filter(|&i| i != l && i != l - 1).all(even)
        {
            return Ok(Some("(iii)"));
        }
    }
    Ok(None)
}

/// Which clause of the symplectic criterion holds: "(m)", "(i)" or "(ii)".
pub fn symplectic_condition(t: &JordanTuple) -> Result<Option<&'static str>> {
    require_odd(t)?;
    let parts = t.parts();
    if parts.is_empty() {
        return Ok(Some("(m)"));
    }
    if t.trailing_ones() % 2 == 1 {
        let ok = parts.iter().all(|&(n, p)| n % 2 == 0 || p % 2 == 0);
        return Ok(ok.then_some("(i)"));
    }
    let odd_odd = parts.iter().filter(|&&(n, p)| n % 2 == 1 && p % 2 == 1).count();
    Ok((odd_odd == 1).then_some("(ii)"))
}

pub fn is_complex_admissible(t: &JordanTuple) -> Result<bool> {
    Ok(complex_condition(t)?.is_some())
}

pub fn is_symplectic_admissible(t: &JordanTuple) -> Result<bool> {
    Ok(symplectic_condition(t)?.is_some())
}

pub fn is_admissible(t: &JordanTuple, s: Structure) -> Result<bool> {
    match s {
        Structure::Complex => is_complex_admissible(t),
        Structure::Symplectic => is_symplectic_admissible(t),
    }
}

/// ⋀^c_m or ⋀^s_m.
pub fn generate_admissible(m: usize, s: Structure) -> Result<Vec<JordanTuple>> {
    if m.is_multiple_of(2) {
        return Err(Error::Precondition(format!("admissible sets need an odd total, got {m}")));
    }
    let mut out = Vec::new();
    for t in generate_all(m) {
        if is_admissible(&t, s)? {
            out.push(t);
        }
    }
    Ok(out)
}

fn with_blocks(t: &JordanTuple, remove: Option<usize>, add: &[usize], ones_delta: isize) -> JordanTuple {
    let mut sizes = t.block_sizes();
    if let Some(r) = remove {
        let i = sizes.iter().position(|&s| s == r).expect("block present");
        sizes.remove(i);
    }
    sizes.extend_from_slice(add);
    let base = JordanTuple::from_block_sizes(sizes.into_iter().filter(|&s| s > 1));
    let ones = t.trailing_ones() as isize + ones_delta;
    JordanTuple::from_block_sizes(base.block_sizes().into_iter().chain(std::iter::repeat_n(1, ones as usize)))
}

/// Tuples of [[0, 0], [v, B]] over all v, for B nilpotent with Λ(B) = t.
pub fn successors(t: &JordanTuple) -> BTreeSet<JordanTuple> {
    let mut out = BTreeSet::new();
    out.insert(with_blocks(t, None, &[], 1));
    for &(n, _) in t.parts() {
        out.insert(with_blocks(t, Some(n), &[n + 1], 0));
    }
    if t.trailing_ones() > 0 {
        out.insert(with_blocks(t, None, &[2], -1));
    }
    out
}

/// Whether (Λ(M(−c)), Λ(M(c))) is one of the admissible pairs of sizes (n−1, n).
pub fn sigma_member(minus: &JordanTuple, plus: &JordanTuple) -> bool {
    if plus.total() != minus.total() + 1 {
        return false;
    }
    let n = plus.total();
    if minus.is_all_ones() {
        let diag = JordanTuple::all_ones(n);
        return *plus == diag || (n >= 2 && *plus == with_blocks(&diag, None, &[2], -2));
    }
    if *plus == with_blocks(minus, None, &[], 1) {
        return true;
    }
    if minus
        .parts()
        .iter()
        .any(|&(nd, _)| *plus == with_blocks(minus, Some(nd), &[nd + 1], 0))
    {
        return true;
    }
    minus.trailing_ones() >= 1 && *plus == with_blocks(minus, None, &[2], -1)
}

/// Parses "n1,…,nk;p1,…,pk;t" or "m"; whitespace and one pair of outer parentheses are allowed.
pub fn parse_tuple(text: &str) -> Result<JordanTuple> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let body = compact
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(&compact);
    let num = |s: &str, what: &str| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("invalid {what} {s:?} in tuple {text:?}")))
    };
    let fields: Vec<&str> = body.split(';').collect();
    match fields.as_slice() {
        [m] => {
            let m = num(m, "total")?;
            if m == 0 {
                return Err(Error::Parse(format!("tuple {text:?} has zero total")));
            }
            Ok(JordanTuple::all_ones(m))
        }
        [sizes, mults, ones] => {
            let list = |s: &str, what: &str| -> Result<Vec<usize>> {
                if s.is_empty() {
                    return Err(Error::Parse(format!("empty {what} list in tuple {text:?}")));
                }
                s.split(',').map(|x| num(x, what)).collect()
            };
            let sizes = list(sizes, "size")?;
            let mults = list(mults, "multiplicity")?;
            if sizes.len() != mults.len() {
                return Err(Error::Parse(format!(
                    "tuple {text:?} has {} sizes but {} multiplicities",
                    sizes.len(),
                    mults.len()
                )));
            }
            JordanTuple::new(sizes.into_iter().zip(mults).collect(), num(ones, "trailing count")?)
        }
        _ => Err(Error::Parse(format!("tuple {text:?} must have one or three ';'-separated fields"))),
    }
}

pub fn format_tuple(t: &JordanTuple) -> String {
    if t.is_all_ones() {
        return t.trailing_ones().to_string();
    }
    let join = |v: Vec<usize>| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    format!(
        "{};{};{}",
        join(t.parts().iter().map(|p| p.0).collect()),
        join(t.parts().iter().map(|p| p.1).collect()),
        t.trailing_ones()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, RationalMatrix};
    use crate::jordan::nilpotent_tuple;
    use proptest::prelude::*;

    fn t(s: &str) -> JordanTuple {
        parse_tuple(s).unwrap()
    }

    fn set(v: &[&str]) -> BTreeSet<JordanTuple> {
        v.iter().map(|s| t(s)).collect()
    }

    /// Independent partition counter p(n) via the pentagonal-number recurrence.
    fn partition_count(n: usize) -> usize {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for i in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[i] += sign * p[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    p[i] += sign * p[i - g2];
                }
                k += 1;
            }
        }
        p[n] as usize
    }

    #[test]
    fn generation_counts() {
        assert_eq!(generate_all(3).into_iter().collect::<BTreeSet<_>>(), set(&["3;1;0", "2;1;1", "3"]));
        assert_eq!(generate_all(7).len(), 15);
        assert_eq!(generate_all(9).len(), 30);
        for m in 1..=30 {
            let all = generate_all(m);
            assert_eq!(all.len(), partition_count(m), "m = {m}");
            assert!(all.iter().all(|x| x.total() == m));
            assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), all.len());
        }
    }

    #[test]
    fn complex_examples() {
        let c7: BTreeSet<_> = generate_admissible(7, Structure::Complex).unwrap().into_iter().collect();
        assert_eq!(
            c7,
            set(&["4,3;1,1;0", "3;2;1", "3,2;1,1;2", "2;3;1", "2;2;3", "2;1;5", "7"])
        );
        assert!(!is_complex_admissible(&t("7;1;0")).unwrap());
        assert!(!is_complex_admissible(&t("5,3;1,1;1")).unwrap());
        assert!(is_complex_admissible(&t("2;1;0")).is_err());
        assert_eq!(complex_condition(&t("3,2;1,1;2")).unwrap(), Some("(iii)"));
    }

    #[test]
    fn symplectic_examples() {
        assert_eq!(generate_admissible(7, Structure::Symplectic).unwrap().len(), 15);
        assert!(!is_symplectic_admissible(&t("5,3;1,1;1")).unwrap());
        assert!(is_symplectic_admissible(&t("5;1;0")).unwrap());
        assert!(is_symplectic_admissible(&t("5,3;1,1;0")).is_err());
        assert!(!is_symplectic_admissible(&t("5,3,2;1,1,1;1")).unwrap());
        assert!(!is_symplectic_admissible(&t("7,5,3;1,1,1;0")).unwrap());
        let s9 = generate_admissible(9, Structure::Symplectic).unwrap();
        assert_eq!(s9.len(), 29);
        assert!(!s9.contains(&t("5,3;1,1;1")));
    }

    #[test]
    fn successor_examples() {
        assert_eq!(successors(&t("2;1;2")), set(&["2;1;3", "3;1;2", "2;2;1"]));
        assert_eq!(successors(&t("3,2;1,1;0")), set(&["3,2;1,1;1", "4,2;1,1;0", "3;2;0"]));
        assert_eq!(successors(&t("4")), set(&["5", "2;1;3"]));
        assert!(successors(&t("1")).contains(&t("2;1;0")));
    }

    #[test]
    fn successors_match_bordering() {
        for m in 1..=8 {
            for b in generate_all(m) {
                let bm = b.nilpotent_matrix();
                let mut seen = BTreeSet::new();
                for mask in 0u32..(1 << m) {
                    let mut c = RationalMatrix::zeros(m + 1, m + 1);
                    c.set_block(1, 1, &bm);
                    for i in 0..m {
                        if mask >> i & 1 == 1 {
                            c[(i + 1, 0)] = rat(1);
                        }
                    }
                    seen.insert(nilpotent_tuple(&c).unwrap());
                }
                assert_eq!(seen, successors(&b), "B = {b}");
            }
        }
    }

    #[test]
    fn sigma_examples() {
        for n in 2..8 {
            assert!(sigma_member(&JordanTuple::all_ones(n - 1), &JordanTuple::all_ones(n)));
            if n >= 4 {
                let bad = with_blocks(&JordanTuple::all_ones(n), None, &[3], -3);
                assert!(!sigma_member(&JordanTuple::all_ones(n - 1), &bad));
            }
        }
        assert!(sigma_member(&t("2;1;0"), &t("3;1;0")));
        assert!(!sigma_member(&t("2;1;0"), &t("2;2;0")));
        assert!(sigma_member(&t("2;1;1"), &t("2;2;0")));
        assert!(sigma_member(&t("3;1;1"), &t("3,2;1,1;0")));
        assert!(!sigma_member(&t("3;1;1"), &t("3;1;1")));
    }

    #[test]
    fn parse_and_format() {
        let x = t("5,3;1,1;1");
        assert_eq!(x.parts(), &[(5, 1), (3, 1)]);
        assert_eq!(x.trailing_ones(), 1);
        assert_eq!(t("7"), JordanTuple::all_ones(7));
        assert_eq!(t(" (3, 2 ; 2, 1 ; 1) "), JordanTuple::new(vec![(3, 2), (2, 1)], 1).unwrap());
        for bad in ["3,3;1,1;0", "3;0;1", "2,3;1,1;0", "1;1;0", "", "0", "3;1", "a", ";;3", "3,2;1;0"] {
            assert!(parse_tuple(bad).is_err(), "{bad:?}");
        }
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(sizes in proptest::collection::vec(1usize..9, 1..12)) {
            let x = JordanTuple::from_block_sizes(sizes);
            prop_assert_eq!(parse_tuple(&format_tuple(&x)).unwrap(), x);
        }

        #[test]
        fn successors_add_one(sizes in proptest::collection::vec(1usize..7, 1..10)) {
            let x = JordanTuple::from_block_sizes(sizes);
            for s in successors(&x) {
                prop_assert_eq!(s.total(), x.total() + 1);
            }
        }

        #[test]
        fn sigma_agrees_with_successors(sizes in proptest::collection::vec(1usize..6, 1..8)) {
            let x = JordanTuple::from_block_sizes(sizes);
            for y in generate_all(x.total() + 1) {
                prop_assert_eq!(sigma_member(&x, &y), successors(&x).contains(&y));
            }
        }
    }
}
