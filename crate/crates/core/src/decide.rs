//! Decisions on general (non-nilpotent) spectral profiles.

use crate::error::{Error, Result};
use crate::jordan::{nilpotent_part_tuple, semisimple_profile, Descriptor, EigenClass, JordanTuple, SpectralProfile};
use crate::tuples::{complex_condition, sigma_member, symplectic_condition};
use crate::Structure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub admissible: bool,
    /// Which case fired, or a summary of why none did.
    pub case: String,
    pub distinguished: Option<Descriptor>,
    pub failures: Vec<String>,
}

impl Decision {
    fn yes(case: String, distinguished: Option<Descriptor>) -> Self {
        Decision { admissible: true, case, distinguished, failures: Vec::new() }
    }

    fn no(case: impl Into<String>, failures: Vec<String>) -> Self {
        Decision { admissible: false, case: case.into(), distinguished: None, failures }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "admissible": self.admissible,
            "case": self.case,
            "distinguished": self.distinguished.as_ref().map(Descriptor::to_json_value),
            "failures": self.failures,
        })
    }
}

fn require_odd(p: &SpectralProfile) -> Result<()> {
    if p.dimension().is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "profile has even dimension {}; g_A needs an odd-dimensional ideal",
            p.dimension()
        )));
    }
    Ok(())
}

fn even_blocks(t: &JordanTuple) -> bool {
    t.trailing_ones().is_multiple_of(2) && t.parts().iter().all(|&(_, p)| p % 2 == 0)
}

fn complex_rest_failure(sub: &SpectralProfile) -> Option<String> {
    sub.classes()
        .iter()
        .find(|c| c.descriptor.real_count() > 0 && !even_blocks(&c.tuple))
        .map(|c| format!("real eigenvalue {} has tuple {} with an odd multiplicity", c.descriptor, c.tuple))
}

/// Condition (ast) on every real eigenvalue; non-real classes are unconstrained.
pub fn q_complex_admissible(sub: &SpectralProfile) -> bool {
    complex_rest_failure(sub).is_none()
}

fn symplectic_rest_failure(sub: &SpectralProfile) -> Option<String> {
    for c in sub.classes() {
        if c.descriptor.is_zero() {
            let t = &c.tuple;
            if t.trailing_ones() % 2 == 1 {
                return Some(format!("eigenvalue 0 has an odd number {} of 1×1 blocks", t.trailing_ones()));
            }
            if let Some(&(n, p)) = t.parts().iter().find(|&&(n, p)| n % 2 == 1 && p % 2 == 1) {
                return Some(format!("eigenvalue 0 has {p} blocks of odd size {n}"));
            }
            continue;
        }
        if c.descriptor.is_imaginary() {
            continue;
        }
        let neg = c.descriptor.negated();
        if neg == c.descriptor {
            continue;
        }
        match sub.class(&neg) {
            Some(other) if other.tuple == c.tuple => {}
            Some(other) => {
                return Some(format!(
                    "eigenvalue {} has tuple {} but its negative has {}",
                    c.descriptor, c.tuple, other.tuple
                ))
            }
            None => return Some(format!("eigenvalue {} has no negative partner", c.descriptor)),
        }
    }
    None
}

/// Spectral conditions for a matrix in sp(Ω): zero class with even odd-size multiplicities,
/// every class off the imaginary axis paired with its negative.
pub fn q_symplectic_admissible(sub: &SpectralProfile) -> bool {
    symplectic_rest_failure(sub).is_none()
}

pub fn complex_admissible_profile(p: &SpectralProfile) -> Result<Decision> {
    require_odd(p)?;
    let odd: Vec<&EigenClass> = p
        .classes()
        .iter()
        .filter(|c| c.descriptor.real_count() > 0 && c.multiplicity() % 2 == 1)
        .collect();
    let count: usize = odd.iter().map(|c| c.descriptor.real_count()).sum();
    if count != 1 {
        return Ok(Decision::no(
            "no distinguished eigenvalue",
            vec![format!("{count} real eigenvalues have odd multiplicity, need exactly 1")],
        ));
    }
    let a = odd[0];
    let Some(cond) = complex_condition(&a.tuple)? else {
        return Ok(Decision::no(
            format!("distinguished eigenvalue {}", a.descriptor),
            vec![format!("tuple {} at {} is not complex-admissible", a.tuple, a.descriptor)],
        ));
    };
    let rest = p.without(&[&a.descriptor]);
    if let Some(f) = complex_rest_failure(&rest) {
        return Ok(Decision::no(format!("distinguished eigenvalue {}", a.descriptor), vec![f]));
    }
    Ok(Decision::yes(
        format!("a = {}, tuple {} satisfies {cond}, remaining classes satisfy (ast)", a.descriptor, a.tuple),
        Some(a.descriptor.clone()),
    ))
}

pub fn symplectic_admissible_profile(p: &SpectralProfile) -> Result<Decision> {
    require_odd(p)?;
    let mut fired: Vec<(String, Descriptor)> = Vec::new();
    let mut failures = Vec::new();
    for c in p.classes() {
        let d = &c.descriptor;
        let m = c.multiplicity();
        if d.is_zero() {
            if m % 2 == 0 {
                continue;
            }
            let tag = "case I at 0";
            if let Some(cond) = symplectic_condition(&c.tuple)? {
                match symplectic_rest_failure(&p.without(&[d])) {
                    None => fired.push((format!("case I: c = 0, tuple {} satisfies {cond}", c.tuple), d.clone())),
                    Some(f) => failures.push(format!("{tag}: {f}")),
                }
            } else {
                failures.push(format!("{tag}: tuple {} is not symplectic-admissible", c.tuple));
            }
            continue;
        }
        let Descriptor::Rational(value) = d else {
            continue;
        };
        let neg = d.negated();
        match p.class(&neg) {
            Some(minus) => {
                let tag = format!("case II at {}", value);
                if minus.multiplicity() + 1 != m {
                    continue;
                }
                if !sigma_member(&minus.tuple, &c.tuple) {
                    failures.push(format!("{tag}: ({}, {}) is not a Σ pair", minus.tuple, c.tuple));
                    continue;
                }
                match symplectic_rest_failure(&p.without(&[d, &neg])) {
                    None => fired.push((
                        format!("case II: c = {value}, tuples {} at −c and {} at c", minus.tuple, c.tuple),
                        d.clone(),
                    )),
                    Some(f) => failures.push(format!("{tag}: {f}")),
                }
            }
            None => {
                if m != 1 {
                    continue;
                }
                match symplectic_rest_failure(&p.without(&[d])) {
                    None => fired.push((format!("case III: c = {value}, simple with no −c"), d.clone())),
                    Some(f) => failures.push(format!("case III at {value}: {f}")),
                }
            }
        }
    }
    if fired.is_empty() {
        if failures.is_empty() {
            failures.push("no real eigenvalue meets the multiplicity pattern of cases I, II or III".into());
        }
        return Ok(Decision::no("no case applies", failures));
    }
    let case = fired.iter().map(|f| f.0.as_str()).collect::<Vec<_>>().join("; ");
    Ok(Decision::yes(case, Some(fired[0].1.clone())))
}

pub fn decide_profile(p: &SpectralProfile, s: Structure) -> Result<Decision> {
    match s {
        Structure::Complex => complex_admissible_profile(p),
        Structure::Symplectic => symplectic_admissible_profile(p),
    }
}

/// Decision for the nilpotent algebra of type t, straight from the tuple predicates.
pub fn decide_tuple(t: &JordanTuple, s: Structure) -> Result<Decision> {
    let cond = match s {
        Structure::Complex => complex_condition(t)?,
        Structure::Symplectic => symplectic_condition(t)?,
    };
    Ok(match cond {
        Some(c) => Decision::yes(format!("tuple {t} satisfies {c}"), Some(Descriptor::zero())),
        None => Decision::no(format!("tuple {t} fails every condition"), vec![format!("{t} is not {s}-admissible")]),
    })
}

/// (whole, semisimple part, nilpotent part).
pub fn inheritance_decisions(p: &SpectralProfile, s: Structure) -> Result<(Decision, Decision, Decision)> {
    Ok((
        decide_profile(p, s)?,
        decide_profile(&semisimple_profile(p), s)?,
        decide_tuple(&nilpotent_part_tuple(p), s)?,
    ))
}

/// Number of real roots across classes with odd multiplicity.
pub fn odd_real_count(p: &SpectralProfile) -> usize {
    p.classes()
        .iter()
        .filter(|c| c.multiplicity() % 2 == 1)
        .map(|c| c.descriptor.real_count())
        .sum()
}
