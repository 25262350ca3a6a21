//! Acceptance gates. Run with `cargo test --test acceptance`; prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use almost_abelian::decide::{
    complex_admissible_profile, decide_profile, inheritance_decisions, odd_real_count, symplectic_admissible_profile,
};
use almost_abelian::exact::{rat, ratio, Rational, RationalMatrix, RationalPolynomial};
use almost_abelian::jordan::{nilpotent_tuple, spectral_profile, Descriptor, EigenClass, JordanTuple, SpectralProfile};
use almost_abelian::tuples::{
    generate_admissible, generate_all, is_complex_admissible, is_symplectic_admissible, parse_tuple,
};
use almost_abelian::witness::{
    build_complex_witness, build_symplectic_witness, closed_two_form_space, is_closed, symplectic_oracle,
    verify_complex, verify_symplectic, BracketTable, OracleVerdict,
};
use almost_abelian::Structure;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn t(s: &str) -> JordanTuple {
    parse_tuple(s).unwrap()
}

fn set(v: &[&str]) -> BTreeSet<JordanTuple> {
    v.iter().map(|s| t(s)).collect()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn census(m: usize, s: Structure) -> (BTreeSet<JordanTuple>, BTreeSet<JordanTuple>) {
    let yes: BTreeSet<_> = generate_admissible(m, s).unwrap().into_iter().collect();
    let no = generate_all(m).into_iter().filter(|x| !yes.contains(x)).collect();
    (yes, no)
}

fn criterion_1() -> Outcome {
    let (yes, no) = census(7, Structure::Complex);
    let expected = set(&["4,3;1,1;0", "3;2;1", "3,2;1,1;2", "2;3;1", "2;2;3", "2;1;5", "7"]);
    ensure!(yes == expected, "admissible set {:?}", yes.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    ensure!(no.len() == 8, "complement has {} tuples", no.len());
    ensure!(no.contains(&t("7;1;0")), "(7;1;0) should be excluded");
    Ok("7 admissible / 8 not".into())
}

fn criterion_2() -> Outcome {
    let (yes, no) = census(9, Structure::Complex);
    // three printed entries are malformed; read as (5,4;1,1;0), (3,2;2,1;1), (2;1;7)
    let expected = set(&[
        "5,4;1,1;0", "4;2;1", "4,3;1,1;2", "3,2;2,1;1", "3;2;3", "3,2;1,3;0",
        "3,2;1,1;4", "2;4;1", "2;3;3", "2;2;5", "2;1;7", "9",
    ]);
    ensure!(yes == expected, "admissible set {:?}", yes.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    ensure!(no.len() == 18, "complement has {} tuples", no.len());
    ensure!(no.contains(&t("9;1;0")), "(9;1;0) should be excluded");
    Ok("12 admissible / 18 not".into())
}

fn criterion_3() -> Outcome {
    let (yes7, no7) = census(7, Structure::Symplectic);
    ensure!(yes7.len() == 15 && no7.is_empty(), "dimension 8: {} / {}", yes7.len(), no7.len());
    let (yes9, no9) = census(9, Structure::Symplectic);
    ensure!(no9 == set(&["5,3;1,1;1"]), "dimension 10 complement {:?}", no9);
    Ok(format!("15 / 0 at dimension 8, {} / 1 at dimension 10", yes9.len()))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for m in (1..=25).step_by(2) {
        for x in generate_all(m) {
            if is_complex_admissible(&x).unwrap() {
                ensure!(is_symplectic_admissible(&x).unwrap(), "{x} is complex- but not symplectic-admissible");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} tuples"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    let mut negatives = 0;
    for m in (1..=9).step_by(2) {
        for x in generate_all(m) {
            let b = BracketTable::new(x.nilpotent_matrix()).unwrap();
            let v = symplectic_oracle(&b, 0, 4).map_err(|e| format!("{x}: {e}"))?;
            let expected = is_symplectic_admissible(&x).unwrap();
            match &v {
                OracleVerdict::Exists { omega } => {
                    ensure!(expected, "oracle found a form on {x}");
                    let w = almost_abelian::witness::SymplecticWitness { bracket: b, omega: omega.clone() };
                    ensure!(verify_symplectic(&w).unwrap(), "oracle form on {x} fails verification");
                }
                OracleVerdict::None { exact, false_negative_log2, .. } => {
                    ensure!(!expected, "oracle found no form on admissible {x}");
                    let dim = m + 1;
                    ensure!(
                        (dim <= 8 && *exact) || (dim == 10 && *false_negative_log2 <= -128),
                        "weak negative on {x}: {v:?}"
                    );
                    negatives += 1;
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} algebras, {negatives} without a form"))
}

fn criterion_6() -> Outcome {
    let m = t("5,3;1,1;1").nilpotent_matrix();
    let b = BracketTable::new(m).unwrap();
    let space = closed_two_form_space(&b);
    ensure!(space.len() == 17, "closed forms have dimension {}", space.len());
    ensure!(space.iter().all(|w| is_closed(&b, w)), "a basis form is not closed");
    // the nine forms e0^ej lie in the space, leaving an 8-parameter complement
    let mut rows: Vec<Vec<Rational>> = space.iter().map(upper).collect();
    let base = RationalMatrix::from_rows(rows.clone()).unwrap().rank();
    for j in 1..10 {
        let mut e = RationalMatrix::zeros(10, 10);
        e[(0, j)] = rat(1);
        e[(j, 0)] = rat(-1);
        rows.push(upper(&e));
    }
    let with = RationalMatrix::from_rows(rows).unwrap().rank();
    ensure!(base == 17 && with == 17, "e0^ej not contained: rank {base} -> {with}");
    let v = symplectic_oracle(&b, 0, 4).map_err(|e| e.to_string())?;
    ensure!(!v.exists(), "oracle found a form");
    Ok("17 = 9 + 8, oracle: none".into())
}

fn upper(w: &RationalMatrix) -> Vec<Rational> {
    let n = w.rows();
    (0..n).flat_map(|a| (a + 1..n).map(move |c| (a, c))).map(|(a, c)| w[(a, c)].clone()).collect()
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for m in (1..=11).step_by(2) {
        for x in generate_admissible(m, Structure::Complex).unwrap() {
            let w = build_complex_witness(&x).map_err(|e| e.to_string())?;
            ensure!(verify_complex(&w), "complex witness for {x} fails");
            ensure!(nilpotent_tuple(w.bracket.matrix()).unwrap() == x, "complex witness for {x} has wrong type");
            count += 1;
        }
        for x in generate_admissible(m, Structure::Symplectic).unwrap() {
            let w = build_symplectic_witness(&x).map_err(|e| e.to_string())?;
            ensure!(verify_symplectic(&w).unwrap(), "symplectic witness for {x} fails");
            ensure!(nilpotent_tuple(w.bracket.matrix()).unwrap() == x, "symplectic witness for {x} has wrong type");
            count += 1;
        }
    }
    Ok(format!("{count} witnesses"))
}

fn criterion_8() -> Outcome {
    for m in (1..=13).step_by(2) {
        let n = (m + 1) / 2;
        for x in generate_all(m) {
            let c = is_complex_admissible(&x).unwrap();
            let s = is_symplectic_admissible(&x).unwrap();
            let k = x.step();
            if c {
                ensure!(k <= n, "{x} is complex-admissible with step {k} > {n}");
            }
            if k <= 2 {
                ensure!(c, "2-step {x} should be complex-admissible");
            }
            if k == 3 {
                let p1 = x.multiplicity(3);
                let p2 = x.multiplicity(2);
                let expected = p2 % 2 == 1 || (p1 % 2 == 0 && p2 % 2 == 0);
                ensure!(c == expected, "3-step {x}: complex {c}, expected {expected}");
            }
            if (2..=4).contains(&k) {
                ensure!(s, "{k}-step {x} should be symplectic-admissible");
            }
            if k >= 6 && k % 2 == 0 && m + 1 <= k + 8 {
                ensure!(s, "{k}-step {x} of dimension {} should be symplectic-admissible", m + 1);
            }
            if k >= 5 && k % 2 == 1 && m + 1 <= k + 3 {
                ensure!(s, "{k}-step {x} of dimension {} should be symplectic-admissible", m + 1);
            }
        }
    }
    for k in (6..=20).step_by(2) {
        let x = JordanTuple::from_block_sizes([k, 5, 3, 1]);
        ensure!(!is_symplectic_admissible(&x).unwrap(), "{x} should not be symplectic-admissible");
    }
    for k in (5..=21).step_by(2) {
        let x = JordanTuple::from_block_sizes([k, 3, 1]);
        ensure!(!is_symplectic_admissible(&x).unwrap(), "{x} should not be symplectic-admissible");
    }
    Ok("bounds hold for m ≤ 13".into())
}

fn rational_profile(classes: &[(Rational, JordanTuple)]) -> SpectralProfile {
    SpectralProfile::new(classes.iter().map(|(v, x)| EigenClass::rational(v.clone(), x.clone())).collect())
}

/// (profile, complex expected, symplectic expected)
fn family_profiles() -> Vec<(String, SpectralProfile, bool, bool)> {
    let mut out = Vec::new();
    let one = rat(1);
    let minus = rat(-1);
    for m in [2, 3] {
        let top = JordanTuple::from_block_sizes([m + 1, m]);
        out.push((
            format!("J{}(1)+J{m}(1)+J{m}(-1)^2", m + 1),
            rational_profile(&[(one.clone(), top.clone()), (minus.clone(), JordanTuple::from_block_sizes([m, m]))]),
            true,
            true,
        ));
        for s in [2, 4] {
            out.push((
                format!("J{}(1)+J{m}(1)+(-1)I{s}", m + 1),
                rational_profile(&[(one.clone(), top.clone()), (minus.clone(), JordanTuple::all_ones(s))]),
                true,
                false,
            ));
        }
        out.push((
            format!("J{}(1)+J{m}(-1)", m + 1),
            rational_profile(&[
                (one.clone(), JordanTuple::from_block_sizes([m + 1])),
                (minus.clone(), JordanTuple::from_block_sizes([m])),
            ]),
            false,
            true,
        ));
    }
    // the family J_m(1) needs m odd
    for m in [3, 5] {
        out.push((
            format!("J{m}(1)"),
            rational_profile(&[(one.clone(), JordanTuple::from_block_sizes([m]))]),
            false,
            false,
        ));
    }
    out
}

fn criterion_9() -> Outcome {
    let fams = family_profiles();
    for (name, p, c, s) in &fams {
        let dc = complex_admissible_profile(p).map_err(|e| format!("{name}: {e}"))?;
        let ds = symplectic_admissible_profile(p).map_err(|e| format!("{name}: {e}"))?;
        ensure!(dc.admissible == *c, "{name}: complex {} expected {c}", dc.admissible);
        ensure!(ds.admissible == *s, "{name}: symplectic {} expected {s}", ds.admissible);
        // the realized matrix gives back the same profile
        let q = spectral_profile(&p.realize()).map_err(|e| e.to_string())?;
        ensure!(&q == p, "{name}: realized profile differs");
    }
    Ok(format!("{} family members", fams.len()))
}

fn algebraic(c: &[i64]) -> Descriptor {
    Descriptor::algebraic(&RationalPolynomial::from_i64(c)).unwrap()
}

fn random_tuple(rng: &mut ChaCha8Rng, max_total: usize) -> JordanTuple {
    let total = rng.gen_range(1..=max_total);
    let all = generate_all(total);
    all[rng.gen_range(0..all.len())].clone()
}

/// Random odd-dimensional profile of dimension ≤ 13, biased towards ± pairs.
fn random_profile(rng: &mut ChaCha8Rng) -> SpectralProfile {
    let pool: Vec<Descriptor> = vec![
        Descriptor::Rational(rat(0)),
        Descriptor::Rational(rat(1)),
        Descriptor::Rational(rat(2)),
        Descriptor::Rational(ratio(1, 2)),
        Descriptor::Rational(rat(-3)),
        algebraic(&[1, 0, 1]),
        algebraic(&[-2, 0, 1]),
        algebraic(&[1, 1, 1]),
        algebraic(&[-2, 0, 0, 1]),
    ];
    loop {
        let mut classes: Vec<EigenClass> = Vec::new();
        let mut used = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=3) {
            let d = pool[rng.gen_range(0..pool.len())].clone();
            if !used.insert(d.clone()) {
                continue;
            }
            let x = random_tuple(rng, 4);
            let neg = d.negated();
            if neg != d && !used.contains(&neg) && rng.gen_bool(0.6) {
                used.insert(neg.clone());
                let partner = if x.total() > 1 && rng.gen_bool(0.3) { random_tuple(rng, x.total() - 1) } else { x.clone() };
                classes.push(EigenClass::new(neg, partner));
            }
            classes.push(EigenClass::new(d, x));
        }
        let p = SpectralProfile::new(classes);
        if p.dimension() % 2 == 1 && p.dimension() <= 13 {
            return p;
        }
    }
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut admissible = [0usize; 2];
    for (i, s) in Structure::ALL.into_iter().enumerate() {
        for _ in 0..1000 {
            let p = random_profile(&mut rng);
            let (whole, ss, nil) = inheritance_decisions(&p, s).map_err(|e| format!("{p}: {e}"))?;
            if whole.admissible {
                admissible[i] += 1;
                ensure!(ss.admissible, "{s}: {p} admissible but semisimple part is not");
                ensure!(nil.admissible, "{s}: {p} admissible but nilpotent part is not");
            }
            if p.is_nilpotent() {
                ensure!(whole.admissible == nil.admissible, "{s}: nilpotent {p} decisions differ");
            }
            if s == Structure::Complex && whole.admissible {
                ensure!(odd_real_count(&p) == 1, "{p}: distinguished eigenvalue not unique");
            }
        }
    }
    ensure!(admissible.iter().all(|&a| a >= 50), "too few admissible samples: {admissible:?}");
    // converse counterexamples
    for (m, l) in [(3, 1), (1, 3), (5, 3)] {
        for b in [rat(2), rat(-1), ratio(1, 2)] {
            let ml = JordanTuple::from_block_sizes([m, l]);
            let p = rational_profile(&[(rat(0), t("1")), (rat(1), ml.clone()), (b.clone(), ml)]);
            let (whole, ss, nil) = inheritance_decisions(&p, Structure::Complex).unwrap();
            ensure!(!whole.admissible && ss.admissible && nil.admissible, "complex counterexample fails at {p}");
        }
    }
    for k in [2, 4] {
        for s in [1, 3] {
            let p = rational_profile(&[
                (rat(1), JordanTuple::all_ones(k + 1)),
                (rat(-1), JordanTuple::all_ones(k)),
                (rat(0), JordanTuple::from_block_sizes(std::iter::once(k + 1).chain(std::iter::repeat(1).take(s)))),
            ]);
            let (whole, ss, nil) = inheritance_decisions(&p, Structure::Symplectic).unwrap();
            ensure!(!whole.admissible && ss.admissible && nil.admissible, "symplectic counterexample fails at {p}");
        }
    }
    Ok(format!("admissible samples: complex {}, symplectic {}", admissible[0], admissible[1]))
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut profiles: Vec<SpectralProfile> = family_profiles().into_iter().map(|f| f.1).collect();
    while profiles.len() < 40 {
        profiles.push(random_profile(&mut rng));
    }
    let mut checks = 0;
    for (i, p) in profiles.iter().enumerate() {
        let base: Vec<bool> = Structure::ALL.iter().map(|&s| decide_profile(p, s).unwrap().admissible).collect();
        for j in 0..50 {
            let mut num = rng.gen_range(-12i64..=12);
            if num == 0 {
                num = 1;
            }
            let c = ratio(num, rng.gen_range(1..=7));
            let q = p.scaled(&c);
            if j == 0 && i % 8 == 0 {
                let direct = spectral_profile(&p.realize().scale(&c)).map_err(|e| e.to_string())?;
                ensure!(direct == q, "{p} scaled by {c}: profile mismatch");
            }
            for (k, &s) in Structure::ALL.iter().enumerate() {
                ensure!(decide_profile(&q, s).unwrap().admissible == base[k], "{s} decision on {p} changes under {c}");
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} scaled decisions"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome, Duration)> = vec![
        ("dimension-8 complex census", criterion_1, Duration::from_secs(1)),
        ("dimension-10 complex census", criterion_2, Duration::from_secs(1)),
        ("symplectic census in dimensions 8 and 10", criterion_3, Duration::from_secs(1)),
        ("complex-admissible tuples are symplectic-admissible, m ≤ 25", criterion_4, Duration::from_secs(30)),
        ("oracle agrees with the symplectic predicate, total ≤ 9", criterion_5, Duration::from_secs(600)),
        ("closed 2-forms of J5+J3+0_1", criterion_6, Duration::from_secs(60)),
        ("witness sweep, m ≤ 11", criterion_7, Duration::from_secs(300)),
        ("step bounds, m ≤ 13", criterion_8, Duration::from_secs(60)),
        ("general-case example families", criterion_9, Duration::from_secs(1)),
        ("inheritance by semisimple and nilpotent parts", criterion_10, Duration::from_secs(60)),
        ("scaling invariance", criterion_11, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({why}; {elapsed:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
