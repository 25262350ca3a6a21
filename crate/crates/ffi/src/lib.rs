//! C ABI over the `almost_abelian` library.
//!
//! Objects are opaque heap handles released with their `_free` function. Strings returned through
//! `char **out` parameters are owned by the caller and released with [`aa_string_free`]. Every
//! fallible call returns an [`AaStatus`]; on failure [`aa_last_error`] describes the problem.

use almost_abelian::decide::{decide_profile, Decision};
use almost_abelian::exact::RationalMatrix;
use almost_abelian::jordan::{spectral_profile, JordanTuple};
use almost_abelian::tuples::{format_tuple, generate_all, is_admissible, parse_tuple};
use almost_abelian::witness::{
    build_complex_witness, build_symplectic_witness, symplectic_oracle, verify_complex, verify_symplectic,
    BracketTable, ComplexWitness, SymplecticWitness,
};
use almost_abelian::{Error, Structure};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Unsupported = 5,
    Inadmissible = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AaStructure {
    Complex = 0,
    Symplectic = 1,
}

impl From<AaStructure> for Structure {
    fn from(s: AaStructure) -> Self {
        match s {
            AaStructure::Complex => Structure::Complex,
            AaStructure::Symplectic => Structure::Symplectic,
        }
    }
}

/// Nilpotent Jordan type.
pub struct AaTuple(JordanTuple);

/// Square rational matrix A defining g_A.
pub struct AaMatrix(RationalMatrix);

/// Explicit complex or symplectic structure on a nilpotent g_A.
pub enum AaWitness {
    Complex(ComplexWitness),
    Symplectic(SymplecticWitness),
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(AaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => AaStatus::Parse,
            Error::Precondition(_) | Error::NotNilpotent { .. } | Error::NotSquarefree => AaStatus::Precondition,
            Error::UnsupportedFactor(_) => AaStatus::Unsupported,
            Error::Inadmissible(_) => AaStatus::Inadmissible,
            Error::Internal(_) => AaStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AaStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside almost_abelian".into());
            AaStatus::Panic
        }
    }
}

unsafe fn cstr<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(AaStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(AaStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(AaStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(AaStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(AaStatus::Internal, "interior NUL".into()))?;
    put(out, c.into_raw())
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn aa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn aa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses "n1,..,nk;p1,..,pk;t" or "m".
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_tuple_parse(text: *const c_char, out: *mut *mut AaTuple) -> AaStatus {
    guard(|| {
        let t = parse_tuple(cstr(text)?)?;
        put(out, Box::into_raw(Box::new(AaTuple(t))))
    })
}

/// # Safety
/// `t` must be NULL or a handle from [`aa_tuple_parse`].
#[no_mangle]
pub unsafe extern "C" fn aa_tuple_free(t: *mut AaTuple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_tuple_format(t: *const AaTuple, out: *mut *mut c_char) -> AaStatus {
    guard(|| put_string(out, format_tuple(&handle(t)?.0)))
}

/// Sum of block sizes; 0 for a NULL handle.
///
/// # Safety
/// `t` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn aa_tuple_total(t: *const AaTuple) -> usize {
    t.as_ref().map_or(0, |t| t.0.total())
}

/// # Safety
/// `t` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_tuple_is_admissible(t: *const AaTuple, s: AaStructure, out: *mut bool) -> AaStatus {
    guard(|| {
        let yes = is_admissible(&handle(t)?.0, s.into())?;
        put(out, yes)
    })
}

/// Reads {"rows": [[..], ..]} with integer or "p/q" entries.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_matrix_from_json(json: *const c_char, out: *mut *mut AaMatrix) -> AaStatus {
    guard(|| {
        let m = RationalMatrix::from_json(cstr(json)?)?;
        if !m.is_square() {
            return Err(Error::Precondition("matrix must be square".into()).into());
        }
        put(out, Box::into_raw(Box::new(AaMatrix(m))))
    })
}

/// # Safety
/// `m` must be NULL or a handle from [`aa_matrix_from_json`].
#[no_mangle]
pub unsafe extern "C" fn aa_matrix_free(m: *mut AaMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

fn decision_json(d: &Decision, s: Structure, dimension: usize) -> String {
    let mut v = d.to_json_value();
    v["structure"] = s.name().into();
    v["dimension"] = dimension.into();
    v.to_string()
}

/// Decision for g_A as JSON {admissible, case, distinguished, failures, structure, dimension}.
///
/// # Safety
/// `m` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_decide_matrix_json(m: *const AaMatrix, s: AaStructure, out: *mut *mut c_char) -> AaStatus {
    guard(|| {
        let m = &handle(m)?.0;
        let p = spectral_profile(m)?;
        let d = decide_profile(&p, s.into())?;
        put_string(out, decision_json(&d, s.into(), m.rows() + 1))
    })
}

/// # Safety
/// `t` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_decide_tuple_json(t: *const AaTuple, s: AaStructure, out: *mut *mut c_char) -> AaStatus {
    guard(|| {
        let t = &handle(t)?.0;
        let d = almost_abelian::decide::decide_tuple(t, s.into())?;
        put_string(out, decision_json(&d, s.into(), t.total() + 1))
    })
}

/// All nilpotent g_A of even dimension `dim` as JSON
/// {dimension, tuples: [{tuple, complex, symplectic}, ..]}.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_enumerate_json(dim: usize, out: *mut *mut c_char) -> AaStatus {
    guard(|| {
        if dim < 2 || dim % 2 == 1 {
            return Err(Error::Precondition(format!("dimension must be even and at least 2, got {dim}")).into());
        }
        let mut rows = Vec::new();
        for t in generate_all(dim - 1) {
            rows.push(serde_json::json!({
                "tuple": format_tuple(&t),
                "complex": is_admissible(&t, Structure::Complex)?,
                "symplectic": is_admissible(&t, Structure::Symplectic)?,
            }));
        }
        put_string(out, serde_json::json!({ "dimension": dim, "tuples": rows }).to_string())
    })
}

/// Builds the explicit structure for an admissible tuple; `Inadmissible` otherwise.
///
/// # Safety
/// `t` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_witness_build(t: *const AaTuple, s: AaStructure, out: *mut *mut AaWitness) -> AaStatus {
    guard(|| {
        let t = &handle(t)?.0;
        let w = match s {
            AaStructure::Complex => AaWitness::Complex(build_complex_witness(t)?),
            AaStructure::Symplectic => AaWitness::Symplectic(build_symplectic_witness(t)?),
        };
        put(out, Box::into_raw(Box::new(w)))
    })
}

/// Re-checks integrability and J² = −1, or closedness and non-degeneracy.
///
/// # Safety
/// `w` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_witness_verify(w: *const AaWitness, out: *mut bool) -> AaStatus {
    guard(|| {
        let ok = match handle(w)? {
            AaWitness::Complex(c) => verify_complex(c),
            AaWitness::Symplectic(s) => verify_symplectic(s)?,
        };
        put(out, ok)
    })
}

/// # Safety
/// `w` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_witness_to_json(w: *const AaWitness, out: *mut *mut c_char) -> AaStatus {
    guard(|| {
        let v = match handle(w)? {
            AaWitness::Complex(c) => c.to_json_value(),
            AaWitness::Symplectic(s) => s.to_json_value(),
        };
        put_string(out, v.to_string())
    })
}

/// # Safety
/// `w` must be NULL or a handle from [`aa_witness_build`].
#[no_mangle]
pub unsafe extern "C" fn aa_witness_free(w: *mut AaWitness) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Searches g_A for a symplectic form directly; JSON {verdict, exact, ..}.
///
/// # Safety
/// `m` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aa_oracle_json(m: *const AaMatrix, seed: u64, trials: usize, out: *mut *mut c_char) -> AaStatus {
    guard(|| {
        let b = BracketTable::new(handle(m)?.0.clone())?;
        let v = symplectic_oracle(&b, seed, trials)?;
        put_string(out, v.to_json_value().to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_codes_follow_the_cli() {
        let code = |e: Error| Failure::from(e).0 as i32;
        assert_eq!(code(Error::Parse(String::new())), 3);
        assert_eq!(code(Error::NotSquarefree), 4);
        assert_eq!(code(Error::UnsupportedFactor(String::new())), 5);
        assert_eq!(code(Error::Inadmissible(String::new())), 6);
    }

    #[test]
    fn panics_become_status() {
        assert_eq!(guard(|| panic!("boom")), AaStatus::Panic);
        assert!(!aa_last_error().is_null());
        assert_eq!(guard(|| Ok(())), AaStatus::Ok);
        assert!(aa_last_error().is_null());
    }
}
