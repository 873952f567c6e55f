use std::ffi::{CStr, CString};
use std::ptr;

use rg_lie_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = rg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn build(family: &str, n: usize, ell: usize, source: &str) -> (RgStatus, *mut RgModel) {
    let mut m = ptr::null_mut();
    let s = unsafe {
        rg_model_build(
            c(family).as_ptr(),
            n,
            ell,
            c(source).as_ptr(),
            false,
            &mut m,
        )
    };
    (s, m)
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { rg_string_free(p) };
    s
}

#[test]
fn root_counts_match_closed_forms() {
    for (fam, n, want) in [
        ("BC", 2, 12),
        ("B", 3, 18),
        ("C", 3, 18),
        ("D", 4, 24),
        ("A", 4, 12),
    ] {
        let mut out = 0usize;
        assert_eq!(
            unsafe { rg_root_count(c(fam).as_ptr(), n, &mut out) },
            RgStatus::Ok
        );
        assert_eq!(out, want, "{fam}{n}");
    }
}

#[test]
fn unknown_family_sets_message() {
    let mut out = 0usize;
    let s = unsafe { rg_root_count(c("E").as_ptr(), 3, &mut out) };
    assert_ne!(s, RgStatus::Ok);
    assert!(last_error().contains('E'));
}

#[test]
fn null_arguments_are_reported() {
    assert_eq!(
        unsafe { rg_root_count(ptr::null(), 2, ptr::null_mut()) },
        RgStatus::NullPointer
    );
    let mut out = 0usize;
    assert_eq!(
        unsafe { rg_model_dim(ptr::null(), &mut out) },
        RgStatus::NullPointer
    );
    unsafe {
        rg_model_free(ptr::null_mut());
        rg_string_free(ptr::null_mut());
    }
}

#[test]
fn success_clears_previous_error() {
    let mut out = 0usize;
    unsafe { rg_root_count(c("nope").as_ptr(), 1, &mut out) };
    assert!(!rg_last_error_message().is_null());
    assert_eq!(
        unsafe { rg_root_count(c("A").as_ptr(), 3, &mut out) },
        RgStatus::Ok
    );
    assert!(rg_last_error_message().is_null());
}

#[test]
fn model_shape_and_bracket() {
    let (s, m) = build("BC", 4, 4, "symplectic:m=2");
    assert_eq!(s, RgStatus::Ok, "{}", last_error());
    let mut dim = 0usize;
    assert_eq!(unsafe { rg_model_dim(m, &mut dim) }, RgStatus::Ok);
    let mut comps = [0usize; 4];
    assert_eq!(
        unsafe { rg_model_component_dims(m, comps.as_mut_ptr()) },
        RgStatus::Ok
    );
    // sp(8) ⊗ 𝔽, 𝒱 = 𝔽^8 ⊗ 𝔽^2, and a 3-dimensional D.
    assert_eq!(comps, [36, 0, 16, 3]);
    assert_eq!(dim, comps.iter().sum::<usize>());

    let bracket = |i: usize, j: usize| {
        let mut p = ptr::null_mut();
        assert_eq!(
            unsafe { rg_model_bracket_json(m, i, j, &mut p) },
            RgStatus::Ok
        );
        serde_json::from_str::<serde_json::Map<String, serde_json::Value>>(&take_string(p)).unwrap()
    };
    let mut nonzero = 0;
    for j in 0..dim {
        let (x, y) = (bracket(0, j), bracket(j, 0));
        nonzero += usize::from(!x.is_empty());
        assert_eq!(x.len(), y.len());
        for (k, v) in &x {
            let v = v.as_str().unwrap();
            let neg = v
                .strip_prefix('-')
                .map(str::to_string)
                .unwrap_or_else(|| format!("-{v}"));
            assert_eq!(y[k].as_str().unwrap(), neg);
        }
    }
    assert!(nonzero > 0);
    let mut junk = ptr::null_mut();
    assert_eq!(
        unsafe { rg_model_bracket_json(m, dim, 0, &mut junk) },
        RgStatus::Domain
    );
    unsafe { rg_model_free(m) };
}

#[test]
fn verify_reports_pass() {
    let (s, m) = build("BC", 4, 4, "symplectic:m=2");
    assert_eq!(s, RgStatus::Ok);
    let mut json = ptr::null_mut();
    let mut pass = false;
    let st = unsafe {
        rg_model_verify(
            m,
            c("grading,jacobi").as_ptr(),
            200,
            42,
            &mut json,
            &mut pass,
        )
    };
    assert_eq!(st, RgStatus::Ok, "{}", last_error());
    assert!(pass);
    let report: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
    let st = unsafe { rg_model_verify(m, c("bogus").as_ptr(), 0, 0, &mut json, &mut pass) };
    assert_eq!(st, RgStatus::Config);
    unsafe { rg_model_free(m) };
}

#[test]
fn build_errors_map_to_status() {
    assert_eq!(build("BC", 4, 3, "symplectic").0, RgStatus::Bound);
    assert_eq!(build("C", 6, 5, "symplectic").0, RgStatus::TypeMismatch);
    assert_eq!(build("C", 6, 5, "no_such_preset").0, RgStatus::Config);
    assert_eq!(build("BC", 3, 4, "symplectic").0, RgStatus::Domain);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(rg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
