use std::ffi::{CStr, CString};
use std::ptr;

use trl_ffi::*;

fn last_error() -> String {
    let p = trl_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    trl_string_free(p);
    s
}

#[test]
fn w_tensor_round_trip() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(trl_tensor_w(&mut t), TrlStatus::Ok);
        let mut dims = [0usize; 3];
        assert_eq!(trl_tensor_dims(t, dims.as_mut_ptr()), TrlStatus::Ok);
        assert_eq!(dims, [2, 2, 2]);

        let mut json = ptr::null_mut();
        assert_eq!(trl_tensor_to_json(t, &mut json), TrlStatus::Ok);
        let json = CString::new(take_string(json)).unwrap();
        let mut u = ptr::null_mut();
        assert_eq!(trl_tensor_from_json(json.as_ptr(), &mut u), TrlStatus::Ok);

        let mut gr = 0;
        assert_eq!(trl_gr_exact(u, 2, 0, &mut gr), TrlStatus::Ok);
        assert_eq!(gr, 2);

        let mut count = ptr::null_mut();
        assert_eq!(trl_point_count(t, 7, &mut count), TrlStatus::Ok);
        assert_eq!(take_string(count), "133");

        trl_tensor_free(t);
        trl_tensor_free(u);
    }
}

#[test]
fn identity_and_matmul() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(trl_tensor_identity(1, &mut t), TrlStatus::Ok);
        let mut ar = 0.0;
        assert_eq!(trl_analytic_rank(t, 5, &mut ar), TrlStatus::Ok);
        assert!((ar - (2.0 - 9f64.ln() / 5f64.ln())).abs() < 1e-12);
        trl_tensor_free(t);

        let mut m = ptr::null_mut();
        assert_eq!(trl_tensor_matmul(2, 2, 2, &mut m), TrlStatus::Ok);
        let mut gr = 0;
        assert_eq!(trl_gr_exact(m, 2, 0, &mut gr), TrlStatus::Ok);
        assert_eq!(gr, trl_matmul_gr_formula(2, 2, 2));

        let primes = [5u64, 7];
        let mut json = ptr::null_mut();
        assert_eq!(trl_chain_report_json(m, primes.as_ptr(), 2, &mut json), TrlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["gr"]["gr"], 3);
        assert_eq!(v["sr_upper"], 4);
        assert_eq!(v["ar_samples"].as_array().unwrap().len(), 2);
        trl_tensor_free(m);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut t = ptr::null_mut();
        let bad = CString::new(r#"{"dims":[2,2,2],"entries":[[5,0,0,"1"]]}"#).unwrap();
        assert_eq!(trl_tensor_from_json(bad.as_ptr(), &mut t), TrlStatus::InvalidInput);
        assert!(last_error().contains("out of range"));
        assert!(t.is_null());

        assert_eq!(trl_tensor_identity(0, &mut t), TrlStatus::InvalidInput);
        assert_eq!(trl_tensor_from_json(ptr::null(), &mut t), TrlStatus::NullPointer);

        assert_eq!(trl_tensor_w(&mut t), TrlStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(trl_point_count(t, 9, &mut s), TrlStatus::NotPrime);
        let mut gr = 0;
        assert_eq!(trl_gr_exact(t, 3, 0, &mut gr), TrlStatus::InvalidInput);
        assert_eq!(trl_gr_exact(ptr::null(), 2, 0, &mut gr), TrlStatus::NullPointer);

        let mut m = ptr::null_mut();
        assert_eq!(trl_tensor_matmul(2, 2, 2, &mut m), TrlStatus::Ok);
        assert_eq!(trl_gr_exact(m, 2, 1, &mut gr), TrlStatus::BudgetExceeded);

        let half = CString::new(r#"{"dims":[1,1,1],"entries":[[0,0,0,"1/2"]]}"#).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(trl_tensor_from_json(half.as_ptr(), &mut h), TrlStatus::Ok);
        assert_eq!(trl_point_count(h, 5, &mut s), TrlStatus::NonInteger);

        trl_tensor_free(t);
        trl_tensor_free(m);
        trl_tensor_free(h);
        trl_tensor_free(ptr::null_mut());
        trl_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/trl.h");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        format!("#include \"{header}\"\nint main(void) {{ return TRL_STATUS_OK; }}\n"),
    )
    .unwrap();
    let Ok(out) = std::process::Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg(&src)
        .output()
    else {
        eprintln!("no C compiler, skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
