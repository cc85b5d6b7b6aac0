use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use hopfdouble_ffi::*;

fn s(text: &str) -> CString {
    CString::new(text).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let out = CStr::from_ptr(p).to_str().unwrap().to_string();
    hd_string_free(p);
    out
}

unsafe fn last_error() -> String {
    let p = hd_last_error();
    assert!(!p.is_null(), "an error message is set");
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

#[test]
fn algebra_handles() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(hd_algebra_from_id(s("uq:3:1").as_ptr(), &mut alg), HdStatus::Ok);
        assert!(hd_last_error().is_null());
        let mut dim = 0usize;
        assert_eq!(hd_algebra_dimension(alg, &mut dim), HdStatus::Ok);
        assert_eq!(dim, 27);
        let mut name = ptr::null_mut();
        assert_eq!(hd_algebra_name(alg, &mut name), HdStatus::Ok);
        assert!(take(name).starts_with("u_q(sl2)"));

        let mut report = ptr::null_mut();
        assert_eq!(hd_algebra_verify(alg, 7, &mut report), HdStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v["dimension"], 27);

        let mut json = ptr::null_mut();
        assert_eq!(hd_algebra_to_json(alg, true, &mut json), HdStatus::Ok);
        let text = CString::new(take(json)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(hd_algebra_from_json(text.as_ptr(), &mut back), HdStatus::Ok);
        let mut dim2 = 0usize;
        hd_algebra_dimension(back, &mut dim2);
        assert_eq!(dim2, 27);
        hd_algebra_free(back);
        hd_algebra_free(alg);
        hd_algebra_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(hd_algebra_from_id(s("taft:4:2").as_ptr(), &mut alg), HdStatus::InvalidArgument);
        assert!(alg.is_null());
        assert!(last_error().contains("primitive"));

        assert_eq!(hd_algebra_from_id(ptr::null(), &mut alg), HdStatus::NullPointer);
        assert_eq!(hd_algebra_from_id(s("taft:3:1").as_ptr(), ptr::null_mut()), HdStatus::NullPointer);
        let mut dim = 0usize;
        assert_eq!(hd_algebra_dimension(ptr::null(), &mut dim), HdStatus::NullPointer);

        let bad = [0xffu8, 0];
        assert_eq!(hd_algebra_from_id(bad.as_ptr().cast(), &mut alg), HdStatus::InvalidArgument);

        assert_eq!(hd_algebra_from_json(s("{\"name\": 3}").as_ptr(), &mut alg), HdStatus::InvalidArgument);
        assert!(last_error().contains("name"));

        let mut d = ptr::null_mut();
        assert_eq!(hd_double_build(s("taft:3:1:dual").as_ptr(), &mut d), HdStatus::InvalidArgument);

        let mut out = ptr::null_mut();
        assert_eq!(hd_scalar_normalize(4, s("1/0").as_ptr(), &mut out), HdStatus::InvalidArgument);
        assert_eq!(hd_scalar_normalize(4, s("z^2 + 1").as_ptr(), &mut out), HdStatus::Ok);
        assert_eq!(take(out), "0");
    }
}

#[test]
fn double_handles() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(hd_double_build(s("taft:3:1").as_ptr(), &mut d), HdStatus::Ok);
        let mut n = 0usize;
        assert_eq!(hd_double_cross_relation_count(d, &mut n), HdStatus::Ok);
        assert_eq!(n, 4);
        let mut rel = ptr::null_mut();
        assert_eq!(hd_double_cross_relation(d, 0, &mut rel), HdStatus::Ok);
        assert!(take(rel).contains(" = "));
        assert_eq!(hd_double_cross_relation(d, n, &mut rel), HdStatus::InvalidArgument);

        let mut alg = ptr::null_mut();
        assert_eq!(hd_double_algebra(d, &mut alg), HdStatus::Ok);
        hd_double_free(d);
        let mut dim = 0usize;
        hd_algebra_dimension(alg, &mut dim);
        assert_eq!(dim, 81);
        assert_eq!(hd_algebra_verify(alg, 1, ptr::null_mut()), HdStatus::Ok);
        hd_algebra_free(alg);
    }
}

#[test]
fn classify_and_run() {
    unsafe {
        let mut families = 0usize;
        let mut report = ptr::null_mut();
        assert_eq!(hd_classify(s("hnzmt:8:1:2:2").as_ptr(), &mut families, &mut report), HdStatus::Ok);
        assert_eq!(families, 0);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert!(!v["certificates"].as_array().unwrap().is_empty());

        let args = [s("extend"), s("--algebra"), s("uq:3:1"), s("--gamma"), s("1")];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        let mut code: c_int = -1;
        let mut out = ptr::null_mut();
        assert_eq!(hd_run(argv.len(), argv.as_ptr(), &mut code, &mut out), HdStatus::Ok);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["payload"]["extensions"]["families"].as_array().unwrap().len(), 2);

        let args = [s("verify"), s("taft:4:2")];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(hd_run(argv.len(), argv.as_ptr(), &mut code, &mut out), HdStatus::InvalidArgument);
        assert_eq!(code, 2);
        hd_string_free(out);

        let args = [s("no-such-command")];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(hd_run(argv.len(), argv.as_ptr(), &mut code, &mut out), HdStatus::InvalidArgument);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(hd_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
