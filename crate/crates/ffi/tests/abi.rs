use std::ffi::{CStr, CString};
use std::ptr;

use formgroup_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = fg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn group(sel: &str) -> *mut FgGroup {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fg_group_from_selector(c(sel).as_ptr(), 512, &mut g) }, FgStatus::Ok);
    g
}

fn elements(s: *const FgSubgroup) -> Vec<usize> {
    let n = unsafe { fg_subgroup_elements(s, ptr::null_mut(), 0) };
    let mut buf = vec![0usize; n];
    assert_eq!(unsafe { fg_subgroup_elements(s, buf.as_mut_ptr(), n) }, n);
    buf
}

#[test]
fn residual_and_hypercentre_orders() {
    let g = group("sym:4");
    assert_eq!(unsafe { fg_group_order(g) }, 24);
    let mut r = ptr::null_mut();
    let st = unsafe { fg_residual(g, c("supersoluble").as_ptr(), ptr::null(), &mut r) };
    assert_eq!(st, FgStatus::Ok);
    assert_eq!(unsafe { fg_subgroup_order(r) }, 4);
    assert_eq!(elements(r).len(), 4);
    assert_eq!(elements(r)[0], 0);
    unsafe { fg_subgroup_free(r) };

    let s3 = group("sym:3");
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { fg_hypercentre(s3, c("supersoluble").as_ptr(), ptr::null(), &mut z) }, FgStatus::Ok);
    assert_eq!(unsafe { fg_subgroup_order(z) }, 6);
    unsafe {
        fg_subgroup_free(z);
        fg_group_free(s3);
        fg_group_free(g);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fg_group_from_selector(c("sym:0").as_ptr(), 512, &mut g) }, FgStatus::InvalidArgument);
    assert!(g.is_null());
    assert!(last_error().contains("sym:0"));

    assert_eq!(unsafe { fg_group_from_selector(c("sym:5").as_ptr(), 100, &mut g) }, FgStatus::OrderCapExceeded);
    assert_eq!(unsafe { fg_group_from_selector(ptr::null(), 512, &mut g) }, FgStatus::NullArgument);
    assert_eq!(unsafe { fg_group_from_text(c("table 2\n0 1\n1 1\n").as_ptr(), 512, &mut g) }, FgStatus::NotAGroup);
    assert_eq!(unsafe { fg_group_from_text(c("table 2\n0 1\n1 x\n").as_ptr(), 512, &mut g) }, FgStatus::Parse);
    assert!(last_error().starts_with("line 3"));

    let s3 = group("sym:3");
    assert!(fg_last_error_message().is_null());
    let mut r = ptr::null_mut();
    let st = unsafe { fg_residual(s3, c("sigma-nilpotent").as_ptr(), ptr::null(), &mut r) };
    assert_eq!(st, FgStatus::InvalidArgument);
    let mut out = 0usize;
    assert_eq!(unsafe { fg_group_mul(s3, 1, 9, &mut out) }, FgStatus::InvalidArgument);
    assert_eq!(unsafe { fg_group_mul(s3, 1, 1, &mut out) }, FgStatus::Ok);
    unsafe { fg_group_free(s3) };
}

#[test]
fn table_and_text_constructors() {
    let table: [u32; 9] = [0, 1, 2, 1, 2, 0, 2, 0, 1];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fg_group_from_table(table.as_ptr(), 3, &mut g) }, FgStatus::Ok);
    assert_eq!(unsafe { fg_group_order(g) }, 3);
    unsafe { fg_group_free(g) };

    let mut h = ptr::null_mut();
    assert_eq!(unsafe { fg_group_from_text(c("perm 4\n(0 1 2 3)\n(0 2)\n").as_ptr(), 512, &mut h) }, FgStatus::Ok);
    assert_eq!(unsafe { fg_group_order(h) }, 8);
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { fg_hypercentre(h, c("nilpotent").as_ptr(), ptr::null(), &mut z) }, FgStatus::Ok);
    assert_eq!(unsafe { fg_subgroup_order(z) }, 8);
    unsafe {
        fg_subgroup_free(z);
        fg_group_free(h);
    }
}

#[test]
fn subnormal_witness() {
    let g = group("sym:3");
    // an element of order 2 generates a non-subnormal subgroup of S3
    let involution = (1..6)
        .find(|&x| {
            let mut y = 0usize;
            unsafe { fg_group_mul(g, x, x, &mut y) };
            y == 0
        })
        .unwrap();
    let mut positive = true;
    let mut chain = ptr::null_mut();
    let st = unsafe {
        fg_subnormal(g, &involution, 1, FgSubnormalKind::Subnormal, ptr::null(), ptr::null(), &mut positive, &mut chain)
    };
    assert_eq!(st, FgStatus::Ok);
    assert!(!positive && chain.is_null());

    let st = unsafe {
        fg_subnormal(g, &involution, 1, FgSubnormalKind::KF, c("supersoluble").as_ptr(), ptr::null(), &mut positive, &mut chain)
    };
    assert_eq!(st, FgStatus::Ok);
    assert!(positive);
    let text = unsafe { CStr::from_ptr(chain) }.to_str().unwrap().to_owned();
    assert_eq!(text, "2 --f-step--> 6");
    unsafe {
        fg_string_free(chain);
        fg_group_free(g);
    }
}

#[test]
fn verify_returns_json() {
    let mut json = ptr::null_mut();
    let mut exit = -1;
    let st = unsafe {
        fg_verify_json(c("theorem-b").as_ptr(), 12, 512, c("nilpotent").as_ptr(), ptr::null(), 0, &mut json, &mut exit)
    };
    assert_eq!(st, FgStatus::Ok);
    assert_eq!(exit, 0);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { fg_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["reports"][0]["verdict"], "PASS");
    assert_eq!(v["reports"][0]["claim"], "theorem-b");

    let st = unsafe { fg_verify_json(c("bogus").as_ptr(), 12, 512, ptr::null(), ptr::null(), 0, &mut json, &mut exit) };
    assert_eq!(st, FgStatus::InvalidArgument);
    assert!(last_error().contains("bogus"));
}
