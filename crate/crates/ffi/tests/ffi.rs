use std::ffi::{CStr, CString};
use std::ptr;

use blockforge_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = bf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { bf_string_free(p) };
    s
}

#[test]
fn group_table_and_blocks() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(bf_group_from_catalog(c("A4").as_ptr(), &mut g), BfStatus::Ok);
        let mut order = 0;
        assert_eq!(bf_group_order(g, &mut order), BfStatus::Ok);
        assert_eq!(order, 12);

        let mut t = ptr::null_mut();
        assert_eq!(bf_table_compute(g, &mut t), BfStatus::Ok);
        let mut k = 0;
        assert_eq!(bf_table_class_count(t, &mut k), BfStatus::Ok);
        let degrees: Vec<u64> = (0..k)
            .map(|i| {
                let mut d = 0;
                assert_eq!(bf_table_degree(t, i, &mut d), BfStatus::Ok);
                d
            })
            .collect();
        assert_eq!(degrees, [1, 1, 1, 3]);
        let mut d = 0;
        assert_eq!(bf_table_degree(t, 9, &mut d), BfStatus::OutOfRange);

        let mut b = ptr::null_mut();
        assert_eq!(bf_blocks_compute(t, 3, &mut b), BfStatus::Ok);
        let mut nb = 0;
        assert_eq!(bf_blocks_count(b, &mut nb), BfStatus::Ok);
        assert_eq!(nb, 2);
        let mut which = 0;
        assert_eq!(bf_blocks_block_of_char(b, 3, &mut which), BfStatus::Ok);
        assert_eq!(which, 1);
        let mut defect = 9;
        assert_eq!(bf_blocks_defect(b, 0, &mut defect), BfStatus::Ok);
        assert_eq!(defect, 1);
        let mut json = ptr::null_mut();
        assert_eq!(bf_blocks_to_json(b, &mut json), BfStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["primes"][0]["blocks"].as_array().unwrap().len(), 2);

        bf_blocks_free(b);
        bf_table_free(t);
        bf_group_free(g);
    }
}

#[test]
fn table_json_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(bf_group_from_catalog(c("S4").as_ptr(), &mut g), BfStatus::Ok);
        let mut t = ptr::null_mut();
        assert_eq!(bf_table_compute(g, &mut t), BfStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(bf_table_to_json(t, &mut json), BfStatus::Ok);
        let text = take_string(json);
        let mut back = ptr::null_mut();
        assert_eq!(bf_table_from_json(c(&text).as_ptr(), &mut back), BfStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(bf_table_to_json(back, &mut again), BfStatus::Ok);
        assert_eq!(take_string(again), text);

        let broken = text.replacen("\"1/1\"", "\"2/1\"", 1);
        let mut bad = ptr::null_mut();
        assert_eq!(bf_table_from_json(c(&broken).as_ptr(), &mut bad), BfStatus::CheckFailed);
        assert!(bad.is_null());
        assert!(last_error().contains("orthogonality"), "{}", last_error());

        bf_table_free(back);
        bf_table_free(t);
        bf_group_free(g);
    }
}

#[test]
fn frobenius_report() {
    unsafe {
        let mut g = ptr::null_mut();
        let mut n = ptr::null_mut();
        assert_eq!(bf_group_from_catalog(c("S4").as_ptr(), &mut g), BfStatus::Ok);
        assert_eq!(bf_normal_from_catalog(c("S4").as_ptr(), c("A4").as_ptr(), &mut n), BfStatus::Ok);
        let primes = [3u64];
        let mut json = ptr::null_mut();
        let mut consistent = -1;
        assert_eq!(
            bf_frobenius_json(g, n, primes.as_ptr(), 1, 0, &mut json, &mut consistent),
            BfStatus::Ok
        );
        assert_eq!(consistent, 1);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["primes"][0]["pairs"][0]["verdict_char"], true);
        bf_group_free(n);
        bf_group_free(g);
    }
}

#[test]
fn errors_and_nulls() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(bf_group_from_catalog(c("Nope").as_ptr(), &mut g), BfStatus::InputError);
        assert!(last_error().contains("unknown group"));
        assert_eq!(bf_group_from_catalog(ptr::null(), &mut g), BfStatus::NullPointer);
        assert_eq!(bf_group_from_catalog(c("A4").as_ptr(), ptr::null_mut()), BfStatus::NullPointer);
        assert_eq!(
            bf_group_from_generators(c("degree 4\n1 1 3 4\n").as_ptr(), &mut g),
            BfStatus::InputError
        );
        assert_eq!(last_error(), "not a bijection at line 2");
        let mut order = 0;
        assert_eq!(bf_group_order(ptr::null(), &mut order), BfStatus::NullPointer);
        assert_eq!(bf_group_from_generators(c("degree 3\n2 3 1\n").as_ptr(), &mut g), BfStatus::Ok);
        assert!(bf_last_error().is_null());
        let mut t = ptr::null_mut();
        assert_eq!(bf_table_compute(g, &mut t), BfStatus::Ok);
        let mut b = ptr::null_mut();
        assert_eq!(bf_blocks_compute(t, 4, &mut b), BfStatus::InputError);
        bf_table_free(t);
        bf_group_free(g);
        bf_group_free(ptr::null_mut());
        bf_string_free(ptr::null_mut());
    }
    assert!(!bf_version().is_null());
}
