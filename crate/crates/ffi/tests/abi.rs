use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use k3lat_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { k3lat_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(k3lat_last_error()) }.to_str().unwrap().to_string()
}

fn by_name(name: &str, twist: i64) -> *mut K3latLattice {
    let c = CString::new(name).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { k3lat_lattice_from_name(c.as_ptr(), twist, &mut h) }, K3latStatus::Ok);
    h
}

#[test]
fn named_lattice_queries() {
    let h = by_name("A0", 1);
    let mut rank = 0usize;
    let mut sig = [0usize; 3];
    let mut even = false;
    unsafe {
        assert_eq!(k3lat_lattice_rank(h, &mut rank), K3latStatus::Ok);
        assert_eq!(k3lat_lattice_signature(h, sig.as_mut_ptr()), K3latStatus::Ok);
        assert_eq!(k3lat_lattice_is_even(h, &mut even), K3latStatus::Ok);
    }
    assert_eq!((rank, sig, even), (7, [2, 5, 0], true));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { k3lat_lattice_det(h, &mut s) }, K3latStatus::Ok);
    assert_eq!(take(s), "-6");
    assert_eq!(unsafe { k3lat_lattice_info_json(h, &mut s) }, K3latStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["disc"], serde_json::json!([2, 3]));
    assert_eq!(v["schema"], 1);
    unsafe { k3lat_lattice_free(h) };
}

#[test]
fn json_lattice_and_errors() {
    let good = CString::new(r#"{"gram": [[0,1],[1,0]]}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { k3lat_lattice_from_json(good.as_ptr(), &mut h) }, K3latStatus::Ok);
    assert!(last_error().is_empty());
    unsafe { k3lat_lattice_free(h) };

    let asym = CString::new("[[0,1],[2,0]]").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { k3lat_lattice_from_json(asym.as_ptr(), &mut h) }, K3latStatus::Parse);
    assert!(h.is_null());
    assert!(!last_error().is_empty());

    let junk = CString::new("not json").unwrap();
    assert_eq!(unsafe { k3lat_lattice_from_json(junk.as_ptr(), &mut h) }, K3latStatus::Parse);
    let unknown = CString::new("Q7").unwrap();
    assert_eq!(unsafe { k3lat_lattice_from_name(unknown.as_ptr(), 1, &mut h) }, K3latStatus::UnknownName);
    assert_eq!(unsafe { k3lat_lattice_from_json(ptr::null(), &mut h) }, K3latStatus::NullPointer);
    assert_eq!(unsafe { k3lat_lattice_rank(ptr::null(), ptr::null_mut()) }, K3latStatus::NullPointer);
    let zero = CString::new("A2").unwrap();
    assert_eq!(unsafe { k3lat_lattice_from_name(zero.as_ptr(), 0, &mut h) }, K3latStatus::InvalidInput);
    unsafe {
        k3lat_lattice_free(ptr::null_mut());
        k3lat_string_free(ptr::null_mut());
    }
}

#[test]
fn isometry_through_handles() {
    let (b1, a1) = (by_name("B1", 1), by_name("A1", 2));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { k3lat_find_isometry_json(b1, a1, 1_000_000, &mut s) }, K3latStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["result"], "isometric");
    assert_eq!(v["P"].as_array().unwrap().len(), 6);

    let (b0, a0) = (by_name("B0", 1), by_name("A0", 2));
    assert_eq!(unsafe { k3lat_find_isometry_json(b0, a0, 1_000_000, &mut s) }, K3latStatus::Domain);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["result"], "not-isometric");
    assert!(last_error().contains("192"));
    for h in [b1, a1, b0, a0] {
        unsafe { k3lat_lattice_free(h) };
    }
}

#[test]
fn fibers_and_verify() {
    let p = CString::new("1,1,1,1,1,1,1").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { k3lat_fibers_classify_json(p.as_ptr(), &mut s) }, K3latStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["total_euler"], 24);
    assert_eq!(v["d84"], "9917532888584159232");

    let rational = CString::new("0,0,1,0,0,0,0").unwrap();
    assert_eq!(unsafe { k3lat_fibers_classify_json(rational.as_ptr(), &mut s) }, K3latStatus::Domain);
    assert!(last_error().contains("not a K3"));

    assert_eq!(unsafe { k3lat_verify_all_json(0, &mut s) }, K3latStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["schema"], 1);
}

#[test]
fn version_is_package_version() {
    let v = unsafe { CStr::from_ptr(k3lat_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
