use std::ffi::{CStr, CString};
use std::ptr;

use heyting_modal_ffi::*;

const MO2: &str = include_str!("../../core/fixtures/mo2.json");
const CORRUPT: &str = include_str!("../../core/fixtures/chain3_corrupt_implication.json");

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = hm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn presheaf_algebra_through_the_abi() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(hm_algebra_from_json(c(MO2).as_ptr(), &mut a), HmStatus::Ok);
        assert_eq!(hm_algebra_size(a), 17);
        let mut boolean = true;
        assert_eq!(hm_algebra_is_boolean(a, &mut boolean), HmStatus::Ok);
        assert!(!boolean);
        let mut reg = 0;
        assert_eq!(hm_algebra_regular_count(a, &mut reg), HmStatus::Ok);
        assert_eq!(reg, 2);

        let mut n = ptr::null_mut();
        assert_eq!(hm_nuclei_enumerate(a, 0, &mut n), HmStatus::Ok);
        assert_eq!(hm_nuclei_count(n), 32);
        let mut table = vec![0usize; 17];
        assert_eq!(hm_nuclei_table(n, 31, table.as_mut_ptr(), 17), HmStatus::Ok);
        assert_eq!(
            hm_nuclei_table(n, 32, table.as_mut_ptr(), 17),
            HmStatus::OutOfRange
        );
        assert_eq!(
            hm_nuclei_table(n, 0, table.as_mut_ptr(), 3),
            HmStatus::OutOfRange
        );
        hm_nuclei_free(n);

        let mut n = ptr::null_mut();
        assert_eq!(hm_nuclei_enumerate(a, 8, &mut n), HmStatus::TooLarge);
        assert!(last_error().contains("8"));

        let mut name = ptr::null_mut();
        assert_eq!(hm_algebra_element_name(a, 0, &mut name), HmStatus::Ok);
        assert_eq!(CStr::from_ptr(name).to_str().unwrap(), "{}");
        hm_string_free(name);
        hm_algebra_free(a);
    }
}

#[test]
fn operations_and_errors() {
    unsafe {
        let mut a = ptr::null_mut();
        let doc = c(
            r#"{"elements": ["0","p","q","1"], "leq": [["0","p"],["0","q"],["p","1"],["q","1"]]}"#,
        );
        assert_eq!(hm_algebra_from_json(doc.as_ptr(), &mut a), HmStatus::Ok);
        let (mut p, mut q, mut r) = (0, 0, 0);
        assert_eq!(
            hm_algebra_index_of(a, c("p").as_ptr(), &mut p),
            HmStatus::Ok
        );
        assert_eq!(
            hm_algebra_index_of(a, c("q").as_ptr(), &mut q),
            HmStatus::Ok
        );
        assert_eq!(hm_algebra_negation(a, p, &mut r), HmStatus::Ok);
        assert_eq!(r, q);
        assert_eq!(hm_algebra_join(a, p, q, &mut r), HmStatus::Ok);
        assert_eq!(r, 3);
        assert_eq!(hm_algebra_meet(a, p, q, &mut r), HmStatus::Ok);
        assert_eq!(r, 0);
        assert_eq!(hm_algebra_implies(a, p, q, &mut r), HmStatus::Ok);
        assert_eq!(r, q);
        assert_eq!(
            hm_algebra_index_of(a, c("z").as_ptr(), &mut r),
            HmStatus::OutOfRange
        );
        assert_eq!(
            hm_algebra_meet(a, 0, 0, ptr::null_mut()),
            HmStatus::NullPointer
        );
        hm_algebra_free(a);

        assert_eq!(hm_algebra_size(ptr::null()), 0);
        assert_eq!(
            hm_algebra_meet(ptr::null(), 0, 0, &mut r),
            HmStatus::NullPointer
        );
        let mut a = ptr::null_mut();
        assert_eq!(
            hm_algebra_from_json(ptr::null(), &mut a),
            HmStatus::NullPointer
        );
        let pentagon = c(
            r#"{"elements": ["0","a","b","c","1"], "leq": [["0","a"],["a","b"],["b","1"],["0","c"],["c","1"]]}"#,
        );
        assert_eq!(
            hm_algebra_from_json(pentagon.as_ptr(), &mut a),
            HmStatus::InvalidInput
        );
        assert!(last_error().contains("distributive"));
        assert!(a.is_null());
        hm_algebra_free(ptr::null_mut());
        hm_nuclei_free(ptr::null_mut());
        hm_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_reports() {
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(hm_verify_json(c(MO2).as_ptr(), &mut report), HmStatus::Ok);
        let text = CStr::from_ptr(report).to_str().unwrap().to_owned();
        hm_string_free(report);
        assert!(text.contains("\"sub_cl\": 17"));
        assert!(hm_last_error().is_null());

        let mut report = ptr::null_mut();
        assert_eq!(
            hm_verify_json(c(CORRUPT).as_ptr(), &mut report),
            HmStatus::VerificationFailed
        );
        assert!(!report.is_null());
        hm_string_free(report);
        assert_eq!(last_error(), "heyting.axioms: H2 at (m, 0)");

        let mut report = ptr::null_mut();
        assert_eq!(
            hm_verify_json(c("[]").as_ptr(), &mut report),
            HmStatus::InvalidInput
        );
        assert!(report.is_null());
    }
}
