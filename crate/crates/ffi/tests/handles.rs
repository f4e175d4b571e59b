use std::ffi::CStr;
use std::ptr;

use averaging_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    let n = unsafe { avg_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn flip_rack_operators() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(avg_magma_flip(4, &mut m), AvgStatus::Ok);
        assert_eq!(avg_magma_size(m), 4);
        let mut rack = false;
        assert_eq!(avg_magma_is_rack(m, &mut rack), AvgStatus::Ok);
        assert!(rack);

        let mut list = ptr::null_mut();
        assert_eq!(avg_enumerate_averaging_rack(m, 0, &mut list), AvgStatus::Ok);
        assert_eq!(avg_map_list_len(list), 16);
        for i in 0..16 {
            let mut a = ptr::null_mut();
            assert_eq!(avg_map_list_get(list, i, &mut a), AvgStatus::Ok);
            let mut holds = false;
            assert_eq!(avg_is_averaging_rack(m, a, &mut holds), AvgStatus::Ok);
            assert!(holds);
            avg_map_free(a);
        }
        let mut a = ptr::null_mut();
        assert_eq!(avg_map_list_get(list, 16, &mut a), AvgStatus::OutOfBounds);
        avg_map_list_free(list);
        avg_magma_free(m);
    }
}

#[test]
fn group_handles() {
    let z3 = [0usize, 1, 2, 1, 2, 0, 2, 0, 1];
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(avg_group_new(3, z3.as_ptr(), &mut g), AvgStatus::Ok);
        assert_eq!(avg_group_order(g), 3);
        let mut a = ptr::null_mut();
        assert_eq!(avg_map_new(3, [2usize, 2, 0].as_ptr(), &mut a), AvgStatus::Ok);
        let mut holds = false;
        assert_eq!(avg_is_averaging_group(g, a, &mut holds), AvgStatus::Ok);
        assert!(holds);
        let mut q = ptr::null_mut();
        assert_eq!(avg_group_conjugation_rack(g, &mut q), AvgStatus::Ok);
        let mut v = 9;
        assert_eq!(avg_magma_op(q, 1, 2, &mut v), AvgStatus::Ok);
        assert_eq!(v, 2);
        avg_magma_free(q);
        avg_map_free(a);
        avg_group_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut m = ptr::null_mut();
        let bad = [0usize, 7, 1, 0];
        assert_eq!(avg_magma_new(2, bad.as_ptr(), &mut m), AvgStatus::InvalidInput);
        assert!(m.is_null());
        assert!(last_error().contains('7'));

        let not_group = [0usize, 0, 0, 0];
        let mut g = ptr::null_mut();
        assert_eq!(avg_group_new(2, not_group.as_ptr(), &mut g), AvgStatus::NotAGroup);

        assert_eq!(avg_magma_is_rack(ptr::null(), &mut false), AvgStatus::NullPointer);
        assert!(last_error().contains("null"));

        let mut f = ptr::null_mut();
        avg_magma_flip(9, &mut f);
        let mut list = ptr::null_mut();
        assert_eq!(avg_enumerate_averaging_rack(f, 4, &mut list), AvgStatus::GuardExceeded);
        avg_magma_free(f);

        // a short buffer still reports the full length
        let mut tiny = [0 as std::ffi::c_char; 4];
        let n = avg_last_error_message(tiny.as_mut_ptr(), tiny.len());
        assert!(n > 3);
        assert_eq!(CStr::from_ptr(tiny.as_ptr()).to_bytes().len(), 3);
    }
}
