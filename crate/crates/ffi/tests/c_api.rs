use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use robustip_ffi::*;

const BOX_INSTANCE: &str = r#"{
  "schema": "robustip.instance/1",
  "n": 3,
  "A": [[1, 1, 1]],
  "b": [3],
  "lower": [0, 0, 0],
  "upper": [3, 3, 3],
  "costs": {"kind": "box", "lo": [1, 0, -1], "hi": [2, 3, 1]}
}"#;

const LIST_INSTANCE: &str = r#"{
  "schema": "robustip.instance/1",
  "n": 3,
  "A": [[1, 1, 1]],
  "b": [3],
  "lower": [0, 0, 0],
  "upper": [3, 3, 3],
  "costs": {"kind": "list", "vectors": [[1, 2, 3], [3, 2, 1]]}
}"#;

fn last_error() -> String {
    let p = rip_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn load(json: &str) -> *mut RipInstance {
    let c = CString::new(json).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { rip_instance_from_json(c.as_ptr(), &mut inst) }, RipStatus::Ok);
    inst
}

fn graver(inst: *const RipInstance) -> *mut RipGraver {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { rip_graver_compute(inst, 0, 0, &mut g) }, RipStatus::Ok);
    g
}

#[test]
fn min_max_box_end_to_end() {
    let inst = load(BOX_INSTANCE);
    assert_eq!(unsafe { rip_instance_dim(inst) }, 3);
    let g = graver(inst);
    assert_eq!(unsafe { rip_graver_len(g) }, 3);
    assert_eq!(unsafe { rip_graver_dim(g) }, 3);

    let mut r = ptr::null_mut();
    assert_eq!(unsafe { rip_solve(inst, g, RipVariant::MinMaxBox, false, &mut r) }, RipStatus::Ok);
    let mut value = 0;
    assert_eq!(unsafe { rip_report_value(r, &mut value) }, RipStatus::Ok);
    // all mass on the third coordinate: worst case 3·max(-1, 1)
    assert_eq!(value, 3);
    let mut x = [0i64; 3];
    let mut n = 0;
    assert_eq!(unsafe { rip_report_optimizer(r, x.as_mut_ptr(), 3, &mut n) }, RipStatus::Ok);
    assert_eq!((n, x), (3, [0, 0, 3]));
    let mut c = [0i64; 3];
    assert_eq!(unsafe { rip_report_witness(r, c.as_mut_ptr(), 3, &mut n) }, RipStatus::Ok);
    assert_eq!(c, [2, 3, 1]);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { rip_report_to_json(r, &mut json) }, RipStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let parsed = robustip::format::read_result(&text).unwrap();
    assert_eq!(parsed.report.value, 3);
    unsafe {
        rip_string_free(json);
        rip_report_free(r);
        rip_graver_free(g);
        rip_instance_free(inst);
    }
}

#[test]
fn list_variants_and_profit() {
    let inst = load(LIST_INSTANCE);
    let g = graver(inst);
    let mut r = ptr::null_mut();
    let mut value = 0;
    assert_eq!(unsafe { rip_solve(inst, ptr::null(), RipVariant::MinMaxList, false, &mut r) }, RipStatus::Ok);
    unsafe { rip_report_value(r, &mut value) };
    assert_eq!(value, 6);
    unsafe { rip_report_free(r) };

    assert_eq!(unsafe { rip_solve(inst, g, RipVariant::MaxMinList, false, &mut r) }, RipStatus::Ok);
    unsafe { rip_report_value(r, &mut value) };
    assert_eq!(value, 3);
    unsafe { rip_report_free(r) };

    // min over the list of max over X: both costs reach 9
    assert_eq!(unsafe { rip_solve(inst, g, RipVariant::MaxMinList, true, &mut r) }, RipStatus::Ok);
    unsafe { rip_report_value(r, &mut value) };
    assert_eq!(value, 9);
    unsafe {
        rip_report_free(r);
        rip_graver_free(g);
        rip_instance_free(inst);
    }
}

#[test]
fn graver_round_trip_and_elements() {
    let inst = load(BOX_INSTANCE);
    let g = graver(inst);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { rip_graver_to_json(g, &mut json) }, RipStatus::Ok);
    let mut g2 = ptr::null_mut();
    assert_eq!(unsafe { rip_graver_from_json(json, &mut g2) }, RipStatus::Ok);
    let mut a = [0i64; 3];
    let mut b = [0i64; 3];
    for i in 0..unsafe { rip_graver_len(g) } {
        unsafe {
            assert_eq!(rip_graver_element(g, i, a.as_mut_ptr(), 3, ptr::null_mut()), RipStatus::Ok);
            assert_eq!(rip_graver_element(g2, i, b.as_mut_ptr(), 3, ptr::null_mut()), RipStatus::Ok);
        }
        assert_eq!(a, b);
        assert_eq!(a.iter().sum::<i64>(), 0);
    }
    let mut small = [0i64; 1];
    let mut n = 0;
    assert_eq!(unsafe { rip_graver_element(g, 0, small.as_mut_ptr(), 1, &mut n) }, RipStatus::BufferTooSmall);
    assert_eq!(n, 3);
    assert_eq!(unsafe { rip_graver_element(g, 99, a.as_mut_ptr(), 3, &mut n) }, RipStatus::Invalid);
    assert!(last_error().contains("out of range"));
    unsafe {
        rip_string_free(json);
        rip_graver_free(g);
        rip_graver_free(g2);
        rip_instance_free(inst);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let mut inst = ptr::null_mut();
    let bad = CString::new("{\"schema\": \"robustip.instance/1\"").unwrap();
    assert_eq!(unsafe { rip_instance_from_json(bad.as_ptr(), &mut inst) }, RipStatus::Parse);
    assert!(inst.is_null());
    assert!(last_error().starts_with("parse error"));

    assert_eq!(unsafe { rip_instance_from_json(ptr::null(), &mut inst) }, RipStatus::NullPointer);
    assert_eq!(last_error(), "json is null");

    let bytes = [0xffu8, 0];
    assert_eq!(unsafe { rip_instance_from_json(bytes.as_ptr().cast(), &mut inst) }, RipStatus::Utf8);

    let list = load(LIST_INSTANCE);
    let mut r = ptr::null_mut();
    // list costs do not fit the box variant
    assert_eq!(unsafe { rip_solve(list, ptr::null(), RipVariant::MinMaxBox, false, &mut r) }, RipStatus::Invalid);
    // no basis given and none stored
    assert_eq!(unsafe { rip_solve(list, ptr::null(), RipVariant::MaxMinList, false, &mut r) }, RipStatus::Invalid);
    assert!(last_error().contains("Graver basis"));

    let other = load(&BOX_INSTANCE.replace("[[1, 1, 1]]", "[[1, 2, 1]]").replace("[3]", "[4]"));
    let g = graver(other);
    assert_eq!(unsafe { rip_solve(list, g, RipVariant::MaxMinList, false, &mut r) }, RipStatus::Invalid);
    assert!(last_error().contains("different matrix"));

    let infeasible = load(&BOX_INSTANCE.replace("\"b\": [3]", "\"b\": [10]"));
    let g2 = graver(infeasible);
    assert_eq!(unsafe { rip_solve(infeasible, g2, RipVariant::MinMaxBox, false, &mut r) }, RipStatus::Infeasible);
    assert!(r.is_null());

    let mut value = 0;
    assert_eq!(unsafe { rip_report_value(ptr::null(), &mut value) }, RipStatus::NullPointer);
    let mut capped = ptr::null_mut();
    assert_eq!(unsafe { rip_graver_compute(list, 1, 0, &mut capped) }, RipStatus::CapExceeded);
    assert!(capped.is_null());
    unsafe {
        rip_graver_free(g);
        rip_graver_free(g2);
        rip_instance_free(list);
        rip_instance_free(other);
        rip_instance_free(infeasible);
        rip_instance_free(ptr::null_mut());
        rip_string_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(rip_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/robustip.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["rip_solve", "rip_graver_compute", "rip_report_to_json", "RIP_STATUS_PANIC"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"robustip.h\"\nint main(void) { RipInstance *i = 0; return (int)rip_instance_dim(i); }\n",
    )
    .unwrap();
    for (compiler, extra) in [("cc", &["-std=c99"][..]), ("c++", &["-x", "c++"][..])] {
        let Ok(status) = Command::new(compiler)
            .args(extra)
            .arg("-fsyntax-only")
            .arg("-Wall")
            .arg("-Werror")
            .arg("-I")
            .arg(header.parent().unwrap())
            .arg(&src)
            .status()
        else {
            eprintln!("{compiler} not available; header syntax check skipped");
            continue;
        };
        assert!(status.success(), "{compiler} rejected the header");
    }
}
