use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use tasp_ffi::*;

fn fig3c() -> TaspParams {
    TaspParams {
        t0: 1.0,
        t_so: 0.2,
        m_z: -1.0,
        g: 1.0,
        protocol_sign: 1,
        variant: TaspVariant::Standard,
        t_int_zero_plus: 0,
        t_int: 0.5,
        t_f: 5000.0,
        has_m_z_int: 0,
        m_z_int: 0.0,
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tasp_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(tasp_version()) };
    assert_eq!(v.to_str().unwrap(), tasp::VERSION);
}

#[test]
fn validation_and_error_message() {
    let mut p = fig3c();
    assert_eq!(unsafe { tasp_params_validate(&p) }, TaspStatus::Ok);
    assert_eq!(last_error(), "");
    p.t_f = 0.1;
    assert_eq!(unsafe { tasp_params_validate(&p) }, TaspStatus::InvalidParams);
    assert!(last_error().contains("t_f"), "{}", last_error());
    p = fig3c();
    p.protocol_sign = 2;
    assert_eq!(unsafe { tasp_params_validate(&p) }, TaspStatus::InvalidParams);
    assert_eq!(unsafe { tasp_params_validate(ptr::null()) }, TaspStatus::NullArgument);
}

#[test]
fn point_matches_core() {
    let p = fig3c();
    let mut out = [0.0; 3];
    assert_eq!(unsafe { tasp_point(&p, 0.3, -1.2, out.as_mut_ptr()) }, TaspStatus::Ok);
    let m = tasp::ModelParams::slow(1.0, 0.2, -1.0, 1.0, tasp::ProtocolSign::Plus, tasp::StartTime::At(0.5), 5000.0);
    let want = tasp::dynamics::tasp_at(&m, tasp::Momentum::new(0.3, -1.2), &Default::default()).unwrap();
    assert_eq!(out, want.as_array());
}

#[test]
fn grid_and_analysis_round_trip() {
    let p = fig3c();
    let mut grid: *mut TaspGrid = ptr::null_mut();
    unsafe {
        assert_eq!(tasp_grid_new(&p, 61, &mut grid), TaspStatus::Ok);
        assert_eq!(tasp_grid_size(grid), 61);
        let mut s = [0.0; 3];
        assert_eq!(tasp_grid_get(grid, 30, 30, s.as_mut_ptr()), TaspStatus::Ok);
        assert_eq!(tasp_grid_get(grid, 61, 0, s.as_mut_ptr()), TaspStatus::OutOfRange);

        let mut a: *mut TaspAnalysis = ptr::null_mut();
        assert_eq!(tasp_analysis_new(grid, &mut a), TaspStatus::Ok);
        assert_eq!(tasp_analysis_ring_count(a), 3);
        let mut kinds = Vec::new();
        for i in 0..3 {
            let mut info = std::mem::zeroed::<TaspRingInfo>();
            assert_eq!(tasp_analysis_ring(a, i, &mut info), TaspStatus::Ok);
            assert_eq!(info.has_winding, 1);
            kinds.push((info.kind as i32, info.winding));
            let mut xy = vec![0.0; 2 * info.point_count];
            let mut written = 0;
            assert_eq!(
                tasp_analysis_ring_points(a, i, xy.as_mut_ptr(), info.point_count, &mut written),
                TaspStatus::Ok
            );
            assert_eq!(written, info.point_count);
        }
        kinds.sort();
        assert_eq!(kinds, vec![(0, 1), (1, 1), (2, -1)]);
        let mut info = std::mem::zeroed::<TaspRingInfo>();
        assert_eq!(tasp_analysis_ring(a, 3, &mut info), TaspStatus::OutOfRange);

        let mut proc_info = std::mem::zeroed::<TaspProcessInfo>();
        assert_eq!(tasp_analysis_process(a, &mut proc_info), TaspStatus::Ok);
        assert_eq!(proc_info.label, TaspProcessLabel::TopoToTopo);
        assert_eq!((proc_info.initial_invariant, proc_info.final_invariant), (-1, 1));

        tasp_analysis_free(a);
        tasp_grid_free(grid);
        tasp_grid_free(ptr::null_mut());
        tasp_analysis_free(ptr::null_mut());
    }
}

#[test]
fn small_grid_is_an_analysis_error() {
    let p = fig3c();
    let mut grid: *mut TaspGrid = ptr::null_mut();
    unsafe {
        assert_eq!(tasp_grid_new(&p, 11, &mut grid), TaspStatus::Ok);
        let mut a: *mut TaspAnalysis = ptr::null_mut();
        assert_eq!(tasp_analysis_new(grid, &mut a), TaspStatus::Analysis);
        assert!(a.is_null());
        assert!(last_error().contains("41"));
        tasp_grid_free(grid);
    }
}

#[test]
fn critical_and_chern() {
    let mut c = 0.0;
    assert_eq!(unsafe { tasp_critical_tso(1.0, -1.0, 1.0, &mut c) }, TaspStatus::Ok);
    assert!((c - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(unsafe { tasp_critical_tso(3.0, 3.0, 1.0, &mut c) }, TaspStatus::Analysis);

    let mut p = fig3c();
    let mut ch = 0;
    assert_eq!(unsafe { tasp_chern_number(&p, 1.0, 60, &mut ch) }, TaspStatus::Ok);
    assert_eq!(ch, -1);
    p.variant = TaspVariant::HighChern;
    assert_eq!(unsafe { tasp_chern_number(&p, 0.5, 60, &mut ch) }, TaspStatus::Ok);
    assert_eq!(ch, 3);
}

#[test]
fn header_declares_the_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/tasp.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "tasp_last_error_message",
        "tasp_version",
        "tasp_grid_new",
        "tasp_grid_free",
        "tasp_analysis_new",
        "tasp_analysis_free",
        "tasp_analysis_process",
        "TASP_STATUS_OK",
        "typedef struct TaspGrid TaspGrid",
    ] {
        assert!(text.contains(f), "header lacks {f}");
    }
    // syntax check with the system C compiler when there is one
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-std=c99", "-x", "c"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}

/// Builds `tests/c/smoke.c` against the header and the static library and runs it.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else { return };
    assert!(cc.status.success());
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/ffi-<hash>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libtasp_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let out = Command::new("cc")
        .arg("-std=c99")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}{}", String::from_utf8_lossy(&run.stderr));
    // same quench through the Rust API
    let m = tasp::ModelParams::sudden(1.0, 0.2, 1.0, -1.0, 100.0);
    let a = tasp::analysis::analyze(&tasp::dynamics::tasp_grid(&m, 41).unwrap()).unwrap();
    let label = TaspProcessLabel::from(a.process.label) as i32;
    assert!(stdout.contains(&format!("rings {} label {label}", a.rings.len())), "{stdout}");
    assert!(stdout.contains(&format!("ok {}", tasp::VERSION)), "{stdout}");
}
