use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_against_the_shared_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    assert!(lib_dir.join("libhopfinv_ffi.so").exists() || lib_dir.join("libhopfinv_ffi.dylib").exists());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("hopfinv_smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&lib_dir)
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-lhopfinv_ffi")
        .status()
        .expect("a C compiler is required for this test (set CC)");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke program exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"tor1\""));
}
