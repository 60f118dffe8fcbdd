//! Builds `tests/c/smoke.c` against the generated header and the static
//! library, then runs it. Skipped when no C compiler or archive is found.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let target_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = target_dir.join("libcharsub_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out_dir = tempfile_dir();
    let bin = out_dir.join("smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status();
    match status {
        Ok(s) if s.success() => {}
        Ok(s) => panic!("C compile failed: {s}"),
        Err(e) => {
            eprintln!("skipping: cannot run {cc}: {e}");
            return;
        }
    }
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("charsub-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
