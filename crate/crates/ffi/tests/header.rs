use std::path::{Path, PathBuf};
use std::process::Command;

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().map(|_| cc)
}

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_is_generated_and_complete() {
    let h = std::fs::read_to_string(header_dir().join("blockforge.h")).unwrap();
    for sym in [
        "bf_last_error",
        "bf_group_from_catalog",
        "bf_table_compute",
        "bf_blocks_compute",
        "bf_frobenius_json",
        "bf_string_free",
        "BF_STATUS_INPUT_ERROR",
        "typedef struct BfTable BfTable;",
    ] {
        assert!(h.contains(sym), "{sym}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = compiler() else {
        eprintln!("skipping: no C compiler");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        r#"#include "blockforge.h"
int main(void) {
    BfGroup *g = 0;
    BfTable *t = 0;
    size_t k = 0;
    if (bf_group_from_catalog("A4", &g) != BF_STATUS_OK) return 1;
    if (bf_table_compute(g, &t) != BF_STATUS_OK) return 2;
    if (bf_table_class_count(t, &k) != BF_STATUS_OK || k != 4) return 3;
    bf_table_free(t);
    bf_group_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let out = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header_dir())
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // Link and run against the static library when it is present.
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().and_then(Path::parent).map(|d| d.join("libblockforge_ffi.a"));
    let Some(lib) = lib.filter(|l| l.exists()) else {
        eprintln!("skipping link step: static library not found");
        return;
    };
    let bin = dir.path().join("use");
    let out = Command::new(&cc)
        .arg("-I")
        .arg(header_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let status = Command::new(&bin).status().unwrap();
    assert!(status.success(), "C program exited with {status}");
}
