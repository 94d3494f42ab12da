//! Compiles a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "aqcdga.h"

int main(void) {
    const char *src = "algebra S2 { generator x : 2; generator y : 3; d y = x^2; }";
    AqModel *m = NULL;
    if (aq_model_load(src, &m) != AQ_OK) return 10;
    uintptr_t dims[5];
    if (aq_aq_dims(m, "S2", NULL, -1, -4, 0, AQ_ROUTE_HARRISON, dims, 5) != AQ_OK) return 11;
    for (int i = 0; i < 5; i++) printf("%d ", (int)dims[i]);
    AqModel *bad = NULL;
    AqStatus s = aq_model_load("algebra A { generator x 2; }", &bad);
    printf("| %d %s\n", (int)s, aq_last_error());
    aq_model_free(m);
    return bad == NULL ? 0 : 12;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("aqcdga.h").exists(), "header not generated");
    let test_exe = std::env::current_exe().unwrap();
    let profile_dir = test_exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libaqcdga_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler unavailable");
        return;
    }
    let dir = std::env::temp_dir().join(format!("aqcdga-c-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let c_file = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&c_file, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&c_file)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "exit {:?}: {stdout}", out.status);
    assert_eq!(stdout.trim(), "0 1 1 0 0 | 3 1:25: expected `:`, found integer `2`");
}
