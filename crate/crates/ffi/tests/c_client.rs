//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "urfs.h"

int main(void) {
    UrfsPair *a = NULL, *b = NULL;
    if (urfs_pair_tate(2, &a) != URFS_STATUS_OK) return 10;
    char *json = NULL;
    if (urfs_pair_to_json(a, &json) != URFS_STATUS_OK) return 11;
    if (urfs_pair_from_json(json, &b) != URFS_STATUS_OK) return 12;
    urfs_string_free(json);
    UrfsVerdict v;
    if (urfs_pair_check_equiv(a, b, &v, NULL) != URFS_STATUS_OK || v != URFS_VERDICT_EQUIVALENT) return 13;
    UrfsPair *bad = NULL;
    if (urfs_pair_from_json("[", &bad) != URFS_STATUS_PARSE || bad != NULL) return 14;
    if (urfs_last_error() == NULL) return 15;
    printf("%s %zu\n", urfs_version(), urfs_pair_dim(a));
    urfs_pair_free(a);
    urfs_pair_free(b);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary> → target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("liburfs_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("a C compiler is installed");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        format!("{} 2", env!("CARGO_PKG_VERSION"))
    );
}
