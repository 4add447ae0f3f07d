use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "formgroup.h"

int main(void) {
    FgGroup *g = NULL;
    if (fg_group_from_selector("sym:4", 512, &g) != FG_STATUS_OK) return 10;
    FgSubgroup *r = NULL;
    if (fg_residual(g, "nilpotent", NULL, &r) != FG_STATUS_OK) return 11;
    size_t elems[24];
    size_t n = fg_subgroup_elements(r, elems, 24);
    FgGroup *bad = NULL;
    FgStatus st = fg_group_from_selector("nope", 512, &bad);
    const char *msg = fg_last_error_message();
    printf("order=%zu residual=%zu first=%zu bad=%d msg=%s\n", fg_group_order(g), n, elems[0], (int)st,
           msg ? "set" : "null");
    fg_subgroup_free(r);
    fg_group_free(g);
    return 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libformgroup_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "order=24 residual=12 first=0 bad=3 msg=set\n");
}
