use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "gbb.h"

int main(void) {
    GbbQuotient *q = NULL;
    if (gbb_quotient_from_fixture("s9-index16", &q) != GBB_STATUS_OK) return 10;
    GbbComplex *y = NULL;
    if (gbb_complex_build(q, 2, &y) != GBB_STATUS_OK) return 11;
    size_t v = 0, h = 0;
    bool special = false;
    gbb_complex_counts(y, &v, NULL, NULL);
    gbb_complex_specialness(y, &h, &special);
    if (v != 24 || !special) return 12;
    char *report = NULL;
    if (gbb_complex_specialness_json(y, &report) != GBB_STATUS_OK) return 13;
    if (strstr(report, "\"special\":true") == NULL) return 14;
    gbb_string_free(report);
    gbb_complex_free(y);
    gbb_quotient_free(q);

    GbbCyclicPresentation *p = NULL;
    if (gbb_cyclic_presentation_new(13, "{\"modulus\":2,\"residues\":[0]}", &p) != GBB_STATUS_OK) return 20;
    bool id = true;
    if (gbb_dehn_reduce(p, "a1 a2 a3 a4 a5 a6 a7 a8 a9 a10 a11 a12 a13", &id, NULL) != GBB_STATUS_OK || id) return 21;
    if (gbb_quotient_from_fixture("missing", &q) != GBB_STATUS_UNKNOWN_FIXTURE) return 22;
    if (strlen(gbb_last_error()) == 0) return 23;
    gbb_cyclic_presentation_free(p);
    printf("%s\n", gbb_version());
    return 0;
}
"#;

#[test]
fn header_compiles_and_links() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.join("libgbb_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), env!("CARGO_PKG_VERSION"));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
