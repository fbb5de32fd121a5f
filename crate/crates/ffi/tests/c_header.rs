//! Compile and run a C program against the generated header and the static
//! library. Skipped when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "deckwright.h"

int main(void) {
    DwGraph *g = NULL;
    DwDeck *d = NULL;
    char *direct = NULL, *rebuilt = NULL;
    if (dw_graph_parse("Dhc", &g) != DW_STATUS_OK) return 1;
    if (dw_graph_deck(g, &d) != DW_STATUS_OK) return 2;
    if (dw_graph_poly(g, "u", &direct) != DW_STATUS_OK) return 3;
    if (dw_deck_reconstruct(d, "u", &rebuilt) != DW_STATUS_OK) return 4;
    if (strcmp(direct, rebuilt) != 0) return 5;
    if (dw_graph_parse("?", NULL) != DW_STATUS_NULL_POINTER) return 6;
    char *msg = dw_last_error();
    if (msg == NULL) return 7;
    printf("%s\n", msg);
    dw_string_free(msg);
    dw_string_free(direct);
    dw_string_free(rebuilt);
    dw_deck_free(d);
    dw_graph_free(g);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<this test> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libdeckwright_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("null pointer"));
}
