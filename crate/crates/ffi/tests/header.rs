use std::path::Path;
use std::process::Command;

fn header() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/randmono.h");
    std::fs::read_to_string(path).expect("header generated by build.rs")
}

fn exported_names() -> Vec<String> {
    let src = include_str!("../src/lib.rs");
    src.lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap().to_string())
        .collect()
}

#[test]
fn every_export_is_declared() {
    let h = header();
    let names = exported_names();
    assert!(names.len() >= 15, "{names:?}");
    for name in names {
        assert!(h.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(h.contains("typedef struct RmIdeal RmIdeal;"));
    assert!(h.contains("RM_STATUS_OK = 0"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/randmono.h"))
        .output()
    else {
        eprintln!("no C compiler available; skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
