use std::path::Path;
use std::process::Command;

fn header() -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/currents.h");
    std::fs::read_to_string(p).expect("header generated by the build script")
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for name in [
        "currents_last_error",
        "currents_surface_new",
        "currents_current_parse",
        "currents_intersection",
        "currents_is_binding",
        "currents_simplex_integral",
        "CURRENTS_STATUS_PRECONDITION",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(out) = Command::new("cc").arg("--version").output() else {
        return;
    };
    if !out.status.success() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    let inc = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    std::fs::write(
        &src,
        "#include \"currents.h\"\nint main(void) { CurrentsSurface *s = 0; return currents_surface_new(1, 1, &s) == CURRENTS_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&inc)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}
