//! Byte-for-byte golden tests over the bundled zoo. Regenerate the
//! committed files with `SPINAL_BLESS=1 cargo test -p spinal-cli --test
//! golden`.

use spinal_core::canonical::canonicalize;
use spinal_core::catalog;
use spinal_core::obstructions::ExactnessFlags;
use std::path::{Path, PathBuf};
use std::process::Command;

fn zoo_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("zoo")
}

fn bless() -> bool {
    std::env::var_os("SPINAL_BLESS").is_some()
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    format!("{}\n", serde_json::to_string_pretty(value).unwrap())
}

fn check_or_bless(path: &Path, content: &str) {
    if bless() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, content).unwrap();
        return;
    }
    let committed = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(
        committed,
        content,
        "golden file {} is stale",
        path.display()
    );
}

/// Classification output with default (all-unknown) flags, as the CLI
/// prints it.
fn classify_json(sob: &spinal_core::SpinalOpenBook) -> String {
    // Reuse the CLI binary so the bytes are exactly what users see.
    let file = tempfile_with(&pretty(sob));
    let out = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(["classify", file.to_str().unwrap()])
        .output()
        .expect("run spinal classify");
    assert!(
        out.status.success(),
        "classify failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn tempfile_with(content: &str) -> PathBuf {
    use std::sync::atomic::{AtomicU64, Ordering};
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    let path = std::env::temp_dir().join(format!(
        "spinal-golden-{}-{}.json",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn zoo_books_are_canonical_and_committed() {
    let entries = [
        ("ob_s3.json", canonicalize(&catalog::ob_s3())),
        ("cb3.json", canonicalize(&catalog::cb3())),
        ("ot.json", canonicalize(&catalog::ot())),
    ];
    for (name, book) in entries {
        assert!(book.validate().is_valid());
        check_or_bless(&zoo_dir().join(name), &pretty(&book));
    }
    check_or_bless(
        &zoo_dir().join("cb3_multicurve.json"),
        &pretty(&catalog::cb3_multicurve()),
    );
}

#[test]
fn zoo_classifications_are_stable() {
    for name in ["ob_s3", "cb3", "ot"] {
        let book_path = zoo_dir().join(format!("{name}.json"));
        let book: spinal_core::SpinalOpenBook = if bless() {
            match name {
                "ob_s3" => canonicalize(&catalog::ob_s3()),
                "cb3" => canonicalize(&catalog::cb3()),
                _ => canonicalize(&catalog::ot()),
            }
        } else {
            serde_json::from_str(&std::fs::read_to_string(&book_path).unwrap()).unwrap()
        };
        let output = classify_json(&book);
        check_or_bless(
            &zoo_dir()
                .join("expected")
                .join(format!("{name}.classify.json")),
            &output,
        );
    }
}

#[test]
fn circle_bundle_build_reproduces_cb3_bytes() {
    let out = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args([
            "circle-bundle",
            "build",
            zoo_dir().join("cb3_multicurve.json").to_str().unwrap(),
        ])
        .output()
        .expect("run spinal circle-bundle build");
    assert!(out.status.success());
    let built = String::from_utf8(out.stdout).unwrap();
    let committed = std::fs::read_to_string(zoo_dir().join("cb3.json")).unwrap();
    assert_eq!(
        built, committed,
        "construction must be byte-identical to the committed book"
    );
}

#[test]
fn spine_remove_on_ob_s3_warns_about_closed_pages() {
    let out = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args([
            "surgery",
            "spine-remove",
            zoo_dir().join("ob_s3.json").to_str().unwrap(),
            "--ids",
            "0",
        ])
        .output()
        .expect("run spinal surgery spine-remove");
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("no Giroux form"), "stderr: {stderr}");
    let book: spinal_core::SpinalOpenBook =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(book.generalized);
    assert_eq!(book.papers[0].page, spinal_core::Surface::orientable(0, 0));
    check_or_bless(
        &zoo_dir().join("expected").join("ob_s3.spine_remove_0.json"),
        &pretty(&book),
    );
}

#[test]
fn validate_exit_codes() {
    // Valid book: exit 0.
    let ok = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(["validate", zoo_dir().join("ob_s3.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));

    // Corrupted incidence: exit 1 and the report names INC-1.
    let mut book = catalog::ob_s3();
    book.papers[0].orbits[0].target =
        spinal_core::sob::OrbitTarget::Circle(spinal_core::sob::SpineCircleId(42));
    let file = tempfile_with(&pretty(&book));
    let bad = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(["validate", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let stdout = String::from_utf8(bad.stdout).unwrap();
    assert!(stdout.contains("INC1"), "stdout: {stdout}");
    assert!(stdout.contains("INC3_MISSING_TARGET"), "stdout: {stdout}");

    // Malformed JSON: exit 2.
    let file = tempfile_with("{ not json");
    let malformed = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args(["validate", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(malformed.status.code(), Some(2));
}

#[test]
fn classify_with_flags_files() {
    // CB3 with all-exact flags upgrades the torsion witness.
    let flags = tempfile_with("{\"default\": \"exact\"}");
    let out = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args([
            "classify",
            zoo_dir().join("cb3.json").to_str().unwrap(),
            "--flags",
            flags.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["torsion"]["separating"], "omega_separating");
    let kinds: Vec<&str> = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["verdict"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"not_strongly_fillable"));
    assert!(kinds.contains(&"not_weakly_fillable_for_this_class"));
}

#[test]
fn verify_forms_collar_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args([
            "verify-forms",
            "--model",
            "collar",
            "--k",
            "1",
            "--m",
            "1",
            "--grid",
            "8",
        ])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    // Degenerate model fails with exit 1.
    let out = Command::new(env!("CARGO_BIN_EXE_spinal"))
        .args([
            "verify-forms",
            "--model",
            "collar-contact",
            "--k",
            "0",
            "--grid",
            "8",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn zoo_index_entries_reproduce_their_expectations() {
    // The index pins each entry's expected classification file; re-running
    // the pipeline must reproduce those bytes exactly.
    #[derive(serde::Deserialize)]
    struct ZooEntry {
        name: String,
        input: String,
        kind: String,
        expected_classify: Option<String>,
        #[allow(dead_code)]
        citation: String,
    }
    let index_path = zoo_dir().join("index.json");
    if bless() {
        // index.json is hand-maintained; nothing to regenerate here.
        assert!(index_path.exists(), "zoo/index.json must be committed");
    }
    let entries: Vec<ZooEntry> =
        serde_json::from_str(&std::fs::read_to_string(&index_path).unwrap()).unwrap();
    assert!(!entries.is_empty());
    for e in &entries {
        let input = zoo_dir().join(&e.input);
        assert!(input.exists(), "zoo entry {} input missing", e.name);
        match e.kind.as_str() {
            "book" => {
                let book: spinal_core::SpinalOpenBook =
                    serde_json::from_str(&std::fs::read_to_string(&input).unwrap()).unwrap();
                assert!(book.validate().is_valid());
                // Round trip through canonical form is the identity on zoo
                // files.
                assert_eq!(pretty(&canonicalize(&book)), pretty(&book));
                if let Some(expected) = &e.expected_classify {
                    let got = classify_json(&book);
                    let want = std::fs::read_to_string(zoo_dir().join(expected)).unwrap();
                    assert_eq!(got, want, "zoo entry {}", e.name);
                }
                let _ = ExactnessFlags::all_unknown();
            }
            "multicurve" => {
                let mc: spinal_core::circle_bundles::MulticurveData =
                    serde_json::from_str(&std::fs::read_to_string(&input).unwrap()).unwrap();
                spinal_core::circle_bundles::validate_multicurve(&mc).unwrap();
            }
            "lefschetz" => {
                let lf: spinal_core::lefschetz::LefschetzDescriptor =
                    serde_json::from_str(&std::fs::read_to_string(&input).unwrap()).unwrap();
                let bounds = spinal_core::covers::SearchBounds::default();
                let sob = spinal_core::lefschetz::boundary_sob(&lf, &bounds).unwrap();
                assert!(sob.validate().is_valid());
            }
            "cover" => {
                let spec: spinal_core::covers::CoverSpec =
                    serde_json::from_str(&std::fs::read_to_string(&input).unwrap()).unwrap();
                let bounds = spinal_core::covers::SearchBounds::default();
                assert!(
                    spinal_core::covers::exists_cover(&spec, &bounds)
                        .unwrap()
                        .exists
                );
            }
            other => panic!("unknown zoo kind {other}"),
        }
    }
}
