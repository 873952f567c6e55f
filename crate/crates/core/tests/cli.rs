use rg_lie::cli::run_from;
use serde_json::Value;

fn run(args: &str) -> rg_lie::cli::Outcome {
    run_from(std::iter::once("rg-lie").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let o = run(args);
    assert_eq!(o.code, 0, "{args}: {}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

const VERIFY_BC4: &str = "verify --family BC --n 4 --ell 4 --preset symplectic:m=2 --k zero --suite jacobi,grading --seed 42";

#[test]
fn roots_bc2() {
    let v = json("roots --family BC --n 2");
    assert_eq!(v["count"], 13);
    assert_eq!(v["nonzero_count"], 12);
    assert_eq!(v["roots"].as_array().unwrap().len(), 13);
}

#[test]
fn algebra_dimensions() {
    let v = json("algebra --family C --n 3");
    assert_eq!(v["dim"], 21);
    assert_eq!(v["cartan_dim"], 3);
    assert_eq!(v["root_spaces"].as_object().unwrap().len(), 18);
}

#[test]
fn fh_of_matrix_algebra() {
    let v = json("fh --ell 4 --preset matrix:k=2");
    assert_eq!(v["bb_dim"], 3);
    assert_eq!(v["fh_dim"], 0);
    assert_eq!(v["central"], true);
}

#[test]
fn build_reports_dimensions() {
    let v = json("build --family BC --n 5 --ell 4 --preset symplectic:m=2");
    assert_eq!(v["dim"], 78);
    assert_eq!(v["below_bound"], false);
}

#[test]
fn verify_example_passes() {
    let v = json(VERIFY_BC4);
    assert_eq!(v["tool"], "rg-lie");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "jacobi/random-500"));
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(checks.iter().all(|c| c["elapsed_ms"].is_null()));
}

#[test]
fn verify_is_deterministic() {
    assert_eq!(run(VERIFY_BC4).stdout, run(VERIFY_BC4).stdout);
}

#[test]
fn verify_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&format!("{VERIFY_BC4} --out {}", path.display()));
    assert_eq!(o.code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.trim_end(), run(VERIFY_BC4).stdout.trim_end());
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(
        run("verify --family BC --n 4 --ell 4 --preset symplectic:m=2 --suite --seed 1").code,
        2
    );
    assert_eq!(
        run("verify --family BC --n 4 --ell 4 --preset symplectic:m=2").code,
        2
    );
    assert_eq!(
        run("verify --family BC --n 4 --ell 4 --preset symplectic:m=2 --suite nonsense --seed 1")
            .code,
        2
    );
    assert_eq!(run("roots --family E --n 2").code, 2);
    assert_eq!(run("build --family BC --n 5 --ell 4").code, 2);
}

#[test]
fn type_mismatch_is_an_error() {
    let o = run("build --family A --n 6 --ell 5 --preset symplectic:m=2");
    assert_ne!(o.code, 0);
    assert!(o.stderr.contains("type"));
}

#[test]
fn transition_skipped_for_type_d() {
    let v =
        json("verify --family D --n 7 --ell 5 --preset group_ring:m=3 --suite transition --seed 1");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "skipped"));
}
