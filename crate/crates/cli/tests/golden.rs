use std::path::Path;
use std::process::Command;

use plfeq_cli::commands::cmd_feq;
use plfeq_cli::{Config, OutputFormat};

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn json_matches_golden_files() {
    let cfg = Config { format: OutputFormat::Json, ..Config::default() };
    for (index, file) in [("1", "feq_1.json"), ("1,2", "feq_1-2.json"), ("2,1", "feq_2-1.json")] {
        let out = cmd_feq(&cfg, index, false).unwrap();
        assert!(out.success);
        assert_eq!(out.output, golden(file), "({index})");
    }
}

#[test]
fn binary_output_matches_golden_file() {
    let out = Command::new(env!("CARGO_BIN_EXE_plfeq"))
        .args(["feq", "1,2", "--format", "json"])
        .env_remove("PLFEQ_CACHE_DIR")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("feq_1-2.json"));
}
