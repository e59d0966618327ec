use std::fs;
use std::path::PathBuf;

use rbsep::io::{emit_instance, emit_s2ths, emit_solution, parse_instance, parse_s2ths, parse_solution};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(PathBuf, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn instance_seeds_round_trip() {
    let mut parsed = 0;
    for (path, text) in seeds("parse_instance") {
        if let Ok(inst) = parse_instance(&text) {
            assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst, "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn solution_seeds_round_trip() {
    let mut parsed = 0;
    for (path, text) in seeds("parse_solution") {
        if let Ok(lines) = parse_solution(&text) {
            assert_eq!(parse_solution(&emit_solution(&lines, "seed")).unwrap(), lines, "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn s2ths_seeds_round_trip() {
    let mut parsed = 0;
    for (path, text) in seeds("parse_s2ths") {
        if let Ok(inst) = parse_s2ths(&text) {
            assert_eq!(parse_s2ths(&emit_s2ths(&inst)).unwrap(), inst, "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}
