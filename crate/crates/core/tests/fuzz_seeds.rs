//! Runs the checked-in fuzz corpus through the same checks as the fuzz
//! targets, so the seeds stay meaningful on a stable toolchain.

use std::fs;
use std::path::PathBuf;

use slidecube::format::{parse_config, parse_trace, write_config, write_trace};
use slidecube::kinematics::{reverse_trace, validate_trace};
use slidecube::Trace;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (
                path.display().to_string(),
                fs::read_to_string(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn config_seeds_roundtrip() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_config") {
        if let Ok(c) = parse_config(&text) {
            assert_eq!(parse_config(&write_config(&c)).unwrap(), c, "{name}");
            let _ = c.outer_boundary();
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn trace_seeds_roundtrip() {
    for (name, text) in seeds("parse_trace") {
        if let Ok(f) = parse_trace(&text) {
            assert_eq!(
                parse_trace(&write_trace(f.dim, &f.moves)).unwrap(),
                f,
                "{name}"
            );
            for m in &f.moves {
                m.reversed().check_shape().unwrap();
            }
        }
    }
}

#[test]
fn replay_seeds() {
    let mut replayed = 0;
    for (name, text) in seeds("replay_trace") {
        let (cfg, trace) = text.split_once("\n---\n").expect(&name);
        let initial = parse_config(cfg).unwrap();
        let file = parse_trace(trace).unwrap();
        let trace = Trace::new(initial, file.moves);
        if let Ok(end) = validate_trace(&trace) {
            let back = reverse_trace(&trace, &end).unwrap();
            assert_eq!(validate_trace(&back).unwrap(), trace.initial, "{name}");
            replayed += 1;
        }
    }
    assert!(replayed >= 2);
}
