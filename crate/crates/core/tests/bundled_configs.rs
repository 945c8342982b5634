use std::path::PathBuf;

use hyponormal::config::{parse_config, EXPERIMENTS};
use hyponormal::run_experiment;

fn config_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs")
}

#[test]
fn every_experiment_has_a_bundled_config() {
    for (name, _) in EXPERIMENTS {
        let path = config_dir().join(format!("{name}.json"));
        let config = parse_config(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(config.experiment, *name);
    }
}

#[test]
fn bundled_configs_pass_and_are_deterministic() {
    let mut paths: Vec<_> = std::fs::read_dir(config_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    assert!(paths.len() >= EXPERIMENTS.len());
    for path in paths {
        let config = parse_config(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let first = run_experiment(&config);
        let second = run_experiment(&config);
        assert!(
            first.all_pass,
            "{}: {:?}",
            path.display(),
            first.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        assert_eq!(first.canonical_json(), second.canonical_json(), "{}", path.display());
    }
}
