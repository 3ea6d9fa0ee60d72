use discrete_jordan::accept::{run_with, AcceptConfig};

#[test]
fn all_criteria() {
    let results = run_with(&AcceptConfig::default(), |r| println!("{r}"));
    assert_eq!(results.len(), 10);
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn injected_fault_is_caught() {
    let cfg = AcceptConfig {
        polygons: 3,
        samples: 10,
        repetitions: 1,
        mutate_veblen: true,
        ..AcceptConfig::default()
    };
    let results = run_with(&cfg, |_| {});
    let sep = results.iter().find(|r| r.id == 4).unwrap();
    assert!(!sep.passed, "{sep}");
}
