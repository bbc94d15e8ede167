use ordspace::suites::{run_suite, SUITES};

#[test]
fn every_suite_passes_on_seed_zero() {
    for name in SUITES {
        let start = std::time::Instant::now();
        let report = run_suite(name, 0, 200).unwrap();
        println!("{name}: {:?}", start.elapsed());
        for p in &report.properties {
            println!("  {} {}/{} {:?}", p.name, p.violations, p.instances, p.first_violation);
        }
        assert!(report.passed(), "{name}");
    }
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(run_suite("nope", 0, 200).is_err());
}
