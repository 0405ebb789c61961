use parahecke::par::Execution;
use parahecke::verify;

#[test]
fn acceptance() {
    let reports = verify::run_all(Execution::default());
    for r in &reports {
        println!("{}", r.line());
    }
    let failed: Vec<u32> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
