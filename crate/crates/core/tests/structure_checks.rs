use satset_core::structure::paper_structure_checks;

#[test]
fn all_structure_checks_pass() {
    let t = std::time::Instant::now();
    let results = paper_structure_checks();
    for r in &results {
        println!("{}: {}", r.name, if r.pass { "pass" } else { "FAIL" });
    }
    println!("elapsed {:?}", t.elapsed());
    assert_eq!(results.len(), 9);
    assert!(results.iter().all(|r| r.pass));
}
