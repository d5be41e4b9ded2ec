use satset_core::classify::theorem1_scan;
use satset_core::rootsystem::{Family, RootSystem};

#[test]
fn full_scan_height_8() {
    let ranges = [
        (Family::B, 2..=5),
        (Family::C, 3..=5),
        (Family::D, 4..=7),
    ];
    for (fam, ranks) in ranges {
        for n in ranks {
            let t = std::time::Instant::now();
            let o = theorem1_scan(RootSystem::new(fam, n), 8);
            println!(
                "{:?}{}: {} weights, {} discrepancies, {:?}",
                fam, n, o.records.len(), o.discrepancies.len(), t.elapsed()
            );
            assert!(o.discrepancies.is_empty(), "{:?}{} {:?}", fam, n, o.discrepancies);
        }
    }
}
