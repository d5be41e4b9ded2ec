//! Acceptance suite. Each test covers one criterion and prints a single
//! pass/fail line; a failed assertion marks the criterion failed.
//!
//! 1. The height-8 classification scan over B2-5, C3-5, D4-7 reproduces
//!    the table of normal cases with zero discrepancies.
//! 2. Every counterexample template verifies at its representative ranks,
//!    including the stated discriminator and per-vector membership.
//! 3. The exhaustive strategy certifies the small normal cases.
//! 4. The unimodular/structural strategies certify the larger normal
//!    cases without exhaustive search.
//! 5. Determinant profiles of the distinguished sets match.
//! 6. The structural sweep checks all pass.
//! 7. Property suites: oracle agreement, invariances, monotonicity,
//!    orbit laws, certificate round-trips.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use satset::formats::CertificateDoc;
use satset::template_check;
use satset_core::certify::HnCertificate;
use satset_core::classify::theorem1_scan;
use satset_core::counterexamples::ALL_TEMPLATES;
use satset_core::linalg::IntVector;
use satset_core::rootsystem::{
    dominant_rep, in_weight_set, is_dominant, weight_set, weyl_generators, Family, RootSystem,
    Weight,
};
use satset_core::saturation::{
    is_hereditarily_normal, is_saturated, HnMethod, HnOutcome, Strategy, VectorSet, DEFAULT_BUDGET,
};
use satset_core::structure::{paper_structure_checks, volume_profile};

fn report(criterion: u32, what: &str, pass: bool) {
    println!(
        "criterion {} ({}): {}",
        criterion,
        what,
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "criterion {} failed: {}", criterion, what);
}

fn canonical_set(rs: RootSystem, lambda: &Weight) -> VectorSet {
    let ws = weight_set(rs, lambda);
    let (_, vectors) = ws.canonical_vectors();
    VectorSet::new(rs.n, vectors)
}

#[test]
fn criterion_1_table_scan() {
    let mut clean = true;
    for (family, lo, hi) in [(Family::B, 2, 5), (Family::C, 3, 5), (Family::D, 4, 7)] {
        for n in lo..=hi {
            let outcome = theorem1_scan(RootSystem::new(family, n), 8);
            if !outcome.discrepancies.is_empty() {
                eprintln!("discrepancies in {:?}{}: {:?}", family, n, outcome.discrepancies);
                clean = false;
            }
        }
    }
    report(1, "height-8 scan reproduces the table", clean);
}

#[test]
fn criterion_2_counterexample_templates() {
    let mut all = true;
    for &t in &ALL_TEMPLATES {
        for n in t.representative_ranks() {
            if !template_check(t, n) {
                eprintln!("template {} fails at rank {}", t.name(), n);
                all = false;
            }
        }
    }
    report(2, "all counterexample templates verify", all);
}

#[test]
fn criterion_3_exhaustive_positives() {
    let cases: [(Family, usize, &[i64]); 6] = [
        (Family::B, 2, &[1, 1]),
        (Family::B, 2, &[2, 2]),
        (Family::B, 3, &[1, 1, 1]),
        (Family::C, 3, &[2, 2, 0]),
        (Family::D, 5, &[1, 1, 1, 1, 1]),
        (Family::D, 5, &[1, 1, 1, 1, -1]),
    ];
    let mut all = true;
    for (family, n, doubled) in cases {
        let rs = RootSystem::new(family, n);
        let lambda = Weight::from_doubled_i64(doubled);
        let m = canonical_set(rs, &lambda);
        let gens = weyl_generators(rs);
        let out = is_hereditarily_normal(&m, Strategy::Exhaustive, Some(&gens), DEFAULT_BUDGET)
            .expect("exhaustive strategy is always applicable");
        let ok = matches!(out, HnOutcome::Normal(HnMethod::Exhaustive { .. }));
        if !ok {
            eprintln!("exhaustive check failed for {:?}{} {:?}", family, n, doubled);
            all = false;
        }
    }
    report(3, "exhaustive strategy certifies the small normal cases", all);
}

#[test]
fn criterion_4_structural_positives() {
    let cases: [(Family, usize, &[i64]); 7] = [
        (Family::B, 4, &[1, 1, 1, 1]),
        (Family::C, 4, &[2, 2, 0, 0]),
        (Family::D, 4, &[2, 2, 0, 0]),
        (Family::D, 4, &[1, 1, 1, 1]),
        (Family::D, 4, &[1, 1, 1, -1]),
        (Family::D, 6, &[1, 1, 1, 1, 1, 1]),
        (Family::D, 6, &[1, 1, 1, 1, 1, -1]),
    ];
    let mut all = true;
    for (family, n, doubled) in cases {
        let rs = RootSystem::new(family, n);
        let lambda = Weight::from_doubled_i64(doubled);
        let m = canonical_set(rs, &lambda);
        let gens = weyl_generators(rs);
        let out = is_hereditarily_normal(&m, Strategy::Auto, Some(&gens), DEFAULT_BUDGET)
            .expect("auto strategy is always applicable");
        let ok = matches!(
            out,
            HnOutcome::Normal(HnMethod::Unimodular { .. })
                | HnOutcome::Normal(HnMethod::Ratio2Structural { .. })
        );
        if !ok {
            eprintln!("structural check failed for {:?}{} {:?}", family, n, doubled);
            all = false;
        }
    }
    report(4, "unimodular/structural strategies certify the larger normal cases", all);
}

#[test]
fn criterion_5_determinant_profiles() {
    let expect = |vals: &[i64]| -> BTreeSet<BigInt> {
        vals.iter().map(|&v| BigInt::from(v)).collect()
    };
    let cases: [(Family, usize, &[i64], &[i64]); 4] = [
        (Family::B, 4, &[1, 1, 1, 1], &[8, 16]),
        (Family::D, 5, &[1, 1, 1, 1, 1], &[16, 32, 48]),
        (Family::D, 5, &[1, 1, 1, 1, -1], &[16, 32, 48]),
        (Family::D, 6, &[1, 1, 1, 1, 1, 1], &[64, 128]),
    ];
    let mut all = true;
    for (family, n, doubled, dets) in cases {
        let rs = RootSystem::new(family, n);
        let lambda = Weight::from_doubled_i64(doubled);
        let profile = volume_profile(&canonical_set(rs, &lambda));
        if profile.det_values != expect(dets) {
            eprintln!(
                "profile mismatch for {:?}{} {:?}: {:?}",
                family, n, doubled, profile.det_values
            );
            all = false;
        }
    }
    report(5, "determinant profiles match", all);
}

#[test]
fn criterion_6_structural_sweeps() {
    let mut all = true;
    for r in paper_structure_checks() {
        if !r.pass {
            eprintln!("sweep {} fails", r.name);
            all = false;
        }
    }
    report(6, "structural sweep checks pass", all);
}

// ---------------------------------------------------------------------
// Criterion 7: property suites with an independent brute-force oracle.
// ---------------------------------------------------------------------

/// Deterministic linear congruential generator so runs are reproducible.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// A random set with dimension <= 3, at most 5 vectors, entries in [-2, 2].
fn random_small_set(rng: &mut Lcg) -> VectorSet {
    let d = 1 + rng.below(3) as usize;
    let m = 1 + rng.below(5) as usize;
    let vectors: Vec<IntVector> = (0..m)
        .map(|_| IntVector::from_i64(&(0..d).map(|_| rng.range(-2, 2)).collect::<Vec<_>>()))
        .collect();
    VectorSet::new(d, vectors)
}

fn small_coords(v: &IntVector) -> Vec<i64> {
    v.coords()
        .iter()
        .map(|c| i64::try_from(c).expect("oracle sets have small entries"))
        .collect()
}

/// Breadth-first closure of 0 under adding generators (and subtracting
/// them when `signed`), truncated to the max-norm ball of `radius`.
///
/// Soundness of the truncation: by the Steinitz rearrangement lemma any
/// integer combination reaching a point x can be reordered so every
/// partial sum stays within |x| + d * max|v| in max norm. Here candidate
/// points have |x| <= 6, d <= 3 and max|v| <= 2, so radius 16 loses
/// nothing.
fn bfs_closure(gens: &[Vec<i64>], signed: bool, radius: i64) -> HashSet<Vec<i64>> {
    let d = gens.first().map(|g| g.len()).unwrap_or(0);
    let mut seen = HashSet::new();
    let mut queue = vec![vec![0i64; d]];
    seen.insert(vec![0i64; d]);
    while let Some(x) = queue.pop() {
        for g in gens {
            let signs: &[i64] = if signed { &[1, -1] } else { &[1] };
            for &s in signs {
                let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a + s * b).collect();
                if y.iter().all(|c| c.abs() <= radius) && seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
    }
    seen
}

/// Exact Gaussian elimination: does `x` have a representation over the
/// columns `cols` with all coefficients >= 0? Only called with at most
/// `d` columns, per Caratheodory.
fn nonneg_solution(cols: &[&Vec<i64>], x: &[i64]) -> bool {
    let d = x.len();
    let k = cols.len();
    if k == 0 {
        return x.iter().all(|&c| c == 0);
    }
    // Augmented matrix rows: d rows, k + 1 columns.
    let mut a: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            (0..=k)
                .map(|j| {
                    let v = if j < k { cols[j][i] } else { x[i] };
                    BigRational::from(BigInt::from(v))
                })
                .collect()
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..d).find(|&r| !a[r][col].is_zero()) else {
            // Dependent columns: skip this subset, an independent one
            // covers the same cone point.
            return false;
        };
        a.swap(row, p);
        let inv = a[row][col].clone();
        for j in col..=k {
            a[row][j] = &a[row][j] / &inv;
        }
        for r in 0..d {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in col..=k {
                    a[r][j] = &a[r][j] - &factor * &a[row][j];
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // Consistency: rows below the pivots must have zero right-hand side.
    if (row..d).any(|r| !a[r][k].is_zero()) {
        return false;
    }
    pivot_rows.iter().all(|&r| !a[r][k].is_negative())
}

/// Is `x` in the rational cone spanned by `gens`? Caratheodory: check
/// every independent subset of size at most the dimension.
fn in_cone(gens: &[Vec<i64>], x: &[i64]) -> bool {
    let d = x.len();
    if x.iter().all(|&c| c == 0) {
        return true;
    }
    let n = gens.len();
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) > d {
            continue;
        }
        let cols: Vec<&Vec<i64>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &gens[i]).collect();
        if nonneg_solution(&cols, x) {
            return true;
        }
    }
    false
}

/// Independent saturation oracle: a set is saturated iff every point of
/// the candidate box that lies in both the generated lattice and the
/// rational cone is reachable by nonnegative integer combinations.
/// Candidates with max norm up to 6 suffice: any failure is witnessed by
/// a parallelepiped point v0 = sum q_i v_i with q_i in [0,1) over at most
/// d <= 3 independent generators of max norm <= 2.
fn oracle_saturated(m: &VectorSet) -> bool {
    let gens: Vec<Vec<i64>> = m.vectors().iter().map(small_coords).collect();
    let d = m.dim();
    let lattice = bfs_closure(&gens, true, 16);
    let reachable = bfs_closure(&gens, false, 16);
    let mut x = vec![-6i64; d];
    loop {
        if lattice.contains(&x) && in_cone(&gens, &x) && !reachable.contains(&x) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == d {
                return true;
            }
            if x[i] < 6 {
                x[i] += 1;
                break;
            }
            x[i] = -6;
            i += 1;
        }
    }
}

#[test]
fn criterion_7a_oracle_agreement() {
    let mut rng = Lcg(0x5eed_0001);
    let mut checked = 0;
    while checked < 500 {
        let set = random_small_set(&mut rng);
        if set.is_empty() {
            continue;
        }
        let engine = is_saturated(&set).is_none();
        let oracle = oracle_saturated(&set);
        assert_eq!(
            engine,
            oracle,
            "oracle disagreement on {:?}",
            set.vectors()
        );
        checked += 1;
    }
    report(7, "engine agrees with the brute-force oracle on 500 sets", true);
}

/// A random unimodular matrix as a short product of elementary moves.
fn random_unimodular(rng: &mut Lcg, d: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..6 {
        match rng.below(3) {
            0 => {
                let i = rng.below(d as u64) as usize;
                let j = rng.below(d as u64) as usize;
                u.swap(i, j);
            }
            1 => {
                let i = rng.below(d as u64) as usize;
                for c in &mut u[i] {
                    *c = -*c;
                }
            }
            _ => {
                let i = rng.below(d as u64) as usize;
                let j = rng.below(d as u64) as usize;
                if i != j {
                    let row_j = u[j].clone();
                    for (a, b) in u[i].iter_mut().zip(&row_j) {
                        *a += b;
                    }
                }
            }
        }
    }
    u
}

fn transform(set: &VectorSet, f: impl Fn(&[i64]) -> Vec<i64>, dim: usize) -> VectorSet {
    let vectors: Vec<IntVector> = set
        .vectors()
        .iter()
        .map(|v| IntVector::from_i64(&f(&small_coords(v))))
        .collect();
    VectorSet::new(dim, vectors)
}

#[test]
fn criterion_7b_saturation_invariances() {
    let mut rng = Lcg(0x5eed_0002);
    let mut checked = 0;
    while checked < 200 {
        let set = random_small_set(&mut rng);
        if set.is_empty() {
            continue;
        }
        let d = set.dim();
        let verdict = is_saturated(&set).is_none();

        let negated = transform(&set, |v| v.iter().map(|&c| -c).collect(), d);
        assert_eq!(verdict, is_saturated(&negated).is_none(), "negation invariance");

        let u = random_unimodular(&mut rng, d);
        let mapped = transform(
            &set,
            |v| u.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect(),
            d,
        );
        assert_eq!(
            verdict,
            is_saturated(&mapped).is_none(),
            "unimodular invariance on {:?} via {:?}",
            set.vectors(),
            u
        );

        let padded = transform(
            &set,
            |v| {
                let mut w = v.to_vec();
                w.push(0);
                w
            },
            d + 1,
        );
        assert_eq!(verdict, is_saturated(&padded).is_none(), "padding invariance");

        let k = rng.range(2, 3);
        let scaled = transform(&set, |v| v.iter().map(|&c| k * c).collect(), d);
        assert_eq!(verdict, is_saturated(&scaled).is_none(), "scaling invariance");

        checked += 1;
    }
    report(7, "saturation verdicts survive 200 rounds of the four invariances", true);
}

fn random_system(rng: &mut Lcg) -> RootSystem {
    match rng.below(3) {
        0 => RootSystem::new(Family::B, 2 + rng.below(2) as usize),
        1 => RootSystem::new(Family::C, 3),
        _ => RootSystem::new(Family::D, 4),
    }
}

/// A random nonzero dominant weight of small height for `rs`.
fn random_dominant(rng: &mut Lcg, rs: RootSystem) -> Weight {
    loop {
        let parity = match rs.family {
            Family::C => 0,
            _ => rng.below(2) as i64,
        };
        let mut doubled: Vec<i64> = (0..rs.n)
            .map(|_| 2 * rng.range(0, 2) + parity)
            .collect();
        doubled.sort_unstable_by(|a, b| b.cmp(a));
        if rs.family == Family::D && rng.below(2) == 1 {
            let last = doubled.last_mut().expect("rank is positive");
            *last = -*last;
        }
        let w = Weight::from_doubled_i64(&doubled);
        if !w.is_zero() {
            debug_assert!(is_dominant(rs, &w));
            return w;
        }
    }
}

#[test]
fn criterion_7c_weight_set_monotonicity() {
    let mut rng = Lcg(0x5eed_0003);
    for _ in 0..100 {
        let rs = random_system(&mut rng);
        let lambda = random_dominant(&mut rng, rs);
        let ws = weight_set(rs, &lambda);
        let mu = &ws.members[rng.below(ws.members.len() as u64) as usize];
        let sub_lambda = dominant_rep(rs, mu);
        let inner = weight_set(rs, &sub_lambda);
        for nu in &inner.members {
            assert!(
                in_weight_set(rs, &lambda, nu),
                "M({:?}) not contained in M({:?}) at {:?} in {:?}{}",
                sub_lambda,
                lambda,
                nu,
                rs.family,
                rs.n
            );
        }
    }
    report(7, "dominant-subweight sets are contained in the parent set (100 pairs)", true);
}

#[test]
fn criterion_7d_orbit_laws() {
    let mut rng = Lcg(0x5eed_0004);
    for round in 0..200 {
        let rs = random_system(&mut rng);
        let parity = match rs.family {
            Family::C => 0,
            _ => rng.below(2) as i64,
        };
        let doubled: Vec<i64> = (0..rs.n).map(|_| 2 * rng.range(-2, 2) + parity).collect();
        let w = Weight::from_doubled_i64(&doubled);
        let rep = dominant_rep(rs, &w);
        assert!(is_dominant(rs, &rep), "dominant_rep lands in the dominant cone");
        assert_eq!(rep, dominant_rep(rs, &rep), "dominant_rep is idempotent");
        for g in weyl_generators(rs) {
            let moved = Weight::new(g.apply(w.doubled()));
            assert_eq!(
                rep,
                dominant_rep(rs, &moved),
                "dominant_rep is constant on the orbit"
            );
        }
        // Every tenth round: the full weight set is closed under the
        // generators.
        if round % 10 == 0 {
            let lambda = random_dominant(&mut rng, rs);
            let ws = weight_set(rs, &lambda);
            for g in weyl_generators(rs) {
                for mu in &ws.members {
                    let moved = Weight::new(g.apply(mu.doubled()));
                    assert!(
                        in_weight_set(rs, &lambda, &moved),
                        "weight set closed under {:?} in {:?}{}",
                        g,
                        rs.family,
                        rs.n
                    );
                }
            }
        }
    }
    report(7, "Weyl-orbit laws hold over 200 rounds", true);
}

#[test]
fn criterion_7e_certificate_round_trip() {
    // Every counterexample certificate survives JSON round-trips
    // byte-identically, through both the document and the typed form.
    for &t in &ALL_TEMPLATES {
        for n in t.representative_ranks() {
            let cert = t.instantiate(n, &t.default_tail(n));
            let doc = CertificateDoc::from_nss(&cert).expect("template fits the file format");
            let json = doc.to_canonical_json();
            let reparsed = CertificateDoc::from_json(&json).expect("canonical json parses");
            assert_eq!(json, reparsed.to_canonical_json(), "document round-trip");
            let typed = reparsed.to_nss().expect("document converts back");
            let again = CertificateDoc::from_nss(&typed).expect("typed form re-serializes");
            assert_eq!(json, again.to_canonical_json(), "typed round-trip");
        }
    }
    // Positive certificates of each method shape round-trip too.
    let gens = weyl_generators(RootSystem::new(Family::D, 4));
    let samples = [
        HnCertificate::Unimodular {
            volume: BigInt::from(1),
        },
        HnCertificate::Ratio2Structural {
            volume: BigInt::from(8),
            bases_checked: 12,
            group: gens,
        },
        HnCertificate::Exhaustive {
            subsets_examined: 149,
        },
    ];
    for cert in &samples {
        let doc = CertificateDoc::from_hn("round-trip sample", cert).expect("fits the format");
        let json = doc.to_canonical_json();
        let reparsed = CertificateDoc::from_json(&json).expect("canonical json parses");
        assert_eq!(json, reparsed.to_canonical_json(), "document round-trip");
        let typed = reparsed.to_hn().expect("document converts back");
        let again = CertificateDoc::from_hn("round-trip sample", &typed).expect("re-serializes");
        assert_eq!(json, again.to_canonical_json(), "typed round-trip");
    }
    report(7, "certificates round-trip byte-identically", true);
}
