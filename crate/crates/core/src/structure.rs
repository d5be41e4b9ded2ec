//! Determinant-structure analysis of finite vector sets: volume profiles,
//! unimodularity, the ratio-2 structural hereditary-normality certificate,
//! half-coordinate classes, and a battery of exhaustive determinant sweeps
//! over the spin weight sets of `D_5` and `D_6`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{det, hnf_with_transform, solve_exact, IntVector};
use crate::rootsystem::{weyl_generators, Family, RootSystem, SignedPermutation};
use crate::saturation::{index_permutation_group, nonneg_integer_membership, VectorSet};

/// The determinant profile of a finite set: the minimal achieved nonzero
/// absolute determinant of maximal-rank subsets, and the full value set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeProfile {
    pub rank: usize,
    /// Minimal achieved nonzero absolute determinant (1 when no nonzero
    /// determinant exists).
    pub volume: BigInt,
    /// All distinct nonzero absolute determinant values.
    pub det_values: BTreeSet<BigInt>,
    /// True iff every value is a multiple of `volume`.
    pub almost_unimodular: bool,
}

impl VolumeProfile {
    /// The ratio set `K = {k : some subset has |det| = k·volume}`, defined
    /// only for almost unimodular sets.
    pub fn ratio_set(&self) -> Option<BTreeSet<BigInt>> {
        if !self.almost_unimodular {
            return None;
        }
        Some(
            self.det_values
                .iter()
                .map(|v| v / &self.volume)
                .collect(),
        )
    }
}

/// Integer coordinates of every vector of `M` in a fixed basis of its span
/// (the hnf basis), so maximal-rank sub-determinants become square integer
/// determinants.
pub fn span_coordinates(m: &VectorSet) -> Vec<IntVector> {
    let dec = hnf_with_transform(m.vectors());
    m.vectors()
        .iter()
        .map(|v| {
            IntVector::new(
                dec.basis
                    .coords_of(v)
                    .expect("set member outside its own span lattice"),
            )
        })
        .collect()
}

fn for_each_subset<F: FnMut(&[usize], &[IntVector])>(
    coords: &[IntVector],
    size: usize,
    f: &mut F,
) {
    let mut indices = Vec::with_capacity(size);
    let mut chosen: Vec<IntVector> = Vec::with_capacity(size);
    subset_rec(coords, size, 0, &mut indices, &mut chosen, f);
}

fn subset_rec<F: FnMut(&[usize], &[IntVector])>(
    coords: &[IntVector],
    size: usize,
    start: usize,
    indices: &mut Vec<usize>,
    chosen: &mut Vec<IntVector>,
    f: &mut F,
) {
    if indices.len() == size {
        f(indices, chosen);
        return;
    }
    for i in start..coords.len() {
        if coords.len() - i < size - indices.len() {
            break;
        }
        indices.push(i);
        chosen.push(coords[i].clone());
        subset_rec(coords, size, i + 1, indices, chosen, f);
        indices.pop();
        chosen.pop();
    }
}

/// Coordinates in which maximal-rank sub-determinants are evaluated: the
/// ambient standard basis for full-rank sets (so values match the usual
/// printed conventions), the span basis otherwise (so the matrices stay
/// square). The choice rescales all determinants uniformly, so
/// unimodularity and ratio questions are unaffected.
fn profile_coordinates(m: &VectorSet) -> Vec<IntVector> {
    if crate::linalg::rank(m.vectors()) == m.dim() {
        m.vectors().to_vec()
    } else {
        span_coordinates(m)
    }
}

/// Sweep all maximal-rank subsets and report the determinant profile.
pub fn volume_profile(m: &VectorSet) -> VolumeProfile {
    let coords = profile_coordinates(m);
    let d = coords.first().map(|c| c.dim()).unwrap_or(0);
    let mut values: BTreeSet<BigInt> = BTreeSet::new();
    for_each_subset(&coords, d, &mut |_, chosen| {
        let dv = det(chosen).abs();
        if !dv.is_zero() {
            values.insert(dv);
        }
    });
    let volume = values.iter().next().cloned().unwrap_or_else(BigInt::one);
    let almost_unimodular = values.iter().all(|v| (v % &volume).is_zero());
    VolumeProfile {
        rank: d,
        volume,
        det_values: values,
        almost_unimodular,
    }
}

pub fn is_unimodular(m: &VectorSet) -> bool {
    unimodular_volume(m).is_some()
}

/// The common absolute determinant when all nonzero maximal-rank
/// determinants share one value; `None` otherwise.
pub fn unimodular_volume(m: &VectorSet) -> Option<BigInt> {
    let profile = volume_profile(m);
    if profile.det_values.len() <= 1 {
        Some(profile.volume)
    } else {
        None
    }
}

/// All maximal-rank subsets achieving `|det| = volume`, as index lists in
/// lexicographic order.
pub fn primitive_subsets(m: &VectorSet) -> Vec<Vec<usize>> {
    let profile = volume_profile(m);
    let mut targets = BTreeSet::new();
    targets.insert(profile.volume);
    subsets_with_det(m, profile.rank, &targets)
}

/// All `size`-subsets whose absolute determinant (in the profile basis,
/// see `volume_profile`) lies in `targets`, in lexicographic index order.
/// Sizes other than the rank yield no square determinant and return empty.
pub fn subsets_with_det(
    m: &VectorSet,
    size: usize,
    targets: &BTreeSet<BigInt>,
) -> Vec<Vec<usize>> {
    let coords = profile_coordinates(m);
    let d = coords.first().map(|c| c.dim()).unwrap_or(0);
    if size != d {
        return Vec::new();
    }
    let mut out = Vec::new();
    for_each_subset(&coords, size, &mut |indices, chosen| {
        if targets.contains(&det(chosen).abs()) {
            out.push(indices.to_vec());
        }
    });
    out
}

/// A successful run of the ratio-2 structural hereditary-normality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralCert {
    pub volume: BigInt,
    pub bases_checked: u64,
}

/// The structural hereditary-normality checker for almost unimodular sets
/// with ratio set `{1, 2}`.
///
/// Verifies mechanically: (a) the determinant profile is `K ⊆ {1,2}` with
/// 2 achieved; (b) the given group maps `M` to itself; (c) for every
/// volume-`2m` basis and every index pair, some group element permutes the
/// spanned lines while interchanging the chosen two. Success implies
/// hereditary normality; any failed precondition returns `None`
/// (inapplicable), never a negative verdict.
pub fn structural_hn_check(
    m: &VectorSet,
    group: &[SignedPermutation],
) -> Option<StructuralCert> {
    let profile = volume_profile(m);
    if !profile.almost_unimodular {
        return None;
    }
    let ratios = profile.ratio_set()?;
    let two = BigInt::from(2);
    if !ratios.contains(&two) || ratios.iter().any(|k| !k.is_one() && k != &two) {
        return None;
    }
    let perms = index_permutation_group(m.vectors(), group, 1 << 20)?;
    // Lines: identify v with −v via the smaller index of the pair.
    let vectors = m.vectors();
    let line_of: Vec<u32> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let neg = -v;
            match vectors.binary_search(&neg) {
                Ok(j) => i.min(j) as u32,
                Err(_) => i as u32,
            }
        })
        .collect();
    let line_perms: Vec<Vec<u32>> = perms
        .iter()
        .map(|p| line_of.iter().map(|&l| line_of[p[l as usize] as usize]).collect())
        .collect();
    // All volume-2m bases, deduplicated by their line sets.
    let mut targets = BTreeSet::new();
    targets.insert(&profile.volume * &two);
    let bases = subsets_with_det(m, profile.rank, &targets);
    let bases_checked = bases.len() as u64;
    if bases_checked == 0 {
        return None;
    }
    let line_sets: BTreeSet<Vec<u32>> = bases
        .iter()
        .map(|b| {
            let mut ls: Vec<u32> = b.iter().map(|&i| line_of[i]).collect();
            ls.sort_unstable();
            ls.dedup();
            ls
        })
        .collect();
    // A basis has d distinct lines; a repeated line would mean a dependent
    // pair, contradicting the nonzero determinant.
    if line_sets.iter().any(|ls| ls.len() != profile.rank) {
        return None;
    }
    // The exchange property transfers along group images of a basis, so
    // one representative per orbit suffices.
    let mut visited: BTreeSet<Vec<u32>> = BTreeSet::new();
    for ls in &line_sets {
        if visited.contains(ls) {
            continue;
        }
        for p in &line_perms {
            let mut image: Vec<u32> = ls.iter().map(|&l| p[l as usize]).collect();
            image.sort_unstable();
            visited.insert(image);
        }
        if !exchange_property_holds(ls, &line_perms) {
            return None;
        }
    }
    Some(StructuralCert {
        volume: profile.volume,
        bases_checked,
    })
}

/// For every pair of lines in `ls`, some group element must fix `ls`
/// setwise while swapping exactly that pair.
fn exchange_property_holds(ls: &[u32], line_perms: &[Vec<u32>]) -> bool {
    let set: BTreeSet<u32> = ls.iter().copied().collect();
    for a in 0..ls.len() {
        for b in a + 1..ls.len() {
            let found = line_perms.iter().any(|p| {
                p[ls[a] as usize] == ls[b]
                    && p[ls[b] as usize] == ls[a]
                    && ls.iter().all(|&l| set.contains(&p[l as usize]))
            });
            if !found {
                return false;
            }
        }
    }
    true
}

/// The half-coordinate decomposition of `M` over a volume-`2m` basis.
#[derive(Clone, Debug)]
pub struct HalfCoordReport {
    /// For each vector of `M` (by index): the positions with coefficient
    /// `±1/2` in the basis decomposition.
    pub half_sets: Vec<(usize, Vec<usize>)>,
    /// Every coefficient lies in `{0, ±1/2, ±1}`.
    pub menu_ok: bool,
    /// All nonempty half-coordinate sets coincide.
    pub classes_coincide: bool,
}

/// Decompose every vector of `M` over the given basis (indices into `M`)
/// and report the half-coordinate index sets. The basis must achieve
/// `|det| = 2·volume`.
pub fn halfcoord_classes(m: &VectorSet, basis: &[usize]) -> HalfCoordReport {
    let coords = profile_coordinates(m);
    let d = coords.first().map(|c| c.dim()).unwrap_or(0);
    assert_eq!(basis.len(), d, "basis must have maximal rank size");
    let profile = volume_profile(m);
    let basis_vecs: Vec<IntVector> = basis.iter().map(|&i| coords[i].clone()).collect();
    let bd = det(&basis_vecs).abs();
    assert_eq!(
        bd,
        &profile.volume * 2,
        "basis determinant must be twice the volume"
    );
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut half_sets = Vec::new();
    let mut menu_ok = true;
    for (i, v) in coords.iter().enumerate() {
        let q = solve_exact(&basis_vecs, v).expect("basis must span the set");
        let mut s = Vec::new();
        for (j, c) in q.coords().iter().enumerate() {
            let a = c.abs();
            if a == half {
                s.push(j);
            } else if !a.is_zero() && !a.is_one() {
                menu_ok = false;
            }
        }
        half_sets.push((i, s));
    }
    let nonempty: Vec<&Vec<usize>> = half_sets
        .iter()
        .filter(|(_, s)| !s.is_empty())
        .map(|(_, s)| s)
        .collect();
    let classes_coincide = nonempty.windows(2).all(|w| w[0] == w[1]);
    HalfCoordReport {
        half_sets,
        menu_ok,
        classes_coincide,
    }
}

/// Signed-permutation symmetries of `M` found among the standard
/// generators: adjacent transpositions, single-coordinate sign changes,
/// and sign changes of coordinate pairs. The returned elements each map
/// `M` onto itself; their closure is a subgroup of the full stabilizer.
pub fn set_symmetries(m: &VectorSet) -> Vec<SignedPermutation> {
    let n = m.dim();
    let mut candidates = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        candidates.push(SignedPermutation {
            perm,
            flip: vec![false; n],
        });
    }
    for i in 0..n {
        let mut flip = vec![false; n];
        flip[i] = true;
        candidates.push(SignedPermutation {
            perm: (0..n).collect(),
            flip,
        });
        for j in i + 1..n {
            let mut flip = vec![false; n];
            flip[i] = true;
            flip[j] = true;
            candidates.push(SignedPermutation {
                perm: (0..n).collect(),
                flip,
            });
        }
    }
    candidates
        .into_iter()
        .filter(|g| m.vectors().iter().all(|v| m.contains(&g.apply(v))))
        .collect()
}

/// One named pass/fail result from the reference determinant sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
}

/// All `±1` vectors of dimension `n` whose number of `−1` entries has the
/// given parity.
pub fn sign_vectors(n: usize, minus_parity: usize) -> Vec<IntVector> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) % 2 != minus_parity {
            continue;
        }
        let coords: Vec<i64> = (0..n)
            .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
            .collect();
        out.push(IntVector::from_i64(&coords));
    }
    out.sort();
    out
}

/// The full orbit of an index subset under the given permutations, as
/// sorted index lists.
fn subset_orbit(indices: &[usize], perms: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut orbit = BTreeSet::new();
    for p in perms {
        let mut image: Vec<u32> = indices.iter().map(|&i| p[i]).collect();
        image.sort_unstable();
        orbit.insert(image);
    }
    orbit
}

fn indices_of(vectors: &[IntVector], rows: &[IntVector]) -> Vec<usize> {
    rows.iter()
        .map(|r| {
            vectors
                .binary_search(r)
                .expect("reference row missing from the ambient set")
        })
        .collect()
}

/// The exhaustive determinant sweeps over the spin weight sets of `D_5`
/// and `D_6` that replace the computer-algebra steps of the source
/// classification, reported as named pass/fail results.
pub fn paper_structure_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();

    // Dimension-4 hypercube profile: 16 vectors (±1)^4, |det| ∈ {8, 16}.
    {
        let mut vecs = sign_vectors(4, 0);
        vecs.extend(sign_vectors(4, 1));
        let m = VectorSet::new(4, vecs);
        let p = volume_profile(&m);
        let expect: BTreeSet<BigInt> = [8, 16].iter().map(|&k| BigInt::from(k)).collect();
        out.push(CheckResult {
            name: "hypercube4-det-profile-8-16",
            pass: p.almost_unimodular && p.volume == BigInt::from(8) && p.det_values == expect,
        });
    }

    // D_5 spin set: 16 vectors (±1)^5 with an even number of minuses.
    let d5 = VectorSet::new(5, sign_vectors(5, 0));
    let d5_vecs = d5.vectors().to_vec();
    let d5_group = index_permutation_group(
        &d5_vecs,
        &weyl_generators(RootSystem::new(Family::D, 5)),
        1 << 20,
    )
    .expect("the Weyl group preserves its own weight set");

    {
        let p = volume_profile(&d5);
        let expect: BTreeSet<BigInt> =
            [16, 32, 48].iter().map(|&k| BigInt::from(k)).collect();
        out.push(CheckResult {
            name: "d5-spin-det-profile-16-32-48",
            pass: p.almost_unimodular && p.volume == BigInt::from(16) && p.det_values == expect,
        });
    }

    // Short-diagonal bound: any 5-subset containing a pair with scalar
    // product −3 has |det| < 48.
    {
        let coords: Vec<IntVector> = d5_vecs.clone();
        let minus3 = BigInt::from(-3);
        let mut pass = true;
        for_each_subset(&coords, 5, &mut |_, chosen| {
            let has_pair = (0..5).any(|i| {
                (i + 1..5).any(|j| chosen[i].dot(&chosen[j]) == minus3)
            });
            if has_pair && det(chosen).abs() >= BigInt::from(48) {
                pass = false;
            }
        });
        out.push(CheckResult {
            name: "d5-dot-minus3-excludes-det-48",
            pass,
        });
    }

    // Uniqueness of the |det| = 48 configuration up to the Weyl action.
    let printed48 = [
        [1i64, 1, 1, 1, 1],
        [-1, -1, 1, 1, 1],
        [-1, 1, -1, 1, 1],
        [-1, 1, 1, -1, 1],
        [-1, 1, 1, 1, -1],
    ];
    {
        let rows: Vec<IntVector> = printed48.iter().map(|r| IntVector::from_i64(r)).collect();
        let reference_orbit = subset_orbit(&indices_of(&d5_vecs, &rows), &d5_group);
        let mut pass = true;
        let mut found_any = false;
        for_each_subset(&d5_vecs, 5, &mut |indices, chosen| {
            if det(chosen).abs() == BigInt::from(48) {
                found_any = true;
                let key: Vec<u32> = indices.iter().map(|&i| i as u32).collect();
                if !reference_orbit.contains(&key) {
                    pass = false;
                }
            }
        });
        out.push(CheckResult {
            name: "d5-det-48-configuration-unique",
            pass: pass && found_any,
        });
    }

    // Nonexistence sweep 1: no (w1..w6) with det(w1..w5) = ±2m,
    // det(w5,w2,w3,w4,w6) = ∓2m, det(w1..w4,w6) = ±m.
    {
        let m16 = BigInt::from(16);
        let m32 = BigInt::from(32);
        let n = d5_vecs.len();
        let mut pass = true;
        // The three middle vectors enter every determinant; permuting them
        // flips all three signs together, so a fixed order suffices.
        for_each_subset(&d5_vecs, 3, &mut |core_idx, core| {
            let rest: Vec<usize> = (0..n).filter(|i| !core_idx.contains(i)).collect();
            // f(a, b) = det(a, core, b)
            let f = |a: usize, b: usize| -> BigInt {
                let rows = vec![
                    d5_vecs[a].clone(),
                    core[0].clone(),
                    core[1].clone(),
                    core[2].clone(),
                    d5_vecs[b].clone(),
                ];
                det(&rows)
            };
            for &w1 in &rest {
                for &w5 in &rest {
                    if w5 == w1 {
                        continue;
                    }
                    let d15 = f(w1, w5);
                    if d15.abs() != m32 {
                        continue;
                    }
                    for &w6 in &rest {
                        if w6 == w1 || w6 == w5 {
                            continue;
                        }
                        let d56 = f(w5, w6);
                        if d56.abs() != m32 || d56.is_positive() == d15.is_positive() {
                            continue;
                        }
                        if f(w1, w6).abs() == m16 {
                            pass = false;
                        }
                    }
                }
            }
        });
        out.push(CheckResult {
            name: "d5-no-opposite-2m-pair-with-m-cross",
            pass,
        });
    }

    // Nonexistence sweep 2: no (w1..w6) with det(w1..w5) = −2m and
    // det(w1..w4,w6) = −3m. Reordering w1..w4 flips both signs together,
    // so the check reduces to: no 4-subset has a same-sign value pair
    // {2m·s, 3m·s} of its bordered determinant.
    {
        let m32 = BigInt::from(32);
        let m48 = BigInt::from(48);
        let n = d5_vecs.len();
        let mut pass = true;
        for_each_subset(&d5_vecs, 4, &mut |core_idx, core| {
            let mut values: Vec<BigInt> = Vec::new();
            for i in 0..n {
                if core_idx.contains(&i) {
                    continue;
                }
                let mut rows = core.to_vec();
                rows.push(d5_vecs[i].clone());
                values.push(det(&rows));
            }
            for s in [1i64, -1] {
                let t2 = &m32 * s;
                let t3 = &m48 * s;
                if values.contains(&t2) && values.contains(&t3) {
                    pass = false;
                }
            }
        });
        out.push(CheckResult {
            name: "d5-no-same-sign-2m-3m-pair",
            pass,
        });
    }

    // Recombination identities for v0 = (−1,1,1,1,1), plus membership of
    // v0 in Z≥0(v1..v5, v6) for every sixth vector.
    {
        let v0 = IntVector::from_i64(&[-1, 1, 1, 1, 1]);
        let sum = |rows: &[[i64; 5]]| -> IntVector {
            let mut acc = IntVector::zero(5);
            for r in rows {
                acc = &acc + &IntVector::from_i64(r);
            }
            acc
        };
        let ia = sum(&[[1, 1, 1, -1, -1], [-1, -1, 1, 1, 1], [-1, 1, -1, 1, 1]]);
        let ib = {
            let mut acc = IntVector::from_i64(&[1, -1, -1, -1, -1]).scaled(&BigInt::from(2));
            for r in [
                [1i64, 1, 1, 1, 1],
                [-1, -1, 1, 1, 1],
                [-1, 1, -1, 1, 1],
                [-1, 1, 1, -1, 1],
                [-1, 1, 1, 1, -1],
            ] {
                acc = &acc + &IntVector::from_i64(&r);
            }
            acc
        };
        let ic = sum(&[[-1, -1, -1, -1, 1], [1, 1, 1, 1, 1], [-1, 1, 1, 1, -1]]);
        let identities = ia == v0 && ib == v0 && ic == v0;

        let base: Vec<IntVector> = printed48.iter().map(|r| IntVector::from_i64(r)).collect();
        let members_ok = d5_vecs
            .iter()
            .filter(|v| !base.contains(v))
            .all(|v6| {
                let mut gens = base.clone();
                gens.push(v6.clone());
                nonneg_integer_membership(&gens, &v0).is_some()
            });
        out.push(CheckResult {
            name: "d5-recombination-identities-and-membership",
            pass: identities && members_ok,
        });
    }

    // D_6 spin set profile: m = 64, values {64, 128}.
    let d6 = VectorSet::new(6, sign_vectors(6, 0));
    {
        let p = volume_profile(&d6);
        let expect: BTreeSet<BigInt> = [64, 128].iter().map(|&k| BigInt::from(k)).collect();
        out.push(CheckResult {
            name: "d6-spin-det-profile-64-128",
            pass: p.almost_unimodular && p.volume == BigInt::from(64) && p.det_values == expect,
        });
    }

    // Uniqueness of the |det| = 128 line configuration, checked in the
    // odd-minus-count copy of the set (where the printed matrix lives;
    // negating one coordinate maps the even copy onto it).
    {
        let odd = sign_vectors(6, 1);
        let group = index_permutation_group(
            &odd,
            &weyl_generators(RootSystem::new(Family::D, 6)),
            1 << 20,
        )
        .expect("the Weyl group preserves the odd sign set");
        // One representative per line ±v: the lexicographically larger.
        let line_rep_indices: Vec<usize> = odd
            .iter()
            .enumerate()
            .filter(|(_, v)| {
                let neg = -*v;
                *v > &neg
            })
            .map(|(i, _)| i)
            .collect();
        let line_of: Vec<u32> = odd
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let neg = -v;
                let j = odd.binary_search(&neg).expect("odd set is symmetric");
                i.min(j) as u32
            })
            .collect();
        let printed: Vec<IntVector> = (0..6)
            .map(|i| {
                let mut r = [1i64; 6];
                r[i] = -1;
                IntVector::from_i64(&r)
            })
            .collect();
        // All group images of the printed line configuration.
        let reference_indices = indices_of(&odd, &printed);
        let mut reference_orbit: BTreeSet<Vec<u32>> = BTreeSet::new();
        for p in &group {
            let mut image: Vec<u32> = reference_indices
                .iter()
                .map(|&i| line_of[p[i] as usize])
                .collect();
            image.sort_unstable();
            reference_orbit.insert(image);
        }
        let reps: Vec<IntVector> = line_rep_indices.iter().map(|&i| odd[i].clone()).collect();
        let mut pass = true;
        let mut found_any = false;
        for_each_subset(&reps, 6, &mut |indices, chosen| {
            if det(chosen).abs() == BigInt::from(128) {
                found_any = true;
                let mut lines: Vec<u32> = indices
                    .iter()
                    .map(|&i| line_of[line_rep_indices[i]])
                    .collect();
                lines.sort_unstable();
                if !reference_orbit.contains(&lines) {
                    pass = false;
                }
            }
        });
        out.push(CheckResult {
            name: "d6-det-128-line-configuration-unique",
            pass: pass && found_any,
        });
    }

    out
}
