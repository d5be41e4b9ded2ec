//! Exact decision procedures: nonnegative-integer membership in a finitely
//! generated semigroup, saturation of a finite vector set, ENSS witness
//! search, and hereditary normality.
//!
//! A set `M` is *saturated* when `Z≥0(M) = Z(M) ∩ Q≥0(M)`, and
//! *hereditarily normal* when every subset is saturated. A failure is
//! witnessed by an ENSS: a vector `v0` in the lattice-cone intersection
//! that is not a nonnegative integer combination of `M`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{
    annihilator, cone_membership, hnf, hnf_with_transform, parallelepiped_points,
    positive_functional, rank, IntVector, LatticeBasis, RationalVector,
};
use crate::rootsystem::SignedPermutation;

/// A finite set of distinct nonzero integer vectors. Zero vectors are
/// stripped and duplicates collapsed on construction; the stored order is
/// sorted, which fixes the enumeration order of every search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSet {
    dim: usize,
    vectors: Vec<IntVector>,
}

impl VectorSet {
    pub fn new(dim: usize, vectors: impl IntoIterator<Item = IntVector>) -> VectorSet {
        let set: BTreeSet<IntVector> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.dim(), dim, "mixed dimensions in VectorSet"))
            .filter(|v| !v.is_zero())
            .collect();
        VectorSet {
            dim,
            vectors: set.into_iter().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.vectors.binary_search(v).is_ok()
    }
}

/// A verified non-saturation witness: `v0 = Σ q_i·indep_i` with
/// `q_i ∈ [0,1)` over a linearly independent subset, `v0 = Σ z_j·set_j`
/// over the integers, and `v0 ∉ Z≥0(set)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnssWitness {
    pub set: Vec<IntVector>,
    pub indep_indices: Vec<usize>,
    pub v0: IntVector,
    pub q: RationalVector,
    pub z: Vec<BigInt>,
}

/// Reusable decision context for `v ∈ Z≥0(gens)` queries against a fixed
/// generator list.
///
/// The cone of a weight set is usually not pointed (such sets contain `v`
/// and `−v`), so a direct coefficient bound does not exist. The context
/// splits the generators into *units* (those whose negative lies in the
/// rational cone, hence in the semigroup) and the rest, solves the pointed
/// quotient problem by bounded depth-first search, and converts unit
/// coefficients back to nonnegative ones afterwards.
pub struct MembershipContext {
    gens: Vec<IntVector>,
    unit_idx: Vec<usize>,
    rest_idx: Vec<usize>,
    /// Functionals cutting out the quotient by the unit span; empty means
    /// the identity projection (no units).
    proj: Vec<IntVector>,
    /// Strictly positive functional on the projected rest generators.
    gbar: Option<IntVector>,
    rest_weights: Vec<BigInt>,
    unit_lattice: Option<crate::linalg::HnfDecomposition>,
    /// For each unit `u`, nonnegative coefficients over `gens`
    /// representing `−u`.
    unit_neg_reps: Vec<Vec<BigInt>>,
}

impl MembershipContext {
    pub fn new(gens: &[IntVector]) -> MembershipContext {
        let dim = gens.first().map(|v| v.dim()).unwrap_or(0);
        let mut unit_idx = Vec::new();
        let mut rest_idx = Vec::new();
        let mut unit_neg_reps = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            match cone_membership(gens, &-g) {
                Some(q) => {
                    unit_idx.push(i);
                    unit_neg_reps.push(nonneg_rep_of_negative(gens, i, &q));
                }
                None => rest_idx.push(i),
            }
        }
        let unit_vecs: Vec<IntVector> = unit_idx.iter().map(|&i| gens[i].clone()).collect();
        let proj: Vec<IntVector> = if unit_idx.is_empty() {
            Vec::new()
        } else {
            annihilator(&unit_vecs, dim)
        };
        let project = |v: &IntVector| -> IntVector {
            if proj.is_empty() {
                v.clone()
            } else {
                IntVector::new(proj.iter().map(|p| p.dot(v)).collect())
            }
        };
        let proj_rest: Vec<IntVector> = rest_idx.iter().map(|&i| project(&gens[i])).collect();
        let gbar = if rest_idx.is_empty() {
            None
        } else {
            Some(
                positive_functional(&proj_rest)
                    .expect("quotient by the unit span must leave a pointed cone"),
            )
        };
        let rest_weights: Vec<BigInt> = match &gbar {
            Some(g) => proj_rest.iter().map(|r| g.dot(r)).collect(),
            None => Vec::new(),
        };
        let unit_lattice = if unit_idx.is_empty() {
            None
        } else {
            Some(hnf_with_transform(&unit_vecs))
        };
        MembershipContext {
            gens: gens.to_vec(),
            unit_idx,
            rest_idx,
            proj,
            gbar,
            rest_weights,
            unit_lattice,
            unit_neg_reps,
        }
    }

    fn project(&self, v: &IntVector) -> IntVector {
        if self.proj.is_empty() {
            v.clone()
        } else {
            IntVector::new(self.proj.iter().map(|p| p.dot(v)).collect())
        }
    }

    /// Nonnegative integer coefficients over the generators summing to
    /// `v0`, or `None` when `v0 ∉ Z≥0(gens)`.
    pub fn member(&self, v0: &IntVector) -> Option<Vec<BigInt>> {
        if self.gens.is_empty() {
            return if v0.is_zero() { Some(Vec::new()) } else { None };
        }
        let budget = match &self.gbar {
            Some(g) => g.dot(&self.project(v0)),
            None => BigInt::zero(),
        };
        if budget.is_negative() {
            return None;
        }
        let mut rest_counts = vec![BigInt::zero(); self.rest_idx.len()];
        let hit = self.dfs(0, v0.clone(), budget, &mut rest_counts)?;
        let mut coeffs = vec![BigInt::zero(); self.gens.len()];
        for (slot, &gi) in hit.rest.iter().zip(&self.rest_idx) {
            coeffs[gi] = slot.clone();
        }
        for (mu, (&ui, rep)) in hit
            .unit_coeffs
            .iter()
            .zip(self.unit_idx.iter().zip(&self.unit_neg_reps))
        {
            if mu.is_negative() {
                let k = -mu;
                for (c, r) in coeffs.iter_mut().zip(rep) {
                    *c += &k * r;
                }
            } else {
                coeffs[ui] += mu;
            }
        }
        debug_assert_eq!(&combine(&self.gens, &coeffs), v0);
        debug_assert!(coeffs.iter().all(|c| !c.is_negative()));
        Some(coeffs)
    }

    fn dfs(
        &self,
        pos: usize,
        residual: IntVector,
        budget: BigInt,
        rest_counts: &mut Vec<BigInt>,
    ) -> Option<DfsHit> {
        if pos == self.rest_idx.len() {
            // All non-unit coefficients chosen; the residual must lie in
            // the unit lattice (or vanish when there are no units).
            let unit_coeffs = match &self.unit_lattice {
                None => {
                    if residual.is_zero() {
                        Vec::new()
                    } else {
                        return None;
                    }
                }
                Some(dec) => {
                    let k = dec.basis.coords_of(&residual)?;
                    let mut mu = vec![BigInt::zero(); self.unit_idx.len()];
                    for (ki, combo) in k.iter().zip(&dec.basis_combos) {
                        for (m, c) in mu.iter_mut().zip(combo) {
                            *m += ki * c;
                        }
                    }
                    mu
                }
            };
            return Some(DfsHit {
                rest: rest_counts.clone(),
                unit_coeffs,
            });
        }
        let g = &self.gens[self.rest_idx[pos]];
        let w = &self.rest_weights[pos];
        let mut n = BigInt::zero();
        let mut res = residual;
        let mut b = budget;
        loop {
            if b.is_negative() {
                return None;
            }
            rest_counts[pos] = n.clone();
            if let Some(hit) = self.dfs(pos + 1, res.clone(), b.clone(), rest_counts) {
                rest_counts[pos] = BigInt::zero();
                return Some(hit);
            }
            n += 1;
            res = &res - g;
            b -= w;
        }
    }
}

struct DfsHit {
    rest: Vec<BigInt>,
    unit_coeffs: Vec<BigInt>,
}

fn combine(gens: &[IntVector], coeffs: &[BigInt]) -> IntVector {
    let dim = gens.first().map(|g| g.dim()).unwrap_or(0);
    let mut acc = IntVector::zero(dim);
    for (g, c) in gens.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = &acc + &g.scaled(c);
        }
    }
    acc
}

/// Scale a rational cone representation of `−gens[i]` into the identity
/// `−u = Σ m_j·gens_j + (D−1)·u`, all coefficients nonnegative integers.
fn nonneg_rep_of_negative(gens: &[IntVector], i: usize, q: &[BigRational]) -> Vec<BigInt> {
    let mut d = BigInt::one();
    for c in q {
        d = d.lcm(c.denom());
    }
    let mut rep: Vec<BigInt> = q.iter().map(|c| (c * &d).to_integer()).collect();
    rep[i] += &d - 1;
    debug_assert!(rep.iter().all(|c| !c.is_negative()));
    debug_assert_eq!(combine(gens, &rep), -&gens[i]);
    rep
}

/// Decide `v0 ∈ Z≥0(gens)`, returning one nonnegative coefficient vector.
pub fn nonneg_integer_membership(gens: &[IntVector], v0: &IntVector) -> Option<Vec<BigInt>> {
    MembershipContext::new(gens).member(v0)
}

/// Decide saturation of `M`. Returns `None` when saturated, otherwise the
/// order-least ENSS witness.
///
/// The search follows the half-open-parallelepiped completeness argument:
/// every violation of saturation is witnessed by a nonzero lattice point
/// of the parallelepiped of some maximal independent subset, so sweeping
/// all such subsets and points is a complete decision procedure.
pub fn is_saturated(m: &VectorSet) -> Option<EnssWitness> {
    is_saturated_vectors(m.vectors())
}

pub(crate) fn is_saturated_vectors(vectors: &[IntVector]) -> Option<EnssWitness> {
    if vectors.len() <= 1 {
        return None;
    }
    // A symmetric set has Z≥0(M) = Z(M), hence is saturated.
    let as_set: BTreeSet<&IntVector> = vectors.iter().collect();
    if vectors.iter().all(|v| as_set.contains(&-v)) {
        return None;
    }
    let dec = hnf_with_transform(vectors);
    let d = dec.basis.rank();
    if d == 0 {
        return None;
    }
    // Work in the coordinates of the hnf basis: the ambient lattice
    // becomes Z^d, which makes parallelepiped enumeration cheap.
    let coords: Vec<IntVector> = vectors
        .iter()
        .map(|v| {
            IntVector::new(
                dec.basis
                    .coords_of(v)
                    .expect("set member outside its own hnf lattice"),
            )
        })
        .collect();
    let standard = standard_lattice(d);
    let mut membership: Option<MembershipContext> = None;
    let mut cache: BTreeMap<IntVector, bool> = BTreeMap::new();
    let mut indices: Vec<usize> = Vec::with_capacity(d);
    sweep_independent(
        vectors,
        &coords,
        &dec,
        &standard,
        d,
        0,
        &mut indices,
        &mut membership,
        &mut cache,
    )
}

fn standard_lattice(d: usize) -> LatticeBasis {
    let rows: Vec<IntVector> = (0..d)
        .map(|i| {
            let mut c = vec![0i64; d];
            c[i] = 1;
            IntVector::from_i64(&c)
        })
        .collect();
    hnf(&rows)
}

#[allow(clippy::too_many_arguments)]
fn sweep_independent(
    vectors: &[IntVector],
    coords: &[IntVector],
    dec: &crate::linalg::HnfDecomposition,
    standard: &LatticeBasis,
    d: usize,
    start: usize,
    indices: &mut Vec<usize>,
    membership: &mut Option<MembershipContext>,
    cache: &mut BTreeMap<IntVector, bool>,
) -> Option<EnssWitness> {
    if indices.len() == d {
        let subset: Vec<IntVector> = indices.iter().map(|&i| coords[i].clone()).collect();
        let det = crate::linalg::det(&subset);
        if det.is_zero() || det.abs().is_one() {
            // Dependent, or index 1: no nonzero parallelepiped points.
            return None;
        }
        for (p, q) in parallelepiped_points(&subset, standard) {
            if p.is_zero() {
                continue;
            }
            let ok = match cache.get(&p) {
                Some(&b) => b,
                None => {
                    let ctx =
                        membership.get_or_insert_with(|| MembershipContext::new(coords));
                    let b = ctx.member(&p).is_some();
                    cache.insert(p.clone(), b);
                    b
                }
            };
            if !ok {
                return Some(build_witness(vectors, dec, indices, &p, q));
            }
        }
        return None;
    }
    for i in start..vectors.len() {
        indices.push(i);
        // Quick rank pre-check keeps the sweep near-linear on dependent
        // prefixes.
        let prefix: Vec<IntVector> = indices.iter().map(|&j| coords[j].clone()).collect();
        let independent = rank(&prefix) == indices.len();
        let hit = if independent {
            sweep_independent(
                vectors, coords, dec, standard, d, i + 1, indices, membership, cache,
            )
        } else {
            None
        };
        indices.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

fn build_witness(
    vectors: &[IntVector],
    dec: &crate::linalg::HnfDecomposition,
    indices: &[usize],
    p: &IntVector,
    q: RationalVector,
) -> EnssWitness {
    // Map the coordinate-space point back to ambient space and derive the
    // integer combination over the full set from the hnf transform.
    let dim = vectors[0].dim();
    let mut v0 = IntVector::zero(dim);
    for (pi, row) in p.coords().iter().zip(dec.basis.rows()) {
        v0 = &v0 + &row.scaled(pi);
    }
    let mut z = vec![BigInt::zero(); vectors.len()];
    for (pi, combo) in p.coords().iter().zip(&dec.basis_combos) {
        for (zj, c) in z.iter_mut().zip(combo) {
            *zj += pi * c;
        }
    }
    debug_assert_eq!(combine(vectors, &z), v0);
    EnssWitness {
        set: vectors.to_vec(),
        indep_indices: indices.to_vec(),
        v0,
        q,
        z,
    }
}

/// Strategy for the hereditary-normality decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Unimodular,
    Ratio2Structural,
    Exhaustive,
}

/// How a normal verdict was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HnMethod {
    Unimodular {
        volume: BigInt,
    },
    Ratio2Structural {
        volume: BigInt,
        bases_checked: u64,
    },
    Exhaustive {
        subsets_examined: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HnOutcome {
    Normal(HnMethod),
    NotNormal(EnssWitness),
    /// The exhaustive budget ran out before a verdict.
    Undecided {
        examined: u64,
    },
}

/// A requested strategy whose preconditions do not hold; distinct from
/// any verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HnError {
    Inapplicable(&'static str),
}

pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Decide hereditary normality of `M`.
///
/// `Auto` tries the unimodularity certificate, then the ratio-2 structural
/// certificate (when a symmetry group is supplied), then exhaustive subset
/// search. A requested strategy whose precondition fails returns
/// `HnError::Inapplicable` rather than a verdict.
pub fn is_hereditarily_normal(
    m: &VectorSet,
    strategy: Strategy,
    symmetry: Option<&[SignedPermutation]>,
    budget: u64,
) -> Result<HnOutcome, HnError> {
    match strategy {
        Strategy::Unimodular => match crate::structure::unimodular_volume(m) {
            Some(volume) => Ok(HnOutcome::Normal(HnMethod::Unimodular { volume })),
            None => Err(HnError::Inapplicable("set is not unimodular")),
        },
        Strategy::Ratio2Structural => {
            let group = symmetry.ok_or(HnError::Inapplicable(
                "structural check needs a symmetry group",
            ))?;
            match crate::structure::structural_hn_check(m, group) {
                Some(cert) => Ok(HnOutcome::Normal(HnMethod::Ratio2Structural {
                    volume: cert.volume,
                    bases_checked: cert.bases_checked,
                })),
                None => Err(HnError::Inapplicable(
                    "structural ratio-2 preconditions not met",
                )),
            }
        }
        Strategy::Exhaustive => Ok(exhaustive_hn(m, symmetry, budget)),
        Strategy::Auto => {
            if let Some(volume) = crate::structure::unimodular_volume(m) {
                return Ok(HnOutcome::Normal(HnMethod::Unimodular { volume }));
            }
            if let Some(group) = symmetry {
                if let Some(cert) = crate::structure::structural_hn_check(m, group) {
                    return Ok(HnOutcome::Normal(HnMethod::Ratio2Structural {
                        volume: cert.volume,
                        bases_checked: cert.bases_checked,
                    }));
                }
            }
            Ok(exhaustive_hn(m, symmetry, budget))
        }
    }
}

/// The index permutations of the full symmetry group acting on the sorted
/// vector list, generated by closure; `None` when a generator does not
/// preserve the set or the group exceeds `cap`.
pub fn index_permutation_group(
    vectors: &[IntVector],
    gens: &[SignedPermutation],
    cap: usize,
) -> Option<Vec<Vec<u32>>> {
    let index_of: BTreeMap<&IntVector, u32> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i as u32))
        .collect();
    let mut gen_perms: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        let mut p = Vec::with_capacity(vectors.len());
        for v in vectors {
            p.push(*index_of.get(&g.apply(v))?);
        }
        gen_perms.push(p);
    }
    let identity: Vec<u32> = (0..vectors.len() as u32).collect();
    let mut group: BTreeSet<Vec<u32>> = BTreeSet::new();
    group.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(cur) = frontier.pop() {
        for g in &gen_perms {
            let next: Vec<u32> = cur.iter().map(|&i| g[i as usize]).collect();
            if group.insert(next.clone()) {
                if group.len() > cap {
                    return None;
                }
                frontier.push(next);
            }
        }
    }
    Some(group.into_iter().collect())
}

fn exhaustive_hn(m: &VectorSet, symmetry: Option<&[SignedPermutation]>, budget: u64) -> HnOutcome {
    let vectors = m.vectors();
    let n = vectors.len();
    assert!(n <= 127, "exhaustive search supports at most 127 vectors");
    let group = symmetry.and_then(|g| index_permutation_group(vectors, g, 1 << 20));
    let mut visited: BTreeSet<u128> = BTreeSet::new();
    let mut examined: u64 = 0;
    let mut indices: Vec<usize> = Vec::new();
    for k in 2..=n {
        if let Some(result) = subsets_of_size(
            vectors,
            k,
            0,
            &mut indices,
            &group,
            &mut visited,
            &mut examined,
            budget,
        ) {
            return result;
        }
    }
    HnOutcome::Normal(HnMethod::Exhaustive {
        subsets_examined: examined,
    })
}

#[allow(clippy::too_many_arguments)]
fn subsets_of_size(
    vectors: &[IntVector],
    k: usize,
    start: usize,
    indices: &mut Vec<usize>,
    group: &Option<Vec<Vec<u32>>>,
    visited: &mut BTreeSet<u128>,
    examined: &mut u64,
    budget: u64,
) -> Option<HnOutcome> {
    if indices.len() == k {
        let mask: u128 = indices.iter().fold(0u128, |m, &i| m | (1u128 << i));
        if let Some(g) = group {
            if visited.contains(&mask) {
                return None;
            }
            for p in g {
                let image = indices
                    .iter()
                    .fold(0u128, |m, &i| m | (1u128 << p[i]));
                visited.insert(image);
            }
        }
        *examined += 1;
        if *examined > budget {
            return Some(HnOutcome::Undecided {
                examined: *examined,
            });
        }
        let subset: Vec<IntVector> = indices.iter().map(|&i| vectors[i].clone()).collect();
        if rank(&subset) == subset.len() {
            // Independent sets are always saturated.
            return None;
        }
        return is_saturated_vectors(&subset).map(HnOutcome::NotNormal);
    }
    for i in start..vectors.len() {
        if vectors.len() - i < k - indices.len() {
            break;
        }
        indices.push(i);
        let hit = subsets_of_size(
            vectors, k, i + 1, indices, group, visited, examined, budget,
        );
        indices.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// A non-saturated subset of minimum cardinality (lexicographically least
/// at that cardinality), or `None` when `M` is hereditarily normal.
pub fn minimal_nss(m: &VectorSet) -> Option<VectorSet> {
    match exhaustive_hn(m, None, u64::MAX) {
        HnOutcome::NotNormal(w) => Some(VectorSet::new(m.dim(), w.set)),
        _ => None,
    }
}
