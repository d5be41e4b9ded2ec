//! Root-system data for the classical families `B_n`, `C_n`, `D_n`: weight
//! and root lattices, Weyl group action, dominance, weight-set generation,
//! shifts, and duality.
//!
//! Weights are stored with doubled coordinates (`2ℓ_1, …, 2ℓ_n`), so
//! half-integer weights are exact integer data. All set-level computations
//! downstream work on these doubled ("scaled") coordinates; uniform scaling
//! never changes saturation verdicts.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::linalg::{solve_exact, IntVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    B,
    C,
    D,
}

/// One of the classical root systems `B_n` (n ≥ 2), `C_n` (n ≥ 3),
/// `D_n` (n ≥ 4), realized in coordinates on `Z^n` as usual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootSystem {
    pub family: Family,
    pub n: usize,
}

impl RootSystem {
    pub fn new(family: Family, n: usize) -> RootSystem {
        let min = match family {
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
        };
        assert!(n >= min, "rank {} too small for this family", n);
        RootSystem { family, n }
    }
}

/// A point of the weight lattice, stored as doubled integer coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    doubled: IntVector,
}

impl Weight {
    pub fn new(doubled: IntVector) -> Weight {
        Weight { doubled }
    }

    pub fn from_doubled_i64(coords: &[i64]) -> Weight {
        Weight {
            doubled: IntVector::from_i64(coords),
        }
    }

    /// A weight with the given integer coordinates (doubling them).
    pub fn from_int_i64(coords: &[i64]) -> Weight {
        let doubled: Vec<i64> = coords.iter().map(|&c| 2 * c).collect();
        Weight::from_doubled_i64(&doubled)
    }

    pub fn doubled(&self) -> &IntVector {
        &self.doubled
    }

    pub fn dim(&self) -> usize {
        self.doubled.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.is_zero()
    }

    /// True iff every coordinate is an integer (not a strict half-integer).
    pub fn is_integral(&self) -> bool {
        self.doubled.coords().iter().all(|c| c.is_even())
    }

    /// The integer coordinates, when the weight is integral.
    pub fn halved(&self) -> Option<IntVector> {
        if self.is_integral() {
            Some(IntVector::new(
                self.doubled.coords().iter().map(|c| c / 2).collect(),
            ))
        } else {
            None
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            doubled: -&self.doubled,
        }
    }
}

impl core::fmt::Debug for Weight {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.doubled.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if c.is_even() {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{}/2", c)?;
            }
        }
        write!(f, ")")
    }
}

/// An element of the Weyl group as a signed permutation: new coordinate `i`
/// takes old coordinate `perm[i]`, negated when `flip[i]` is set. For
/// family D only even flip counts occur.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub flip: Vec<bool>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation {
            perm: (0..n).collect(),
            flip: vec![false; n],
        }
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        IntVector::new(
            self.perm
                .iter()
                .zip(&self.flip)
                .map(|(&p, &f)| {
                    let c = v.get(p).clone();
                    if f {
                        -c
                    } else {
                        c
                    }
                })
                .collect(),
        )
    }
}

/// Generators of the Weyl group as signed permutations: adjacent
/// transpositions plus the family's sign-change generator.
pub fn weyl_generators(rs: RootSystem) -> Vec<SignedPermutation> {
    let n = rs.n;
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        gens.push(SignedPermutation {
            perm,
            flip: vec![false; n],
        });
    }
    let mut flip = vec![false; n];
    match rs.family {
        Family::B | Family::C => {
            flip[n - 1] = true;
        }
        Family::D => {
            flip[n - 2] = true;
            flip[n - 1] = true;
        }
    }
    gens.push(SignedPermutation {
        perm: (0..n).collect(),
        flip,
    });
    gens
}

/// The simple roots `α_1, …, α_n` in the standard numbering.
pub fn simple_roots(rs: RootSystem) -> Vec<Weight> {
    let n = rs.n;
    let mut roots = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let mut c = vec![0i64; n];
        c[i] = 1;
        c[i + 1] = -1;
        roots.push(Weight::from_int_i64(&c));
    }
    let mut last = vec![0i64; n];
    match rs.family {
        Family::B => last[n - 1] = 1,
        Family::C => last[n - 1] = 2,
        Family::D => {
            last[n - 2] = 1;
            last[n - 1] = 1;
        }
    }
    roots.push(Weight::from_int_i64(&last));
    roots
}

/// The fundamental weights `π_1, …, π_n` in the standard numbering.
pub fn fundamental_weights(rs: RootSystem) -> Vec<Weight> {
    let n = rs.n;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut d = vec![0i64; n];
        let halves = match (rs.family, k) {
            (Family::B, k) if k == n => true,
            (Family::D, k) if k >= n - 1 => true,
            _ => false,
        };
        if halves {
            for c in d.iter_mut() {
                *c = 1;
            }
            if rs.family == Family::D && k == n - 1 {
                d[n - 1] = -1;
            }
        } else {
            for c in d.iter_mut().take(k) {
                *c = 2;
            }
        }
        out.push(Weight::from_doubled_i64(&d));
    }
    out
}

/// True iff the doubled coordinates describe a point of the weight lattice
/// `Λ` of the family: all coordinates of one parity for B and D, integers
/// for C.
pub fn in_weight_lattice(rs: RootSystem, w: &Weight) -> bool {
    if w.dim() != rs.n {
        return false;
    }
    match rs.family {
        Family::C => w.is_integral(),
        Family::B | Family::D => {
            let p = w.doubled.get(0).is_odd();
            w.doubled.coords().iter().all(|c| c.is_odd() == p)
        }
    }
}

/// True iff `v` lies in the root lattice `Ξ`: `Z^n` for B, the even-sum
/// sublattice for C and D.
pub fn in_root_lattice(rs: RootSystem, v: &Weight) -> bool {
    if v.dim() != rs.n || !v.is_integral() {
        return false;
    }
    match rs.family {
        Family::B => true,
        Family::C | Family::D => {
            let sum: BigInt = v.doubled.coords().iter().sum::<BigInt>() / 2;
            sum.is_even()
        }
    }
}

/// The dominance condition of the closed fundamental chamber:
/// `ℓ_1 ≥ … ≥ ℓ_n ≥ 0` for B and C, `ℓ_1 ≥ … ≥ ℓ_{n−1} ≥ |ℓ_n|` for D.
pub fn is_dominant(rs: RootSystem, w: &Weight) -> bool {
    if !in_weight_lattice(rs, w) {
        return false;
    }
    let d = w.doubled.coords();
    let n = rs.n;
    for i in 0..n - 1 {
        if d[i] < d[i + 1] {
            return false;
        }
    }
    match rs.family {
        Family::B | Family::C => !d[n - 1].is_negative(),
        Family::D => d[n - 2] >= d[n - 1].abs(),
    }
}

/// The unique dominant weight in the Weyl orbit: sort absolute values
/// descending; for D, when the input has an odd number of negative
/// coordinates, negate the last (smallest) one.
pub fn dominant_rep(rs: RootSystem, w: &Weight) -> Weight {
    let mut abs: Vec<BigInt> = w.doubled.coords().iter().map(|c| c.abs()).collect();
    abs.sort();
    abs.reverse();
    if rs.family == Family::D {
        let negs = w
            .doubled
            .coords()
            .iter()
            .filter(|c| c.is_negative())
            .count();
        if negs % 2 == 1 {
            let last = abs.len() - 1;
            abs[last] = -abs[last].clone();
        }
    }
    Weight::new(IntVector::new(abs))
}

/// The full Weyl orbit of `w`: all coordinate permutations with sign
/// changes (even sign-change count for D, unless a zero coordinate absorbs
/// the parity).
pub fn weyl_orbit(rs: RootSystem, w: &Weight) -> Vec<Weight> {
    assert_eq!(w.dim(), rs.n);
    let mut abs: Vec<BigInt> = w.doubled.coords().iter().map(|c| c.abs()).collect();
    abs.sort();
    let has_zero = abs.iter().any(|c| c.is_zero());
    // For D without zeros the sign-change parity is an orbit invariant.
    let parity = w
        .doubled
        .coords()
        .iter()
        .filter(|c| c.is_negative())
        .count()
        % 2;
    let mut out: BTreeSet<Weight> = BTreeSet::new();
    let mut current: Vec<BigInt> = Vec::with_capacity(rs.n);
    let mut used = vec![false; rs.n];
    orbit_rec(rs, &abs, has_zero, parity, &mut used, &mut current, 0, &mut out);
    out.into_iter().collect()
}

/// Depth-first enumeration of signed arrangements of the absolute values,
/// skipping repeated values and (for D without zeros) the wrong sign-count
/// parity.
#[allow(clippy::too_many_arguments)]
fn orbit_rec(
    rs: RootSystem,
    abs: &[BigInt],
    has_zero: bool,
    parity: usize,
    used: &mut Vec<bool>,
    current: &mut Vec<BigInt>,
    minus_count: usize,
    out: &mut BTreeSet<Weight>,
) {
    let n = abs.len();
    if current.len() == n {
        if rs.family == Family::D && !has_zero && minus_count % 2 != parity {
            return;
        }
        out.insert(Weight::new(IntVector::new(current.clone())));
        return;
    }
    for i in 0..n {
        if used[i] || (i > 0 && abs[i] == abs[i - 1] && !used[i - 1]) {
            continue;
        }
        used[i] = true;
        current.push(abs[i].clone());
        orbit_rec(rs, abs, has_zero, parity, used, current, minus_count, out);
        current.pop();
        if !abs[i].is_zero() {
            current.push(-abs[i].clone());
            orbit_rec(rs, abs, has_zero, parity, used, current, minus_count + 1, out);
            current.pop();
        }
        used[i] = false;
    }
}

/// True iff `μ ∈ M(λ) = (λ + Ξ) ∩ P(λ)`: same root-lattice coset, and
/// `λ − dominant_rep(μ)` is a nonnegative integer combination of simple
/// roots.
pub fn in_weight_set(rs: RootSystem, lambda: &Weight, mu: &Weight) -> bool {
    assert!(is_dominant(rs, lambda), "in_weight_set needs dominant λ");
    if !in_weight_lattice(rs, mu) {
        return false;
    }
    let diff = Weight::new(&lambda.doubled - &mu.doubled);
    if !in_root_lattice(rs, &diff) {
        return false;
    }
    let bar = dominant_rep(rs, mu);
    let delta = &lambda.doubled - &bar.doubled;
    let roots: Vec<IntVector> = simple_roots(rs)
        .into_iter()
        .map(|r| r.doubled().clone())
        .collect();
    match solve_exact(&roots, &delta) {
        None => false,
        Some(x) => x.coords().iter().all(|c| {
            c.is_integer() && !c.is_negative()
        }),
    }
}

/// The weight set `M(λ)` of the simple module with highest weight `λ`.
#[derive(Clone, Debug)]
pub struct WeightSet {
    pub root_system: RootSystem,
    pub highest: Weight,
    pub members: Vec<Weight>,
}

impl WeightSet {
    /// The members in doubled coordinates (the identity on our storage).
    pub fn scaled_members(&self) -> Vec<IntVector> {
        self.members.iter().map(|m| m.doubled().clone()).collect()
    }

    /// Denominator 1 (integral highest weight) or 2 (half-integral), and
    /// the member coordinates multiplied by it.
    pub fn canonical_vectors(&self) -> (u8, Vec<IntVector>) {
        if self.highest.is_integral() {
            (
                1,
                self.members
                    .iter()
                    .map(|m| m.halved().expect("coset shares integrality"))
                    .collect(),
            )
        } else {
            (2, self.scaled_members())
        }
    }
}

/// Compute `M(λ)`: enumerate the dominant members inside the box
/// `μ_1 ≤ λ_1` and close under the Weyl action.
pub fn weight_set(rs: RootSystem, lambda: &Weight) -> WeightSet {
    assert!(is_dominant(rs, lambda), "weight_set needs dominant λ");
    let bound = i64::try_from(lambda.doubled.get(0)).expect("weight too large");
    let parity = lambda.doubled.get(0).is_odd();
    let mut members: BTreeSet<Weight> = BTreeSet::new();
    let mut prefix: Vec<i64> = Vec::with_capacity(rs.n);
    enumerate_dominant(rs, lambda, bound, parity, &mut prefix, &mut members);
    WeightSet {
        root_system: rs,
        highest: lambda.clone(),
        members: members.into_iter().collect(),
    }
}

fn enumerate_dominant(
    rs: RootSystem,
    lambda: &Weight,
    bound: i64,
    parity: bool,
    prefix: &mut Vec<i64>,
    members: &mut BTreeSet<Weight>,
) {
    let n = rs.n;
    if prefix.len() == n {
        let mu = Weight::from_doubled_i64(prefix);
        if in_weight_set(rs, lambda, &mu) {
            for v in weyl_orbit(rs, &mu) {
                members.insert(v);
            }
        }
        return;
    }
    let hi = if prefix.is_empty() {
        bound
    } else {
        prefix[prefix.len() - 1]
    };
    let last = prefix.len() == n - 1;
    let lo = if last && rs.family == Family::D {
        -hi
    } else {
        0
    };
    let start = if (lo.rem_euclid(2) == 1) == parity {
        lo
    } else {
        lo + 1
    };
    let mut c = start;
    while c <= hi {
        prefix.push(c);
        enumerate_dominant(rs, lambda, bound, parity, prefix, members);
        prefix.pop();
        c += 2;
    }
}

/// The highest weight of the dual module: `dominant_rep(−λ)`.
pub fn dual_weight(rs: RootSystem, lambda: &Weight) -> Weight {
    dominant_rep(rs, &lambda.neg())
}

/// The B-family shift: decrement coordinate `i` by one. Requires `ℓ_i ≥ 1`.
pub fn shift_b(lambda: &Weight, i: usize) -> Option<Weight> {
    if lambda.doubled.get(i) < &BigInt::from(2) {
        return None;
    }
    let mut c = lambda.doubled.coords().to_vec();
    c[i] -= 2;
    Some(Weight::new(IntVector::new(c)))
}

/// The C/D-family shift: move one unit from coordinate `i` to coordinate
/// `j`. Requires `ℓ_i − ℓ_j ≥ 2`.
pub fn shift_cd(lambda: &Weight, i: usize, j: usize) -> Option<Weight> {
    let diff = lambda.doubled.get(i) - lambda.doubled.get(j);
    if diff < BigInt::from(4) {
        return None;
    }
    let mut c = lambda.doubled.coords().to_vec();
    c[i] -= 2;
    c[j] += 2;
    Some(Weight::new(IntVector::new(c)))
}
