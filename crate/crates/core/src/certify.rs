//! Certificates for saturation verdicts and their fully independent
//! verification: discriminating linear functions, exhaustive-search
//! non-membership proofs, and certificate re-checking that shares no code
//! with the search routines it audits.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{rank, IntVector};
use crate::rootsystem::SignedPermutation;
use crate::saturation::{EnssWitness, VectorSet};

/// Decide whether `target` is a nonnegative-integer combination of the
/// (possibly negative) integer `values`.
///
/// Zeros contribute nothing. With values of both signs, the representable
/// targets are exactly the multiples of the gcd: opposite-sign pairs allow
/// shifting any integer Bezout combination into nonnegative coefficients.
/// With one sign only, representability beyond `min·max/g²` (scaled) is
/// automatic and a dynamic program settles the finite remainder.
pub fn represents_1d(values: &[BigInt], target: &BigInt) -> bool {
    let nonzero: Vec<&BigInt> = values.iter().filter(|v| !v.is_zero()).collect();
    if target.is_zero() {
        return true;
    }
    if nonzero.is_empty() {
        return false;
    }
    let has_pos = nonzero.iter().any(|v| v.is_positive());
    let has_neg = nonzero.iter().any(|v| v.is_negative());
    let mut g = BigInt::zero();
    for v in &nonzero {
        g = g.gcd(v);
    }
    if !(target % &g).is_zero() {
        return false;
    }
    if has_pos && has_neg {
        return true;
    }
    // One-signed: normalize to positive values and a positive target.
    let (vals, t) = if has_pos {
        (
            nonzero.iter().map(|v| (*v / &g).clone()).collect::<Vec<_>>(),
            target / &g,
        )
    } else {
        (
            nonzero.iter().map(|v| (-*v / &g).clone()).collect::<Vec<_>>(),
            -target / &g,
        )
    };
    if t.is_negative() {
        return false;
    }
    let min = vals.iter().min().unwrap().clone();
    let max = vals.iter().max().unwrap().clone();
    if t > &min * &max {
        // Beyond the largest possible Frobenius number of the value set.
        return true;
    }
    let t_small = usize::try_from(&t).expect("bounded by min*max above");
    let mut reachable = vec![false; t_small + 1];
    reachable[0] = true;
    for i in 1..=t_small {
        for v in &vals {
            if let Ok(vs) = usize::try_from(v) {
                if vs <= i && reachable[i - vs] {
                    reachable[i] = true;
                    break;
                }
            }
        }
    }
    reachable[t_small]
}

/// An integer functional excluding `v0` from `Z≥0(set)` on value level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminatingFunction {
    pub f: IntVector,
}

impl DiscriminatingFunction {
    /// True iff `f(v0)` is not a nonnegative-integer combination of the
    /// values `f(v_i)`.
    pub fn excludes(&self, set: &[IntVector], v0: &IntVector) -> bool {
        let values: Vec<BigInt> = set.iter().map(|v| self.f.dot(v)).collect();
        !represents_1d(&values, &self.f.dot(v0))
    }
}

/// Search integer functionals with `‖f‖_∞ ≤ coeff_bound` for one whose
/// values exclude the witness's `v0`. Iteration is by growing max-norm
/// shell, lexicographic within a shell; the first valid functional is
/// returned.
pub fn find_discriminating_function(
    w: &EnssWitness,
    coeff_bound: i64,
) -> Option<DiscriminatingFunction> {
    let dim = w.v0.dim();
    for shell in 0..=coeff_bound {
        let mut coords = vec![-shell; dim];
        loop {
            // Only the shell surface: interior points were covered by
            // smaller shells.
            if coords.iter().any(|c| c.abs() == shell) {
                let f = DiscriminatingFunction {
                    f: IntVector::from_i64(&coords),
                };
                if f.excludes(&w.set, &w.v0) {
                    return Some(f);
                }
            }
            if !lex_advance(&mut coords, shell) {
                break;
            }
        }
    }
    None
}

/// Lexicographic odometer over `[-shell, shell]^dim`; false when wrapped.
fn lex_advance(coords: &mut [i64], shell: i64) -> bool {
    for k in (0..coords.len()).rev() {
        if coords[k] < shell {
            coords[k] += 1;
            for c in coords.iter_mut().skip(k + 1) {
                *c = -shell;
            }
            return true;
        }
    }
    false
}

/// How a certificate excludes `v0` from `Z≥0(set)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discriminator {
    Function(DiscriminatingFunction),
    /// A strictly positive functional `g` on the set, inducing the finite
    /// coefficient bound `g(v0)` that an exhaustive search refutes.
    ExhaustiveProof { g: IntVector, bound: BigInt },
}

/// A verifiable proof that some subset of a weight set is not saturated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NssCertificate {
    /// Free-text origin tag (family, rank, highest weight, template name).
    pub context: String,
    pub witness: EnssWitness,
    pub discriminator: Discriminator,
}

/// A verifiable proof of hereditary normality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HnCertificate {
    Unimodular {
        volume: BigInt,
    },
    Ratio2Structural {
        volume: BigInt,
        bases_checked: u64,
        group: Vec<SignedPermutation>,
    },
    Exhaustive {
        subsets_examined: u64,
    },
}

/// Re-check an NSS certificate against the ambient set with independent
/// code paths: containment, the integer combination, the rational
/// combination with coefficients in `[0,1)` over an independent subset,
/// and the discriminator. All four must pass.
pub fn verify_nss_certificate(cert: &NssCertificate, m: &VectorSet) -> bool {
    let w = &cert.witness;
    let dim = m.dim();
    if w.v0.dim() != dim || w.v0.is_zero() {
        return false;
    }
    if w.set.iter().any(|v| v.dim() != dim || !m.contains(v)) {
        return false;
    }
    // Integer combination: v0 = Σ z_j set_j.
    if w.z.len() != w.set.len() {
        return false;
    }
    let mut zsum = IntVector::zero(dim);
    for (z, v) in w.z.iter().zip(&w.set) {
        zsum = &zsum + &v.scaled(z);
    }
    if zsum != w.v0 {
        return false;
    }
    // Rational combination over an independent subset, coefficients in [0,1).
    if w.indep_indices.iter().any(|&i| i >= w.set.len()) {
        return false;
    }
    let indep: Vec<IntVector> = w.indep_indices.iter().map(|&i| w.set[i].clone()).collect();
    if rank(&indep) != indep.len() || w.q.dim() != indep.len() {
        return false;
    }
    let one = BigRational::one();
    if w.q.coords().iter().any(|q| q.is_negative() || *q >= one) {
        return false;
    }
    let mut qsum = vec![BigRational::zero(); dim];
    for (q, v) in w.q.coords().iter().zip(&indep) {
        for (acc, c) in qsum.iter_mut().zip(v.coords()) {
            *acc += q * c;
        }
    }
    let target: Vec<BigRational> = w
        .v0
        .coords()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    if qsum != target {
        return false;
    }
    // Discriminator.
    match &cert.discriminator {
        Discriminator::Function(f) => f.excludes(&w.set, &w.v0),
        Discriminator::ExhaustiveProof { g, bound } => {
            if g.dim() != dim || &g.dot(&w.v0) != bound {
                return false;
            }
            let weights: Vec<BigInt> = w.set.iter().map(|v| g.dot(v)).collect();
            if weights.iter().any(|x| x < &BigInt::one()) {
                return false;
            }
            !bounded_search_hits(&w.set, &weights, &w.v0, bound)
        }
    }
}

/// Exhaustively search nonnegative combinations of `set` whose `g`-value
/// budget stays within `bound` for one equal to `v0`. Complete because
/// every coefficient vector satisfies `Σ n_i·g(v_i) = g(v0) = bound`.
fn bounded_search_hits(
    set: &[IntVector],
    weights: &[BigInt],
    v0: &IntVector,
    bound: &BigInt,
) -> bool {
    fn rec(
        set: &[IntVector],
        weights: &[BigInt],
        pos: usize,
        residual: &IntVector,
        budget: &BigInt,
    ) -> bool {
        if pos == set.len() {
            return residual.is_zero() && budget.is_zero();
        }
        let mut n = BigInt::zero();
        let mut res = residual.clone();
        let mut b = budget.clone();
        loop {
            if b.is_negative() {
                return false;
            }
            if rec(set, weights, pos + 1, &res, &b) {
                return true;
            }
            n += 1;
            res = &res - &set[pos];
            b -= &weights[pos];
        }
    }
    rec(set, weights, 0, v0, bound)
}

/// The distinct outcomes of re-checking a hereditary-normality
/// certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnVerification {
    Valid,
    Invalid,
    BudgetExceeded,
}

/// Re-check an HN certificate by re-running the certifying computation.
pub fn verify_hn_certificate(
    cert: &HnCertificate,
    m: &VectorSet,
    budget: u64,
) -> HnVerification {
    use crate::saturation::{is_hereditarily_normal, HnOutcome, Strategy};
    match cert {
        HnCertificate::Unimodular { volume } => {
            match crate::structure::unimodular_volume(m) {
                Some(v) if &v == volume => HnVerification::Valid,
                _ => HnVerification::Invalid,
            }
        }
        HnCertificate::Ratio2Structural { volume, group, .. } => {
            match crate::structure::structural_hn_check(m, group) {
                Some(c) if &c.volume == volume => HnVerification::Valid,
                _ => HnVerification::Invalid,
            }
        }
        HnCertificate::Exhaustive { .. } => {
            match is_hereditarily_normal(m, Strategy::Exhaustive, None, budget) {
                Ok(HnOutcome::Normal(_)) => HnVerification::Valid,
                Ok(HnOutcome::Undecided { .. }) => HnVerification::BudgetExceeded,
                _ => HnVerification::Invalid,
            }
        }
    }
}
