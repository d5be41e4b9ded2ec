use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::det::rank;
use super::hnf::{hnf_with_transform, LatticeBasis};
use super::solve::{annihilator, solve_exact};
use super::vec::{IntVector, RationalVector};

/// All points of `L ∩ span(indep)` lying in the half-open parallelepiped
/// `{Σ q_i·indep_i : q_i ∈ [0,1)}`, each with its coefficient vector,
/// lexicographically sorted by coefficients. The zero point is always
/// present; the count equals the index of `Z(indep)` in `L ∩ span(indep)`.
///
/// Panics when `indep` is linearly dependent or not contained in `L`.
pub fn parallelepiped_points(
    indep: &[IntVector],
    lattice: &LatticeBasis,
) -> Vec<(IntVector, RationalVector)> {
    let k = indep.len();
    let dim = lattice.dim();
    assert_eq!(rank(indep), k, "parallelepiped basis must be independent");
    for p in indep {
        assert!(
            lattice.contains(p),
            "parallelepiped basis must lie in the ambient lattice"
        );
    }
    // Basis of L ∩ span(indep): integer combinations c of the lattice rows
    // killed by every functional vanishing on span(indep). Those c form the
    // relation lattice of the rows of the pairing matrix H, which the HNF
    // transform hands us directly.
    let ann = annihilator(indep, dim);
    let pairing: Vec<IntVector> = lattice
        .rows()
        .iter()
        .map(|b| IntVector::new(ann.iter().map(|a| a.dot(b)).collect()))
        .collect();
    let relations = hnf_with_transform(&pairing).kernel_combos;
    // Coefficient vectors of the intersection basis in `indep` coordinates.
    let mut gens_mod_one: Vec<Vec<BigRational>> = Vec::new();
    for c in &relations {
        let mut v = IntVector::zero(dim);
        for (ci, b) in c.iter().zip(lattice.rows()) {
            v = &v + &b.scaled(ci);
        }
        let q = solve_exact(indep, &v).expect("intersection basis outside span");
        gens_mod_one.push(q.coords().iter().map(fract).collect());
    }
    // The fractional classes form a finite group under addition mod 1;
    // saturate from zero.
    let zero = alloc::vec![BigRational::zero(); k];
    let mut seen: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut frontier = alloc::vec![zero];
    while let Some(cur) = frontier.pop() {
        for g in &gens_mod_one {
            let next: Vec<BigRational> = cur.iter().zip(g).map(|(a, b)| fract(&(a + b))).collect();
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter()
        .map(|q| {
            let mut coords = alloc::vec![BigRational::zero(); dim];
            for (qi, p) in q.iter().zip(indep) {
                for (acc, c) in coords.iter_mut().zip(p.coords()) {
                    *acc += qi * c;
                }
            }
            let point = RationalVector::new(coords)
                .to_integer()
                .expect("parallelepiped point must be integral");
            (point, RationalVector::new(q))
        })
        .collect()
}

fn fract(x: &BigRational) -> BigRational {
    x - x.floor()
}
