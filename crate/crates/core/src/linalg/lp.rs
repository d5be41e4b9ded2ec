use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::solve::clear_denominators;
use super::vec::IntVector;

/// Exact-rational Phase-I simplex: find `x >= 0` with `A x = b`, or report
/// infeasibility. Bland's rule, so termination is unconditional.
fn simplex_feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if m == 0 {
        return Some(Vec::new());
    }
    // Tableau: structural columns, artificial identity, rhs. Rows are
    // sign-normalized so the rhs is nonnegative.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(width);
        let flip = b[i].is_negative();
        for j in 0..n {
            row.push(if flip { -&a[i][j] } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs for minimizing the sum of artificials.
    let mut obj = vec![BigRational::zero(); width];
    for j in 0..width {
        let mut s = BigRational::zero();
        for row in t.iter() {
            s += &row[j];
        }
        let cost = if (n..n + m).contains(&j) {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        obj[j] = cost - s;
    }
    // obj[width-1] currently holds -(sum of artificial values) = -w.
    loop {
        let entering = (0..n + m).find(|&j| obj[j].is_negative());
        let Some(e) = entering else {
            break;
        };
        // Bland ratio test: smallest ratio, ties by smallest basis variable.
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let ratio_i = &t[i][width - 1] / &t[i][e];
                        let ratio_l = &t[l][width - 1] / &t[l][e];
                        ratio_i < ratio_l || (ratio_i == ratio_l && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let Some(l) = leave else {
            // Unbounded phase-I objective cannot happen (w >= 0); treat as
            // numerical impossibility.
            unreachable!("phase-I simplex unbounded");
        };
        let pivot = t[l][e].clone();
        for j in 0..width {
            t[l][j] = &t[l][j] / &pivot;
        }
        for i in 0..m {
            if i != l && !t[i][e].is_zero() {
                let f = t[i][e].clone();
                for j in 0..width {
                    let delta = &f * &t[l][j];
                    t[i][j] = &t[i][j] - delta;
                }
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for j in 0..width {
                let delta = &f * &t[l][j];
                obj[j] = &obj[j] - delta;
            }
        }
        basis[l] = e;
    }
    // Optimal; feasible iff every artificial is at zero.
    for i in 0..m {
        if basis[i] >= n && !t[i][width - 1].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Some exact nonnegative rational combination of `gens` equal to `target`,
/// or `None` when `target` lies outside the cone. The support of the
/// returned coefficient vector is linearly independent (it comes from a
/// basic feasible solution).
pub fn cone_membership(gens: &[IntVector], target: &IntVector) -> Option<Vec<BigRational>> {
    let d = target.dim();
    let a: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            gens.iter()
                .map(|g| BigRational::from_integer(g.get(i).clone()))
                .collect()
        })
        .collect();
    let b: Vec<BigRational> = target
        .coords()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    simplex_feasible(&a, &b)
}

/// An integer functional `g` with `g . v >= 1` for every input vector, or
/// `None` when no such functional exists (the cone spanned by the vectors
/// is not pointed).
pub fn positive_functional(vecs: &[IntVector]) -> Option<IntVector> {
    if vecs.is_empty() {
        return Some(IntVector::zero(0));
    }
    let d = vecs[0].dim();
    let m = vecs.len();
    // Variables: y = u - w (2d columns), slack s (m columns);
    // constraint i: vecs[i] . (u - w) - s_i = 1.
    let a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(2 * d + m);
            for j in 0..d {
                row.push(BigRational::from_integer(vecs[i].get(j).clone()));
            }
            for j in 0..d {
                row.push(BigRational::from_integer(-vecs[i].get(j).clone()));
            }
            for k in 0..m {
                row.push(if k == i {
                    -BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            row
        })
        .collect();
    let b = vec![BigRational::one(); m];
    let x = simplex_feasible(&a, &b)?;
    let y: Vec<BigRational> = (0..d).map(|j| &x[j] - &x[d + j]).collect();
    let g = clear_denominators(&y);
    for v in vecs {
        debug_assert!(g.dot(v) >= num_bigint::BigInt::from(1));
    }
    Some(g)
}
