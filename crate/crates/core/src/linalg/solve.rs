use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::vec::{IntVector, RationalVector};

/// Solve `sum_j x_j * gens[j] = target` exactly over the rationals.
///
/// Returns one solution (free variables set to zero) when the system is
/// consistent, `None` when `target` is outside the span of `gens`. When the
/// generators are linearly independent the solution is unique.
pub fn solve_exact(gens: &[IntVector], target: &IntVector) -> Option<RationalVector> {
    let n = target.dim();
    let r = gens.len();
    if r == 0 {
        return if target.is_zero() {
            Some(RationalVector::zero(0))
        } else {
            None
        };
    }
    // Augmented matrix: n rows (coordinates), r columns (coefficients) | rhs.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = gens
                .iter()
                .map(|g| BigRational::from_integer(g.get(i).clone()))
                .collect();
            row.push(BigRational::from_integer(target.get(i).clone()));
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(p) = (row..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for j in col..=r {
            m[row][j] = &m[row][j] * &inv;
        }
        for i in 0..n {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..=r {
                    let delta = &factor * &m[row][j];
                    m[i][j] = &m[i][j] - delta;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == n {
            break;
        }
    }
    // Consistency: no zero-row with nonzero rhs.
    for i in row..n {
        if !m[i][r].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); r];
    for &(pr, pc) in &pivots {
        x[pc] = m[pr][r].clone();
    }
    Some(RationalVector::new(x))
}

/// Integer-scaled basis of the rational kernel of the linear map
/// `x -> (rows[0].x, ..., rows[k-1].x)`, i.e. of the annihilator of the
/// span of `rows` inside the dual space.
pub fn annihilator(rows: &[IntVector], dim: usize) -> Vec<IntVector> {
    // Row-reduce the matrix whose rows are the given vectors; free columns
    // parameterize the kernel of the induced functional-evaluation map.
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for j in col..dim {
            m[row][j] = &m[row][j] * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..dim {
                    let delta = &factor * &m[row][j];
                    m[i][j] = &m[i][j] - delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        // Kernel vector: x[free] = 1, x[pivot_col] = -m[pivot_row][free].
        let mut x = vec![BigRational::zero(); dim];
        x[free] = BigRational::one();
        for (pr, &pc) in pivots.iter().enumerate() {
            x[pc] = -m[pr][free].clone();
        }
        basis.push(clear_denominators(&x));
    }
    basis
}

/// Scale a rational vector by the lcm of its denominators and divide out the
/// gcd of the resulting integers, producing a primitive integer vector.
pub fn clear_denominators(x: &[BigRational]) -> IntVector {
    let mut lcm = BigInt::one();
    for c in x {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = x.iter().map(|c| (c * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        IntVector::new(ints)
    } else {
        IntVector::new(ints.iter().map(|c| c / &g).collect())
    }
}
