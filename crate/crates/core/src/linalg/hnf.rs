use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::vec::IntVector;

/// A basis of an integer lattice in row Hermite normal form: rows are
/// linearly independent, echelon with positive pivots, and entries above
/// each pivot are reduced into `[0, pivot)`. Membership tests against a
/// basis in this form are deterministic forward substitutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    rows: Vec<IntVector>,
    pivot_cols: Vec<usize>,
    dim: usize,
}

impl LatticeBasis {
    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `v` in this basis, when `v` is an integer combination
    /// of the rows; `None` otherwise.
    pub fn coords_of(&self, v: &IntVector) -> Option<Vec<BigInt>> {
        assert_eq!(v.dim(), self.dim, "dimension mismatch in lattice membership");
        let mut residual = v.clone();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &pc) in self.rows.iter().zip(&self.pivot_cols) {
            let entry = residual.get(pc);
            if entry.is_zero() {
                coords.push(BigInt::zero());
                continue;
            }
            let pivot = row.get(pc);
            let (q, rem) = entry.div_rem(pivot);
            if !rem.is_zero() {
                return None;
            }
            residual = &residual - &row.scaled(&q);
            coords.push(q);
        }
        if residual.is_zero() {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.coords_of(v).is_some()
    }
}

/// Row Hermite normal form together with the unimodular transform that
/// produced it: `basis_combos[i]` expresses basis row `i` as an integer
/// combination of the input vectors, and `kernel_combos` are integer
/// combinations of the inputs summing to zero (a basis of the relation
/// lattice).
#[derive(Clone, Debug)]
pub struct HnfDecomposition {
    pub basis: LatticeBasis,
    pub basis_combos: Vec<Vec<BigInt>>,
    pub kernel_combos: Vec<Vec<BigInt>>,
}

/// True iff `v` is an integer combination of the rows of `basis`.
pub fn in_lattice(basis: &LatticeBasis, v: &IntVector) -> bool {
    basis.contains(v)
}

/// Hermite-normal-form basis of the integer span of `vs`.
pub fn hnf(vs: &[IntVector]) -> LatticeBasis {
    hnf_with_transform(vs).basis
}

/// Hermite normal form with the full unimodular row transform.
pub fn hnf_with_transform(vs: &[IntVector]) -> HnfDecomposition {
    let dim = vs.first().map(|v| v.dim()).unwrap_or(0);
    let r = vs.len();
    let mut rows: Vec<IntVector> = vs.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            let mut row = vec![BigInt::zero(); r];
            row[i] = BigInt::one();
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut top = 0;
    for col in 0..dim {
        // Euclidean elimination below `top` in this column.
        loop {
            let mut best: Option<usize> = None;
            for i in top..r {
                if !rows[i].get(col).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if rows[i].get(col).abs() < rows[b].get(col).abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            rows.swap(top, b);
            u.swap(top, b);
            let mut done = true;
            for i in top + 1..r {
                if !rows[i].get(col).is_zero() {
                    let q = div_round(rows[i].get(col), rows[top].get(col));
                    if !q.is_zero() {
                        rows[i] = &rows[i] - &rows[top].scaled(&q);
                        let scaled: Vec<BigInt> = u[top].iter().map(|c| c * &q).collect();
                        for (a, s) in u[i].iter_mut().zip(scaled) {
                            *a -= s;
                        }
                    }
                    if !rows[i].get(col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !rows[top].get(col).is_zero() && top < r {
            if rows[top].get(col).is_negative() {
                rows[top] = -&rows[top];
                for c in u[top].iter_mut() {
                    *c = -&*c;
                }
            }
            // Reduce the entries above the pivot into [0, pivot).
            for i in 0..top {
                let q = rows[i].get(col).div_floor(rows[top].get(col));
                if !q.is_zero() {
                    rows[i] = &rows[i] - &rows[top].scaled(&q);
                    let scaled: Vec<BigInt> = u[top].iter().map(|c| c * &q).collect();
                    for (a, s) in u[i].iter_mut().zip(scaled) {
                        *a -= s;
                    }
                }
            }
            pivot_cols.push(col);
            top += 1;
            if top == r {
                break;
            }
        }
    }
    let basis_rows: Vec<IntVector> = rows[..top].to_vec();
    let basis_combos: Vec<Vec<BigInt>> = u[..top].to_vec();
    let kernel_combos: Vec<Vec<BigInt>> = u[top..].to_vec();
    debug_assert!(rows[top..].iter().all(|r| r.is_zero()));
    HnfDecomposition {
        basis: LatticeBasis {
            rows: basis_rows,
            pivot_cols,
            dim,
        },
        basis_combos,
        kernel_combos,
    }
}

/// Quotient rounding to nearest (ties toward zero), which keeps the
/// Euclidean descent in the HNF loop fast.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let double = &r * 2i32;
    if double.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}
