use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::vec::IntVector;

/// Exact determinant of a square integer matrix given as a list of rows,
/// computed by fraction-free (Bareiss) elimination. No rounding anywhere.
///
/// Small matrices with small entries take an `i128` fast path; the result is
/// identical because the path is only taken when a Hadamard-style bound
/// proves that no intermediate minor can overflow.
///
/// Panics on non-square input.
pub fn det(rows: &[IntVector]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    for r in rows {
        assert_eq!(r.dim(), n, "det requires a square matrix");
    }
    if let Some(small) = to_i128_checked(rows) {
        return BigInt::from(bareiss_i128(small));
    }
    let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    bareiss_big(m)
}

/// Rank over the rationals of an arbitrary list of integer vectors.
pub fn rank(vs: &[IntVector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let n = vs[0].dim();
    let mut m: Vec<Vec<BigRational>> = vs
        .iter()
        .map(|v| {
            assert_eq!(v.dim(), n, "mixed dimensions in rank");
            v.coords()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let pivot = (rank..m.len()).find(|&i| !m[i][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = &m[i][col] / &m[rank][col];
                for j in col..n {
                    let delta = &factor * &m[rank][j];
                    m[i][j] = &m[i][j] - delta;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Determinant of `d` vectors that all lie in the lattice spanned by the
/// `d` rows of `basis`, computed in the coordinates of that basis. The
/// coordinates are integral by assumption (the basis generates a lattice
/// containing the vectors); non-integral coordinates are a caller error.
pub fn det_in_span(vectors: &[IntVector], basis: &[IntVector]) -> BigInt {
    assert_eq!(vectors.len(), basis.len(), "det_in_span needs d vectors");
    let coords: Vec<IntVector> = vectors
        .iter()
        .map(|v| {
            let q = super::solve::solve_exact(basis, v)
                .expect("vector outside the span of the basis");
            q.to_integer()
                .expect("vector has non-integral coordinates in the lattice basis")
        })
        .collect();
    det(&coords)
}

/// Convert to an `i128` matrix when every entry fits and the Hadamard bound
/// certifies that every minor arising in Bareiss elimination stays below
/// `2^126` in absolute value.
fn to_i128_checked(rows: &[IntVector]) -> Option<Vec<Vec<i128>>> {
    let n = rows.len() as u64;
    let mut max_bits: u64 = 1;
    let mut m = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = Vec::with_capacity(rows.len());
        for c in r.coords() {
            let v = i64::try_from(c).ok()?;
            max_bits = max_bits.max(c.abs().bits());
            row.push(v as i128);
        }
        m.push(row);
    }
    // |minor| <= n^(n/2) * B^n, so bits(minor) <= n*bits(B) + n*ceil(log2 n)/2 + n
    let log_n = 64 - n.leading_zeros() as u64;
    let bound_bits = n * max_bits + n * log_n / 2 + n;
    if bound_bits < 126 {
        Some(m)
    } else {
        None
    }
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let last = m[n - 1][n - 1].clone();
    if negate {
        -last
    } else {
        last
    }
}
