//! Fraction-free (Bareiss) elimination over ℤ.
//!
//! Kept deliberately separate from the Gauss-Jordan code in `matrix.rs`: it
//! is the second rank route used when a computed result disagrees with a
//! published table and needs an independent confirmation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Matrix, Scalar};

/// Rank of a rational matrix via integer Bareiss elimination.
pub fn rank_fraction_free(m: &Matrix<Scalar>) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let lcm = m.row(r).iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
            m.row(r).iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();

    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn matches_textbook_examples() {
        let m = Matrix::from_rows(vec![
            vec![q(1, 2), q(1, 3), q(1, 4)],
            vec![q(1, 1), q(2, 3), q(1, 2)],
            vec![q(0, 1), q(1, 5), q(0, 1)],
        ]);
        assert_eq!(rank_fraction_free(&m), 2);
        assert_eq!(rank_fraction_free(&Matrix::<Scalar>::identity(4)), 4);
        assert_eq!(rank_fraction_free(&Matrix::<Scalar>::zeros(2, 5)), 0);
    }
}
