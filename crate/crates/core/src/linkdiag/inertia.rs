use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{LinkError, Result};

/// Numbers of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Coefficients `c_0, ..., c_n` of `det(t I - M) = sum c_i t^i` (Faddeev-LeVerrier).
pub fn char_poly(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(&a, &next);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
        mk = next;
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn sign_changes(seq: impl Iterator<Item = BigInt>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in seq.filter(|c| !c.is_zero()) {
        let pos = c.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Inertia of a symmetric integer matrix. All roots of the characteristic
/// polynomial are real, so Descartes' rule of signs counts them exactly.
pub fn signature_counts(m: &[Vec<i64>]) -> Result<Inertia> {
    let n = m.len();
    for i in 0..n {
        if m[i].len() != n || (0..i).any(|j| m[i][j] != m[j][i]) {
            return Err(LinkError::NotSymmetric);
        }
    }
    let c = char_poly(m);
    let zero = c.iter().take_while(|x| x.is_zero()).count();
    let positive = sign_changes(c.iter().cloned());
    let negative = sign_changes(
        c.iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }),
    );
    Ok(Inertia {
        positive,
        negative,
        zero,
    })
}
