//! Integer arithmetic in `Z[x]/(x^p - 1)` on flat `i128` buffers, used in the
//! inner loop of the evaluator. Results are projected to `R` at the end.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cyclo::RingElem;

/// Coefficient magnitude above which a computation is abandoned.
pub(crate) const LIMIT: i128 = 1 << 110;

/// `dst += v^shift * src` for one element stored as `p` coefficients.
#[inline]
pub(crate) fn add_rotated(dst: &mut [i128], src: &[i128], shift: usize) {
    let p = src.len();
    let (head, tail) = src.split_at(p - shift);
    for (d, s) in dst[shift..].iter_mut().zip(head) {
        *d += *s;
    }
    for (d, s) in dst[..shift].iter_mut().zip(tail) {
        *d += *s;
    }
}

/// `dst -= v^shift * src`.
#[inline]
pub(crate) fn sub_rotated(dst: &mut [i128], src: &[i128], shift: usize) {
    let p = src.len();
    let (head, tail) = src.split_at(p - shift);
    for (d, s) in dst[shift..].iter_mut().zip(head) {
        *d -= *s;
    }
    for (d, s) in dst[..shift].iter_mut().zip(tail) {
        *d -= *s;
    }
}

/// Subtracts multiples of `1 + x + ... + x^(p-1)` so the top coefficient is 0,
/// and returns the largest remaining magnitude.
pub(crate) fn normalize(buf: &mut [i128], p: usize) -> i128 {
    let mut max = 0;
    for elem in buf.chunks_exact_mut(p) {
        let top = elem[p - 1];
        if top != 0 {
            for c in elem.iter_mut() {
                *c -= top;
            }
        }
        for c in elem.iter() {
            max = max.max(c.abs());
        }
    }
    max
}

pub(crate) fn to_ring(p: u32, elem: &[i128]) -> RingElem {
    RingElem::from_cyclic_ints(p, elem.iter().map(|&c| BigInt::from(c)).collect())
}

/// Integral ring element as `p` coefficients, if it fits.
pub(crate) fn from_ring(x: &RingElem) -> Option<Vec<i128>> {
    let ints = x.integer_coeffs()?;
    let mut out: Vec<i128> = ints.iter().map(|c| c.to_i128()).collect::<Option<_>>()?;
    out.push(0);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_matches_ring() {
        let p = 7u32;
        let x = RingElem::from_terms(p, [(0, 3), (2, -1), (5, 4)]);
        let xs = from_ring(&x).unwrap();
        for k in 0..p as usize {
            let mut acc = vec![0i128; p as usize];
            add_rotated(&mut acc, &xs, k);
            assert_eq!(to_ring(p, &acc), x.shift(k as i64));
            sub_rotated(&mut acc, &xs, k);
            assert!(to_ring(p, &acc).is_zero());
        }
    }

    #[test]
    fn normalize_keeps_class() {
        let mut buf = vec![1i128, 2, 3, 4, 5];
        let before = to_ring(5, &buf);
        normalize(&mut buf, 5);
        assert_eq!(buf[4], 0);
        assert_eq!(to_ring(5, &buf), before);
    }
}
