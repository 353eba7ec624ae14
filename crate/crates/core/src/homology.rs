//! Integer homology of presentation complexes and the closed-form mod-`p`
//! invariant it determines.

use serde::Serialize;
use thiserror::Error;

use crate::category::CategoryData;
use crate::cyclo::{inv_mod, CycloError};
use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("Euler characteristic {0} < 1: the homological formula does not apply")]
    ChiTooSmall(i64),
    #[error("cyclic order must be positive, got {0}")]
    NonPositiveOrder(i64),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Rank and invariant factors `d_1 | d_2 | ... | d_rank` (all positive).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub rank: usize,
    pub divisors: Vec<i128>,
}

pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let piv = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(piv);
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(piv);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                // a remainder smaller than the pivot sits in row or column t
                let col_min = min_entry(&a, t..rows, t..t + 1);
                let row_min = min_entry(&a, t..t + 1, t..cols);
                let (i, j) = match (col_min, row_min) {
                    (Some(c), Some(r)) if a[r.0][r.1].abs() < a[c.0][c.1].abs() => r,
                    (Some(c), _) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!(),
                };
                a.swap(t, i);
                swap_cols(&mut a, t, j);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        t += 1;
    }
    let divisors: Vec<i128> = (0..t).map(|i| a[i][i].abs()).collect();
    SmithForm { rank: t, divisors }
}

fn min_entry(
    a: &[Vec<i128>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<i128>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `H_1 = Z^b1 + torsion`, `H_2 = Z^b2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub b1: usize,
    pub b2: usize,
    pub torsion: Vec<u64>,
    pub t1: u64,
}

pub fn homology_of(p: &Presentation) -> HomologySummary {
    let snf = smith_normal_form(&p.exponent_matrix());
    let torsion: Vec<u64> = snf
        .divisors
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| u64::try_from(d).expect("torsion coefficient fits in u64"))
        .collect();
    HomologySummary {
        b1: p.num_generators() - snf.rank,
        b2: p.num_relators() - snf.rank,
        t1: torsion.iter().product(),
        torsion,
    }
}

/// `phi_p(F(q) F(-q) / X^2)`, the invariant of `<x | x^q>`.
pub fn q_invariant_cyclic(cat: &CategoryData, q: i64) -> Result<u64, HomologyError> {
    if q < 1 {
        return Err(HomologyError::NonPositiveOrder(q));
    }
    let prod = &cat.f_sum(q) * &cat.f_sum(-q);
    Ok(prod.exact_div(cat.global_dim())?.phi_p())
}

/// `0` if `b2 > 0` or `p | t1`, else `t1^-2 mod p`.
pub fn q_invariant_homological(
    cat: &CategoryData,
    pres: &Presentation,
) -> Result<u64, HomologyError> {
    let chi = pres.euler_char();
    if chi < 1 {
        return Err(HomologyError::ChiTooSmall(chi));
    }
    Ok(homological_value(cat.p(), &homology_of(pres)))
}

pub(crate) fn homological_value(p: u32, h: &HomologySummary) -> u64 {
    if h.b2 > 0 {
        return 0;
    }
    match inv_mod((h.t1 % p as u64) as i64, p) {
        Some(inv) => inv * inv % p as u64,
        None => 0,
    }
}

/// Homotopy-type normal form `(wedge of b1 circles) v (cyclic pieces) v (wedge of b2 spheres)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WedgeNormalForm {
    pub circles: usize,
    pub spheres: usize,
    /// Orders of the cyclic factors `<x | x^q>`, each a prime power, sorted.
    pub cyclic: Vec<u64>,
}

pub fn wedge_normal_form(pres: &Presentation) -> WedgeNormalForm {
    let h = homology_of(pres);
    let mut cyclic: Vec<u64> = h
        .torsion
        .iter()
        .flat_map(|&d| prime_power_parts(d))
        .collect();
    cyclic.sort_unstable();
    WedgeNormalForm {
        circles: h.b1,
        spheres: h.b2,
        cyclic,
    }
}

fn prime_power_parts(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut q = 1;
            while n.is_multiple_of(d) {
                n /= d;
                q *= d;
            }
            out.push(q);
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Product over the wedge normal form of `1` per circle, `0` per sphere and
/// the cyclic invariant per cyclic factor.
pub fn q_invariant_generic(cat: &CategoryData, pres: &Presentation) -> Result<u64, HomologyError> {
    let chi = pres.euler_char();
    if chi < 1 {
        return Err(HomologyError::ChiTooSmall(chi));
    }
    let nf = wedge_normal_form(pres);
    if nf.spheres > 0 {
        return Ok(0);
    }
    let p = cat.p() as u64;
    let mut acc = 1;
    for &q in &nf.cyclic {
        acc = acc * q_invariant_cyclic(cat, q as i64)? % p;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse;

    fn cat(p: u64) -> CategoryData {
        CategoryData::sl2_class0(p).unwrap()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            smith_normal_form(&[vec![2]]),
            SmithForm {
                rank: 1,
                divisors: vec![2]
            }
        );
        assert_eq!(
            smith_normal_form(&[vec![2, 0], vec![0, 3]]).divisors,
            vec![1, 6]
        );
        assert_eq!(smith_normal_form(&[vec![0, 0], vec![0, 0]]).rank, 0);
        assert_eq!(smith_normal_form(&[]).rank, 0);
        assert_eq!(
            smith_normal_form(&[vec![4, 6], vec![6, 4]]).divisors,
            vec![2, 10]
        );
        assert_eq!(
            smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).divisors,
            vec![2, 6, 12]
        );
    }

    #[test]
    fn homology_examples() {
        let h = homology_of(&parse("<x | x^3>").unwrap());
        assert_eq!((h.b1, h.b2, h.t1), (0, 0, 3));
        let h = homology_of(&parse("<x,y | x y x^-1 y^-1>").unwrap());
        assert_eq!((h.b1, h.b2, h.t1), (2, 1, 1));
        let h = homology_of(&parse("<x,y|>").unwrap());
        assert_eq!((h.b1, h.b2, h.t1), (2, 0, 1));
        let h = homology_of(&parse("<x,y | x^2, y^5>").unwrap());
        assert_eq!(h.torsion, vec![10]);
    }

    #[test]
    fn cyclic_values() {
        assert_eq!(q_invariant_cyclic(&cat(5), 5).unwrap(), 0);
        assert_eq!(q_invariant_cyclic(&cat(5), 3).unwrap(), 4);
        assert_eq!(q_invariant_cyclic(&cat(7), 1).unwrap(), 1);
        assert!(q_invariant_cyclic(&cat(7), 0).is_err());
    }

    #[test]
    fn homological_values() {
        let c5 = cat(5);
        assert_eq!(
            q_invariant_homological(&c5, &parse("<x | x^3>").unwrap()).unwrap(),
            4
        );
        assert_eq!(
            q_invariant_homological(&c5, &parse("<x,y | x^2, y^5>").unwrap()).unwrap(),
            0
        );
        assert_eq!(
            q_invariant_homological(&c5, &parse("<| 1>").unwrap()).unwrap(),
            0
        );
        assert_eq!(
            q_invariant_homological(&c5, &parse("<x,y | x y x^-1 y^-1>").unwrap()),
            Err(HomologyError::ChiTooSmall(0))
        );
    }

    #[test]
    fn normal_forms() {
        let nf = wedge_normal_form(&parse("<x | x^6>").unwrap());
        assert_eq!(
            nf,
            WedgeNormalForm {
                circles: 0,
                spheres: 0,
                cyclic: vec![2, 3]
            }
        );
        assert_eq!(wedge_normal_form(&parse("<x,y|>").unwrap()).circles, 2);
        assert_eq!(wedge_normal_form(&parse("<|1>").unwrap()).spheres, 1);
        assert_eq!(prime_power_parts(360), vec![8, 9, 5]);
        assert_eq!(
            q_invariant_generic(&cat(5), &parse("<x | x^6>").unwrap()).unwrap(),
            1
        );
    }
}
