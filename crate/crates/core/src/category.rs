//! The class-0 SL(2) category at a `p`-th root of unity, stored as a table of
//! simple objects with their ranks and twist exponents.

use thiserror::Error;

use crate::cyclo::{self, gauss_sum, inv_mod, legendre, mod_p, quantum_int, v_minus_vinv};
use crate::cyclo::{CycloError, RingElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("{0} is divisible by p = {1}")]
    NDivisibleByP(i64, u32),
}

/// Simple objects are indexed by `z = 0..(p-3)/2`, of highest weight `w = 2z`.
#[derive(Debug, Clone)]
pub struct CategoryData {
    p: u32,
    ranks: Vec<RingElem>,
    twists: Vec<u64>,
    x2: RingElem,
    c_plus: RingElem,
    c_minus: RingElem,
}

impl CategoryData {
    pub fn sl2_class0(p: u64) -> Result<Self, CategoryError> {
        let p = cyclo::check_prime(p)?;
        let count = (p as usize - 1) / 2;
        let ranks: Vec<RingElem> = (0..count)
            .map(|z| quantum_int(p, 2 * z as i64 + 1))
            .collect();
        let twists: Vec<u64> = (0..count)
            .map(|z| {
                let z = z as i64;
                mod_p(-2 * z * (z + 1), p)
            })
            .collect();
        let mut x2 = RingElem::zero(p);
        let mut c_plus = RingElem::zero(p);
        let mut c_minus = RingElem::zero(p);
        for (r, &t) in ranks.iter().zip(&twists) {
            let r2 = r * r;
            c_plus = &c_plus + &r2.shift(t as i64);
            c_minus = &c_minus + &r2.shift(-(t as i64));
            x2 = &x2 + &r2;
        }
        Ok(CategoryData {
            p,
            ranks,
            twists,
            x2,
            c_plus,
            c_minus,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Labels `z`, one per simple object.
    pub fn labels(&self) -> std::ops::Range<u32> {
        0..self.ranks.len() as u32
    }

    pub fn num_labels(&self) -> usize {
        self.ranks.len()
    }

    /// Highest weight `w = 2z`, equal to the cable width of the label.
    pub fn weight(&self, z: u32) -> u32 {
        2 * z
    }

    pub fn rank(&self, z: u32) -> &RingElem {
        &self.ranks[z as usize]
    }

    /// `t(2z) = -2z(z+1) mod p`; the twist on label `z` is `v^t`.
    pub fn twist_exp(&self, z: u32) -> u64 {
        self.twists[z as usize]
    }

    pub fn twist(&self, z: u32) -> RingElem {
        RingElem::monomial(self.p, self.twist_exp(z) as i64)
    }

    /// `X^2 = sum r_z^2`.
    pub fn global_dim(&self) -> &RingElem {
        &self.x2
    }

    /// `(C+, C-)` with `C(+/-) = sum r_z^2 v^(+/- t(2z))`.
    pub fn c_constants(&self) -> (&RingElem, &RingElem) {
        (&self.c_plus, &self.c_minus)
    }

    /// `F(n) = sum_z [2z+1]^2 v^(-2nz(z+1))` by direct summation.
    pub fn f_sum(&self, n: i64) -> RingElem {
        let mut acc = RingElem::zero(self.p);
        let n = n.rem_euclid(self.p as i64);
        for (r, &t) in self.ranks.iter().zip(&self.twists) {
            acc = &acc + &(r * r).shift(n * t as i64);
        }
        acc
    }

    /// Gauss-sum form of `F(n)` for `n` prime to `p`:
    /// `(-n/2 | p) g_1 v^e [n'] / (v - v^-1)` with `n' = n^-1` and `e = (n^2 + 2)/(2n)` mod `p`.
    pub fn f_closed(&self, n: i64) -> Result<RingElem, CategoryError> {
        let p = self.p;
        let n_red = mod_p(n, p) as i64;
        if n_red == 0 {
            return Err(CategoryError::NDivisibleByP(n, p));
        }
        let pi = p as i64;
        let n_inv = inv_mod(n_red, p).unwrap() as i64;
        let two_inv = inv_mod(2, p).unwrap() as i64;
        let exponent = ((n_red * n_red + 2) % pi) * ((two_inv * n_inv) % pi) % pi;
        let sign = legendre((-n_red).rem_euclid(pi) * two_inv % pi, p) as i64;
        let numer = (&gauss_sum(p) * &quantum_int(p, n_inv))
            .shift(exponent)
            .mul_int(sign);
        Ok(numer.exact_div(&v_minus_vinv(p))?)
    }
}
