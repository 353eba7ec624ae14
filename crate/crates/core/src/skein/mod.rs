//! Cabled Kauffman-bracket evaluation of colored framed braid closures and
//! the invariants built from it.
//!
//! A component colored by label `z` is replaced by `2z` parallel strands
//! carrying the projector `JW_2z`, and each crossing of cables expands into
//! elementary crossings `A + A^-1 e_i`. The closed diagram is evaluated as a
//! Markov trace, written as `sum_j Delta_j tr(W_j)` over the standard modules
//! `W_j`. Projectors slide along cables and annihilate every cup inside a
//! cable, so on `W_j` the trace of the decorated braid equals the sum of its
//! diagonal entries over states without such cups; the projectors never need
//! to be expanded.

mod fast;
mod linkstate;
pub mod tl;

use std::sync::OnceLock;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::category::CategoryData;
use crate::cyclo::{gauss_sum, quantum_int, v_minus_vinv, CycloError, FieldElem, RingElem};
use crate::linkdiag::{signature_counts, standard_link, FramedLink, LinkError};
use crate::presentation::Presentation;
use linkstate::{Action, StateSpace};

pub use tl::{jones_wenzl, JwCache, PlanarMatching, TLVector};

pub const DEFAULT_GUARD: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("widths {0} and {1} differ")]
    WidthMismatch(usize, usize),
    #[error("invalid planar matching: {0}")]
    InvalidMatching(String),
    #[error("color {0} is not a label of the category")]
    ColorOutOfRange(u32),
    #[error("expected {expected} colors, got {got}")]
    ColoringLength { expected: usize, got: usize },
    #[error("total cable width {width} exceeds the guard {guard}")]
    CableTooWide { width: usize, guard: usize },
    #[error("intermediate coefficients exceed the fixed-width range")]
    CoefficientOverflow,
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

pub type Result<T> = std::result::Result<T, SkeinError>;

/// Evaluator bound to one category, with cached standard-module tables.
pub struct Evaluator {
    cat: CategoryData,
    guard: usize,
    mirror: bool,
    spaces: Vec<OnceLock<StateSpace>>,
}

impl Evaluator {
    pub fn new(cat: CategoryData) -> Self {
        Self::with_guard(cat, DEFAULT_GUARD)
    }

    pub fn with_guard(cat: CategoryData, guard: usize) -> Self {
        let spaces = (0..(guard + 1) * (guard + 1))
            .map(|_| OnceLock::new())
            .collect();
        Evaluator {
            cat,
            guard,
            mirror: false,
            spaces,
        }
    }

    /// Evaluates every crossing with the opposite sign.
    pub fn mirrored(mut self, mirror: bool) -> Self {
        self.mirror = mirror;
        self
    }

    pub fn category(&self) -> &CategoryData {
        &self.cat
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    fn space(&self, width: usize, defects: usize) -> &StateSpace {
        self.spaces[width * (self.guard + 1) + defects]
            .get_or_init(|| StateSpace::new(width, defects))
    }

    /// Largest total cable width over all colorings of `link`.
    pub fn max_width(&self, link: &FramedLink) -> usize {
        link.braid().strands() * (self.cat.p() as usize - 3)
    }

    fn check_width(&self, width: usize) -> Result<()> {
        if width > self.guard {
            Err(SkeinError::CableTooWide {
                width,
                guard: self.guard,
            })
        } else {
            Ok(())
        }
    }

    /// Scalar value of `link` with component `i` colored by label `coloring[i]`.
    pub fn eval_colored(&self, link: &FramedLink, coloring: &[u32]) -> Result<RingElem> {
        let p = self.cat.p();
        Ok(fast::to_ring(p, &self.eval_colored_fast(link, coloring)?))
    }

    fn eval_colored_fast(&self, link: &FramedLink, coloring: &[u32]) -> Result<Vec<i128>> {
        let p = self.cat.p() as usize;
        if coloring.len() != link.num_components() {
            return Err(SkeinError::ColoringLength {
                expected: link.num_components(),
                got: coloring.len(),
            });
        }
        if let Some(&z) = coloring
            .iter()
            .find(|&&z| z as usize >= self.cat.num_labels())
        {
            return Err(SkeinError::ColorOutOfRange(z));
        }
        let strands = link.braid().strands();
        let widths: Vec<usize> = (0..strands)
            .map(|s| self.cat.weight(coloring[link.component_of_strand(s)]) as usize)
            .collect();
        let total: usize = widths.iter().sum();
        self.check_width(total)?;
        let ops = self.elementary_crossings(link, &widths);
        let mut value = self.trace(total, &widths, &ops)?;
        let mut twist = 0i64;
        for (c, &z) in coloring.iter().enumerate() {
            twist += link.offsets()[c] * self.cat.twist_exp(z) as i64;
        }
        let shift = twist.rem_euclid(p as i64) as usize;
        if shift != 0 {
            let mut rotated = vec![0; p];
            fast::add_rotated(&mut rotated, &value, shift);
            value = rotated;
        }
        Ok(value)
    }

    /// Elementary crossings `(i, sign)` of the cabled braid, bottom to top.
    fn elementary_crossings(&self, link: &FramedLink, widths: &[usize]) -> Vec<(usize, i8)> {
        let mut at: Vec<usize> = (0..widths.len()).collect();
        let mut ops = Vec::new();
        for &l in link.braid().letters() {
            let j = l.unsigned_abs() as usize;
            let sign = if (l > 0) != self.mirror { 1 } else { -1 };
            let start: usize = at[..j - 2].iter().map(|&s| widths[s]).sum();
            let (a, b) = (widths[at[j - 2]], widths[at[j - 1]]);
            // strands of the left cable cross the right cable, rightmost first
            for t in (0..a).rev() {
                for u in 0..b {
                    ops.push((start + t + u, sign));
                }
            }
            at.swap(j - 2, j - 1);
        }
        ops
    }

    fn trace(&self, total: usize, widths: &[usize], ops: &[(usize, i8)]) -> Result<Vec<i128>> {
        let p = self.cat.p() as usize;
        let mut acc = vec![0i128; p];
        if total == 0 {
            acc[0] = 1;
            return Ok(acc);
        }
        let h = (p - 1) / 2;
        let (a, a_inv) = (h, p - h);
        let a3 = 3 * h % p;
        let a_inv3 = (p - a3) % p;
        for j in (total % 2..=total).step_by(2) {
            let space = self.space(total, j);
            let adm = space.admissible(widths);
            if adm.is_empty() {
                continue;
            }
            let dim = space.dim();
            let cols = adm.len();
            let cp = cols * p;
            let mut x = vec![0i128; dim * cp];
            let mut y = vec![0i128; dim * cp];
            for (c, &s) in adm.iter().enumerate() {
                x[s * cp + c * p] = 1;
            }
            for (step, &(i, sign)) in ops.iter().enumerate() {
                let (id_shift, e_shift, loop_shift) = if sign > 0 {
                    (a, a_inv, a_inv3)
                } else {
                    (a_inv, a, a3)
                };
                y.fill(0);
                let actions = &space.actions[i];
                for s in 0..dim {
                    let src = &x[s * cp..(s + 1) * cp];
                    if src.iter().all(Zero::is_zero) {
                        continue;
                    }
                    match actions[s] {
                        Action::Loop => {
                            let dst = &mut y[s * cp..(s + 1) * cp];
                            for c in 0..cols {
                                fast::sub_rotated(
                                    &mut dst[c * p..(c + 1) * p],
                                    &src[c * p..(c + 1) * p],
                                    loop_shift,
                                );
                            }
                        }
                        Action::Zero => {
                            let dst = &mut y[s * cp..(s + 1) * cp];
                            for c in 0..cols {
                                fast::add_rotated(
                                    &mut dst[c * p..(c + 1) * p],
                                    &src[c * p..(c + 1) * p],
                                    id_shift,
                                );
                            }
                        }
                        Action::Move(t) => {
                            let t = t as usize;
                            {
                                let dst = &mut y[s * cp..(s + 1) * cp];
                                for c in 0..cols {
                                    fast::add_rotated(
                                        &mut dst[c * p..(c + 1) * p],
                                        &src[c * p..(c + 1) * p],
                                        id_shift,
                                    );
                                }
                            }
                            let dst = &mut y[t * cp..(t + 1) * cp];
                            for c in 0..cols {
                                fast::add_rotated(
                                    &mut dst[c * p..(c + 1) * p],
                                    &src[c * p..(c + 1) * p],
                                    e_shift,
                                );
                            }
                        }
                    }
                }
                std::mem::swap(&mut x, &mut y);
                if step % 8 == 7 && fast::normalize(&mut x, p) > fast::LIMIT {
                    return Err(SkeinError::CoefficientOverflow);
                }
            }
            let mut tr = vec![0i128; p];
            for (c, &s) in adm.iter().enumerate() {
                for k in 0..p {
                    tr[k] += x[s * cp + c * p + k];
                }
            }
            fast::normalize(&mut tr, p);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let weight =
                fast::from_ring(&quantum_int(p as u32, j as i64 + 1).mul_int(sign)).unwrap();
            for (k, &d) in weight.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                for (m, &t) in tr.iter().enumerate() {
                    acc[(k + m) % p] += d * t;
                }
            }
            if fast::normalize(&mut acc, p) > fast::LIMIT {
                return Err(SkeinError::CoefficientOverflow);
            }
        }
        Ok(acc)
    }

    /// `Z(L) = sum over colorings of (prod rank) * eval_colored`, dots ignored.
    pub fn z(&self, link: &FramedLink) -> Result<RingElem> {
        self.check_width(self.max_width(link))?;
        let c = link.num_components();
        let k = self.cat.num_labels();
        let total = (k as u64)
            .checked_pow(c as u32)
            .expect("coloring count fits in u64");
        let p = self.cat.p();
        let terms: Vec<RingElem> = (0..total)
            .into_par_iter()
            .map(|idx| {
                let mut coloring = vec![0u32; c];
                let mut rest = idx;
                for slot in coloring.iter_mut() {
                    *slot = (rest % k as u64) as u32;
                    rest /= k as u64;
                }
                let value = fast::to_ring(p, &self.eval_colored_fast(link, &coloring)?);
                let mut w = RingElem::one(p);
                for &z in &coloring {
                    w = &w * self.cat.rank(z);
                }
                Ok(&w * &value)
            })
            .collect::<Result<_>>()?;
        Ok(terms.iter().fold(RingElem::zero(p), |acc, t| &acc + t))
    }

    /// `Z(L) / X^(2n)` with `n` the number of dotted components.
    pub fn zhat(&self, link: &FramedLink) -> Result<RingElem> {
        let z = self.z(link)?;
        let x2n = self.cat.global_dim().pow(link.num_dotted() as u64);
        Ok(z.exact_div(&x2n)?)
    }

    /// Surgery normalization `Z(L) / (C+^s+ C-^s- X^s0)` of the dots-forgotten link.
    pub fn z_rtw(&self, link: &FramedLink) -> Result<RtwValue> {
        let z = self.z(link)?;
        let sig = signature_counts(&link.linking_matrix())?;
        let (cp, cm) = self.cat.c_constants();
        let x2 = self.cat.global_dim();
        let denom = &(&cp.pow(sig.positive as u64) * &cm.pow(sig.negative as u64))
            * &x2.pow(sig.zero.div_ceil(2) as u64);
        let coefficient = z.to_field().checked_div(&denom.to_field())?;
        Ok(RtwValue {
            coefficient,
            x_power: (sig.zero % 2) as u32,
        })
    }

    /// `phi_p(zhat(L_P))`.
    pub fn z_q(&self, pres: &Presentation) -> Result<u64> {
        Ok(self.zhat(&standard_link(pres))?.phi_p())
    }

    /// All skein-side data of the thickening of `pres`.
    pub fn report(&self, pres: &Presentation) -> Result<SkeinReport> {
        let link = standard_link(pres);
        let z = self.z(&link)?;
        let x2n = self.cat.global_dim().pow(link.num_dotted() as u64);
        let zhat = z.exact_div(&x2n)?;
        Ok(SkeinReport {
            z_q: zhat.phi_p(),
            ohtsuki: zhat.ohtsuki_coeffs(),
            z,
            zhat,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeinReport {
    pub z: RingElem,
    pub zhat: RingElem,
    pub z_q: u64,
    pub ohtsuki: Vec<u64>,
}

/// `coefficient * X^x_power`, where `X` is the positive formal square root of
/// `X^2`. For `p = 1 mod 4`, `X` does not lie in `Q(v)`, so it is kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RtwValue {
    pub coefficient: FieldElem,
    pub x_power: u32,
}

impl RtwValue {
    /// The value as a field element, substituting `X = g_1 / (v - v^-1)` when
    /// that is a square root of `X^2` (`p = 3 mod 4`).
    pub fn explicit(&self) -> Option<FieldElem> {
        if self.x_power == 0 {
            return Some(self.coefficient.clone());
        }
        let p = self.coefficient.p();
        if p % 4 != 3 {
            return None;
        }
        let x = gauss_sum(p)
            .to_field()
            .checked_div(&v_minus_vinv(p).to_field())
            .ok()?;
        self.coefficient.checked_mul(&x).ok()
    }
}

impl std::fmt::Display for RtwValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.x_power, self.coefficient.is_one()) {
            (0, _) => write!(f, "{}", self.coefficient),
            (_, true) => write!(f, "X"),
            _ => write!(f, "({}) * X", self.coefficient),
        }
    }
}
