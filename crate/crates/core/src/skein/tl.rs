//! The Temperley-Lieb algebra over `R` in the diagram basis, with loop value
//! `delta = -A^2 - A^-2 = -(v + v^-1)`, and Jones-Wenzl projectors.

use std::fmt;

use rustc_hash::FxHashMap;

use super::SkeinError;
use crate::cyclo::{quantum_int, RingElem};

/// Non-crossing perfect matching of `2n` boundary points: bottom points are
/// `0..n` left to right, top points `n..2n` left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarMatching {
    n: usize,
    partner: Vec<u8>,
}

impl PlanarMatching {
    pub fn new(n: usize, partner: Vec<u8>) -> Result<Self, SkeinError> {
        let bad = |msg: &str| SkeinError::InvalidMatching(msg.to_string());
        if partner.len() != 2 * n || n > 120 {
            return Err(bad("wrong number of points"));
        }
        for (a, &b) in partner.iter().enumerate() {
            let b = b as usize;
            if b >= 2 * n || b == a || partner[b] as usize != a {
                return Err(bad("not a perfect matching"));
            }
        }
        // cyclic boundary order: bottom left to right, then top right to left
        let cyc = |a: usize| if a < n { a } else { 3 * n - 1 - a };
        for a in 0..2 * n {
            let b = partner[a] as usize;
            let (lo, hi) = (cyc(a).min(cyc(b)), cyc(a).max(cyc(b)));
            for c in 0..2 * n {
                let x = cyc(c);
                let y = cyc(partner[c] as usize);
                if (lo < x && x < hi) != (lo < y && y < hi) {
                    return Err(bad("crossing arcs"));
                }
            }
        }
        Ok(PlanarMatching { n, partner })
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|a| ((a + n) % (2 * n)) as u8).collect();
        PlanarMatching { n, partner }
    }

    /// `e_i` joins bottom points `i, i+1` and top points `i, i+1`.
    pub fn e(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let mut m = Self::identity(n);
        m.partner[i] = (i + 1) as u8;
        m.partner[i + 1] = i as u8;
        m.partner[n + i] = (n + i + 1) as u8;
        m.partner[n + i + 1] = (n + i) as u8;
        m
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Stacks `upper` on top of `self`; returns the matching and the number of closed loops.
    pub fn compose(&self, upper: &PlanarMatching) -> (PlanarMatching, usize) {
        let n = self.n;
        assert_eq!(n, upper.n);
        let mut out = vec![0u8; 2 * n];
        let mut seen_mid = vec![false; n];
        // outer points: 0..n are self's bottom, n..2n are upper's top
        let follow = |start_lower: bool, point: usize, seen: &mut Vec<bool>| -> (bool, usize) {
            let (mut in_lower, mut q) = (start_lower, point);
            loop {
                let r = if in_lower {
                    self.partner(q)
                } else {
                    upper.partner(q)
                };
                match (in_lower, r < n) {
                    (true, true) => return (true, r),
                    (false, false) => return (false, r),
                    (true, false) => {
                        seen[r - n] = true;
                        in_lower = false;
                        q = r - n;
                    }
                    (false, true) => {
                        seen[r] = true;
                        in_lower = true;
                        q = r + n;
                    }
                }
            }
        };
        for a in 0..2 * n {
            let (_, end) = follow(a < n, a, &mut seen_mid);
            out[a] = end as u8;
        }
        let mut loops = 0;
        for m in 0..n {
            if seen_mid[m] {
                continue;
            }
            loops += 1;
            // walk the loop through middle point m
            let mut q = m;
            loop {
                seen_mid[q] = true;
                let r = self.partner(q + n) - n; // lower diagram: top point q+n to another top point
                seen_mid[r] = true;
                let s = upper.partner(r); // upper diagram: bottom point r to another bottom point
                if s == m {
                    break;
                }
                q = s;
            }
        }
        (PlanarMatching { n, partner: out }, loops)
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn tensor(&self, right: &PlanarMatching) -> PlanarMatching {
        let (a, b) = (self.n, right.n);
        let n = a + b;
        let map_l = |x: usize| if x < a { x } else { x - a + n };
        let map_r = |x: usize| if x < b { x + a } else { x - b + n + a };
        let mut partner = vec![0u8; 2 * n];
        for x in 0..2 * a {
            partner[map_l(x)] = map_l(self.partner(x)) as u8;
        }
        for x in 0..2 * b {
            partner[map_r(x)] = map_r(right.partner(x)) as u8;
        }
        PlanarMatching { n, partner }
    }

    /// Loops formed when each top point `i` is joined to bottom point `i`.
    pub fn closure_loops(&self) -> usize {
        let n = self.n;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut q = start;
            loop {
                seen[q] = true;
                let r = self.partner(q);
                seen[r] = true;
                let s = if r < n { r + n } else { r - n };
                if s == start {
                    break;
                }
                q = s;
            }
        }
        loops
    }
}

/// The bracket loop value `-(v + v^-1)`.
pub fn delta(p: u32) -> RingElem {
    RingElem::from_terms(p, [(1, -1), (-1, -1)])
}

/// Bracket parameter `A = v^((p-1)/2)`, so that `A^2 = v^-1`.
pub fn a_exponent(p: u32) -> i64 {
    (p as i64 - 1) / 2
}

/// Formal combination of planar matchings with coefficients in `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLVector {
    p: u32,
    width: usize,
    terms: FxHashMap<PlanarMatching, RingElem>,
}

impl TLVector {
    pub fn zero(p: u32, width: usize) -> Self {
        TLVector {
            p,
            width,
            terms: FxHashMap::default(),
        }
    }

    pub fn from_matching(p: u32, m: PlanarMatching, c: RingElem) -> Self {
        let mut v = Self::zero(p, m.width());
        v.add_term(m, c);
        v
    }

    pub fn identity(p: u32, width: usize) -> Self {
        Self::from_matching(p, PlanarMatching::identity(width), RingElem::one(p))
    }

    pub fn e(p: u32, width: usize, i: usize) -> Self {
        Self::from_matching(p, PlanarMatching::e(width, i), RingElem::one(p))
    }

    /// Bracket expansion of the crossing on strands `i, i+1`:
    /// `A + A^-1 e_i` for `sign = +1`, `A^-1 + A e_i` for `sign = -1`.
    pub fn crossing(p: u32, width: usize, i: usize, sign: i8) -> Self {
        let a = a_exponent(p) * sign as i64;
        let mut v =
            Self::from_matching(p, PlanarMatching::identity(width), RingElem::monomial(p, a));
        v.add_term(PlanarMatching::e(width, i), RingElem::monomial(p, -a));
        v
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PlanarMatching) -> RingElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| RingElem::zero(self.p))
    }

    /// Terms sorted by matching.
    pub fn terms(&self) -> Vec<(&PlanarMatching, &RingElem)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| a.0.cmp(b.0));
        t
    }

    pub fn add_term(&mut self, m: PlanarMatching, c: RingElem) {
        assert_eq!(m.width(), self.width);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &TLVector) -> Result<TLVector, SkeinError> {
        self.check_width(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RingElem) -> TLVector {
        let mut out = Self::zero(self.p, self.width);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    fn check_width(&self, other: &TLVector) -> Result<(), SkeinError> {
        if self.width != other.width {
            Err(SkeinError::WidthMismatch(self.width, other.width))
        } else {
            Ok(())
        }
    }

    /// `upper` stacked on top of `self`.
    pub fn compose(&self, upper: &TLVector) -> Result<TLVector, SkeinError> {
        self.check_width(upper)?;
        let d = delta(self.p);
        let mut dpow = vec![RingElem::one(self.p)];
        let mut out = Self::zero(self.p, self.width);
        for (m1, c1) in self.terms() {
            for (m2, c2) in upper.terms() {
                let (m, loops) = m1.compose(m2);
                while dpow.len() <= loops {
                    let next = dpow.last().unwrap() * &d;
                    dpow.push(next);
                }
                out.add_term(m, &(c1 * c2) * &dpow[loops]);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, right: &TLVector) -> TLVector {
        let mut out = Self::zero(self.p, self.width + right.width);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &right.terms {
                out.add_term(m1.tensor(m2), c1 * c2);
            }
        }
        out
    }

    /// Markov closure: every top point joined to the bottom point below it.
    pub fn trace(&self) -> RingElem {
        let d = delta(self.p);
        let mut acc = RingElem::zero(self.p);
        for (m, c) in &self.terms {
            acc = &acc + &(c * &d.pow(m.closure_loops() as u64));
        }
        acc
    }
}

impl fmt::Display for TLVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (m, c)) in self.terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{:?}", m.partner)?;
        }
        Ok(())
    }
}

/// Jones-Wenzl projectors `JW_0..=JW_max` by the Wenzl recursion
/// `JW_{k+1} = JW_k (x) 1 + ([k]/[k+1]) (JW_k (x) 1) e_k (JW_k (x) 1)`.
#[derive(Debug, Clone)]
pub struct JwCache {
    p: u32,
    jw: Vec<TLVector>,
}

impl JwCache {
    /// Projectors up to `JW_(p-3)`, the largest weight that labels a simple object.
    pub fn new(p: u32) -> Result<Self, SkeinError> {
        Self::up_to(p, p as usize - 3)
    }

    pub fn up_to(p: u32, max: usize) -> Result<Self, SkeinError> {
        if max + 2 > p as usize {
            return Err(SkeinError::ColorOutOfRange(max as u32));
        }
        let mut jw = vec![TLVector::identity(p, 0)];
        if max >= 1 {
            jw.push(TLVector::identity(p, 1));
        }
        for k in 1..max {
            let x = jw[k].tensor(&TLVector::identity(p, 1));
            let xe = x.compose(&TLVector::e(p, k + 1, k - 1))?;
            let xex = xe.compose(&x)?;
            let c = quantum_int(p, k as i64).exact_div(&quantum_int(p, k as i64 + 1))?;
            jw.push(x.add(&xex.scale(&c))?);
        }
        Ok(JwCache { p, jw })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn max_weight(&self) -> usize {
        self.jw.len() - 1
    }

    pub fn get(&self, w: usize) -> Result<&TLVector, SkeinError> {
        self.jw.get(w).ok_or(SkeinError::ColorOutOfRange(w as u32))
    }
}

/// `JW_w` on its own.
pub fn jones_wenzl(p: u32, w: usize) -> Result<TLVector, SkeinError> {
    Ok(JwCache::up_to(p, w)?.jw.pop().unwrap())
}
