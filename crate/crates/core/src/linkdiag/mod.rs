//! Framed links presented as closures of braids, with dotted components
//! marking 1-handles.

mod format;
mod inertia;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{Letter, Presentation};

pub use format::parse_link;
pub use inertia::{char_poly, signature_counts, Inertia};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("letter {letter} is out of range for a {strands}-strand braid")]
    InvalidLetter { letter: i32, strands: usize },
    #[error("expected {expected} {what}, got {got}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, LinkError>;

/// A word in the braid generators `y_2..y_s`; letter `+j` is `y_j`, the positive
/// crossing of the strands in positions `j-1` and `j`, and `-j` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            let j = l.unsigned_abs() as usize;
            if j < 2 || j > strands {
                return Err(LinkError::InvalidLetter { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// `end[s]`: bottom position `s` (0-based) arrives at top position `end[s]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let j = l.unsigned_abs() as usize;
            at.swap(j - 2, j - 1);
        }
        let mut end = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            end[s] = pos;
        }
        end
    }

    /// For each letter, the strands (named by bottom position) in positions `j-1` and `j`.
    pub fn crossing_strands(&self) -> Vec<(usize, usize)> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        self.letters
            .iter()
            .map(|&l| {
                let j = l.unsigned_abs() as usize;
                let pair = (at[j - 2], at[j - 1]);
                at.swap(j - 2, j - 1);
                pair
            })
            .collect()
    }
}

/// `r_{j,k} = y_{j+1} y_{j+2} ... y_k`, empty when `j >= k`.
pub fn r_word(j: usize, k: usize) -> Vec<i32> {
    (j + 1..=k).map(|i| i as i32).collect()
}

/// Image of the letter `x_k^sign` under `psi_j` in a braid on `m + n` strands:
/// `r y_{m+k}^(2 sign) r^-1` with `r = r_{j,m+k-1}`, which carries the relator
/// strand `j` next to the generator strand `m + k` and back.
pub fn psi(j: usize, k: usize, m: usize, sign: i8) -> Vec<i32> {
    let r = r_word(j, m + k - 1);
    let y = (m + k) as i32 * sign as i32;
    let mut out = r.clone();
    out.extend([y, y]);
    out.extend(r.iter().rev().map(|&l| -l));
    out
}

fn closure_components(braid: &BraidWord) -> (Vec<usize>, usize) {
    let end = braid.permutation();
    let mut component_of = vec![usize::MAX; braid.strands()];
    let mut c = 0;
    for s in 0..braid.strands() {
        if component_of[s] != usize::MAX {
            continue;
        }
        let mut t = s;
        while component_of[t] == usize::MAX {
            component_of[t] = c;
            t = end[t];
        }
        c += 1;
    }
    (component_of, c)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FramedLink {
    braid: BraidWord,
    /// Component of each strand, by bottom position.
    component_of: Vec<usize>,
    num_components: usize,
    dotted: Vec<bool>,
    offsets: Vec<i64>,
}

impl FramedLink {
    /// Components are the closure cycles, numbered in order of their lowest strand.
    pub fn new(braid: BraidWord, dotted: Vec<bool>, offsets: Vec<i64>) -> Result<Self> {
        let (component_of, c) = closure_components(&braid);
        for (what, got) in [
            ("dotted flags", dotted.len()),
            ("framing offsets", offsets.len()),
        ] {
            if got != c {
                return Err(LinkError::CountMismatch {
                    what,
                    expected: c,
                    got,
                });
            }
        }
        Ok(FramedLink {
            braid,
            component_of,
            num_components: c,
            dotted,
            offsets,
        })
    }

    /// Closure with all components undotted and blackboard framed.
    pub fn closure(braid: BraidWord) -> Self {
        let (component_of, c) = closure_components(&braid);
        FramedLink {
            braid,
            component_of,
            num_components: c,
            dotted: vec![false; c],
            offsets: vec![0; c],
        }
    }

    /// `k` split unknots with the given offsets.
    pub fn unlink(offsets: Vec<i64>, dotted: Vec<bool>) -> Result<Self> {
        FramedLink::new(BraidWord::new(offsets.len(), Vec::new())?, dotted, offsets)
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn component_of_strand(&self, s: usize) -> usize {
        self.component_of[s]
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_components];
        for (s, &c) in self.component_of.iter().enumerate() {
            out[c].push(s);
        }
        out
    }

    pub fn dotted(&self) -> &[bool] {
        &self.dotted
    }

    pub fn num_dotted(&self) -> usize {
        self.dotted.iter().filter(|&&d| d).count()
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// `(component, component, sign)` per letter.
    pub fn crossings(&self) -> Vec<(usize, usize, i8)> {
        self.braid
            .crossing_strands()
            .into_iter()
            .zip(self.braid.letters())
            .map(|((a, b), &l)| (self.component_of[a], self.component_of[b], l.signum() as i8))
            .collect()
    }

    pub fn self_writhe(&self, c: usize) -> i64 {
        self.crossings()
            .iter()
            .filter(|x| x.0 == c && x.1 == c)
            .map(|x| x.2 as i64)
            .sum()
    }

    pub fn framing(&self, c: usize) -> i64 {
        self.self_writhe(c) + self.offsets[c]
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let c = self.num_components;
        let mut twice = vec![vec![0i64; c]; c];
        for (a, b, s) in self.crossings() {
            if a != b {
                twice[a][b] += s as i64;
                twice[b][a] += s as i64;
            }
        }
        (0..c)
            .map(|i| {
                (0..c)
                    .map(|j| {
                        if i == j {
                            self.framing(i)
                        } else {
                            twice[i][j] / 2
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Negates letter `index`; the flag reports whether a dotted component passes through it.
    pub fn flip_crossing(&self, index: usize) -> Result<(FramedLink, bool)> {
        if index >= self.braid.letters.len() {
            return Err(LinkError::IndexOutOfRange(index));
        }
        let (a, b, _) = self.crossings()[index];
        let mut out = self.clone();
        out.braid.letters[index] = -out.braid.letters[index];
        Ok((out, self.dotted[a] || self.dotted[b]))
    }

    pub fn add_framing_twist(&self, component: usize, sign: i64) -> Result<FramedLink> {
        if component >= self.num_components {
            return Err(LinkError::IndexOutOfRange(component));
        }
        let mut out = self.clone();
        out.offsets[component] += sign;
        Ok(out)
    }

    /// Split union; the components of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &FramedLink) -> FramedLink {
        let s = self.braid.strands;
        let mut letters = self.braid.letters.clone();
        letters.extend(
            other
                .braid
                .letters
                .iter()
                .map(|&l| l + l.signum() * s as i32),
        );
        let braid = BraidWord {
            strands: s + other.braid.strands,
            letters,
        };
        let dotted = [self.dotted.clone(), other.dotted.clone()].concat();
        let offsets = [self.offsets.clone(), other.offsets.clone()].concat();
        FramedLink::new(braid, dotted, offsets).expect("component counts add")
    }
}

/// The thickening link `L_P`: closure of `psi_1(R_1) ... psi_m(R_m)` on `m + n`
/// strands, relator strands `1..m` undotted, generator strands `m+1..m+n` dotted.
pub fn standard_link(p: &Presentation) -> FramedLink {
    let m = p.num_relators();
    let n = p.num_generators();
    let mut letters = Vec::new();
    for (j, r) in p.relators().iter().enumerate() {
        for &Letter { generator, sign } in r.letters() {
            letters.extend(psi(j + 1, generator + 1, m, sign));
        }
    }
    let braid = BraidWord::new(m + n, letters).expect("psi letters lie in range");
    let dotted = (0..m + n).map(|s| s >= m).collect();
    FramedLink::new(braid, dotted, vec![0; m + n]).expect("pure braid")
}

/// Two links related by handle slides.
#[derive(Debug, Clone)]
pub struct SlidePair {
    pub name: String,
    pub left: FramedLink,
    pub right: FramedLink,
}

fn link(strands: usize, letters: &[i32], offsets: &[i64]) -> FramedLink {
    let braid = BraidWord::new(strands, letters.to_vec()).unwrap();
    FramedLink::new(braid, vec![false; offsets.len()], offsets.to_vec()).unwrap()
}

fn torus_2(l: usize, offsets: &[i64]) -> FramedLink {
    link(2, &vec![2; 2 * l], offsets)
}

/// Hand-checked pairs of framed links that differ by a handle slide.
pub fn slide_fixture_catalog() -> Vec<SlidePair> {
    let mut out = Vec::new();
    for n in 1..=4i64 {
        // second component slid off the first along an anti-parallel band
        out.push(SlidePair {
            name: format!("T(2,{}) framed ({n},0) ~ unlink ({n},{})", 2 * n, -n),
            left: torus_2(n as usize, &[n, 0]),
            right: link(2, &[], &[n, -n]),
        });
    }
    out.push(SlidePair {
        name: "Hopf (0,0) ~ Hopf (2,0)".into(),
        left: torus_2(1, &[0, 0]),
        right: link(3, &[2, 3, 3], &[1, 0]),
    });
    out.push(SlidePair {
        name: "Hopf (0,0) ~ Hopf (-2,0)".into(),
        left: torus_2(1, &[0, 0]),
        right: link(3, &[-2, 3, 3], &[-1, 0]),
    });
    for (a, b) in [(1i64, 1i64), (2, 1), (-1, 2)] {
        out.push(SlidePair {
            name: format!("T(2,{}) framed ({},{b}) ~ unlink ({a},{b})", 2 * b, a + b),
            left: torus_2(b as usize, &[a + b, b]),
            right: link(2, &[], &[a, b]),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse;

    #[test]
    fn r_and_psi() {
        assert!(r_word(1, 1).is_empty());
        assert_eq!(r_word(1, 3), vec![2, 3]);
        assert!(r_word(2, 2).is_empty());
        assert_eq!(psi(1, 1, 1, 1), vec![2, 2]);
        assert_eq!(psi(1, 1, 1, -1), vec![-2, -2]);
        assert_eq!(psi(1, 2, 1, 1), vec![2, 3, 3, -2]);
        assert_eq!(psi(1, 1, 2, 1), vec![2, 3, 3, -2]);
        assert_eq!(psi(2, 1, 2, 1), vec![3, 3]);
    }

    #[test]
    fn cyclic_thickening() {
        let l = standard_link(&parse("<x | x^3>").unwrap());
        assert_eq!(l.braid().letters(), &[2; 6]);
        assert_eq!(l.dotted(), &[false, true]);
        assert_eq!(l.linking_matrix(), vec![vec![0, 3], vec![3, 0]]);
    }

    #[test]
    fn commutator_thickening() {
        let l = standard_link(&parse("<x,y | x y x^-1 y^-1>").unwrap());
        assert_eq!(
            l.braid().letters(),
            &[2, 2, 2, 3, 3, -2, -2, -2, 2, -3, -3, -2]
        );
        assert_eq!(l.num_components(), 3);
        assert_eq!(l.linking_matrix(), vec![vec![0; 3]; 3]);
        assert_eq!(l.dotted(), &[false, true, true]);
    }

    #[test]
    fn trivial_relator_thickening() {
        let l = standard_link(&parse("<x,y | 1>").unwrap());
        assert!(l.braid().letters().is_empty());
        assert_eq!(l.num_components(), 3);
        assert_eq!(l.num_dotted(), 2);
    }

    #[test]
    fn components_and_framings() {
        let l = link(3, &[2, 3, 3], &[1, 0]);
        assert_eq!(l.components(), vec![vec![0, 1], vec![2]]);
        assert_eq!(l.self_writhe(0), 1);
        assert_eq!(l.linking_matrix(), vec![vec![2, 1], vec![1, 0]]);
        assert!(FramedLink::new(
            BraidWord::new(2, vec![2]).unwrap(),
            vec![false; 2],
            vec![0; 2]
        )
        .is_err());
        assert!(BraidWord::new(2, vec![3]).is_err());
        assert!(BraidWord::new(2, vec![1]).is_err());
    }

    #[test]
    fn mutations() {
        let l = standard_link(&parse("<x | x^2>").unwrap());
        let (f, dotted) = l.flip_crossing(1).unwrap();
        assert!(dotted);
        assert_eq!(f.linking_matrix(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(f.flip_crossing(1).unwrap().0, l);
        assert!(l.flip_crossing(4).is_err());
        let u = FramedLink::unlink(vec![0], vec![false]).unwrap();
        assert_eq!(
            u.add_framing_twist(0, 1).unwrap().linking_matrix(),
            vec![vec![1]]
        );
        assert!(u.add_framing_twist(1, 1).is_err());
        let (s, dotted) = link(2, &[2, 2, 2], &[3]).flip_crossing(0).unwrap();
        assert!(!dotted);
        assert_eq!(s.linking_matrix(), vec![vec![4]]);
    }

    #[test]
    fn catalog_shape() {
        let cat = slide_fixture_catalog();
        assert!(cat.len() >= 5);
        for pair in &cat {
            assert_eq!(
                pair.left.num_components(),
                pair.right.num_components(),
                "{}",
                pair.name
            );
            assert_eq!(pair.left.dotted(), pair.right.dotted());
            let a = signature_counts(&pair.left.linking_matrix()).unwrap();
            let b = signature_counts(&pair.right.linking_matrix()).unwrap();
            assert_eq!(a, b, "{}", pair.name);
        }
    }

    #[test]
    fn union() {
        let a = link(2, &[2, 2], &[0, 1]);
        let b = link(3, &[2, 3, 3], &[1, 0]);
        let u = a.disjoint_union(&b);
        assert_eq!(u.num_components(), 4);
        assert_eq!(u.braid().letters(), &[2, 2, 4, 5, 5]);
        assert_eq!(u.offsets(), &[0, 1, 1, 0]);
    }
}
