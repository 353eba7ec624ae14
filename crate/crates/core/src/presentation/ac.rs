use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::{Letter, Presentation, PresentationError, Result, Word};

/// Andrews-Curtis moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AcMove {
    /// `R_i -> R_i^-1`.
    InvertRelator(usize),
    /// `R_i -> x_g^s R_i x_g^-s`.
    ConjugateRelator {
        relator: usize,
        generator: usize,
        sign: i8,
    },
    /// `R_i -> R_i R_j` for `i != j`.
    MultiplyRelator { target: usize, by: usize },
    /// Adds a fresh generator `g` together with the relator `g`.
    Stabilize,
    /// Removes a pair `(g, relator g^(+/-1))` where `g` occurs in no other relator.
    Destabilize,
}

impl fmt::Display for AcMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AcMove::InvertRelator(i) => write!(f, "invert R{i}"),
            AcMove::ConjugateRelator {
                relator,
                generator,
                sign,
            } => {
                write!(f, "conjugate R{relator} by x{generator}^{sign}")
            }
            AcMove::MultiplyRelator { target, by } => write!(f, "R{target} <- R{target} R{by}"),
            AcMove::Stabilize => write!(f, "stabilize"),
            AcMove::Destabilize => write!(f, "destabilize"),
        }
    }
}

/// Caps applied when sampling random moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveLimits {
    /// Upper bound on `n + m` after the move.
    pub max_cells: usize,
    pub max_relator_len: usize,
}

impl Default for MoveLimits {
    fn default() -> Self {
        MoveLimits {
            max_cells: usize::MAX,
            max_relator_len: usize::MAX,
        }
    }
}

impl Presentation {
    pub fn ac_move(&self, mv: AcMove) -> Result<Presentation> {
        let m = self.num_relators();
        let check = |i: usize| {
            if i < m {
                Ok(())
            } else {
                Err(PresentationError::InvalidMove(format!("no relator {i}")))
            }
        };
        let mut out = self.clone();
        match mv {
            AcMove::InvertRelator(i) => {
                check(i)?;
                out.relators_mut()[i] = self.relators()[i].inverse();
            }
            AcMove::ConjugateRelator {
                relator,
                generator,
                sign,
            } => {
                check(relator)?;
                if generator >= self.num_generators() {
                    return Err(PresentationError::InvalidMove(format!(
                        "no generator {generator}"
                    )));
                }
                if sign != 1 && sign != -1 {
                    return Err(PresentationError::InvalidMove(format!("sign {sign}")));
                }
                let g = Word::new(vec![Letter::new(generator, sign)]);
                out.relators_mut()[relator] =
                    g.concat(&self.relators()[relator]).concat(&g.inverse());
            }
            AcMove::MultiplyRelator { target, by } => {
                check(target)?;
                check(by)?;
                if target == by {
                    return Err(PresentationError::InvalidMove(
                        "relator multiplied by itself".into(),
                    ));
                }
                out.relators_mut()[target] = self.relators()[target].concat(&self.relators()[by]);
            }
            AcMove::Stabilize => {
                let name = fresh_name(self);
                let g = out.push_generator(name);
                out.relators_mut().push(Word::power(g, 1));
            }
            AcMove::Destabilize => {
                let (i, g) = self.destabilization().ok_or_else(|| {
                    PresentationError::InvalidMove("no stabilization pair".into())
                })?;
                out.relators_mut().remove(i);
                out.remove_generator(g);
            }
        }
        Ok(out.free_reduced())
    }

    /// Last relator that freely reduces to a single letter `g^(+/-1)` with `g`
    /// absent from every other relator.
    fn destabilization(&self) -> Option<(usize, usize)> {
        let reduced: Vec<Word> = self.relators().iter().map(Word::free_reduce).collect();
        (0..reduced.len()).rev().find_map(|i| {
            let [l] = reduced[i].letters() else {
                return None;
            };
            let alone = reduced
                .iter()
                .enumerate()
                .all(|(j, r)| j == i || !r.mentions(l.generator));
            alone.then_some((i, l.generator))
        })
    }

    /// Samples a move that applies to `self` and respects `limits`.
    pub fn random_move<R: Rng + ?Sized>(&self, rng: &mut R, limits: &MoveLimits) -> AcMove {
        let n = self.num_generators();
        let m = self.num_relators();
        let lens: Vec<usize> = self.relators().iter().map(Word::len).collect();
        for _ in 0..64 {
            let mv = match rng.gen_range(0..5) {
                0 if m > 0 => AcMove::InvertRelator(rng.gen_range(0..m)),
                1 if m > 0 && n > 0 => {
                    let relator = rng.gen_range(0..m);
                    if lens[relator] + 2 > limits.max_relator_len {
                        continue;
                    }
                    AcMove::ConjugateRelator {
                        relator,
                        generator: rng.gen_range(0..n),
                        sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                    }
                }
                2 if m > 1 => {
                    let target = rng.gen_range(0..m);
                    let by = (target + rng.gen_range(1..m)) % m;
                    if lens[target] + lens[by] > limits.max_relator_len {
                        continue;
                    }
                    AcMove::MultiplyRelator { target, by }
                }
                3 if n + m + 2 <= limits.max_cells => AcMove::Stabilize,
                4 if self.destabilization().is_some() => AcMove::Destabilize,
                _ => continue,
            };
            return mv;
        }
        if m > 0 {
            AcMove::InvertRelator(0)
        } else {
            AcMove::Stabilize
        }
    }
}

fn fresh_name(p: &Presentation) -> String {
    (1..)
        .map(|k| format!("s{k}"))
        .find(|s| !p.generators().contains(s))
        .unwrap()
}
