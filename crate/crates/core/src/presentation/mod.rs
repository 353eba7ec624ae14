//! Finite presentations `<x_1, ..., x_n | R_1, ..., R_m>` as combinatorial
//! 2-complexes with one 0-cell.

mod ac;
mod parse;
mod random;

use std::fmt;

use thiserror::Error;

pub use ac::{AcMove, MoveLimits};
pub use parse::parse;
pub use random::{random_presentation, RandomBounds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("letter refers to generator {0}, but there are only {1}")]
    GeneratorOutOfRange(usize, usize),
    #[error("invalid move: {0}")]
    InvalidMove(String),
}

pub type Result<T> = std::result::Result<T, PresentationError>;

/// `x_generator^sign` with `sign = +1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub sign: i8,
}

impl Letter {
    pub fn new(generator: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { generator, sign }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            sign: -self.sign,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign == -other.sign
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// `x_g^e` written as `|e|` letters.
    pub fn power(generator: usize, e: i64) -> Self {
        let sign = if e < 0 { -1 } else { 1 };
        Word {
            letters: vec![Letter::new(generator, sign); e.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last().is_some_and(|&top| top.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().letters;
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo].cancels(w[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: w[lo..hi].to_vec(),
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Total exponent of `generator`.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| l.sign as i64)
            .sum()
    }

    pub fn mentions(&self, generator: usize) -> bool {
        self.letters.iter().any(|l| l.generator == generator)
    }

    /// Maximal runs of equal letters as `(generator, signed exponent)`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        let mut prev: Option<Letter> = None;
        for &l in &self.letters {
            match out.last_mut() {
                Some(last) if prev == Some(l) => last.1 += l.sign as i64,
                _ => out.push((l.generator, l.sign as i64)),
            }
            prev = Some(l);
        }
        out
    }
}

/// A finite presentation; generator names are distinct identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(g) {
                return Err(PresentationError::InvalidName(g.clone()));
            }
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let n = generators.len();
        for r in &relators {
            if let Some(l) = r.letters.iter().find(|l| l.generator >= n) {
                return Err(PresentationError::GeneratorOutOfRange(l.generator, n));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Generators named `x1..xn` (or `x` alone when `n = 1`).
    pub fn with_default_names(n: usize, relators: Vec<Word>) -> Result<Self> {
        Presentation::new(default_names("x", n), relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn euler_char(&self) -> i64 {
        1 - self.generators.len() as i64 + self.relators.len() as i64
    }

    /// `m x n` matrix whose `(l, k)` entry is the exponent sum of `x_k` in `R_l`.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                (0..self.generators.len())
                    .map(|k| r.exponent_sum(k))
                    .collect()
            })
            .collect()
    }

    /// `<r_1..r_m | X_1..X_n>` with `X_k = r_1^(f_k^1) ... r_m^(f_k^m)`.
    pub fn dual(&self) -> Presentation {
        let f = self.exponent_matrix();
        let m = self.relators.len();
        let relators = (0..self.generators.len())
            .map(|k| {
                let mut w = Word::empty();
                for (l, row) in f.iter().enumerate() {
                    w = w.concat(&Word::power(l, row[k]));
                }
                w
            })
            .collect();
        Presentation {
            generators: default_names("r", m),
            relators,
        }
    }

    /// One-point union; clashing names from `other` get a `_2`, `_3`, ... suffix.
    pub fn wedge(&self, other: &Presentation) -> Presentation {
        let mut generators = self.generators.clone();
        for g in &other.generators {
            let mut name = g.clone();
            let mut k = 2;
            while generators.contains(&name) || (name != *g && other.generators.contains(&name)) {
                name = format!("{g}_{k}");
                k += 1;
            }
            generators.push(name);
        }
        let shift = self.generators.len();
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|r| {
            Word {
                letters: r
                    .letters
                    .iter()
                    .map(|l| Letter::new(l.generator + shift, l.sign))
                    .collect(),
            }
        }));
        Presentation {
            generators,
            relators,
        }
    }

    pub fn free_reduced(&self) -> Presentation {
        Presentation {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(Word::free_reduce).collect(),
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.syllables()
            .iter()
            .map(|&(g, e)| {
                let name = &self.generators[g];
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub(crate) fn push_generator(&mut self, name: String) -> usize {
        self.generators.push(name);
        self.generators.len() - 1
    }

    pub(crate) fn relators_mut(&mut self) -> &mut Vec<Word> {
        &mut self.relators
    }

    pub(crate) fn remove_generator(&mut self, g: usize) {
        self.generators.remove(g);
        for r in self.relators.iter_mut() {
            for l in r.letters.iter_mut() {
                if l.generator > g {
                    l.generator -= 1;
                }
            }
        }
    }
}

fn default_names(stem: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![stem.to_string()]
    } else {
        (1..=n).map(|i| format!("{stem}{i}")).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators.join(", ");
        let rels = self
            .relators
            .iter()
            .map(|r| self.format_word(r))
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "<")?;
        if !gens.is_empty() {
            write!(f, "{gens} ")?;
        }
        write!(f, "|")?;
        if !rels.is_empty() {
            write!(f, " {rels}")?;
        }
        write!(f, ">")
    }
}

impl std::str::FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
