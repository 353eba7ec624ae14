use rand::Rng;

use super::{Letter, Presentation, Word};

/// Size bounds for [`random_presentation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomBounds {
    pub max_generators: usize,
    pub max_relators: usize,
    pub max_relator_len: usize,
    /// Upper bound on `n + m`, the strand count of the thickening link.
    pub max_cells: usize,
    /// Probability of insisting on Euler characteristic at least 1.
    pub chi_positive_bias: f64,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds {
            max_generators: 3,
            max_relators: 4,
            max_relator_len: 8,
            max_cells: 7,
            chi_positive_bias: 2.0 / 3.0,
        }
    }
}

impl RandomBounds {
    pub fn chi_positive(self) -> Self {
        RandomBounds {
            chi_positive_bias: 1.0,
            ..self
        }
    }
}

/// Random presentation with freely reduced relators, generators named `x1..xn`.
pub fn random_presentation<R: Rng + ?Sized>(rng: &mut R, b: &RandomBounds) -> Presentation {
    let max_n = b.max_generators.min(b.max_cells);
    let mut want_chi = rng.gen_bool(b.chi_positive_bias.clamp(0.0, 1.0));
    if max_n == 0 {
        want_chi = true;
    }
    loop {
        let n = if max_n == 0 || rng.gen_ratio(1, 8) {
            0
        } else {
            rng.gen_range(1..=max_n)
        };
        let room = b.max_relators.min(b.max_cells - n);
        let m = match (want_chi, n) {
            (true, _) if room < n => continue,
            (true, _) => rng.gen_range(n..=room),
            (false, 0) => continue,
            (false, _) => rng.gen_range(0..n.min(room + 1)),
        };
        let relators = (0..m)
            .map(|_| {
                if n == 0 {
                    return Word::empty();
                }
                let len = rng.gen_range(1..=b.max_relator_len.max(1));
                let letters = (0..len)
                    .map(|_| {
                        Letter::new(rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 })
                    })
                    .collect();
                Word::new(letters).free_reduce()
            })
            .collect();
        return Presentation::new((1..=n).map(|i| format!("x{i}")).collect(), relators)
            .expect("generated names are distinct");
    }
}
