//! Link states (cup diagrams) spanning the standard modules of the
//! Temperley-Lieb algebra, and the action of the generators `e_i` on them.

use rustc_hash::FxHashMap;

pub(crate) const DEFECT: u8 = u8::MAX;

/// Result of `e_i` acting on a basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Action {
    /// Two defects would be joined; zero in the standard module.
    Zero,
    /// The state already has the cup `(i, i+1)`: a closed loop appears.
    Loop,
    /// The image is another basis state.
    Move(u32),
}

/// Basis of the standard module with `width` points and `defects` through-strands.
#[derive(Debug)]
pub(crate) struct StateSpace {
    pub width: usize,
    pub states: Vec<Vec<u8>>,
    /// `actions[i][s]` describes `e_i` applied to state `s`, `0 <= i < width - 1`.
    pub actions: Vec<Vec<Action>>,
}

impl StateSpace {
    pub fn new(width: usize, defects: usize) -> Self {
        assert!(width < DEFECT as usize);
        let mut states = Vec::new();
        let mut cur = vec![DEFECT; width];
        enumerate(0, defects, &mut Vec::new(), &mut cur, &mut states);
        let index: FxHashMap<&[u8], u32> = states
            .iter()
            .enumerate()
            .map(|(k, s)| (s.as_slice(), k as u32))
            .collect();
        let actions = (0..width.saturating_sub(1))
            .map(|i| {
                states
                    .iter()
                    .map(|s| match apply_e(s, i) {
                        Applied::Zero => Action::Zero,
                        Applied::Loop => Action::Loop,
                        Applied::State(t) => Action::Move(index[t.as_slice()]),
                    })
                    .collect()
            })
            .collect();
        StateSpace {
            width,
            states,
            actions,
        }
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// Indices of states with no cup joining two points of the same block,
    /// blocks being consecutive runs of the given sizes.
    pub fn admissible(&self, blocks: &[usize]) -> Vec<usize> {
        let mut block_of = Vec::with_capacity(self.width);
        for (b, &w) in blocks.iter().enumerate() {
            block_of.extend(std::iter::repeat_n(b, w));
        }
        debug_assert_eq!(block_of.len(), self.width);
        (0..self.states.len())
            .filter(|&k| {
                self.states[k]
                    .iter()
                    .enumerate()
                    .all(|(a, &b)| b == DEFECT || block_of[a] != block_of[b as usize])
            })
            .collect()
    }
}

fn enumerate(
    pos: usize,
    defects: usize,
    open: &mut Vec<usize>,
    cur: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    let width = cur.len();
    let remaining = width - pos;
    let placed_defects = cur[..pos]
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x == DEFECT)
        .count()
        - open.len();
    let need_defects = defects - placed_defects.min(defects);
    if placed_defects > defects || open.len() + need_defects > remaining {
        return;
    }
    if pos == width {
        if open.is_empty() && placed_defects == defects {
            out.push(cur.clone());
        }
        return;
    }
    // close the innermost open cup
    if let Some(a) = open.pop() {
        cur[a] = pos as u8;
        cur[pos] = a as u8;
        enumerate(pos + 1, defects, open, cur, out);
        cur[a] = DEFECT;
        cur[pos] = DEFECT;
        open.push(a);
    }
    // open a new cup
    open.push(pos);
    enumerate(pos + 1, defects, open, cur, out);
    open.pop();
    // through-strand, only outside every cup
    if open.is_empty() {
        enumerate(pos + 1, defects, open, cur, out);
    }
}

enum Applied {
    Zero,
    Loop,
    State(Vec<u8>),
}

fn apply_e(s: &[u8], i: usize) -> Applied {
    let (a, b) = (s[i], s[i + 1]);
    if a as usize == i + 1 {
        return Applied::Loop;
    }
    if a == DEFECT && b == DEFECT {
        return Applied::Zero;
    }
    let mut t = s.to_vec();
    match (a, b) {
        (DEFECT, b) => t[b as usize] = DEFECT,
        (a, DEFECT) => t[a as usize] = DEFECT,
        (a, b) => {
            t[a as usize] = b;
            t[b as usize] = a;
        }
    }
    t[i] = (i + 1) as u8;
    t[i + 1] = i as u8;
    Applied::State(t)
}
