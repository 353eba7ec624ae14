use proptest::prelude::*;
use qspine::linkdiag::{slide_fixture_catalog, standard_link, BraidWord, FramedLink};
use qspine::presentation::{parse, random_presentation, RandomBounds};
use qspine::skein::{jones_wenzl, Evaluator, JwCache, TLVector};
use qspine::{CategoryData, RingElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cat(p: u64) -> CategoryData {
    CategoryData::sl2_class0(p).unwrap()
}

fn link(strands: usize, letters: &[i32], offsets: &[i64]) -> FramedLink {
    FramedLink::new(
        BraidWord::new(strands, letters.to_vec()).unwrap(),
        vec![false; offsets.len()],
        offsets.to_vec(),
    )
    .unwrap()
}

/// Direct Temperley-Lieb evaluation: cable the braid, put `JW` at the bottom of
/// the first strand of each component, multiply out every elementary crossing
/// and take the Markov closure.
fn tl_oracle(cat: &CategoryData, jw: &JwCache, l: &FramedLink, coloring: &[u32]) -> RingElem {
    let p = cat.p();
    let n = l.braid().strands();
    let widths: Vec<usize> = (0..n)
        .map(|s| cat.weight(coloring[l.component_of_strand(s)]) as usize)
        .collect();
    let total: usize = widths.iter().sum();
    let mut seen = vec![false; l.num_components()];
    let mut acc = TLVector::identity(p, 0);
    for s in 0..n {
        let c = l.component_of_strand(s);
        let block = if seen[c] {
            TLVector::identity(p, widths[s])
        } else {
            jw.get(widths[s]).unwrap().clone()
        };
        seen[c] = true;
        acc = acc.tensor(&block);
    }
    let mut at: Vec<usize> = (0..n).collect();
    for &letter in l.braid().letters() {
        let j = letter.unsigned_abs() as usize;
        let sign = letter.signum() as i8;
        let start: usize = at[..j - 2].iter().map(|&s| widths[s]).sum();
        let (a, b) = (widths[at[j - 2]], widths[at[j - 1]]);
        // the a-cable moves right across the b-cable, one diagonal per strand
        for t in (0..a).rev() {
            for u in 0..b {
                acc = acc
                    .compose(&TLVector::crossing(p, total, start + t + u, sign))
                    .unwrap();
            }
        }
        at.swap(j - 2, j - 1);
    }
    let mut value = acc.trace();
    for (c, &z) in coloring.iter().enumerate() {
        value = value.shift(l.offsets()[c] * cat.twist_exp(z) as i64);
    }
    value
}

fn colorings(k: u32, c: usize) -> Vec<Vec<u32>> {
    (0..k.pow(c as u32))
        .map(|mut i| {
            (0..c)
                .map(|_| {
                    let z = i % k;
                    i /= k;
                    z
                })
                .collect()
        })
        .collect()
}

fn small_braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2..=max_strands).prop_flat_map(move |s| {
        let letter = (2..=s as i32, any::<bool>()).prop_map(|(j, neg)| if neg { -j } else { j });
        (Just(s), prop::collection::vec(letter, 0..=max_len))
    })
}

#[test]
fn jones_wenzl_projectors() {
    for (p, max) in [(5u32, 2usize), (7, 4), (11, 6)] {
        let jw = JwCache::up_to(p, max).unwrap();
        for w in 0..=max {
            let f = jw.get(w).unwrap();
            assert_eq!(f.compose(f).unwrap(), *f, "idempotent p={p} w={w}");
            for i in 0..w.saturating_sub(1) {
                let e = TLVector::e(p, w, i);
                assert!(
                    f.compose(&e).unwrap().is_empty(),
                    "cap above p={p} w={w} i={i}"
                );
                assert!(
                    e.compose(f).unwrap().is_empty(),
                    "cup below p={p} w={w} i={i}"
                );
            }
            let sign = if w % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                f.trace(),
                qspine::cyclo::quantum_int(p, w as i64 + 1).mul_int(sign)
            );
        }
    }
}

#[test]
fn projector_trace_is_rank() {
    for p in [5u64, 7, 11] {
        let c = cat(p);
        let jw = JwCache::up_to(p as u32, if p == 11 { 6 } else { p as usize - 3 }).unwrap();
        for z in c
            .labels()
            .filter(|&z| c.weight(z) as usize <= jw.max_weight())
        {
            assert_eq!(&jw.get(c.weight(z) as usize).unwrap().trace(), c.rank(z));
        }
    }
}

#[test]
fn p11_top_projector() {
    let f = jones_wenzl(11, 8).unwrap();
    let c = cat(11);
    assert_eq!(&f.trace(), c.rank(4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fast_evaluator_matches_tl_oracle((s, letters) in small_braid(3, 5), p in prop::sample::select(vec![5u64, 7])) {
        let c = cat(p);
        let jw = JwCache::new(p as u32).unwrap();
        let e = Evaluator::new(c.clone());
        let base = FramedLink::closure(BraidWord::new(s, letters).unwrap());
        let offsets: Vec<i64> = (0..base.num_components() as i64).map(|i| i - 1).collect();
        let l = FramedLink::new(base.braid().clone(), vec![false; offsets.len()], offsets).unwrap();
        for col in colorings(c.num_labels() as u32, l.num_components()) {
            let width: u32 = (0..s).map(|st| c.weight(col[l.component_of_strand(st)])).sum();
            if width > 6 {
                continue;
            }
            prop_assert_eq!(e.eval_colored(&l, &col).unwrap(), tl_oracle(&c, &jw, &l, &col), "coloring {:?}", col);
        }
    }

    #[test]
    fn reidemeister_moves((s, letters) in small_braid(4, 5), pos in any::<prop::sample::Index>(), j in 2i32..=4) {
        let e = Evaluator::new(cat(5));
        let j = 2 + (j - 2) % (s as i32 - 1);
        let base = FramedLink::closure(BraidWord::new(s, letters.clone()).unwrap());
        let zero = vec![0; base.num_components()];
        let want = e.z(&base).unwrap();
        let at = pos.index(letters.len() + 1);
        let mut r2 = letters.clone();
        r2.splice(at..at, [j, -j]);
        prop_assert_eq!(e.z(&link(s, &r2, &zero)).unwrap(), want.clone());
        if s >= 3 && j < s as i32 {
            let (k, m) = (j, j + 1);
            let mut left = letters.clone();
            left.splice(at..at, [k, m, k]);
            let mut right = letters.clone();
            right.splice(at..at, [m, k, m]);
            let l = FramedLink::closure(BraidWord::new(s, left).unwrap());
            let r = FramedLink::closure(BraidWord::new(s, right).unwrap());
            prop_assert_eq!(e.z(&l).unwrap(), e.z(&r).unwrap());
        }
    }

    #[test]
    fn undotted_flips_and_twists_keep_phi(seed in any::<u64>()) {
        let e = Evaluator::new(cat(5));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pres = random_presentation(&mut rng, &RandomBounds { max_cells: 5, ..RandomBounds::default() });
        let l = standard_link(&pres);
        let want = e.zhat(&l).unwrap().phi_p();
        let mut cur = l.clone();
        for _ in 0..3 {
            let undotted: Vec<usize> = (0..cur.num_components()).filter(|&c| !cur.dotted()[c]).collect();
            if undotted.is_empty() {
                break;
            }
            let c = undotted[rng.gen_range(0..undotted.len())];
            cur = cur.add_framing_twist(c, if rng.gen_bool(0.5) { 1 } else { -1 }).unwrap();
        }
        let free: Vec<usize> =
            (0..cur.braid().letters().len()).filter(|&i| !cur.flip_crossing(i).unwrap().1).collect();
        for _ in 0..free.len().min(2) {
            cur = cur.flip_crossing(free[rng.gen_range(0..free.len())]).unwrap().0;
        }
        prop_assert_eq!(e.zhat(&cur).unwrap().phi_p(), want);
    }
}

#[test]
fn kink_calibration() {
    for p in [5u64, 7, 11] {
        let c = cat(p);
        let e = Evaluator::new(c.clone());
        for (sign, dir) in [(2i32, 1i64), (-2, -1)] {
            let kink = link(2, &[sign], &[0]);
            for z in c
                .labels()
                .filter(|&z| 2 * c.weight(z) as usize <= e.guard())
            {
                let want = c.rank(z).shift(dir * c.twist_exp(z) as i64);
                assert_eq!(
                    e.eval_colored(&kink, &[z]).unwrap(),
                    want,
                    "p={p} z={z} sign={sign}"
                );
            }
        }
    }
}

#[test]
fn slide_pairs_agree() {
    for p in [5u64, 7] {
        let e = Evaluator::new(cat(p));
        for pair in slide_fixture_catalog() {
            assert_eq!(
                e.z(&pair.left).unwrap(),
                e.z(&pair.right).unwrap(),
                "p={p}: {}",
                pair.name
            );
        }
    }
}

#[test]
fn hopf_killing_property() {
    for p in [5u64, 7, 11] {
        let c = cat(p);
        let e = Evaluator::new(c.clone());
        let hopf = link(2, &[2, 2], &[0, 0]);
        for b in c.labels() {
            let mut sum = RingElem::zero(p as u32);
            for a in c.labels() {
                if c.weight(a) + c.weight(b) > e.guard() as u32 {
                    continue;
                }
                sum = &sum + &(c.rank(a) * &e.eval_colored(&hopf, &[a, b]).unwrap());
            }
            if 2 * (p as u32 - 3) > e.guard() as u32 {
                continue;
            }
            let want = if b == 0 {
                c.global_dim().clone()
            } else {
                RingElem::zero(p as u32)
            };
            assert_eq!(sum, want, "p={p} b={b}");
        }
    }
}

#[test]
fn c_plus_c_minus_is_global_dim() {
    for p in [5u64, 7] {
        let c = cat(p);
        let e = Evaluator::new(c.clone());
        let (cp, cm) = c.c_constants();
        assert_eq!(&e.z(&link(1, &[], &[1])).unwrap(), cp);
        assert_eq!(&e.z(&link(1, &[], &[-1])).unwrap(), cm);
        assert_eq!(&(cp * cm), c.global_dim());
    }
}

#[test]
fn split_union_multiplies() {
    let e = Evaluator::new(cat(5));
    let a = link(2, &[2, 2, 2], &[1]);
    let b = link(2, &[-2, -2], &[0, 1]);
    assert_eq!(
        e.z(&a.disjoint_union(&b)).unwrap(),
        &e.z(&a).unwrap() * &e.z(&b).unwrap()
    );
}

#[test]
fn first_kirby_move_leaves_rtw_unchanged() {
    for p in [5u64, 7] {
        let e = Evaluator::new(cat(p));
        for l in [
            link(2, &[2, 2], &[1, 0]),
            link(2, &[2, 2, 2], &[0]),
            link(1, &[], &[0]),
        ] {
            let base = e.z_rtw(&l).unwrap();
            for s in [1i64, -1] {
                let more = l.disjoint_union(&link(1, &[], &[s]));
                assert_eq!(e.z_rtw(&more).unwrap(), base, "p={p} sign={s}");
            }
        }
    }
}

#[test]
fn duality_of_thickenings() {
    let c = cat(5);
    let e = Evaluator::new(c.clone());
    for text in [
        "<x | x^2>",
        "<x | x^3>",
        "<x, y | x^2, y^3>",
        "<x |>",
        "<x, y | x y>",
    ] {
        let p = parse(text).unwrap();
        let d = p.dual();
        let lhs =
            &c.global_dim().pow(p.num_generators() as u64) * &e.zhat(&standard_link(&p)).unwrap();
        let rhs =
            &c.global_dim().pow(d.num_generators() as u64) * &e.zhat(&standard_link(&d)).unwrap();
        assert_eq!(lhs, rhs, "{text}");
    }
}

#[test]
fn dotted_flip_can_change_the_invariant() {
    let e = Evaluator::new(cat(7));
    let l = standard_link(&parse("<x | x^3>").unwrap());
    let (flipped, dotted) = l.flip_crossing(0).unwrap();
    assert!(dotted);
    assert_ne!(
        e.zhat(&l).unwrap().phi_p(),
        e.zhat(&flipped).unwrap().phi_p()
    );
}
