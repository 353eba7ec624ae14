use std::fmt::{self, Write as _};
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use qspine::cyclo::{gauss_sum, inv_mod, quantum_int, v_minus_vinv};
use qspine::homology::{homology_of, q_invariant_homological, HomologyError};
use qspine::linkdiag::{parse_link, signature_counts, BraidWord};
use qspine::presentation::{parse, random_presentation, MoveLimits, RandomBounds};
use qspine::skein::{Evaluator, SkeinError};
use qspine::{CategoryData, FramedLink, Presentation, RingElem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Method, OutputFormat, RunConfig};
use crate::report::*;

/// Everything that ends a command with a nonzero exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or unreadable input: exit 1.
    Usage(String),
    /// ChiTooSmall or the width guard: exit 2.
    Refusal(String),
    /// A verification or fuzz check failed: exit 3. The report still goes to stdout.
    Check { report: String, msg: String },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Refusal(_) => 2,
            Failure::Check { .. } => 3,
        }
    }

    pub fn stdout(&self) -> Option<&str> {
        match self {
            Failure::Check { report, .. } => Some(report),
            _ => None,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Refusal(m) | Failure::Check { msg: m, .. } => {
                f.write_str(m)
            }
        }
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::ChiTooSmall(_) => Failure::Refusal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<SkeinError> for Failure {
    fn from(e: SkeinError) -> Self {
        match e {
            SkeinError::CableTooWide { .. } | SkeinError::CoefficientOverflow => {
                Failure::Refusal(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_presentation(path: &Path) -> Result<Presentation> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_link(path: &Path) -> Result<FramedLink> {
    parse_link(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn category(p: u64) -> Result<CategoryData> {
    CategoryData::sl2_class0(p).map_err(|e| Failure::Usage(e.to_string()))
}

fn ms(since: Instant) -> f64 {
    (since.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn timing_text(t: &Timing) -> String {
    let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v:.3} ms")).collect();
    format!("timing: {}\n", parts.join(", "))
}

pub fn invariant(path: &Path, cfg: &RunConfig) -> Result<String> {
    let pres = read_presentation(path)?;
    let cat = category(cfg.p)?;
    let method = cfg
        .method
        .unwrap_or_else(|| Method::default_for(pres.euler_char()));
    let mut timing = Timing::new();

    let t = Instant::now();
    let homology = homology_of(&pres);
    let homology_z_q = if method.uses_homology() {
        Some(q_invariant_homological(&cat, &pres)?)
    } else {
        None
    };
    timing.insert("homology", ms(t));

    let skein = if method.uses_skein() {
        let t = Instant::now();
        let r = Evaluator::with_guard(cat, cfg.guard).report(&pres)?;
        timing.insert("skein", ms(t));
        Some(SkeinPart {
            z: (&r.z).into(),
            zhat: (&r.zhat).into(),
            z_q: r.z_q,
            ohtsuki: r.ohtsuki,
        })
    } else {
        None
    };
    let agree = match (homology_z_q, &skein) {
        (Some(h), Some(s)) => Some(h == s.z_q),
        _ => None,
    };
    let report = InvariantReport {
        schema_version: SCHEMA_VERSION,
        command: "invariant",
        presentation: pres.to_string(),
        p: cfg.p,
        method: method.name(),
        euler_char: pres.euler_char(),
        homology,
        homology_z_q,
        skein,
        agree,
        timing_ms: cfg.timing.then_some(timing),
    };
    let out = match cfg.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Text => invariant_text(&report),
    };
    if agree == Some(false) {
        return Err(Failure::Check {
            report: out,
            msg: "homology and skein values disagree".into(),
        });
    }
    Ok(out)
}

fn invariant_text(r: &InvariantReport) -> String {
    let mut s = String::new();
    let h = &r.homology;
    writeln!(s, "presentation: {}", r.presentation).unwrap();
    writeln!(s, "p: {}", r.p).unwrap();
    writeln!(s, "euler characteristic: {}", r.euler_char).unwrap();
    writeln!(
        s,
        "homology: b1 = {}, b2 = {}, torsion = {:?}",
        h.b1, h.b2, h.torsion
    )
    .unwrap();
    writeln!(s, "method: {}", r.method).unwrap();
    if let Some(z) = r.homology_z_q {
        writeln!(s, "Z_Q (homology): {z}").unwrap();
    }
    if let Some(k) = &r.skein {
        writeln!(s, "Z(L_P): {}", k.z.text).unwrap();
        writeln!(s, "Zhat(W_P): {}", k.zhat.text).unwrap();
        writeln!(s, "Z_Q (skein): {}", k.z_q).unwrap();
        writeln!(s, "ohtsuki: {:?}", k.ohtsuki).unwrap();
    }
    if let Some(a) = r.agree {
        writeln!(s, "methods agree: {}", if a { "yes" } else { "NO" }).unwrap();
    }
    if let Some(t) = &r.timing_ms {
        s.push_str(&timing_text(t));
    }
    s
}

fn identity_checks(p: u64, cat: &CategoryData) -> Vec<IdentityCheck> {
    let q = p as u32;
    let pi = p as i64;
    let mut out = Vec::new();
    let mut check = |name: String, pass: bool| out.push(IdentityCheck { p, name, pass });

    let labels: Vec<u32> = cat.labels().collect();
    check("|S| = (p-1)/2".into(), labels.len() as u64 == (p - 1) / 2);
    check(
        "rank(z) = [2z+1], phi_p(rank(z)) = 2z+1".into(),
        labels.iter().all(|&z| {
            *cat.rank(z) == quantum_int(q, 2 * z as i64 + 1)
                && cat.rank(z).phi_p() == (2 * z as u64 + 1) % p
        }),
    );
    check(
        "t(2z) = -2z(z+1) mod p".into(),
        labels
            .iter()
            .all(|&z| cat.twist_exp(z) as i64 == (-2 * z as i64 * (z as i64 + 1)).rem_euclid(pi)),
    );
    let x2 = cat.global_dim();
    let sum_sq = labels.iter().fold(RingElem::zero(q), |acc, &z| {
        &acc + &(cat.rank(z) * cat.rank(z))
    });
    check("X^2 = sum rank^2".into(), *x2 == sum_sq);
    let d = v_minus_vinv(q);
    check(
        "X^2 (v - v^-1)^2 = -p".into(),
        x2 * &(&d * &d) == RingElem::from_int(q, -pi),
    );
    check("phi_p(X^2) = 0".into(), x2.phi_p() == 0);
    let (cp, cm) = cat.c_constants();
    check("C+ C- = X^2".into(), &(cp * cm) == x2);
    check("C- = conjugate(C+)".into(), *cm == cp.conjugate());
    let g = gauss_sum(q);
    let sign = if ((p - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    check(
        "g1^2 = (-1)^((p-1)/2) p".into(),
        &g * &g == RingElem::from_int(q, sign * pi),
    );
    check(
        "F(n) = F_closed(n), n = 1..2p coprime to p".into(),
        (1..=2 * pi)
            .filter(|n| n % pi != 0)
            .all(|n| cat.f_closed(n).is_ok_and(|c| c == cat.f_sum(n))),
    );
    check(
        "F(kp) = X^2, k = 0, 1, 2".into(),
        [0, pi, 2 * pi].iter().all(|&n| cat.f_sum(n) == *x2),
    );
    check(
        "F(n) = F(n + p)".into(),
        (1..pi).all(|n| cat.f_sum(n) == cat.f_sum(n + pi)),
    );
    check(
        "phi_p(F(n) F(-n) / X^2) = n^-2 mod p".into(),
        (1..pi).all(|n| {
            let inv = inv_mod(n, q).expect("n coprime to p");
            (&cat.f_sum(n) * &cat.f_sum(-n))
                .exact_div(x2)
                .is_ok_and(|r| r.phi_p() == inv * inv % p)
        }),
    );
    let e = Evaluator::new(cat.clone());
    let kink = FramedLink::closure(BraidWord::new(2, vec![2]).expect("valid braid"));
    check(
        "positive kink = theta * rank".into(),
        labels
            .iter()
            .filter(|&&z| 2 * cat.weight(z) as usize <= e.guard())
            .all(|&z| {
                e.eval_colored(&kink, &[z])
                    .is_ok_and(|v| v == cat.rank(z).shift(cat.twist_exp(z) as i64))
            }),
    );
    out
}

pub fn verify(primes: &[u64], format: OutputFormat, timing: bool) -> Result<String> {
    let t = Instant::now();
    let mut checks = Vec::new();
    let mut constants = Vec::new();
    for &p in primes {
        let cat = category(p)?;
        checks.extend(identity_checks(p, &cat));
        let (cp, cm) = cat.c_constants();
        constants.push(PrimeConstants {
            p,
            g1: (&gauss_sum(p as u32)).into(),
            global_dim: cat.global_dim().into(),
            c_plus: cp.into(),
            c_minus: cm.into(),
        });
    }
    let all_pass = checks.iter().all(|c| c.pass);
    let mut tm = Timing::new();
    tm.insert("total", ms(t));
    let report = VerifyReport {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        checks,
        constants,
        all_pass,
        timing_ms: timing.then_some(tm),
    };
    let out = match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Text => {
            let mut s = String::new();
            for c in &report.constants {
                writeln!(
                    s,
                    "p = {}: g1 = {}; X^2 = {}; C+ = {}; C- = {}",
                    c.p, c.g1.text, c.global_dim.text, c.c_plus.text, c.c_minus.text
                )
                .unwrap();
            }
            for c in &report.checks {
                writeln!(
                    s,
                    "{} p={} {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.p,
                    c.name
                )
                .unwrap();
            }
            if let Some(t) = &report.timing_ms {
                s.push_str(&timing_text(t));
            }
            s
        }
    };
    if all_pass {
        Ok(out)
    } else {
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        Err(Failure::Check {
            report: out,
            msg: format!("{failed} identity check(s) failed"),
        })
    }
}

/// Seed of case `index`, so that a single case can be replayed with `--case`.
fn case_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64)
        .wrapping_add(1)
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

enum Eval {
    Value(u64),
    Disagree { homology: u64, skein: u64 },
    Refused(String),
}

fn fuzz_value(cat: &CategoryData, e: &Evaluator, method: Method, pres: &Presentation) -> Eval {
    let h = match method
        .uses_homology()
        .then(|| q_invariant_homological(cat, pres))
    {
        Some(Err(err)) => return Eval::Refused(err.to_string()),
        Some(Ok(v)) => Some(v),
        None => None,
    };
    let s = match method.uses_skein().then(|| e.z_q(pres)) {
        Some(Err(err)) => return Eval::Refused(err.to_string()),
        Some(Ok(v)) => Some(v),
        None => None,
    };
    match (h, s) {
        (Some(homology), Some(skein)) if homology != skein => Eval::Disagree { homology, skein },
        (Some(v), _) | (None, Some(v)) => Eval::Value(v),
        (None, None) => unreachable!("a method always uses one route"),
    }
}

fn fuzz_case(cfg: &RunConfig, cat: &CategoryData, e: &Evaluator, index: usize) -> FuzzCase {
    let method = cfg.method.unwrap_or(Method::Homology);
    let seed = case_seed(cfg.fuzz.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strands = (cfg.guard / (cfg.p as usize - 3)).max(1);
    let mut bounds = RandomBounds {
        max_cells: strands,
        ..RandomBounds::default()
    };
    if method.uses_homology() {
        bounds = bounds.chi_positive();
    }
    let limits = MoveLimits {
        max_cells: strands,
        max_relator_len: 12,
    };
    let start = random_presentation(&mut rng, &bounds);
    let mut case = FuzzCase {
        index,
        seed,
        start: start.to_string(),
        end: start.to_string(),
        z_q: None,
        skipped: None,
        discrepancies: Vec::new(),
    };
    let expected = match fuzz_value(cat, e, method, &start) {
        Eval::Value(v) => v,
        Eval::Disagree { homology, skein } => {
            case.discrepancies.push(Discrepancy {
                step: 0,
                r#move: "start".into(),
                presentation: start.to_string(),
                expected: homology,
                got: format!("skein {skein}"),
            });
            return case;
        }
        Eval::Refused(msg) => {
            case.skipped = Some(msg);
            return case;
        }
    };
    case.z_q = Some(expected);
    let mut cur = start;
    for step in 1..=cfg.fuzz.moves {
        let mv = cur.random_move(&mut rng, &limits);
        cur = cur.ac_move(mv).expect("sampled moves apply");
        let got = match fuzz_value(cat, e, method, &cur) {
            Eval::Value(v) if v == expected => continue,
            Eval::Value(v) => v.to_string(),
            Eval::Disagree { homology, skein } => format!("homology {homology}, skein {skein}"),
            Eval::Refused(msg) => msg,
        };
        case.discrepancies.push(Discrepancy {
            step,
            r#move: mv.to_string(),
            presentation: cur.to_string(),
            expected,
            got,
        });
    }
    case.end = cur.to_string();
    case
}

pub fn fuzz_ac(cfg: &RunConfig, log: &Path) -> Result<String> {
    let t = Instant::now();
    let cat = category(cfg.p)?;
    let e = Evaluator::with_guard(cat.clone(), cfg.guard);
    let indices: Vec<usize> = match cfg.fuzz.only_case {
        Some(i) => vec![i],
        None => (0..cfg.fuzz.cases).collect(),
    };
    let results: Vec<FuzzCase> = indices
        .par_iter()
        .map(|&i| fuzz_case(cfg, &cat, &e, i))
        .collect();
    let discrepancies: usize = results.iter().map(|c| c.discrepancies.len()).sum();
    let mut tm = Timing::new();
    tm.insert("total", ms(t));
    let method = cfg.method.unwrap_or(Method::Homology);
    let report = FuzzReport {
        schema_version: SCHEMA_VERSION,
        command: "fuzz-ac",
        p: cfg.p,
        method: method.name(),
        seed: cfg.fuzz.seed,
        cases: indices.len(),
        moves: cfg.fuzz.moves,
        guard: cfg.guard,
        results,
        discrepancies,
        timing_ms: cfg.timing.then_some(tm),
    };
    let out = match cfg.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Text => fuzz_text(&report),
    };
    if discrepancies == 0 {
        return Ok(out);
    }
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(log)
        .map_err(|e| Failure::Usage(format!("{}: {e}", log.display())))?;
    for c in report
        .results
        .iter()
        .filter(|c| !c.discrepancies.is_empty())
    {
        for d in &c.discrepancies {
            writeln!(
                file,
                "p={} method={} seed={} case={} case_seed={} step={} move=\"{}\" start=\"{}\" at=\"{}\" expected={} got={}",
                cfg.p, method.name(), cfg.fuzz.seed, c.index, c.seed, d.step, d.r#move, c.start, d.presentation, d.expected, d.got
            )
            .map_err(|e| Failure::Usage(format!("{}: {e}", log.display())))?;
        }
    }
    Err(Failure::Check {
        report: out,
        msg: format!(
            "{discrepancies} discrepancy(ies); details appended to {}",
            log.display()
        ),
    })
}

fn fuzz_text(r: &FuzzReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "p = {}, method = {}, seed = {}, {} case(s) x {} move(s), guard {}",
        r.p, r.method, r.seed, r.cases, r.moves, r.guard
    )
    .unwrap();
    for c in &r.results {
        let status = match (&c.skipped, c.discrepancies.is_empty()) {
            (Some(why), _) => format!("skipped ({why})"),
            (None, true) => format!("ok, Z_Q = {}", c.z_q.map_or("-".into(), |v| v.to_string())),
            (None, false) => format!("{} discrepancy(ies)", c.discrepancies.len()),
        };
        writeln!(
            s,
            "case {:>3} (seed {}): {} -> {}: {status}",
            c.index, c.seed, c.start, c.end
        )
        .unwrap();
        for d in &c.discrepancies {
            writeln!(
                s,
                "    step {} ({}): {} expected {}, got {}",
                d.step, d.r#move, d.presentation, d.expected, d.got
            )
            .unwrap();
        }
    }
    writeln!(s, "{} discrepancy(ies)", r.discrepancies).unwrap();
    if let Some(t) = &r.timing_ms {
        s.push_str(&timing_text(t));
    }
    s
}

pub fn dual(path: &Path) -> Result<String> {
    Ok(format!("{}\n", read_presentation(path)?.dual()))
}

pub fn link_info(path: &Path, format: OutputFormat) -> Result<String> {
    let l = read_link(path)?;
    let lk = l.linking_matrix();
    let inertia = signature_counts(&lk).map_err(|e| Failure::Usage(e.to_string()))?;
    let report = LinkInfoReport {
        schema_version: SCHEMA_VERSION,
        command: "link-info",
        strands: l.braid().strands(),
        crossings: l.braid().letters().len(),
        components: l.components(),
        dotted: l.dotted().to_vec(),
        framings: (0..l.num_components()).map(|c| l.framing(c)).collect(),
        linking_matrix: lk,
        inertia,
    };
    Ok(match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "strands: {}, crossings: {}",
                report.strands, report.crossings
            )
            .unwrap();
            for (c, strands) in report.components.iter().enumerate() {
                let dot = if report.dotted[c] { " (dotted)" } else { "" };
                writeln!(
                    s,
                    "component {c}{dot}: strands {strands:?}, framing {}",
                    report.framings[c]
                )
                .unwrap();
            }
            writeln!(s, "linking matrix:").unwrap();
            for row in &report.linking_matrix {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
                writeln!(s, "  {}", cells.join("")).unwrap();
            }
            let i = report.inertia;
            writeln!(
                s,
                "inertia: {} positive, {} negative, {} zero",
                i.positive, i.negative, i.zero
            )
            .unwrap();
            s
        }
    })
}

const X_CONVENTION: &str = "X is the square root of X^2 = -p/(v - v^-1)^2 given by g1/(v - v^-1); it lies in Q(v) only for p = 3 mod 4, otherwise it is kept formal";

pub fn rtw(path: &Path, cfg: &RunConfig) -> Result<String> {
    let l = read_link(path)?;
    let cat = category(cfg.p)?;
    let t = Instant::now();
    let v = Evaluator::with_guard(cat, cfg.guard).z_rtw(&l)?;
    let mut tm = Timing::new();
    tm.insert("skein", ms(t));
    let explicit = v.explicit();
    let report = RtwReport {
        schema_version: SCHEMA_VERSION,
        command: "rtw",
        p: cfg.p,
        coefficient: (&v.coefficient).into(),
        x_power: v.x_power,
        explicit: explicit.as_ref().map(Into::into),
        x_convention: X_CONVENTION,
        timing_ms: cfg.timing.then_some(tm),
    };
    Ok(match cfg.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Text => {
            let mut s = format!("Z_RTW = {v}\n");
            if let Some(x) = &report.explicit {
                if report.x_power > 0 {
                    writeln!(s, "      = {}", x.text).unwrap();
                }
            }
            if report.x_power > 0 {
                writeln!(s, "note: {X_CONVENTION}").unwrap();
            }
            if let Some(t) = &report.timing_ms {
                s.push_str(&timing_text(t));
            }
            s
        }
    })
}
