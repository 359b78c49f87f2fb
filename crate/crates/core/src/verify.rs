//! Exact invariant suites, runnable from the command line.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::dual::DualInt;
use crate::error::Result;
use crate::euclid::{
    lyapunov_estimate, lyapunov_exact_periodic, relative_shadow_growth, theorem4_ratio,
    topograph_growth_along, topograph_growth_exponent, within_of_sqrt, PathSpec,
};
use crate::markov::{
    cyclic, fibonacci_branch_shadow, is_markov, is_shadow_markov, markov_tree, shadow_markov_tree,
    shadow_vieta,
};
use crate::mordell::{
    is_dual_mordell, is_mordell, mordell_triple, pell_brute_force, pell_fundamental,
    principal_shadow, satisfies_shadow_constraint, special_orbit_shadow_tree, vieta_mordell,
    EuclidTriple, PellContext,
};
use crate::topograph::{
    ap_inconsistencies, brute_force_two_squares, enumerate, find_river, is_river_edge,
    jacobi_two_squares, local_discriminant, QuadForm,
};

const LN_PHI: f64 = 0.481_211_825_059_603_4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        if passed {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.checks.extend(other.checks);
    }
}

pub fn markov_suite(depth: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    let plain = markov_tree(depth)?;
    let shadow = shadow_markov_tree(depth)?;
    let n = plain.len();
    r.record(
        "markov-closure",
        plain.nodes().iter().all(|t| is_markov(t) && is_markov(&cyclic(t))),
        format!("{n} nodes"),
    );
    r.record(
        "shadow-markov-closure",
        shadow.nodes().iter().all(|t| is_shadow_markov(t) && is_shadow_markov(&cyclic(t))),
        format!("{n} nodes"),
    );
    r.record(
        "projection",
        plain
            .nodes()
            .iter()
            .zip(shadow.nodes())
            .all(|(t, s)| s.map(DualInt::project) == *t),
        format!("{n} nodes"),
    );
    let involution = shadow
        .nodes()
        .iter()
        .take(1000)
        .all(|t| shadow_vieta(t).and_then(|u| shadow_vieta(&u)).as_ref() == Ok(t));
    r.record("shadow-vieta-involution", involution, "first 1000 nodes");
    let fib: Vec<String> = fibonacci_branch_shadow(9).iter().map(|x| x.to_string()).collect();
    r.record(
        "fibonacci-shadow",
        fib == ["1", "4", "13", "40", "120", "354", "1031", "2972", "8495"],
        fib.join(","),
    );
    Ok(r)
}

/// Twenty fixed superbase triples with entries in `[-10, 10]`.
pub fn sample_superbases() -> Vec<[i64; 3]> {
    (0..20i64)
        .map(|i| [(7 * i + 3) % 21 - 10, (11 * i + 5) % 21 - 10, (13 * i + 8) % 21 - 10])
        .collect()
}

pub fn mordell_suite(ds: &[u64], range: i64) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    let pell_ok = (2..=50u64)
        .filter_map(|d| pell_brute_force(d).ok().map(|s| (d, s)))
        .all(|(d, s)| pell_fundamental(d).as_ref() == Ok(&s));
    r.record("pell-vs-scan", pell_ok, "nonsquare d ≤ 50");

    for &d in ds {
        let base = PellContext::new(d, 1)?;
        let norm_ok = (0..=60).all(|a| {
            let pw = base.power(a);
            let dq2 = BigInt::from(d) * &base.pell.q * &base.pell.q;
            (&pw.p * &pw.p - dq2 * &pw.u * &pw.u).is_one()
        });
        r.record(&format!("unit-norm d={d}"), norm_ok, "P² − dq²U² = 1, a ≤ 60");

        for m in [-2i64, 1, 3] {
            let ctx = PellContext::from_solution(base.pell.clone(), m);
            let (mut eq, mut constraint, mut dual, mut vieta) = (true, true, true, true);
            for a in -range..=range {
                for b in -range..=range {
                    let e = EuclidTriple::new(a, b, a + b)?;
                    let s = principal_shadow(&ctx, &e);
                    eq &= is_mordell(&s.value);
                    constraint &= satisfies_shadow_constraint(&s);
                    dual &= is_dual_mordell(&s.to_duals());
                    let moved = vieta_mordell(&s.value)?;
                    vieta &= moved == mordell_triple(&ctx, &EuclidTriple::new(a, -b, a - b)?);
                }
            }
            let scope = format!("|a|,|b| ≤ {range}");
            r.record(&format!("mordell-equation d={d} m={m}"), eq, scope.clone());
            r.record(&format!("shadow-constraint d={d} m={m}"), constraint, scope.clone());
            r.record(&format!("dual-equation d={d} m={m}"), dual, scope.clone());
            r.record(&format!("vieta-index d={d} m={m}"), vieta, scope);
        }
    }

    let theorem1 = sample_superbases().iter().all(|&[a, b, c]| {
        let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
        let shadows = special_orbit_shadow_tree(&a, &b, &c, 10);
        let topo = enumerate(&QuadForm::from_superbase(&a, &b, &c), 10);
        matches!((shadows, topo), (Ok(s), Ok(t)) if s == t)
    });
    r.record("special-orbit-topograph", theorem1, "20 superbases, depth 10");
    Ok(r)
}

pub fn growth_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    let lr = lyapunov_exact_periodic(&"LR".parse()?);
    r.record("exact-LR", (lr - LN_PHI).abs() < 1e-12, format!("{lr:.15}"));

    let golden = lyapunov_estimate(&PathSpec::golden(), 40)?.value;
    r.record("golden-n40", (golden - LN_PHI).abs() < 0.02, format!("{golden:.6} (tol 0.02)"));

    let rational = lyapunov_estimate(&"[0; 2, 3]".parse()?, 500)?.value;
    r.record("rational-n500", rational < 0.05, format!("{rational:.6} (< 0.05)"));
    r.record(
        "spectrum-bound",
        golden.max(rational) <= LN_PHI + 0.02,
        format!("max {:.6}", golden.max(rational)),
    );

    let hex = topograph_growth_exponent(&QuadForm::new(1, 1, 1), &PathSpec::golden(), 40)?;
    r.record(
        "topograph-golden",
        (hex - 2.0 * LN_PHI).abs() < 0.05,
        format!("{hex:.6} vs {:.6} (tol 0.05)", 2.0 * LN_PHI),
    );
    let q = QuadForm::new(17, -12, 2);
    let river = find_river(&q)?;
    let searched = river.form.clone();
    let along = topograph_growth_along(&searched, &river.word(20))?;
    r.record("topograph-river", along < 0.05, format!("{along:.6} (< 0.05)"));

    let ctx = PellContext::new(2, 1)?;
    let rel = relative_shadow_growth(&ctx, &PathSpec::golden(), 30)?;
    r.record("relative-shadow-golden", (rel - LN_PHI).abs() < 0.05, format!("{rel:.6} (tol 0.05)"));

    let ratio = theorem4_ratio(&ctx, 30)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let tol = BigRational::new(BigInt::one(), BigInt::from(1_000_000_000));
    r.record("shadow-ratio-a30", within_of_sqrt(&ratio, &half, 2, 40, &tol), "|ratio − 1/√2| < 1e-9");
    Ok(r)
}

pub fn topograph_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for (a, h, b) in [(1, 1, 1), (1, 0, 1), (17, -12, 2), (1, 0, -2), (3, -7, -5)] {
        let q = QuadForm::new(a, h, b);
        let tree = enumerate(&q, 10)?;
        r.record(&format!("ap-consistency {q}"), ap_inconsistencies(&q, &tree).is_empty(), "depth 10");
        let disc = q.discriminant();
        r.record(
            &format!("discriminant {q}"),
            tree.nodes().iter().all(|t| local_discriminant(t) == disc),
            format!("D = {disc}"),
        );
    }
    r.record(
        "jacobi-two-squares",
        (1..=1000).all(|n| jacobi_two_squares(n) == brute_force_two_squares(n)),
        "n ≤ 1000",
    );
    for (a, h, b) in [(17, -12, 2), (1, 0, -2)] {
        let q = QuadForm::new(a, h, b);
        let river = find_river(&q)?;
        let ok = river.period_states.iter().all(is_river_edge) && !river.period.is_empty();
        r.record(
            &format!("river {q}"),
            ok,
            format!("approach {:?}, period {}", river.approach.to_string(), river.period),
        );
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub depth: usize,
    pub ds: Vec<u64>,
    pub range: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            depth: 10,
            ds: vec![2, 3, 5, 6, 7, 13],
            range: 30,
        }
    }
}

pub const SUITES: [&str; 5] = ["markov", "mordell", "growth", "topograph", "all"];

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    match name {
        "markov" => markov_suite(opts.depth),
        "mordell" => mordell_suite(&opts.ds, opts.range),
        "growth" => growth_suite(),
        "topograph" => topograph_suite(),
        "all" => {
            let mut r = markov_suite(opts.depth)?;
            r.extend(mordell_suite(&opts.ds, opts.range)?);
            r.extend(growth_suite()?);
            r.extend(topograph_suite()?);
            Ok(r)
        }
        other => Err(crate::Error::InvalidArgument(format!("unknown suite {other:?}"))),
    }
}
