//! One pass/fail line per acceptance criterion. Every comparison is exact.

#![allow(clippy::type_complexity)]

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use biquot::algebras::{augmentation_map, free_gc_map, identity_map, FreeGc};
use biquot::cochains::{Cochains, Transposition};
use biquot::dg::{Bounds, Check, DgaExt};
use biquot::input::parse_job;
use biquot::product::{naturality_check, HgaTriple, ProductOracle};
use biquot::report::{tor_report, Overrides, TorReport};
use biquot::scalar::Q;
use biquot::simplicial::{SimplicialMap, SimplicialSet};
use biquot::suites::{run_suite, sphere_cochains, Suite, SuiteOptions};

/// Simplicial triples carry a word-length bound next to the degree bound.
const SIMPLICIAL_D2: Bounds = Bounds::new(12, 4);
const SIMPLICIAL_MC: Bounds = Bounds::new(10, 4);
const HGA: Bounds = Bounds::new(8, 3);
const PRODUCT: Bounds = Bounds::new(8, 3);
const COCHAIN_MAP: Bounds = Bounds::new(8, 2);
const POLY_PRODUCT: Bounds = Bounds::new(8, 8);

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_checks(checks: &[(String, Check)]) -> Outcome {
        let passed = checks.iter().all(|(_, c)| c.passed());
        let detail = match checks.iter().find(|(_, c)| !c.passed()) {
            Some((name, c)) => format!("{name}: {c}"),
            None => {
                let cases: usize = checks.iter().map(|(_, c)| cases(c)).sum();
                format!("{} identities, {cases} cases", checks.len())
            }
        };
        Outcome { passed, detail }
    }

    fn within(mut self, elapsed: Duration, limit: Option<Duration>) -> Outcome {
        match limit {
            Some(limit) if elapsed > limit => {
                self.passed = false;
                self.detail = format!("{}; {:.1?} exceeds {:?}", self.detail, elapsed, limit);
            }
            _ => self.detail = format!("{}; {:.1?}", self.detail, elapsed),
        }
        self
    }
}

fn cases(c: &Check) -> usize {
    match c {
        Check::Pass { checked } => *checked,
        Check::Fail { .. } => 0,
    }
}

fn suite(
    s: Suite,
    examples: &[&str],
    bounds: impl Fn(&str) -> Option<Bounds>,
) -> Vec<(String, Check)> {
    let mut out = Vec::new();
    for ex in examples {
        let b = bounds(ex);
        let opts = SuiteOptions {
            degree: b.map(|b| b.max_degree),
            length: b.map(|b| b.max_length),
            i: None,
        };
        let r = run_suite::<Q>(s, ex, opts).expect("known example");
        out.extend(r.checks.into_iter().map(|(n, c)| (format!("{ex}: {n}"), c)));
    }
    out
}

fn simplicial(ex: &str) -> bool {
    ex.contains("Delta")
}

fn criterion_1() -> Outcome {
    let examples = [
        "poly-x2",
        "poly-x2-y4",
        "exterior-u3",
        "dDelta3",
        "cdga-x2",
        "restriction-x4-t2",
        "simplicial-dDelta3",
    ];
    let checks = suite(Suite::BarD2, &examples, |ex| {
        Some(if simplicial(ex) {
            SIMPLICIAL_D2
        } else {
            Bounds::new(12, 12)
        })
    });
    Outcome::from_checks(&checks)
}

fn criterion_2() -> Outcome {
    let checks = suite(Suite::TautologicalMc, &["poly-x2", "dDelta3"], |ex| {
        Some(if simplicial(ex) {
            SIMPLICIAL_MC
        } else {
            Bounds::new(10, 10)
        })
    });
    Outcome::from_checks(&checks)
}

fn criterion_3() -> Outcome {
    Outcome::from_checks(&suite(Suite::HgaMc, &["dDelta3", "dDelta4"], |_| Some(HGA)))
}

fn criterion_4() -> Outcome {
    let mut checks = suite(Suite::Steenrod, &["dDelta3", "dDelta4"], |_| None);
    let c = Cochains::<Q>::new(SimplicialSet::boundary(4));
    let bare = c.steenrod_check(1, Transposition::Minus, 4);
    checks.push((
        "untwisted transposition is obstructed at i = 1".into(),
        if bare.passed() {
            Check::Fail {
                at: "i = 1".into(),
                lhs: "pass".into(),
                rhs: "obstruction".into(),
            }
        } else {
            Check::Pass { checked: 1 }
        },
    ));
    Outcome::from_checks(&checks)
}

/// `(B(k,k[x],k), B(k[t],k[x],k))` with `|x| = 2`, resp. `|x| = 4, x ↦ t²`.
fn polynomial_triples(
    run: &mut dyn FnMut(&str, &HgaTriple<'_, &FreeGc<Q>, &FreeGc<Q>, &FreeGc<Q>>),
) {
    let k = FreeGc::<Q>::ground();
    let x2 = FreeGc::<Q>::polynomial(&[("x", 2)]);
    let aug = augmentation_map(&x2);
    run("cdga-x2", &HgaTriple::new(&k, &x2, &k, aug.clone(), aug));
    let (t2, x4) = (
        FreeGc::<Q>::polynomial(&[("t", 2)]),
        FreeGc::<Q>::polynomial(&[("x", 4)]),
    );
    let square = t2.mul_lin(&t2.gen_elem(0), &t2.gen_elem(0));
    run(
        "restriction-x4-t2",
        &HgaTriple::new(
            &t2,
            &x4,
            &k,
            free_gc_map(&t2, vec![square]),
            augmentation_map(&x4),
        ),
    );
}

fn criteria_5_to_7() -> (Outcome, Outcome, Outcome) {
    let (mut c5, mut c6, mut c7) = (Vec::new(), Vec::new(), Vec::new());
    let mut t5 = Duration::ZERO;
    polynomial_triples(&mut |name, t| {
        let pairs = t.pairs(POLY_PRODUCT);
        let start = Instant::now();
        let oracle = ProductOracle::new(t, POLY_PRODUCT).map(|o| o.check(&pairs));
        t5 += start.elapsed();
        c5.push((format!("{name}: HGA maps"), t.check_maps(POLY_PRODUCT)));
        c5.push((
            format!("{name}: μ̃ = composite"),
            oracle.unwrap_or_else(fail),
        ));
        c6.push((format!("{name}: d μ̃ = μ̃ d⊗"), t.check_cochain_map(&pairs)));
    });

    let c = sphere_cochains::<Q>(3);
    let id = identity_map::<&Cochains<Q>>;
    let t = HgaTriple::new(&c, &c, &c, id(), id());
    let pairs = t.pairs(PRODUCT);
    let start = Instant::now();
    let oracle = ProductOracle::new(&t, PRODUCT).map(|o| o.check(&pairs));
    t5 += start.elapsed();
    c5.push((
        "simplicial-dDelta3: μ̃ = composite".into(),
        oracle.unwrap_or_else(fail),
    ));
    let start = Instant::now();
    c7.push((
        "simplicial-dDelta3: Dh = ξμ̃ − μ(ξ⊗ξ)".into(),
        t.check_homotopy(&pairs),
    ));
    let t7 = start.elapsed();
    drop(pairs);
    let start = Instant::now();
    c6.push((
        "simplicial-dDelta3: d μ̃ = μ̃ d⊗".into(),
        t.check_cochain_map(&t.pairs(COCHAIN_MAP)),
    ));
    let t6 = start.elapsed();

    let x2 = FreeGc::<Q>::polynomial(&[("x", 2)]);
    let idx = identity_map::<&FreeGc<Q>>;
    let tx = HgaTriple::new(&x2, &x2, &x2, idx(), idx());
    c7.push((
        "cdga-identity-x2: Dh = ξμ̃ − μ(ξ⊗ξ)".into(),
        tx.check_homotopy(&tx.pairs(POLY_PRODUCT)),
    ));

    (
        Outcome::from_checks(&c5).within(t5, Some(Duration::from_secs(300))),
        Outcome::from_checks(&c6).within(t6, None),
        Outcome::from_checks(&c7).within(t7, None),
    )
}

fn fail(e: impl std::fmt::Display) -> Check {
    Check::Fail {
        at: "setup".into(),
        lhs: e.to_string(),
        rhs: String::new(),
    }
}

fn tor(file: &str) -> (TorReport, Duration) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", file]
        .iter()
        .collect();
    let job =
        parse_job(&std::fs::read_to_string(&path).expect("shipped data file")).expect("valid job");
    let start = Instant::now();
    let r = tor_report(
        &job,
        Overrides {
            degree: Some(16),
            ..Default::default()
        },
    )
    .expect("valid problem");
    (r, start.elapsed())
}

fn criterion_8() -> Outcome {
    let limit = Duration::from_secs(10);
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    let cases: [(&str, &dyn Fn(&TorReport) -> bool); 4] = [
        ("su2_point_point.json", &|r| {
            r.poincare_series == "1 + t^3" && r.presentation == "Λ(y3)"
        }),
        ("su2_point_circle.json", &|r| {
            r.poincare_series == "1 + t^2" && r.relations == ["t^2"]
        }),
        ("su3_point_torus.json", &|r| {
            r.poincare_series == "1 + 2t^2 + 2t^4 + t^6"
        }),
        ("su2_torus_torus.json", &|r| {
            r.bigraded_ranks.iter().all(|e| e.filtration == 0)
                && r.presentation == "k[t1,t2]/(t1^2 - t2^2)"
                && r.truncated
        }),
    ];
    for (file, expected) in cases {
        let (r, elapsed) = tor(file);
        slowest = slowest.max(elapsed);
        if !r.verdict.agree {
            failures.push(format!("{file}: bar and Koszul disagree {:?}", r.verdict));
        } else if !expected(&r) {
            failures.push(format!(
                "{file}: got {} / {}",
                r.poincare_series, r.presentation
            ));
        } else if elapsed > limit {
            failures.push(format!("{file}: {elapsed:.1?} exceeds {limit:?}"));
        }
    }
    let detail = if failures.is_empty() {
        format!("4 examples, bar = Koszul per bidegree; slowest {slowest:.1?}")
    } else {
        failures.join("; ")
    };
    Outcome {
        passed: failures.is_empty(),
        detail,
    }
}

fn criterion_9() -> Outcome {
    let mut checks = suite(
        Suite::Naturality,
        &["augmentation-restriction", "augmentation-dDelta3"],
        |ex| {
            Some(if simplicial(ex) {
                COCHAIN_MAP
            } else {
                POLY_PRODUCT
            })
        },
    );
    // the face ladder ∂Δ² ⊂ ∂Δ³ at the product bounds
    let (c3, c2) = (sphere_cochains::<Q>(3), sphere_cochains::<Q>(2));
    let map = SimplicialMap::by_name(c2.set(), c3.set()).expect("∂Δ² is the face 012 of ∂Δ³");
    let (c2r, c3r) = (&c2, &c3);
    let g = biquot::dg::LinMap::new(0, move |x| {
        c3r.pullback(
            c2r,
            &|s| map.image(s).clone(),
            &biquot::graded::Lin::basis(*x),
        )
    });
    let id3 = identity_map::<&Cochains<Q>>;
    let id2 = identity_map::<&Cochains<Q>>;
    let source = HgaTriple::new(&c3, &c3, &c3, id3(), id3());
    let target = HgaTriple::new(&c2, &c2, &c2, id2(), id2());
    let pairs = source.pairs(PRODUCT);
    let r = naturality_check(&source, &target, &g, &g, &g, &pairs, PRODUCT);
    checks.push((
        "face-dDelta3-dDelta2 at (8, 3)".into(),
        r.unwrap_or_else(fail),
    ));
    Outcome::from_checks(&checks)
}

fn main() -> ExitCode {
    let timed = |f: &dyn Fn() -> Outcome, limit: Option<u64>| {
        let start = Instant::now();
        let o = f();
        o.within(start.elapsed(), limit.map(Duration::from_secs))
    };
    let mut results = vec![
        (
            1,
            "d² = 0 on BA and B(A′,A,A″), degree 12",
            timed(&criterion_1, Some(30)),
        ),
        (
            2,
            "tautological twisting cochain is Maurer–Cartan, degree 10",
            timed(&criterion_2, None),
        ),
        (
            3,
            "E is a twisting cochain on ∂Δ³, ∂Δ⁴, degree 8",
            timed(&criterion_3, Some(60)),
        ),
        (
            4,
            "Steenrod coherence i = 0, 1, 2 on ∂Δ³, ∂Δ⁴",
            timed(&criterion_4, None),
        ),
    ];
    let (c5, c6, c7) = criteria_5_to_7();
    results.push((5, "μ̃ equals the definitional composite, degree 8", c5));
    results.push((6, "μ̃ is a cochain map", c6));
    results.push((7, "Dh = ξμ̃ − μ(ξ⊗ξ)", c7));
    results.push((8, "Tor regression, bar = Koszul, bound 16", criterion_8()));
    results.push((
        9,
        "naturality: augmentation and simplicial ladders",
        timed(&criterion_9, None),
    ));
    results.sort_by_key(|r| r.0);
    let mut all = true;
    for (n, what, o) in &results {
        all &= o.passed;
        println!(
            "criterion {n}: {} | {what} | {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
