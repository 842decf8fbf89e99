//! Named identity suites over named examples, shared by the CLI and the
//! acceptance run.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::algebras::{augmentation_map, free_gc_map, identity_map, FreeGc, Generator};
use crate::bar::{is_twisting_cochain, Bar, Word};
use crate::cochains::{Cochain, Cochains, Transposition};
use crate::dg::{show_terms, Bounds, Check, Dga, DgaExt, DgcExt, LinMap};
use crate::graded::Lin;
use crate::hga::{check_hga, Hga};
use crate::product::{naturality_check, HgaTriple, ProductOracle};
use crate::scalar::Field;
use crate::simplicial::{SimplicialMap, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    BarD2,
    TautologicalMc,
    HgaMc,
    Steenrod,
    MuTildeOracle,
    HomotopyH,
    Naturality,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::BarD2,
        Suite::TautologicalMc,
        Suite::HgaMc,
        Suite::Steenrod,
        Suite::MuTildeOracle,
        Suite::HomotopyH,
        Suite::Naturality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BarD2 => "bar-d2",
            Suite::TautologicalMc => "tautological-mc",
            Suite::HgaMc => "hga-mc",
            Suite::Steenrod => "steenrod",
            Suite::MuTildeOracle => "mu-tilde-oracle",
            Suite::HomotopyH => "homotopy-h",
            Suite::Naturality => "naturality",
        }
    }

    pub fn examples(self) -> &'static [&'static str] {
        match self {
            Suite::BarD2 => &[
                "poly-x2",
                "poly-x2-y4",
                "exterior-u3",
                "dDelta3",
                "cdga-x2",
                "restriction-x4-t2",
                "simplicial-dDelta3",
            ],
            Suite::TautologicalMc => &["poly-x2", "dDelta3"],
            Suite::HgaMc => &["dDelta3", "dDelta4"],
            Suite::Steenrod => &["dDelta3", "dDelta4", "dDelta4-untwisted"],
            Suite::MuTildeOracle => &["cdga-x2", "restriction-x4-t2", "simplicial-dDelta3"],
            Suite::HomotopyH => &["simplicial-dDelta3", "cdga-identity-x2"],
            Suite::Naturality => &[
                "augmentation-restriction",
                "augmentation-dDelta3",
                "face-dDelta3-dDelta2",
            ],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Suite, SuiteError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite `{0}`; known: bar-d2, tautological-mc, hga-mc, steenrod, mu-tilde-oracle, homotopy-h, naturality")]
    UnknownSuite(String),
    #[error("suite {suite} has no example `{example}`; known: {known}")]
    UnknownExample {
        suite: String,
        example: String,
        known: String,
    },
    #[error("{0}")]
    BadOption(String),
}

/// Bounds and the cup-i index; unset fields take per-example defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub degree: Option<i32>,
    pub length: Option<usize>,
    pub i: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub example: String,
    pub bounds: Bounds,
    pub checks: Vec<(String, Check)>,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, c)| c.passed())
    }

    pub fn cases(&self) -> usize {
        self.checks
            .iter()
            .map(|(_, c)| match c {
                Check::Pass { checked } => *checked,
                Check::Fail { .. } => 0,
            })
            .sum()
    }
}

fn kx<K: Field>(name: &str, degree: i32) -> FreeGc<K> {
    FreeGc::polynomial(&[(name, degree)])
}

fn exterior_u3<K: Field>() -> FreeGc<K> {
    FreeGc::new(vec![Generator::new("u", 3)])
}

pub fn sphere_cochains<K: Field>(n: u32) -> Cochains<K> {
    Cochains::connected(SimplicialSet::boundary(n))
}

fn bar_d2<K: Field, A: Dga<K = K>>(alg: A, bounds: Bounds) -> Check {
    let bar = Bar::new(alg);
    let basis = crate::dg::Dgc::basis(&bar, bounds);
    Check::run(
        basis.iter(),
        |w| bar.show_word(w),
        |z: &Lin<Word<A::B>, K>| show_terms(z, |w| bar.show_word(w)),
        |w| (bar.d_lin(&crate::dg::Dgc::d(&bar, w)), Lin::zero()),
    )
}

fn tautological_mc<K: Field, A: Dga<K = K>>(alg: A, bounds: Bounds) -> Check {
    let bar = Bar::new(alg);
    let t = bar.tautological();
    is_twisting_cochain(&bar, &bar.alg, &t, bounds)
}

/// `B(k, k[x], k)`, `|x| = 2`.
fn with_cdga_triple<K: Field, R>(
    run: impl FnOnce(&HgaTriple<'_, &FreeGc<K>, &FreeGc<K>, &FreeGc<K>>) -> R,
) -> R {
    let (k, a) = (FreeGc::<K>::ground(), kx("x", 2));
    let aug = augmentation_map(&a);
    let t = HgaTriple::new(&k, &a, &k, aug.clone(), aug);
    run(&t)
}

/// `B(k[t], k[x], k)`, `|x| = 4`, `|t| = 2`, `x ↦ t²`.
fn with_restriction_triple<K: Field, R>(
    run: impl FnOnce(&HgaTriple<'_, &FreeGc<K>, &FreeGc<K>, &FreeGc<K>>) -> R,
) -> R {
    let (kt, a, k) = (kx("t", 2), kx("x", 4), FreeGc::<K>::ground());
    let t2 = kt.mul_lin(&kt.gen_elem(0), &kt.gen_elem(0));
    let t = HgaTriple::new(
        &kt,
        &a,
        &k,
        free_gc_map(&kt, vec![t2]),
        augmentation_map(&a),
    );
    run(&t)
}

/// `B(C, C, C)` for `C` the connected cochains of `∂Δ^n`, identity maps.
fn with_simplicial_triple<K: Field, R>(
    c: &Cochains<K>,
    run: impl FnOnce(&HgaTriple<'_, &Cochains<K>, &Cochains<K>, &Cochains<K>>) -> R,
) -> R {
    let id = identity_map::<&Cochains<K>>;
    let t = HgaTriple::new(c, c, c, id(), id());
    run(&t)
}

fn product_checks<K: Field, L: Hga<K = K>, A: Hga<K = K>, R: Hga<K = K>>(
    t: &HgaTriple<'_, L, A, R>,
    bounds: Bounds,
) -> Vec<(String, Check)> {
    let pairs = t.pairs(bounds);
    let maps = t.check_maps(bounds);
    let oracle = match ProductOracle::new(t, bounds) {
        Ok(o) => o.check(&pairs),
        Err(e) => Check::Fail {
            at: "Φ ladder".into(),
            lhs: e.to_string(),
            rhs: String::new(),
        },
    };
    vec![
        ("f′, f″ are HGA maps".into(), maps),
        ("μ̃ = composite".into(), oracle),
        ("d μ̃ = μ̃ d⊗".into(), t.check_cochain_map(&pairs)),
        ("1[]1 is a unit".into(), t.check_unit(&t.bar.basis(bounds))),
    ]
}

fn homotopy_checks<K: Field, X: Hga<K = K>>(
    t: &HgaTriple<'_, X, X, X>,
    bounds: Bounds,
) -> Vec<(String, Check)> {
    let pairs = t.pairs(bounds);
    vec![
        (
            "d ξ = ξ d".into(),
            crate::product::check_xi_cochain_map(
                t,
                t.mid(),
                &identity_map::<X>(),
                &identity_map::<X>(),
                bounds,
            ),
        ),
        ("Dh = ξμ̃ − μ(ξ⊗ξ)".into(), t.check_homotopy(&pairs)),
    ]
}

fn defaults(suite: Suite, example: &str) -> (i32, usize) {
    let simplicial = example.contains("Delta");
    match suite {
        Suite::BarD2 if simplicial => (12, 4),
        Suite::BarD2 => (12, 12),
        Suite::TautologicalMc if simplicial => (10, 4),
        Suite::TautologicalMc => (10, 10),
        Suite::HgaMc => (8, 3),
        Suite::Steenrod => (4, 1),
        _ if simplicial => (8, 2),
        _ => (8, 8),
    }
}

/// Runs `suite` on `example`.
pub fn run_suite<K: Field>(
    suite: Suite,
    example: &str,
    opts: SuiteOptions,
) -> Result<SuiteOutcome, SuiteError> {
    if !suite.examples().contains(&example) {
        return Err(SuiteError::UnknownExample {
            suite: suite.name().into(),
            example: example.into(),
            known: suite.examples().join(", "),
        });
    }
    let (d, l) = defaults(suite, example);
    let bounds = Bounds::new(opts.degree.unwrap_or(d), opts.length.unwrap_or(l));
    if bounds.max_degree < 0 {
        return Err(SuiteError::BadOption(format!(
            "degree bound must be non-negative, got {}",
            bounds.max_degree
        )));
    }
    if opts.i.is_some() && suite != Suite::Steenrod {
        return Err(SuiteError::BadOption(
            "--i only applies to the steenrod suite".into(),
        ));
    }
    let start = Instant::now();
    let checks: Vec<(String, Check)> = match (suite, example) {
        (Suite::BarD2, "poly-x2") => {
            vec![("d² = 0 on B k[x]".into(), bar_d2(kx::<K>("x", 2), bounds))]
        }
        (Suite::BarD2, "poly-x2-y4") => {
            vec![(
                "d² = 0 on B k[x,y]".into(),
                bar_d2(FreeGc::<K>::polynomial(&[("x", 2), ("y", 4)]), bounds),
            )]
        }
        (Suite::BarD2, "exterior-u3") => vec![(
            "d² = 0 on B Λ(u)".into(),
            bar_d2(exterior_u3::<K>(), bounds),
        )],
        (Suite::BarD2, "dDelta3") => vec![(
            "d² = 0 on B C(∂Δ³)".into(),
            bar_d2(sphere_cochains::<K>(3), bounds),
        )],
        (Suite::BarD2, "cdga-x2") => {
            with_cdga_triple::<K, _>(|t| vec![("d² = 0".into(), t.bar.check_d_squared(bounds))])
        }
        (Suite::BarD2, "restriction-x4-t2") => with_restriction_triple::<K, _>(|t| {
            vec![("d² = 0".into(), t.bar.check_d_squared(bounds))]
        }),
        (Suite::BarD2, "simplicial-dDelta3") => {
            with_simplicial_triple(&sphere_cochains::<K>(3), |t| {
                vec![("d² = 0".into(), t.bar.check_d_squared(bounds))]
            })
        }
        (Suite::TautologicalMc, "poly-x2") => vec![(
            "Dt = t∪t on B k[x]".into(),
            tautological_mc(kx::<K>("x", 2), bounds),
        )],
        (Suite::TautologicalMc, "dDelta3") => {
            vec![(
                "Dt = t∪t on B C(∂Δ³)".into(),
                tautological_mc(sphere_cochains::<K>(3), bounds),
            )]
        }
        (Suite::HgaMc, ex) => {
            let n = if ex == "dDelta3" { 3 } else { 4 };
            vec![(
                "E is a twisting cochain".into(),
                check_hga(&sphere_cochains::<K>(n), bounds),
            )]
        }
        (Suite::Steenrod, ex) => {
            let n = if ex == "dDelta3" { 3 } else { 4 };
            let c = Cochains::<K>::new(SimplicialSet::boundary(n));
            let form = if ex.ends_with("untwisted") {
                Transposition::Minus
            } else {
                Transposition::Alternating
            };
            let is = match opts.i {
                Some(i) if i > 2 => {
                    return Err(SuiteError::BadOption(format!(
                        "--i must be 0, 1 or 2, got {i}"
                    )))
                }
                Some(i) => vec![i],
                None => vec![0, 1, 2],
            };
            let top = bounds.max_degree.max(0) as u32;
            is.into_iter()
                .map(|i| {
                    let label = match form {
                        Transposition::Alternating => {
                            format!("D(∪_{}) = ∪_{i} − (−1)^{i}∪_{i}∘(1 2)", i + 1)
                        }
                        Transposition::Minus => format!("D(∪_{}) = ∪_{i} − ∪_{i}∘(1 2)", i + 1),
                    };
                    (label, c.steenrod_check(i, form, top))
                })
                .collect()
        }
        (Suite::MuTildeOracle, "cdga-x2") => {
            with_cdga_triple::<K, _>(|t| product_checks(t, bounds))
        }
        (Suite::MuTildeOracle, "restriction-x4-t2") => {
            with_restriction_triple::<K, _>(|t| product_checks(t, bounds))
        }
        (Suite::MuTildeOracle, _) => {
            with_simplicial_triple(&sphere_cochains::<K>(3), |t| product_checks(t, bounds))
        }
        (Suite::HomotopyH, "simplicial-dDelta3") => {
            let c = sphere_cochains::<K>(3);
            let id = identity_map::<&Cochains<K>>;
            let t = HgaTriple::new(&c, &c, &c, id(), id());
            homotopy_checks(&t, bounds)
        }
        (Suite::HomotopyH, _) => {
            let a = kx::<K>("x", 2);
            let id = identity_map::<&FreeGc<K>>;
            let t = HgaTriple::new(&a, &a, &a, id(), id());
            homotopy_checks(&t, bounds)
        }
        (Suite::Naturality, "augmentation-restriction") => with_restriction_triple::<K, _>(|t| {
            let k = FreeGc::<K>::ground();
            let target = HgaTriple::new(
                &k,
                &k,
                &k,
                identity_map::<&FreeGc<K>>(),
                identity_map::<&FreeGc<K>>(),
            );
            let pairs = t.pairs(bounds);
            let (gl, g, gr) = (
                augmentation_map(t.left()),
                augmentation_map(t.mid()),
                augmentation_map(t.right()),
            );
            vec![(
                "B(ε,ε,ε) μ̃ = μ̃ (B(ε,ε,ε))^⊗2".into(),
                ladder_check(naturality_check(t, &target, &gl, &g, &gr, &pairs, bounds)),
            )]
        }),
        (Suite::Naturality, "augmentation-dDelta3") => {
            with_simplicial_triple(&sphere_cochains::<K>(3), |t| {
                let k = FreeGc::<K>::ground();
                let target = HgaTriple::new(
                    &k,
                    &k,
                    &k,
                    identity_map::<&FreeGc<K>>(),
                    identity_map::<&FreeGc<K>>(),
                );
                let pairs = t.pairs(bounds);
                let eps = augmentation_map(t.mid());
                vec![(
                    "B(ε,ε,ε) μ̃ = μ̃ (B(ε,ε,ε))^⊗2".into(),
                    ladder_check(naturality_check(
                        t, &target, &eps, &eps, &eps, &pairs, bounds,
                    )),
                )]
            })
        }
        (Suite::Naturality, _) => {
            let (c3, c2) = (sphere_cochains::<K>(3), sphere_cochains::<K>(2));
            let map = SimplicialMap::by_name(c2.set(), c3.set())
                .map_err(|e| SuiteError::BadOption(e.to_string()))?;
            let (c2r, c3r) = (&c2, &c3);
            let g: LinMap<'_, Cochain, Cochain, K> = LinMap::new(0, move |x: &Cochain| {
                c3r.pullback(c2r, &|s| map.image(s).clone(), &Lin::basis(*x))
            });
            let id3 = identity_map::<&Cochains<K>>;
            let id2 = identity_map::<&Cochains<K>>;
            let source = HgaTriple::new(&c3, &c3, &c3, id3(), id3());
            let target = HgaTriple::new(&c2, &c2, &c2, id2(), id2());
            let pairs = source.pairs(bounds);
            vec![(
                "restriction along ∂Δ² ⊂ ∂Δ³ is multiplicative".into(),
                ladder_check(naturality_check(
                    &source, &target, &g, &g, &g, &pairs, bounds,
                )),
            )]
        }
        _ => unreachable!("examples are validated above"),
    };
    Ok(SuiteOutcome {
        suite,
        example: example.into(),
        bounds,
        checks,
        elapsed: start.elapsed(),
    })
}

fn ladder_check(r: Result<Check, crate::twisted::TwistedError>) -> Check {
    r.unwrap_or_else(|e| Check::Fail {
        at: "ladder".into(),
        lhs: e.to_string(),
        rhs: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names_are_refused() {
        assert!(matches!(
            "bar-d3".parse::<Suite>(),
            Err(SuiteError::UnknownSuite(_))
        ));
        let e = run_suite::<crate::scalar::Q>(Suite::Steenrod, "poly-x2", SuiteOptions::default())
            .unwrap_err();
        assert!(e.to_string().contains("dDelta4"), "{e}");
        let opts = SuiteOptions {
            i: Some(5),
            ..Default::default()
        };
        assert!(matches!(
            run_suite::<crate::scalar::Q>(Suite::Steenrod, "dDelta3", opts),
            Err(SuiteError::BadOption(_))
        ));
    }

    #[test]
    fn untwisted_transposition_fails_only_at_one() {
        let r = run_suite::<crate::scalar::Q>(
            Suite::Steenrod,
            "dDelta4-untwisted",
            SuiteOptions::default(),
        )
        .unwrap();
        let passed: Vec<bool> = r.checks.iter().map(|(_, c)| c.passed()).collect();
        assert_eq!(passed, [true, false, true]);
    }

    #[test]
    fn small_runs_pass() {
        let opts = SuiteOptions {
            degree: Some(4),
            length: Some(2),
            i: None,
        };
        for suite in Suite::ALL {
            for ex in suite
                .examples()
                .iter()
                .filter(|ex| !ex.ends_with("untwisted"))
            {
                let r = run_suite::<crate::scalar::Q>(suite, ex, opts).unwrap();
                assert!(r.passed(), "{suite} {ex}: {:?}", r.checks);
                assert!(r.cases() > 0, "{suite} {ex}");
            }
        }
    }
}
