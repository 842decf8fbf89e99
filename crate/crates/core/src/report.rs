//! Reports for the `tor`, `verify` and `cochains` jobs: serializable records with
//! a text rendering, shared by the command line and the Python module.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cochains::Cochains;
use crate::dg::{check_dga_axioms, Bounds, Check};
use crate::hga::check_hga;
use crate::input::{InputError, JobFile};
use crate::scalar::{Field, FieldChoice, Fp, Q};
use crate::suites::{run_suite, Suite, SuiteError, SuiteOptions, SuiteOutcome};
use crate::tor::{
    bar_computation, check_tor0_products, compare_ranks, koszul_computation, ring_presentation,
    show_series, TorError, DEFAULT_DEGREE_BOUND,
};
use crate::with_field;

/// Errors in the job itself, as opposed to mathematical failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Tor(#[from] TorError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
}

/// Command-line or caller overrides of the job file.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub field: Option<FieldChoice>,
    pub degree: Option<i32>,
    pub length: Option<usize>,
}

impl Overrides {
    fn validate(&self) -> Result<(), ReportError> {
        if let Some(d) = self.degree.filter(|d| *d < 1) {
            return Err(InputError::Field {
                field: "degree bound".into(),
                message: format!("must be positive, got {d}"),
            }
            .into());
        }
        if self.length == Some(0) {
            return Err(InputError::Field {
                field: "length bound".into(),
                message: "must be positive, got 0".into(),
            }
            .into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, check: &Check) -> CheckEntry {
        let name = name.into();
        match check {
            Check::Pass { checked } => CheckEntry {
                name,
                passed: true,
                cases: *checked,
                at: None,
                lhs: None,
                rhs: None,
            },
            Check::Fail { at, lhs, rhs } => CheckEntry {
                name,
                passed: false,
                cases: 0,
                at: Some(at.clone()),
                lhs: Some(lhs.clone()),
                rhs: Some(rhs.clone()),
            },
        }
    }
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "pass  {} ({} cases)", self.name, self.cases)
        } else {
            writeln!(f, "FAIL  {}", self.name)?;
            writeln!(f, "      at:  {}", self.at.as_deref().unwrap_or(""))?;
            writeln!(f, "      lhs: {}", self.lhs.as_deref().unwrap_or(""))?;
            write!(f, "      rhs: {}", self.rhs.as_deref().unwrap_or(""))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub filtration: usize,
    pub internal: i32,
    pub degree: i32,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub agree: bool,
    pub bidegrees_compared: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<RankEntryPair>,
    pub products_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_failure: Option<String>,
    pub euler_consistent: bool,
}

/// Both ranks at a bidegree where they differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntryPair {
    pub filtration: usize,
    pub internal: i32,
    pub bar: usize,
    pub koszul: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorReport {
    pub field: String,
    pub degree_bound: i32,
    pub poincare_series: String,
    pub series: Vec<usize>,
    pub truncated: bool,
    pub bigraded_ranks: Vec<RankEntry>,
    pub presentation: String,
    pub generators: Vec<GeneratorEntry>,
    pub relations: Vec<String>,
    pub warnings: Vec<String>,
    pub verdict: Verdict,
}

impl TorReport {
    pub fn passed(&self) -> bool {
        self.verdict.agree
    }
}

/// Computes `Tor` by both engines and compares them.
pub fn tor_report(job: &JobFile, overrides: Overrides) -> Result<TorReport, ReportError> {
    overrides.validate()?;
    let field = match overrides.field {
        Some(f) => f,
        None => job.field()?,
    };
    let bound = overrides
        .degree
        .or(job.bounds.degree)
        .unwrap_or(DEFAULT_DEGREE_BOUND);
    if bound < 1 {
        return Err(InputError::Field {
            field: "bounds.degree".into(),
            message: format!("must be positive, got {bound}"),
        }
        .into());
    }
    with_field!(field, K => tor_report_in::<K>(job, field, bound))
}

fn tor_report_in<K: Field>(
    job: &JobFile,
    field: FieldChoice,
    bound: i32,
) -> Result<TorReport, ReportError> {
    let problem = job.tor_problem::<K>()?;
    let bar = bar_computation(&problem, bound)?;
    let koszul = koszul_computation(&problem, bound)?;
    let (rb, rk) = (bar.result(), koszul.result());
    let compared = {
        let mut keys: Vec<_> = rb
            .bigraded_ranks()
            .into_keys()
            .chain(rk.bigraded_ranks().into_keys())
            .collect();
        keys.sort();
        keys.dedup();
        keys.len()
    };
    let first_disagreement = compare_ranks(&rb, &rk).err().map(|d| RankEntryPair {
        filtration: (-d.neg_filtration) as usize,
        internal: d.internal,
        bar: d.bar,
        koszul: d.koszul,
    });
    let (products_checked, product_failure) = match check_tor0_products(&bar, &koszul) {
        Ok(n) => (n, None),
        Err(e) => (0, Some(e)),
    };
    let euler_consistent = rb.euler_consistent() && rk.euler_consistent();
    let series = rb.poincare_series();
    let truncated = series.last().is_some_and(|c| *c != 0);
    let mut poincare_series = show_series(&series);
    if truncated {
        poincare_series.push_str(&format!(" + O(t^{})", bound + 1));
    }
    let ring = ring_presentation(&rb);
    let mut bigraded_ranks: Vec<RankEntry> = rb
        .bigraded_ranks()
        .into_iter()
        .map(|((p, q), rank)| RankEntry {
            filtration: (-p) as usize,
            internal: q,
            degree: q + p,
            rank,
        })
        .collect();
    bigraded_ranks.sort_by_key(|r| (r.degree, r.filtration));
    Ok(TorReport {
        field: field.label(),
        degree_bound: bound,
        poincare_series,
        series,
        truncated,
        bigraded_ranks,
        presentation: ring.to_string(),
        generators: ring
            .generators
            .iter()
            .map(|g| GeneratorEntry {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect(),
        relations: ring.relations.clone(),
        warnings: {
            let mut w = ring.warnings.clone();
            if let FieldChoice::Prime(p) = field {
                w.push(format!("over F_{p}, reading Tor as the cohomology of the biquotient assumes {p} is not a torsion prime"));
            }
            w
        },
        verdict: Verdict {
            agree: first_disagreement.is_none() && product_failure.is_none() && euler_consistent,
            bidegrees_compared: compared,
            first_disagreement,
            products_checked,
            product_failure,
            euler_consistent,
        },
    })
}

impl fmt::Display for TorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field: {}", self.field)?;
        writeln!(f, "degree bound: {}", self.degree_bound)?;
        writeln!(f, "Poincaré series: {}", self.poincare_series)?;
        writeln!(
            f,
            "bigraded ranks (filtration p, internal q, degree q - p):"
        )?;
        for r in &self.bigraded_ranks {
            writeln!(
                f,
                "  p={:<2} q={:<3} degree {:<3} rank {}",
                r.filtration, r.internal, r.degree, r.rank
            )?;
        }
        writeln!(f, "ring: {}", self.presentation)?;
        for g in &self.generators {
            writeln!(f, "  generator {} in degree {}", g.name, g.degree)?;
        }
        for r in &self.relations {
            writeln!(f, "  relation {r} = 0")?;
        }
        let v = &self.verdict;
        match (&v.first_disagreement, &v.product_failure) {
            (Some(d), _) => writeln!(
                f,
                "bar/Koszul: DISAGREE at (p, q) = ({}, {}): bar rank {}, Koszul rank {}",
                d.filtration, d.internal, d.bar, d.koszul
            )?,
            (None, Some(e)) => writeln!(f, "bar/Koszul: ranks agree, products DISAGREE: {e}")?,
            (None, None) if !v.euler_consistent => writeln!(
                f,
                "bar/Koszul: ranks agree, Euler characteristic check FAILED"
            )?,
            (None, None) => writeln!(
                f,
                "bar/Koszul: agree on {} bidegrees, {} degree-0 products checked",
                v.bidegrees_compared, v.products_checked
            )?,
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub example: String,
    pub field: String,
    pub degree_bound: i32,
    pub length_bound: usize,
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
}

/// Runs a named suite on a named example.
pub fn verify_report(
    suite: &str,
    example: &str,
    i: Option<usize>,
    overrides: Overrides,
) -> Result<VerifyReport, ReportError> {
    overrides.validate()?;
    let suite: Suite = suite.parse()?;
    let field = overrides.field.unwrap_or(FieldChoice::Rational);
    let opts = SuiteOptions {
        degree: overrides.degree,
        length: overrides.length,
        i,
    };
    let outcome: SuiteOutcome = match field {
        FieldChoice::Rational => run_suite::<Q>(suite, example, opts),
        FieldChoice::Prime(3) => run_suite::<Fp<3>>(suite, example, opts),
        FieldChoice::Prime(p) => {
            let message = format!("suites run over q or fp:3, not fp:{p}");
            return Err(InputError::Field {
                field: "field".into(),
                message,
            }
            .into());
        }
    }?;
    Ok(VerifyReport {
        suite: suite.name().into(),
        example: example.into(),
        field: field.label(),
        degree_bound: outcome.bounds.max_degree,
        length_bound: outcome.bounds.max_length,
        passed: outcome.passed(),
        checks: outcome
            .checks
            .iter()
            .map(|(n, c)| CheckEntry::new(n.clone(), c))
            .collect(),
    })
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} on {} over {}",
            self.suite, self.example, self.field
        )?;
        writeln!(
            f,
            "bounds: degree {}, length {}",
            self.degree_bound, self.length_bound
        )?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        writeln!(
            f,
            "{}",
            if self.passed {
                "all identities hold"
            } else {
                "identity FAILED"
            }
        )
    }
}

/// Degree and length bounds for the HGA check of an input simplicial set.
pub const COCHAIN_HGA_BOUNDS: Bounds = Bounds::new(6, 3);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CochainsReport {
    pub name: String,
    pub field: String,
    pub simplices: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub euler_characteristic: i64,
    pub connected: bool,
    pub hga_bounds: (i32, usize),
    pub checks: Vec<CheckEntry>,
    pub passed: bool,
}

/// Builds the cochain algebra of `simplicial_sets[index]`, its cohomology and the HGA checks.
pub fn cochains_report(
    job: &JobFile,
    index: usize,
    overrides: Overrides,
) -> Result<CochainsReport, ReportError> {
    overrides.validate()?;
    let field = match overrides.field {
        Some(f) => f,
        None => job.field()?,
    };
    let bounds = Bounds::new(
        overrides
            .degree
            .or(job.bounds.degree)
            .unwrap_or(COCHAIN_HGA_BOUNDS.max_degree),
        overrides
            .length
            .or(job.bounds.length)
            .unwrap_or(COCHAIN_HGA_BOUNDS.max_length),
    );
    let set = job.simplicial_set(index)?;
    with_field!(field, K => {
        let full = Cochains::<K>::new(set.clone());
        let cohomology = full.cohomology_ranks();
        let simplices = set.counts();
        let euler_characteristic =
            simplices.iter().enumerate().map(|(n, c)| if n % 2 == 0 { *c as i64 } else { -(*c as i64) }).sum();
        let mut checks = vec![CheckEntry::new("DGA axioms", &check_dga_axioms(&full, bounds.max_degree))];
        let connected = set.collapse_tree().is_some();
        if connected {
            let c = Cochains::<K>::connected(set.clone());
            checks.push(CheckEntry::new("E is a twisting cochain (HGA)", &check_hga(&c, bounds)));
        }
        let passed = checks.iter().all(|c| c.passed);
        Ok(CochainsReport {
            name: set.name.clone(),
            field: field.label(),
            simplices,
            cohomology,
            euler_characteristic,
            connected,
            hga_bounds: (bounds.max_degree, bounds.max_length),
            checks,
            passed,
        })
    })
}

impl fmt::Display for CochainsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(f, "simplicial set {} over {}", self.name, self.field)?;
        writeln!(f, "nondegenerate simplices: ({})", list(&self.simplices))?;
        writeln!(f, "cohomology ranks: ({})", list(&self.cohomology))?;
        writeln!(f, "Euler characteristic: {}", self.euler_characteristic)?;
        writeln!(
            f,
            "HGA bounds: degree {}, length {}",
            self.hga_bounds.0, self.hga_bounds.1
        )?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        if !self.connected {
            writeln!(f, "note: not connected, HGA check skipped")?;
        }
        writeln!(
            f,
            "{}",
            if self.passed {
                "all identities hold"
            } else {
                "identity FAILED"
            }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_job;

    const SPHERE: &str = r#"{ "algebras": [
        { "name": "B", "generators": [ { "name": "x", "degree": 4 } ] },
        { "name": "pt" } ],
      "maps": [ { "source": "B", "target": "pt", "images": { "x": "0" } },
                { "source": "B", "target": "pt", "images": { "x": "0" } } ] }"#;

    #[test]
    fn tor_report_of_the_three_sphere() {
        let r = tor_report(&parse_job(SPHERE).unwrap(), Overrides::default()).unwrap();
        assert_eq!(r.poincare_series, "1 + t^3");
        assert_eq!(r.presentation, "Λ(y3)");
        assert!(r.passed() && !r.truncated);
        let text = r.to_string();
        assert!(text.contains("agree on"), "{text}");
    }

    #[test]
    fn reports_are_deterministic() {
        let job = parse_job(SPHERE).unwrap();
        let o = Overrides {
            field: Some(FieldChoice::Prime(5)),
            degree: Some(9),
            length: None,
        };
        let a = serde_json::to_string(&tor_report(&job, o).unwrap()).unwrap();
        let b = serde_json::to_string(&tor_report(&job, o).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"field\":\"F_5\""), "{a}");
    }

    #[test]
    fn bad_bounds_are_input_errors() {
        let job = parse_job(SPHERE).unwrap();
        let o = Overrides {
            degree: Some(0),
            ..Default::default()
        };
        assert!(matches!(tor_report(&job, o), Err(ReportError::Input(_))));
        assert!(matches!(
            verify_report("nope", "poly-x2", None, Overrides::default()),
            Err(ReportError::Suite(_))
        ));
        let o = Overrides {
            field: Some(FieldChoice::Prime(7)),
            ..Default::default()
        };
        assert!(matches!(
            verify_report("bar-d2", "poly-x2", None, o),
            Err(ReportError::Input(_))
        ));
    }

    #[test]
    fn cochains_of_a_point() {
        let job = parse_job(r#"{ "simplicial_sets": [ { "name": "pt", "simplices": [ { "name": "v", "dim": 0 } ] } ] }"#).unwrap();
        let r = cochains_report(&job, 0, Overrides::default()).unwrap();
        assert_eq!(r.cohomology, vec![1]);
        assert!(r.passed, "{r}");
    }
}
