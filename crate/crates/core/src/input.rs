//! Job files (JSON) and the polynomial-string grammar used for map images.
//!
//! ```json
//! {
//!   "field": "q",
//!   "bounds": { "degree": 16, "length": 4 },
//!   "algebras": [
//!     { "name": "BSU2", "generators": [ { "name": "x", "degree": 4 } ] },
//!     { "name": "BT", "generators": [ { "name": "t", "degree": 2 } ] }
//!   ],
//!   "maps": [
//!     { "source": "BSU2", "target": "BT", "images": { "x": "t^2" } }
//!   ],
//!   "simplicial_sets": []
//! }
//! ```
//!
//! For `tor`, `maps` holds exactly two maps out of the same algebra: the first
//! is `f′: B → A′`, the second `f″: B → A″`.
//!
//! Polynomials: sums of terms `c*x^a*y^b`, integer coefficients, `^` powers,
//! `*` products, `+`/`-`.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::algebras::{FreeGc, Generator, Mono};
use crate::graded::Lin;
use crate::scalar::{Field, FieldChoice};
use crate::simplicial::{SimplicialSet, SimplicialSetData};
use crate::tor::{PolyPresentation, TorProblem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSpec {
    pub degree: Option<i32>,
    pub length: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub field: Option<String>,
    #[serde(default)]
    pub bounds: BoundsSpec,
    #[serde(default)]
    pub algebras: Vec<AlgebraSpec>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
    #[serde(default)]
    pub simplicial_sets: Vec<SimplicialSetData>,
}

pub fn parse_job(text: &str) -> Result<JobFile, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json {
        line: e.line(),
        column: e.column(),
        message: e
            .to_string()
            .split(" at line ")
            .next()
            .unwrap_or_default()
            .to_string(),
    })
}

impl JobFile {
    pub fn field(&self) -> Result<FieldChoice, InputError> {
        match &self.field {
            None => Ok(FieldChoice::Rational),
            Some(s) => FieldChoice::parse(s).map_err(|m| field_error("field", m)),
        }
    }

    fn algebra(&self, name: &str, at: &str) -> Result<(usize, &AlgebraSpec), InputError> {
        let mut found = self
            .algebras
            .iter()
            .enumerate()
            .filter(|(_, a)| a.name == name);
        match (found.next(), found.next()) {
            (Some(a), None) => Ok(a),
            (None, _) => Err(field_error(at, format!("unknown algebra `{name}`"))),
            (Some(_), Some(_)) => Err(field_error(
                at,
                format!("algebra `{name}` is defined twice"),
            )),
        }
    }

    fn presentation(&self, index: usize) -> Result<PolyPresentation, InputError> {
        let a = &self.algebras[index];
        let mut gens: Vec<Generator> = Vec::new();
        for (j, g) in a.generators.iter().enumerate() {
            let at = format!("algebras[{index}].generators[{j}]");
            if !is_identifier(&g.name) {
                return Err(field_error(
                    at,
                    format!("`{}` is not a valid generator name", g.name),
                ));
            }
            if gens.iter().any(|h| h.name == g.name) {
                return Err(field_error(
                    at,
                    format!("generator `{}` is repeated", g.name),
                ));
            }
            gens.push(Generator::new(g.name.clone(), g.degree));
        }
        let p = PolyPresentation {
            name: a.name.clone(),
            generators: gens,
        };
        p.validate()
            .map_err(|e| field_error(format!("algebras[{index}]"), e.to_string()))?;
        Ok(p)
    }

    fn images<K: Field>(
        &self,
        index: usize,
        source: &PolyPresentation,
        target: &PolyPresentation,
    ) -> Result<Vec<Lin<Mono, K>>, InputError> {
        let m = &self.maps[index];
        for key in m.images.keys() {
            if !source.generators.iter().any(|g| &g.name == key) {
                return Err(field_error(
                    format!("maps[{index}].images.{key}"),
                    format!("`{key}` is not a generator of `{}`", source.name),
                ));
            }
        }
        let mut out = Vec::new();
        for g in &source.generators {
            let at = format!("maps[{index}].images.{}", g.name);
            let text = m
                .images
                .get(&g.name)
                .ok_or_else(|| field_error(&at, "missing image"))?;
            let p = parse_polynomial::<K>(text, &target.generators)
                .map_err(|e| field_error(&at, e.to_string()))?;
            let t: FreeGc<K> = target.algebra();
            if p.keys()
                .any(|mono| crate::dg::Dga::degree(&t, mono) != g.degree)
            {
                return Err(field_error(
                    at,
                    format!("`{text}` is not homogeneous of degree {}", g.degree),
                ));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// The diagram `A′ ← B → A″` given by the first two maps.
    pub fn tor_problem<K: Field>(&self) -> Result<TorProblem<K>, InputError> {
        if self.maps.len() != 2 {
            return Err(field_error(
                "maps",
                format!(
                    "tor needs exactly two maps B → A′, B → A″, found {}",
                    self.maps.len()
                ),
            ));
        }
        if self.maps[0].source != self.maps[1].source {
            return Err(field_error(
                "maps[1].source",
                format!("expected `{}`, the source of maps[0]", self.maps[0].source),
            ));
        }
        let (b, _) = self.algebra(&self.maps[0].source, "maps[0].source")?;
        let (l, _) = self.algebra(&self.maps[0].target, "maps[0].target")?;
        let (r, _) = self.algebra(&self.maps[1].target, "maps[1].target")?;
        let (b, l, r) = (
            self.presentation(b)?,
            self.presentation(l)?,
            self.presentation(r)?,
        );
        let f_left = self.images::<K>(0, &b, &l)?;
        let f_right = self.images::<K>(1, &b, &r)?;
        TorProblem::new(&b, &l, &r, f_left, f_right).map_err(|e| field_error("maps", e.to_string()))
    }

    pub fn simplicial_set(&self, index: usize) -> Result<SimplicialSet, InputError> {
        let data = self
            .simplicial_sets
            .get(index)
            .ok_or_else(|| field_error("simplicial_sets", format!("no entry {index}")))?;
        SimplicialSet::from_data(data)
            .map_err(|e| field_error(format!("simplicial_sets[{index}]"), e.to_string()))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct PolyError {
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(u64),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' => i += 1,
            '+' | '-' | '*' | '^' => {
                out.push((
                    start + 1,
                    match c {
                        '+' => Token::Plus,
                        '-' => Token::Minus,
                        '*' => Token::Star,
                        _ => Token::Caret,
                    },
                ));
                i += 1;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| PolyError {
                    column: start + 1,
                    message: format!("integer `{s}` is too large"),
                })?;
                out.push((start + 1, Token::Int(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start + 1, Token::Name(chars[start..i].iter().collect())));
            }
            c => {
                return Err(PolyError {
                    column: start + 1,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

/// Renders `p` in the input grammar, largest monomial first; integer-coefficient
/// polynomials parse back to themselves.
pub fn show_polynomial<K: Field>(alg: &FreeGc<K>, p: &Lin<Mono, K>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.iter().rev().enumerate() {
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        out.push_str(match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let mono = crate::dg::Dga::show(alg, m);
        out.push_str(&match (mag == "1", mono == "1") {
            (_, true) => mag,
            (true, false) => mono,
            (false, false) => format!("{mag}*{mono}"),
        });
    }
    out
}

/// Parses a polynomial in the named generators of a free graded-commutative algebra.
pub fn parse_polynomial<K: Field>(
    text: &str,
    gens: &[Generator],
) -> Result<Lin<Mono, K>, PolyError> {
    let tokens = tokenize(text)?;
    let end = text.chars().count() + 1;
    let alg = FreeGc::<K>::new(gens.to_vec());
    let mut pos = 0;
    let mut out = Lin::zero();
    let err = |column: usize, message: &str| PolyError {
        column,
        message: message.to_string(),
    };
    if tokens.is_empty() {
        return Err(err(1, "empty polynomial"));
    }
    while pos < tokens.len() {
        let mut negative = false;
        match &tokens[pos].1 {
            Token::Plus if pos > 0 => pos += 1,
            Token::Minus => {
                negative = true;
                pos += 1;
            }
            _ if pos == 0 => {}
            _ => return Err(err(tokens[pos].0, "expected `+` or `-`")),
        }
        let mut coeff = K::sign(negative);
        let mut term: Lin<Mono, K> = Lin::basis(vec![0; gens.len()]);
        loop {
            let (col, tok) = tokens
                .get(pos)
                .cloned()
                .ok_or_else(|| err(end, "expected a factor"))?;
            pos += 1;
            match tok {
                Token::Int(n) => {
                    let n = i64::try_from(n).map_err(|_| err(col, "coefficient too large"))?;
                    coeff *= K::from_i64(n);
                }
                Token::Name(name) => {
                    let i = gens
                        .iter()
                        .position(|g| g.name == name)
                        .ok_or_else(|| err(col, &format!("unknown generator `{name}`")))?;
                    let mut power = 1;
                    if matches!(tokens.get(pos), Some((_, Token::Caret))) {
                        match tokens.get(pos + 1) {
                            Some((_, Token::Int(e))) => power = *e,
                            Some((c, _)) => return Err(err(*c, "expected an exponent")),
                            None => return Err(err(end, "expected an exponent")),
                        }
                        pos += 2;
                    }
                    let g: Lin<Mono, K> = alg.gen_elem(i);
                    for _ in 0..power {
                        term = crate::dg::DgaExt::mul_lin(&alg, &term, &g);
                    }
                }
                _ => return Err(err(col, "expected a coefficient or generator")),
            }
            if matches!(tokens.get(pos), Some((_, Token::Star))) {
                pos += 1;
            } else {
                break;
            }
        }
        out.add_scaled(&term, &coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn gens() -> Vec<Generator> {
        vec![Generator::new("t1", 2), Generator::new("t2", 2)]
    }

    #[test]
    fn polynomial_grammar() {
        let p = parse_polynomial::<Q>("t1^2 - 3*t1*t2 + t2^2 - t2*t2", &gens()).unwrap();
        assert_eq!(p.coeff(&vec![2, 0]), Q::from_i64(1));
        assert_eq!(p.coeff(&vec![1, 1]), Q::from_i64(-3));
        assert!(p.coeff(&vec![0, 2]).is_zero());
        assert_eq!(
            parse_polynomial::<Q>("-2", &gens()).unwrap(),
            Lin::term(vec![0, 0], Q::from_i64(-2))
        );
        assert_eq!(parse_polynomial::<Q>("0", &gens()).unwrap(), Lin::zero());
    }

    #[test]
    fn polynomial_errors_carry_columns() {
        let e = parse_polynomial::<Q>("t1 + s", &gens()).unwrap_err();
        assert_eq!(e.column, 6);
        assert!(e.message.contains("unknown generator"));
        assert_eq!(parse_polynomial::<Q>("t1^", &gens()).unwrap_err().column, 4);
        assert_eq!(
            parse_polynomial::<Q>("t1 t2", &gens()).unwrap_err().column,
            4
        );
        assert!(parse_polynomial::<Q>("t1 / 2", &gens()).is_err());
        assert!(parse_polynomial::<Q>("", &gens()).is_err());
    }

    #[test]
    fn malformed_json_reports_line_and_column() {
        let e = parse_job("{\n  \"field\": \"q\",\n  \"algebras\": [ }").unwrap_err();
        assert!(matches!(e, InputError::Json { line: 3, .. }), "{e}");
        let e = parse_job("{ \"colour\": 1 }").unwrap_err();
        assert!(e.to_string().contains("colour"), "{e}");
    }

    #[test]
    fn map_diagnostics_name_the_field() {
        let job = parse_job(
            r#"{ "algebras": [ { "name": "B", "generators": [ { "name": "x", "degree": 4 } ] },
                              { "name": "T", "generators": [ { "name": "t", "degree": 2 } ] } ],
                 "maps": [ { "source": "B", "target": "T", "images": { "x": "t^3" } },
                           { "source": "B", "target": "T", "images": { "x": "t^2" } } ] }"#,
        )
        .unwrap();
        let e = job.tor_problem::<Q>().unwrap_err();
        assert_eq!(
            e,
            field_error("maps[0].images.x", "`t^3` is not homogeneous of degree 4")
        );
        let job = parse_job(
            r#"{ "algebras": [ { "name": "B", "generators": [ { "name": "x", "degree": 3 } ] } ],
                 "maps": [ { "source": "B", "target": "B", "images": { "x": "x" } },
                           { "source": "B", "target": "B", "images": { "x": "x" } } ] }"#,
        )
        .unwrap();
        assert!(job
            .tor_problem::<Q>()
            .unwrap_err()
            .to_string()
            .starts_with("algebras[0]"));
    }
}
